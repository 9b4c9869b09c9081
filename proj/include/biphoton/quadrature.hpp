#ifndef BIPHOTON_QUADRATURE_HPP
#define BIPHOTON_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace biphoton {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Nodes/weights on [-1,1], computed once per order by Newton iteration on the
// Legendre recurrence and cached.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int order);

// Composite Gauss-Legendre with panel doubling until two successive
// refinements agree to rel_tol. Throws QuadratureError if the refinement
// never converges.
std::complex<double> integrate(const std::function<std::complex<double>(double)>& f,
                               double a, double b, double rel_tol = 1e-10);

}  // namespace biphoton

#endif
