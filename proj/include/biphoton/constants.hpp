#ifndef BIPHOTON_CONSTANTS_HPP
#define BIPHOTON_CONSTANTS_HPP

#include <cmath>

namespace biphoton {

inline constexpr double c_light = 299792458.0;  // m/s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// unit helpers; all internal state is SI (m, s, rad/s)
inline constexpr double nm = 1e-9;
inline constexpr double pm = 1e-12;
inline constexpr double mm = 1e-3;
inline constexpr double ps = 1e-12;
inline constexpr double GHz = 1e9;

inline double deg_to_rad(double deg) { return deg * pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / pi; }

inline double omega_from_lambda(double lambda) { return two_pi * c_light / lambda; }
inline double lambda_from_omega(double omega) { return two_pi * c_light / omega; }

inline double sech(double x) { return 1.0 / std::cosh(x); }

// FWHM of a Gaussian = sigma * 2*sqrt(2 ln 2)
inline constexpr double fwhm_to_sigma = 0.42466090014400953;  // 1/(2 sqrt(2 ln 2))

}  // namespace biphoton

#endif
