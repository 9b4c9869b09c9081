#ifndef BIPHOTON_VERSION_HPP
#define BIPHOTON_VERSION_HPP

namespace biphoton {

inline constexpr const char* version_string = "biphoton 0.1.0";

}

#endif
