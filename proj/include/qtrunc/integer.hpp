#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace qtrunc {

// Exact arbitrary-precision integer. Coefficients of inverse eta-like products
// outgrow 64 bits well below the truncation orders this library runs at.
using Integer = boost::multiprecision::cpp_int;

inline std::string to_decimal(const Integer& v) { return v.str(); }

}  // namespace qtrunc
