#ifndef WEIERKIT_COMPLEX_HPP
#define WEIERKIT_COMPLEX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace weierkit {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double infinity = std::numeric_limits<double>::infinity();
inline constexpr Complex imag_unit{0.0, 1.0};

/// Infinity markers used for degenerate half-periods.
inline constexpr Complex real_infinity{infinity, 0.0};
inline constexpr Complex imag_infinity{0.0, infinity};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Principal square root with Re >= 0; on the branch cut (Re == 0) the
/// root with Im >= 0 is returned regardless of the sign of zero.
inline Complex principal_sqrt(Complex z) {
  Complex r = std::sqrt(z);
  if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
  return r;
}

/// |a - b| <= abs_tol + rel_tol * max(|a|, |b|)
inline bool is_close(Complex a, Complex b, double abs_tol, double rel_tol = 0.0) {
  return std::abs(a - b) <= abs_tol + rel_tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace weierkit

#endif  // WEIERKIT_COMPLEX_HPP
