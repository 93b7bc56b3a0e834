#ifndef WEIERKIT_QUADRATURE_HPP
#define WEIERKIT_QUADRATURE_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "weierkit/errors.hpp"

namespace weierkit {

/// Adaptive 15-point Gauss-Kronrod integral of f over [a, b].
/// Throws NumericalFailure if the error estimate exceeds abs_tol.
template <class F>
double integrate_gk15(F&& f, double a, double b, double abs_tol = 1e-11) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, /*max_depth=*/20, /*tol=*/1e-14, &error, &l1);
  if (!std::isfinite(value) || !(error <= abs_tol)) {
    throw NumericalFailure("quadrature did not converge (error estimate " + std::to_string(error) + ")");
  }
  return value;
}

}  // namespace weierkit

#endif  // WEIERKIT_QUADRATURE_HPP
