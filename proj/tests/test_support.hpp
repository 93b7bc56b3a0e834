#ifndef WEIERKIT_TEST_SUPPORT_HPP
#define WEIERKIT_TEST_SUPPORT_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "weierkit/complex.hpp"

namespace testing {

using weierkit::Complex;

// K(m) straight from its defining integral over [0, pi/2].
inline double K_by_quadrature(double m) {
  auto f = [m](double theta) {
    const double s = std::sin(theta);
    return 1.0 / std::sqrt(1.0 - m * s * s);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, weierkit::pi / 2, 25, 1e-15);
}

// Naive real AGM loop in long double.
inline long double agm_reference(long double a, long double b) {
  for (int i = 0; i < 100 && std::fabs(a - b) > 1e-19L * std::fabs(a); ++i) {
    const long double an = 0.5L * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return a;
}

// arccosh through its logarithm form.
inline double acosh_log(double x) { return std::log(x + std::sqrt(x * x - 1.0)); }

struct Rng {
  std::mt19937_64 engine{20240611};
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
  Complex in_box(double re_lo, double re_hi, double im_lo, double im_hi) {
    return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)};
  }
};

}  // namespace testing

#endif  // WEIERKIT_TEST_SUPPORT_HPP
