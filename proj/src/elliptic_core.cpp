#include "weierkit/elliptic_core.hpp"

#include <array>
#include <cmath>

#include "weierkit/errors.hpp"
#include "weierkit/weierstrass.hpp"

namespace weierkit {

namespace {

constexpr double agm_tolerance = 1e-15;
constexpr int agm_max_steps = 64;
constexpr double landen_threshold = 1e-15;
constexpr int landen_max_depth = 32;
constexpr double pole_tolerance = 1e-12;
constexpr double series_radius = 1e-4;

bool is_real_unit_parameter(Complex m) {
  const double scale = std::max(1.0, std::abs(m));
  return std::abs(m.imag()) <= 1e-14 * scale && m.real() >= 0.0 && m.real() <= 1.0;
}

// Representative of z modulo the (2K, 2iK') lattice of sn for real m.
Complex reduce_real_lattice(Complex z, double m) {
  if (m <= 0.0) return z;
  double re = z.real();
  if (m < 1.0) {
    const double k = complete_K(Complex(m)).real();
    re -= 2.0 * k * std::round(re / (2.0 * k));
  }
  const double kp = complete_K(Complex(1.0 - m)).real();
  const double im = z.imag() - 2.0 * kp * std::round(z.imag() / (2.0 * kp));
  return {re, im};
}

[[noreturn]] void throw_jacobi_pole(Complex z, double m) {
  throw PoleError("sn, cn, dn have a pole here", reduce_real_lattice(z, m));
}

JacobiTriple small_argument_series(Complex z, Complex m) {
  const Complex z2 = z * z;
  const Complex z4 = z2 * z2;
  JacobiTriple t;
  t.sn = z * (1.0 - (1.0 + m) * z2 / 6.0 + (1.0 + 14.0 * m + m * m) * z4 / 120.0);
  t.cn = 1.0 - z2 / 2.0 + (1.0 + 4.0 * m) * z4 / 24.0;
  t.dn = 1.0 - m * z2 / 2.0 + m * (4.0 + m) * z4 / 24.0;
  t.parameter_m = m;
  t.argument_z = z;
  return t;
}

}  // namespace

Complex agm(Complex a, Complex b) {
  if (!is_finite(a) || !is_finite(b)) throw DomainError("agm: non-finite argument");
  if (a == 0.0 || b == 0.0) throw DomainError("agm: zero argument");
  for (int step = 0; step < agm_max_steps; ++step) {
    if (std::abs(a - b) <= agm_tolerance * std::abs(a)) return 0.5 * (a + b);
    const Complex next_a = 0.5 * (a + b);
    const Complex next_b = principal_sqrt(a * b);
    if (next_a == a && next_b == b) return next_a;  // stalled at rounding level
    a = next_a;
    b = next_b;
  }
  throw NumericalFailure("agm: no convergence");
}

Complex complete_K(Complex m) {
  if (!is_finite(m)) throw DomainError("complete_K: non-finite parameter");
  if (m == 1.0) throw DomainError("complete_K: logarithmic singularity at m = 1");
  return pi / (2.0 * agm(1.0, principal_sqrt(1.0 - m)));
}

JacobiTriple jacobi_landen(Complex z, double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw DomainError("jacobi_landen: parameter outside [0, 1]");
  if (!is_finite(z)) throw DomainError("jacobi_landen: non-finite argument");

  JacobiTriple out;
  out.parameter_m = m;
  out.argument_z = z;

  if (m == 1.0) {
    const Complex c = std::cosh(z);
    if (std::abs(c) < pole_tolerance) throw_jacobi_pole(z, m);
    out.sn = std::tanh(z);
    out.cn = 1.0 / c;
    out.dn = out.cn;
    return out;
  }

  std::array<double, landen_max_depth> moduli{};
  double k = std::sqrt(m);
  double kp = std::sqrt(1.0 - m);
  Complex w = z;
  int depth = 0;
  while (k >= landen_threshold) {
    if (depth == landen_max_depth) throw NumericalFailure("jacobi_landen: descent did not converge");
    const double next_k = k * k / ((1.0 + kp) * (1.0 + kp));
    const double next_kp = 2.0 * std::sqrt(kp) / (1.0 + kp);
    moduli[depth++] = next_k;
    w /= 1.0 + next_k;
    k = next_k;
    kp = next_kp;
  }

  Complex s = std::sin(w);
  Complex c = std::cos(w);
  Complex d = 1.0;
  for (int i = depth - 1; i >= 0; --i) {
    const double mu = moduli[i];
    const Complex s2 = s * s;
    const Complex den = 1.0 + mu * s2;
    if (std::abs(den) <= pole_tolerance * std::max(1.0, std::abs(mu * s2))) throw_jacobi_pole(z, m);
    const Complex sn = (1.0 + mu) * s / den;
    const Complex cn = c * d / den;
    const Complex dn = (1.0 - mu * s2) / den;
    s = sn;
    c = cn;
    d = dn;
  }
  if (!is_finite(s) || !is_finite(c) || !is_finite(d)) throw_jacobi_pole(z, m);
  out.sn = s;
  out.cn = c;
  out.dn = d;
  return out;
}

JacobiElliptic::JacobiElliptic(Complex m, JacobiRoute route) : m_(m) {
  if (!is_finite(m)) throw DomainError("JacobiElliptic: non-finite parameter");
  switch (route) {
    case JacobiRoute::automatic:
      landen_ = is_real_unit_parameter(m);
      break;
    case JacobiRoute::landen:
      if (!is_real_unit_parameter(m)) throw DomainError("Landen route needs real m in [0, 1]");
      landen_ = true;
      break;
    case JacobiRoute::weierstrass:
      landen_ = false;
      break;
  }
  if (landen_) {
    m_ = Complex(m.real(), 0.0);
    return;
  }
  // Roots normalized so that e1 - e3 = 1, e2 - e3 = m and e1 + e2 + e3 = 0.
  e3_ = -(1.0 + m) / 3.0;
  e2_ = e3_ + m;
  e1_ = e3_ + 1.0;
  const Complex g2 = -4.0 * (e1_ * e2_ + e1_ * e3_ + e2_ * e3_);
  const Complex g3 = 4.0 * e1_ * e2_ * e3_;
  wp_ = std::make_shared<const WeierstrassFunction>(g2, g3);
}

JacobiTriple JacobiElliptic::operator()(Complex z) const {
  if (landen_) return jacobi_landen(z, m_.real());
  if (!is_finite(z)) throw DomainError("jacobi: non-finite argument");
  if (std::abs(z) < series_radius) return small_argument_series(z, m_);

  // With e1 - e3 = 1: wp(u) = e3 + 1/sn^2(u), evaluated at u = z/2 and
  // doubled through rational identities that fix every sign.
  WpValue half;
  try {
    half = wp_->evaluate(0.5 * z);
  } catch (const PoleError&) {
    return {0.0, 1.0, 1.0, m_, z};
  }
  const Complex p = half.value;
  const Complex dp = half.derivative;
  const Complex a = p - e1_;
  const Complex b = p - e2_;
  const Complex c = p - e3_;
  const Complex den = c * c - m_;
  if (std::abs(den) <= pole_tolerance * std::max(1.0, std::abs(c * c))) {
    throw PoleError("sn, cn, dn have a pole here", z);
  }
  JacobiTriple out;
  out.sn = -dp / den;
  out.cn = (a * c - b) / den;
  out.dn = (b * c - m_ * a) / den;
  out.parameter_m = m_;
  out.argument_z = z;
  return out;
}

Complex JacobiElliptic::sc(Complex z) const {
  const JacobiTriple t = (*this)(z);
  if (std::abs(t.cn) < pole_tolerance) throw PoleError("sc has a pole here", z);
  return t.sn / t.cn;
}

Complex JacobiElliptic::cs(Complex z) const {
  const JacobiTriple t = (*this)(z);
  if (std::abs(t.sn) < pole_tolerance) throw PoleError("cs has a pole here", z);
  return t.cn / t.sn;
}

JacobiTriple jacobi_sn_cn_dn(Complex z, Complex m) { return JacobiElliptic(m)(z); }

JacobiTriple jacobi_via_weierstrass(Complex z, Complex m) {
  return JacobiElliptic(m, JacobiRoute::weierstrass)(z);
}

Complex jacobi_sc(Complex z, Complex m) { return JacobiElliptic(m).sc(z); }

Complex jacobi_cs(Complex z, Complex m) { return JacobiElliptic(m).cs(z); }

ScCs jacobi_sc_cs(Complex z, Complex m) {
  const JacobiTriple t = JacobiElliptic(m)(z);
  if (std::abs(t.cn) < pole_tolerance) throw PoleError("sc has a pole here", z);
  if (std::abs(t.sn) < pole_tolerance) throw PoleError("cs has a pole here", z);
  return {t.sn / t.cn, t.cn / t.sn};
}

}  // namespace weierkit
