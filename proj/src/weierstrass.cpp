#include "weierkit/weierstrass.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "weierkit/elliptic_core.hpp"
#include "weierkit/errors.hpp"
#include "weierkit/quadrature.hpp"

namespace weierkit {

namespace {

constexpr double pole_tolerance = 1e-12;
constexpr double adapter_tolerance = 1e-6;
constexpr int laurent_terms = 32;

// Rotation by -i, exact in floating point.
Complex times_minus_i(Complex z) { return {z.imag(), -z.real()}; }

// AGM half-periods for g3 > 0 (regions I and II). In region I the
// second value lands directly on -Omega/2 + Omega'.
HalfPeriods agm_half_periods(const Invariants& inv) {
  const RootTriple e = weierstrass_roots(inv);
  const Complex s13 = principal_sqrt(e.e1 - e.e3);
  const Complex s12 = principal_sqrt(e.e1 - e.e2);
  const Complex s23 = principal_sqrt(e.e2 - e.e3);
  const Complex w1 = pi / (2.0 * agm(s13, s12));
  const Complex w3 = imag_unit * pi / (2.0 * agm(s13, s23));

  HalfPeriods hp;
  hp.omega1 = Complex(w1.real(), 0.0);
  if (inv.region == Region::I) {
    const double half = -0.5 * w1.real();
    if (std::abs(w3.real() - half) > 1e-9 * w1.real() || !(w3.imag() > 0.0)) {
      throw NumericalFailure("region I half-period off the expected lattice point");
    }
    hp.omega3 = Complex(half, w3.imag());
  } else {
    hp.omega3 = Complex(0.0, w3.imag());
  }
  hp.omega2 = hp.omega1 + hp.omega3;
  return hp;
}

// Integral of 1 / sqrt((a + u^2)(b + u^2)) over u in [0, inf), mapped onto
// s in [0, 1) by u = s / (1 - s). a and b are real or a conjugate pair.
double tail_integral(Complex a, Complex b) {
  auto integrand = [a, b](double s) {
    const double t = 1.0 - s;
    const Complex pa = a * (t * t) + s * s;
    const Complex pb = b * (t * t) + s * s;
    return 1.0 / std::sqrt((pa * pb).real());
  };
  return integrate_gk15(integrand, 0.0, 1.0);
}

}  // namespace

std::string_view to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::BoundaryLow: return "BoundaryLow";
    case Region::BoundaryMid: return "BoundaryMid";
    case Region::BoundaryHigh: return "BoundaryHigh";
  }
  return "?";
}

Invariants phase_from_invariants(double g2, double g3) {
  if (!std::isfinite(g2) || !std::isfinite(g3)) throw DomainError("invariants must be finite");
  if (!(g2 > 0.0)) throw DomainError("g2 must be positive");

  Invariants inv;
  inv.g2 = g2;
  inv.g3 = g3;
  inv.delta = g2 * g2 * g2 - 27.0 * g3 * g3;
  inv.beta = std::sqrt(g2 / 3.0);
  const double c = g3 / (inv.beta * inv.beta * inv.beta);

  if (std::abs(c) <= boundary_tolerance) {
    inv.region = Region::BoundaryMid;
    inv.phi = std::acos(c);
  } else if (std::abs(1.0 - c * c) <= boundary_tolerance) {
    inv.region = c > 0.0 ? Region::BoundaryLow : Region::BoundaryHigh;
    inv.phi = c > 0.0 ? 0.0 : pi;
  } else if (c > 1.0) {
    inv.region = Region::I;
    inv.phi = Complex(0.0, -std::acosh(c));
  } else if (c > 0.0) {
    inv.region = Region::II;
    inv.phi = std::acos(c);
  } else if (c > -1.0) {
    inv.region = Region::III;
    inv.phi = std::acos(c);
  } else {
    inv.region = Region::IV;
    inv.phi = Complex(pi, std::acosh(-c));
  }
  return inv;
}

RootTriple weierstrass_roots(const Invariants& inv) {
  const double b = inv.beta;
  switch (inv.region) {
    case Region::BoundaryLow: return {b, -0.5 * b, -0.5 * b};
    case Region::BoundaryMid: return {0.5 * std::sqrt(3.0) * b, 0.0, -0.5 * std::sqrt(3.0) * b};
    case Region::BoundaryHigh: return {0.5 * b, 0.5 * b, -b};
    default: break;
  }
  const Complex phi = inv.phi;
  return {inv.beta * std::cos(phi / 3.0), -inv.beta * std::cos((pi + phi) / 3.0),
          -inv.beta * std::cos((pi - phi) / 3.0)};
}

HalfPeriods half_periods(const Invariants& inv) {
  HalfPeriods hp;
  switch (inv.region) {
    case Region::I:
    case Region::II:
      return agm_half_periods(inv);
    case Region::III:
    case Region::IV: {
      // Inversion: the g3 -> -g3 lattice is the original rotated by -i.
      const HalfPeriods mirror = agm_half_periods(phase_from_invariants(inv.g2, -inv.g3));
      hp.omega1 = times_minus_i(mirror.omega3);
      hp.omega3 = times_minus_i(mirror.omega1);
      hp.omega2 = hp.omega1 + hp.omega3;
      return hp;
    }
    case Region::BoundaryLow:
      hp.omega1 = pi / std::sqrt(6.0 * inv.beta);
      hp.omega3 = imag_infinity;
      hp.omega2 = imag_infinity;
      hp.degenerate = true;
      return hp;
    case Region::BoundaryHigh:
      hp.omega1 = real_infinity;
      hp.omega3 = Complex(0.0, -pi / std::sqrt(6.0 * inv.beta));
      hp.omega2 = real_infinity;
      hp.degenerate = true;
      return hp;
    case Region::BoundaryMid: {
      const double w0 = complete_K(0.5).real() / std::pow(inv.g2, 0.25);
      hp.omega1 = w0;
      hp.omega3 = Complex(0.0, w0);
      hp.omega2 = hp.omega1 + hp.omega3;
      return hp;
    }
  }
  throw DomainError("unknown region");
}

double omega1_by_quadrature(const Invariants& inv) {
  if (inv.region == Region::IV || inv.region == Region::BoundaryHigh) {
    throw DomainError("omega1 quadrature needs a real e1");
  }
  const RootTriple e = weierstrass_roots(inv);
  return tail_integral(e.e1 - e.e2, e.e1 - e.e3);
}

Complex omega3_by_quadrature(const Invariants& inv) {
  if (inv.region == Region::I || inv.region == Region::BoundaryLow) {
    throw DomainError("omega3 quadrature needs a real e3");
  }
  const RootTriple e = weierstrass_roots(inv);
  const double value = tail_integral(e.e1 - e.e3, e.e2 - e.e3);
  return {0.0, inv.g3 < 0.0 ? -value : value};
}

// ---------------------------------------------------------------------------

WeierstrassFunction::WeierstrassFunction(const Invariants& inv) : g2_(inv.g2), g3_(inv.g3) {
  switch (inv.region) {
    case Region::BoundaryLow:
      set_degenerate(inv.beta, -0.5 * inv.beta);
      break;
    case Region::BoundaryHigh:
      set_degenerate(-inv.beta, 0.5 * inv.beta);
      break;
    default: {
      const HalfPeriods hp = half_periods(inv);
      set_lattice(2.0 * hp.omega1, 2.0 * hp.omega3);
      break;
    }
  }
  set_laurent();
}

WeierstrassFunction::WeierstrassFunction(Complex g2, Complex g3) : g2_(g2), g3_(g3) {
  if (!is_finite(g2) || !is_finite(g3)) throw DomainError("invariants must be finite");
  const Complex delta = g2 * g2 * g2 - 27.0 * g3 * g3;
  const double scale = std::max(std::norm(g2) * std::abs(g2), 27.0 * std::norm(g3));
  if (scale == 0.0) {
    set_degenerate(0.0, 0.0);
  } else if (std::abs(delta) <= boundary_tolerance * scale) {
    set_degenerate(3.0 * g3 / g2, -1.5 * g3 / g2);
  } else {
    std::array<Complex, 3> e;
    if (g2 == 0.0) {
      const Complex r = std::pow(g3 / 4.0, 1.0 / 3.0);
      const Complex rot = std::polar(1.0, 2.0 * pi / 3.0);
      e = {r, r * rot, r * rot * rot};
    } else {
      const Complex beta = principal_sqrt(g2 / 3.0);
      const Complex phi = std::acos(g3 / (beta * beta * beta));
      e = {beta * std::cos(phi / 3.0), -beta * std::cos((pi + phi) / 3.0),
           -beta * std::cos((pi - phi) / 3.0)};
    }
    // Label the roots so that m = (e_q - e_r)/(e_p - e_r) sits as close to
    // 1/2 as possible, well inside the cut plane of K(m) and K(1 - m).
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    double best = infinity;
    Complex m, kappa2;
    for (const auto& p : perms) {
      const Complex cand = (e[p[1]] - e[p[2]]) / (e[p[0]] - e[p[2]]);
      const double dist = std::abs(cand - 0.5);
      if (dist < best) {
        best = dist;
        m = cand;
        kappa2 = e[p[0]] - e[p[2]];
      }
    }
    const Complex kappa = principal_sqrt(kappa2);
    set_lattice(2.0 * complete_K(m) / kappa, 2.0 * imag_unit * complete_K(1.0 - m) / kappa);
  }
  set_laurent();
}

void WeierstrassFunction::set_lattice(Complex a, Complex b) {
  degenerate_ = false;
  // Lagrange reduction to a basis whose first vector is a shortest one.
  if (std::norm(a) > std::norm(b)) std::swap(a, b);
  for (int it = 0; it < 128; ++it) {
    const double mu = std::round((b * std::conj(a)).real() / std::norm(a));
    b -= mu * a;
    if (std::norm(b) >= std::norm(a)) break;
    std::swap(a, b);
  }
  periods_ = {a, b};
  radius_ = 0.5 * std::abs(a);
}

void WeierstrassFunction::set_degenerate(Complex simple_root, Complex double_root) {
  degenerate_ = true;
  simple_root_ = simple_root;
  double_root_ = double_root;
}

void WeierstrassFunction::set_laurent() {
  // wp(z) = 1/z^2 + sum_{k>=2} c_k z^(2k-2)
  std::array<Complex, laurent_terms + 1> c{};
  c[2] = g2_ / 20.0;
  c[3] = g3_ / 28.0;
  for (int k = 4; k <= laurent_terms; ++k) {
    Complex sum = 0.0;
    for (int j = 2; j <= k - 2; ++j) sum += c[j] * c[k - j];
    c[k] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * sum;
  }
  for (int k = 2; k <= laurent_terms; ++k) laurent_[k - 2] = c[k];
}

Complex WeierstrassFunction::reduce(Complex z) const {
  const Complex u = periods_[0];
  const Complex v = periods_[1];
  const double det = u.real() * v.imag() - u.imag() * v.real();
  const double x = (z.real() * v.imag() - z.imag() * v.real()) / det;
  const double y = (u.real() * z.imag() - u.imag() * z.real()) / det;
  const Complex base = z - std::round(x) * u - std::round(y) * v;
  Complex best = base;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      const Complex cand = base - static_cast<double>(i) * u - static_cast<double>(j) * v;
      if (std::norm(cand) < std::norm(best)) best = cand;
    }
  }
  return best;
}

WpValue WeierstrassFunction::evaluate(Complex z) const {
  if (!is_finite(z)) throw DomainError("wp: non-finite argument");

  if (degenerate_) {
    const Complex gap = simple_root_ - double_root_;
    if (gap == 0.0) {
      if (std::abs(z) < pole_tolerance) throw PoleError("wp has a pole here", 0.0);
      return {1.0 / (z * z), -2.0 / (z * z * z)};
    }
    const Complex a = principal_sqrt(gap);
    const Complex u = a * z;
    const double n = std::round((u / pi).real());
    const Complex pole = n * pi / a;
    if (std::abs(z - pole) < pole_tolerance) throw PoleError("wp has a pole here", pole);
    // csc^2 and cot through exp(+-2iu) so that large |Im u| does not overflow.
    const bool upper = u.imag() >= 0.0;
    const Complex w = std::exp(upper ? 2.0 * imag_unit * u : -2.0 * imag_unit * u);
    const Complex csc2 = -4.0 * w / ((1.0 - w) * (1.0 - w));
    const Complex cot = upper ? imag_unit * (1.0 + w) / (w - 1.0) : imag_unit * (1.0 + w) / (1.0 - w);
    return {double_root_ + gap * csc2, -2.0 * gap * a * cot * csc2};
  }

  Complex r = reduce(z);
  if (std::abs(r) < pole_tolerance) throw PoleError("wp has a pole here", z - r);
  int doublings = 0;
  while (std::abs(r) > radius_) {
    r *= 0.5;
    ++doublings;
  }

  const Complex t = r * r;
  Complex series = 0.0;
  Complex dseries = 0.0;
  for (int k = laurent_terms; k >= 2; --k) {
    series = series * t + laurent_[k - 2];
    dseries = dseries * t + (2.0 * k - 2.0) * laurent_[k - 2];
  }
  Complex p = 1.0 / t + series * t;
  Complex dp = -2.0 / (t * r) + dseries * r;

  for (int i = 0; i < doublings; ++i) {
    const Complex dd = 6.0 * p * p - 0.5 * g2_;
    const Complex dp2 = dp * dp;
    const Complex next_p = -2.0 * p + dd * dd / (4.0 * dp2);
    const Complex next_dp = (-4.0 * dp2 * dp2 + 12.0 * p * dp2 * dd - dd * dd * dd) / (4.0 * dp2 * dp);
    p = next_p;
    dp = next_dp;
  }
  if (!is_finite(p) || !is_finite(dp)) throw PoleError("wp has a pole here", z - reduce(z));
  return {p, dp};
}

Complex wp(Complex z, const Invariants& inv) { return WeierstrassFunction(inv).value(z); }

Complex wp_prime(Complex z, const Invariants& inv) { return WeierstrassFunction(inv).derivative(z); }

HomogeneityImage homogeneity_map(Complex lambda, Complex z, const Invariants& inv) {
  if (lambda == 0.0 || !is_finite(lambda)) throw DomainError("homogeneity_map: lambda must be finite and nonzero");
  const Complex l2 = lambda * lambda;
  return {z / lambda, l2 * l2 * inv.g2, l2 * l2 * l2 * inv.g3, 1.0 / l2};
}

// ---------------------------------------------------------------------------

StandardHalfPeriods emulate_standard_halfperiods(const Invariants& inv, bool flipped) {
  const HalfPeriods hp = half_periods(inv);
  switch (inv.region) {
    case Region::I: return {hp.omega1, flipped ? hp.omega3 : hp.omega2};
    case Region::II:
    case Region::BoundaryMid: return {hp.omega1, hp.omega3};
    case Region::III: return {hp.omega3, hp.omega1};
    case Region::IV: return {hp.omega3, flipped ? hp.omega1 : hp.omega2};
    case Region::BoundaryLow: return {hp.omega1, imag_infinity};
    case Region::BoundaryHigh: return {hp.omega3, real_infinity};
  }
  throw DomainError("unknown region");
}

HalfPeriods adapt_standard_halfperiods(Complex omega_a, Complex omega_b, const Invariants& inv) {
  const double tol = adapter_tolerance * std::abs(omega_a);
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConventionError(std::string("half-period pair violates the region geometry: ") + what);
  };
  require(is_finite(omega_a) && omega_a != 0.0, "omega_a must be finite and nonzero");

  HalfPeriods hp;
  switch (inv.region) {
    case Region::II:
    case Region::BoundaryMid:
      require(std::abs(omega_a.imag()) <= tol && omega_a.real() > 0.0, "omega_a must be real and positive");
      require(std::abs(omega_b.real()) <= tol && omega_b.imag() > 0.0, "omega_b must be positive imaginary");
      hp.omega1 = omega_a;
      hp.omega3 = omega_b;
      break;
    case Region::III:
      require(std::abs(omega_a.real()) <= tol && omega_a.imag() < 0.0, "omega_a must be negative imaginary");
      require(std::abs(omega_b.imag()) <= tol && omega_b.real() > 0.0, "omega_b must be real and positive");
      hp.omega3 = omega_a;
      hp.omega1 = omega_b;
      break;
    case Region::I: {
      require(std::abs(omega_a.imag()) <= tol && omega_a.real() > 0.0, "omega_a must be real and positive");
      require(omega_b.imag() > 0.0, "omega_b must lie in the upper half-plane");
      require(std::abs(std::abs(omega_b.real()) - 0.5 * omega_a.real()) <= tol,
              "omega_b must sit at real part +-omega_a/2");
      hp.omega1 = omega_a;
      const Complex omega2(std::abs(omega_b.real()), omega_b.imag());
      hp.omega3 = omega2 - hp.omega1;
      break;
    }
    case Region::IV: {
      require(std::abs(omega_a.real()) <= tol && omega_a.imag() < 0.0, "omega_a must be negative imaginary");
      require(omega_b.real() > 0.0, "omega_b must lie in the right half-plane");
      require(std::abs(std::abs(omega_b.imag()) - 0.5 * std::abs(omega_a.imag())) <= tol,
              "omega_b must sit at imaginary part +-|omega_a|/2");
      hp.omega3 = omega_a;
      const Complex omega2(omega_b.real(), -std::abs(omega_b.imag()));
      hp.omega1 = omega2 - hp.omega3;
      break;
    }
    case Region::BoundaryLow:
      require(std::abs(omega_a.imag()) <= tol && omega_a.real() > 0.0, "omega_a must be real and positive");
      require(!is_finite(omega_b), "omega_b must be infinite on this boundary");
      hp.omega1 = omega_a;
      hp.omega3 = imag_infinity;
      hp.omega2 = imag_infinity;
      hp.degenerate = true;
      return hp;
    case Region::BoundaryHigh:
      require(std::abs(omega_a.real()) <= tol && omega_a.imag() < 0.0, "omega_a must be negative imaginary");
      require(!is_finite(omega_b), "omega_b must be infinite on this boundary");
      hp.omega3 = omega_a;
      hp.omega1 = real_infinity;
      hp.omega2 = real_infinity;
      hp.degenerate = true;
      return hp;
  }
  hp.omega2 = hp.omega1 + hp.omega3;
  return hp;
}

std::string_view adapter_mapping(Region r) {
  switch (r) {
    case Region::I: return "omega1=omega_a; omega2=normalize(omega_b); omega3=omega2-omega1";
    case Region::II: return "omega1=omega_a; omega3=omega_b";
    case Region::III: return "omega3=omega_a; omega1=omega_b";
    case Region::IV: return "omega3=omega_a; omega2=normalize(omega_b); omega1=omega2-omega3";
    case Region::BoundaryLow: return "omega1=omega_a; omega3=i*inf";
    case Region::BoundaryMid: return "omega1=omega_a; omega3=omega_b";
    case Region::BoundaryHigh: return "omega3=omega_a; omega1=inf";
  }
  return "?";
}

}  // namespace weierkit
