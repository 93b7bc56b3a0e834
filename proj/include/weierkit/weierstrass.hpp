#ifndef WEIERKIT_WEIERSTRASS_HPP
#define WEIERKIT_WEIERSTRASS_HPP

#include <array>
#include <string_view>

#include "weierkit/complex.hpp"

namespace weierkit {

/// Sign pairing of (g3, Delta). Boundary tags mark Delta = 0 or g3 = 0.
enum class Region {
  I,             // g3 > 0, Delta < 0
  II,            // g3 > 0, Delta > 0
  III,           // g3 < 0, Delta > 0
  IV,            // g3 < 0, Delta < 0
  BoundaryLow,   // g3 > 0, Delta = 0
  BoundaryMid,   // g3 = 0
  BoundaryHigh,  // g3 < 0, Delta = 0
};

std::string_view to_string(Region r);

/// Relative tolerance under which g3 or Delta snap to a boundary row.
inline constexpr double boundary_tolerance = 1e-12;

/// Real invariants g2 > 0, g3 with the derived discriminant and the phase
/// parameterization g2 = 3 beta^2, g3 = beta^3 cos(phi).
///
/// phi follows the continuous path -i psi -> [0, pi] -> pi + i psi as
/// g3 / beta^3 decreases from +inf to -inf.
struct Invariants {
  double g2 = 3.0;
  double g3 = 0.0;
  double delta = 27.0;
  double beta = 1.0;
  Complex phi{pi / 2, 0.0};
  Region region = Region::BoundaryMid;
};

/// Builds Invariants for g2 > 0 (DomainError otherwise).
Invariants phase_from_invariants(double g2, double g3);

struct RootTriple {
  Complex e1;
  Complex e2;
  Complex e3;
};

/// Roots e1 = beta cos(phi/3), e2 = -beta cos((pi+phi)/3),
/// e3 = -beta cos((pi-phi)/3) of P(w) = 4w^3 - g2 w - g3.
RootTriple weierstrass_roots(const Invariants& inv);

/// Half-periods in the convention omega2 = omega1 + omega3 for every
/// region, with wp(omega_k) = e_k.
///
///   region I    omega1 = Omega              omega3 = -Omega/2 + Omega'
///   region II   omega1 = omega              omega3 = omega'
///   region III  omega1 = |omega'|           omega3 = -i omega
///   region IV   omega1 = |Omega'| + iOmega/2 omega3 = -i Omega
///
/// Infinite half-periods on the Delta = 0 rows are encoded as
/// real_infinity / imag_infinity with `degenerate` set.
struct HalfPeriods {
  Complex omega1;
  Complex omega3;
  Complex omega2;
  bool degenerate = false;
};

HalfPeriods half_periods(const Invariants& inv);

/// omega1 from the integral of dw / sqrt(P(w)) over [e1, inf), by adaptive
/// Gauss-Kronrod quadrature. Needs a real e1 (regions I-III and the
/// boundary rows other than BoundaryHigh); DomainError otherwise.
double omega1_by_quadrature(const Invariants& inv);

/// omega3 = (sign g3) i times the integral of dw / sqrt|P(w)| over
/// (-inf, e3]. Needs a real e3 (regions II-IV, BoundaryMid, BoundaryHigh).
Complex omega3_by_quadrature(const Invariants& inv);

/// Value and derivative of wp at one point.
struct WpValue {
  Complex value;
  Complex derivative;
};

/// Weierstrass elliptic function for a fixed pair of invariants.
///
/// Evaluation reduces z modulo the period lattice, halves the remainder
/// until it lies within half the shortest period, sums the Laurent
/// series through z^62 and then applies the duplication formulas. When
/// Delta = 0 the closed trigonometric form is used instead.
class WeierstrassFunction {
 public:
  /// Real invariants; the lattice comes from half_periods().
  explicit WeierstrassFunction(const Invariants& inv);
  /// Arbitrary complex invariants; the lattice is built from the roots
  /// with the complete integral K of a suitably labelled cross-ratio.
  WeierstrassFunction(Complex g2, Complex g3);

  Complex value(Complex z) const { return evaluate(z).value; }
  Complex derivative(Complex z) const { return evaluate(z).derivative; }
  WpValue evaluate(Complex z) const;

  Complex g2() const noexcept { return g2_; }
  Complex g3() const noexcept { return g3_; }
  bool degenerate() const noexcept { return degenerate_; }
  /// Lagrange-reduced period basis (shortest first). Only meaningful when
  /// the lattice is not degenerate.
  const std::array<Complex, 2>& periods() const noexcept { return periods_; }

 private:
  void set_lattice(Complex period_a, Complex period_b);
  void set_degenerate(Complex simple_root, Complex double_root);
  void set_laurent();
  Complex reduce(Complex z) const;

  Complex g2_;
  Complex g3_;
  bool degenerate_ = false;
  // Degenerate lattice: wp = double + (simple - double) / sin^2(sqrt(simple - double) z).
  Complex simple_root_;
  Complex double_root_;
  std::array<Complex, 2> periods_{};
  double radius_ = 0.0;
  std::array<Complex, 31> laurent_{};  // c_2 ... c_32
};

Complex wp(Complex z, const Invariants& inv);
Complex wp_prime(Complex z, const Invariants& inv);

/// Image of (z; g2, g3) under the scaling wp(z; g2, g3) =
/// scale * wp(z'; g2', g3') with z' = z/lambda, g2' = lambda^4 g2,
/// g3' = lambda^6 g3 and scale = lambda^-2.
struct HomogeneityImage {
  Complex z;
  Complex g2;
  Complex g3;
  Complex scale;
};

HomogeneityImage homogeneity_map(Complex lambda, Complex z, const Invariants& inv);

/// Output pair {omega_a, omega_b} of a standard-convention half-period
/// routine (the one whose second output has the sign instability).
struct StandardHalfPeriods {
  Complex omega_a;
  Complex omega_b;
};

/// Emulates the standard-convention output for these invariants from our
/// own half-periods. With `flipped` the unstable second output is taken
/// on its other sign (omega3 instead of omega2 in region I, omega1 instead
/// of omega2 in region IV); elsewhere `flipped` has no effect.
StandardHalfPeriods emulate_standard_halfperiods(const Invariants& inv, bool flipped = false);

/// Maps a standard-convention pair onto the omega2 = omega1 + omega3
/// convention, normalizing the sign instability of omega_b in regions I
/// and IV. Throws ConventionError when the inputs contradict the lattice
/// geometry of the region by more than 1e-6 (relative to |omega_a|).
HalfPeriods adapt_standard_halfperiods(Complex omega_a, Complex omega_b, const Invariants& inv);

/// Human readable description of the adapter mapping for a region.
std::string_view adapter_mapping(Region r);

}  // namespace weierkit

#endif  // WEIERKIT_WEIERSTRASS_HPP
