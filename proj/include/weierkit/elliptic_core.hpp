#ifndef WEIERKIT_ELLIPTIC_CORE_HPP
#define WEIERKIT_ELLIPTIC_CORE_HPP

#include <memory>

#include "weierkit/complex.hpp"

namespace weierkit {

class WeierstrassFunction;

/// Arithmetic-geometric mean of two nonzero complex numbers.
///
/// The geometric mean at each step is the principal root of a*b
/// (Re >= 0, ties broken towards Im >= 0), which is the "right choice"
/// whenever both arguments lie in the closed right half-plane.
/// Throws DomainError on a zero argument and NumericalFailure if the
/// iterates have not met to 1e-15 relative after 64 steps.
Complex agm(Complex a, Complex b);

/// Complete elliptic integral of the first kind K(m) in the parameter
/// convention, K(m) = pi / (2 agm(1, sqrt(1 - m))). The complementary
/// integral K'(m) is complete_K(1 - m). Throws DomainError at m = 1.
Complex complete_K(Complex m);

struct JacobiTriple {
  Complex sn;
  Complex cn;
  Complex dn;
  Complex parameter_m;
  Complex argument_z;
};

/// sn, cn, dn at complex argument z and parameter m.
///
/// Real m in [0, 1] goes through the descending Landen (Gauss)
/// transformation; any other m goes through the Weierstrass connection.
/// Throws PoleError at z = iK'(m) modulo the period lattice.
JacobiTriple jacobi_sn_cn_dn(Complex z, Complex m);

/// Descending Landen route, real parameter 0 <= m <= 1 only.
JacobiTriple jacobi_landen(Complex z, double m);

/// Weierstrass connection route, any complex m.
JacobiTriple jacobi_via_weierstrass(Complex z, Complex m);

/// sc = sn/cn. Throws PoleError where |cn| < 1e-12.
Complex jacobi_sc(Complex z, Complex m);
/// cs = cn/sn. Throws PoleError where |sn| < 1e-12.
Complex jacobi_cs(Complex z, Complex m);

struct ScCs {
  Complex sc;
  Complex cs;
};
/// Both ratios; throws PoleError if either one is singular at z.
ScCs jacobi_sc_cs(Complex z, Complex m);

enum class JacobiRoute { automatic, landen, weierstrass };

/// Jacobi functions for a fixed parameter. Construction does the
/// per-parameter work once (route selection, and the lattice set-up for
/// the Weierstrass connection), so repeated evaluation is cheap.
class JacobiElliptic {
 public:
  explicit JacobiElliptic(Complex m, JacobiRoute route = JacobiRoute::automatic);

  JacobiTriple operator()(Complex z) const;
  Complex sc(Complex z) const;
  Complex cs(Complex z) const;

  Complex parameter() const noexcept { return m_; }
  bool uses_landen() const noexcept { return landen_; }

 private:
  Complex m_;
  bool landen_ = false;
  // Connection data: roots with e1 - e3 = 1 and e2 - e3 = m.
  Complex e1_, e2_, e3_;
  std::shared_ptr<const WeierstrassFunction> wp_;
};

}  // namespace weierkit

#endif  // WEIERKIT_ELLIPTIC_CORE_HPP
