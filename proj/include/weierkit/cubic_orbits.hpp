#ifndef WEIERKIT_CUBIC_ORBITS_HPP
#define WEIERKIT_CUBIC_ORBITS_HPP

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "weierkit/complex.hpp"
#include "weierkit/elliptic_core.hpp"
#include "weierkit/weierstrass.hpp"

// Unit-mass particle in V(x) = 3x/2 - 2x^3. With g2 = 3 and g3 = -2E the
// equation of motion is the Weierstrass equation, so every orbit is
// wp(t + gamma; 3, -2E) for a suitable shift gamma.
namespace weierkit::orbits {

double potential(double x);

struct EnergyLevel {
  double E = 0.0;
  double g3 = 0.0;  // -2E
  Complex phi;
  double psi_or_varphi = 0.0;  // psi in regions I/IV, the real phase otherwise
  Region region = Region::BoundaryMid;
  Invariants invariants;
};

/// Classifies E and builds the (g2, g3) = (3, -2E) invariants.
EnergyLevel energy_level(double E);

struct TurningPoints {
  Complex x1;
  Complex x2;
  Complex x3;
};

TurningPoints turning_points(const EnergyLevel& level);

struct ModulusPair {
  Complex m;
  Complex m_prime;  // 1 - m
  double chi;       // NaN unless |E| > 1/2
};

ModulusPair modulus(const EnergyLevel& level);

/// chi(psi) = 2 atan(tanh(psi/3) / sqrt(3)).
double chi_of_psi(double psi);

enum class Branch { bounded, unbounded, separatrix_bounded, separatrix_unbounded };
enum class Method { weierstrass, jacobi, ode };
/// Where t = 0 sits on an unbounded orbit: at the turning point, or at
/// the pole (x(0) = infinity).
enum class TimeAnchor { turning_point, pole };

std::string_view to_string(Branch b);
std::string_view to_string(Method m);
/// Parses the names produced by to_string; throws UsageError otherwise.
Branch parse_branch(std::string_view name);
Method parse_method(std::string_view name);

struct PhasePoint {
  Complex x;
  Complex v;
};

/// Closed-form orbit for one energy and branch, evaluated at complex time.
///
/// E = +-1/2 are routed to the separatrix and equilibrium forms; on
/// E = 1/2 the unbounded branch is always pole-anchored. Evaluation at a
/// time where the particle is at infinity throws PoleError.
class CubicOrbit {
 public:
  CubicOrbit(const EnergyLevel& level, Branch branch, Method method = Method::weierstrass,
             TimeAnchor anchor = TimeAnchor::turning_point);

  PhasePoint at(Complex t) const;
  Complex position(Complex t) const { return at(t).x; }

  /// First positive real time at which the particle reaches infinity,
  /// or +inf for bounded motion.
  double escape_time() const { return escape_; }

  const EnergyLevel& level() const noexcept { return level_; }
  Branch branch() const noexcept { return branch_; }
  Method method() const noexcept { return method_; }
  TimeAnchor anchor() const noexcept { return anchor_; }

 private:
  enum class Form { equilibrium, separatrix, weierstrass, sn2, sc2, cs2 };

  double locate_jacobi_escape() const;

  EnergyLevel level_;
  Branch branch_;
  Method method_;
  TimeAnchor anchor_;
  Form form_ = Form::weierstrass;
  std::shared_ptr<const WeierstrassFunction> wp_;
  Complex gamma_;
  std::shared_ptr<const JacobiElliptic> jacobi_;
  Complex kappa_;
  TurningPoints x_;
  double escape_ = infinity;
};

Complex orbit_weierstrass(const EnergyLevel& level, Branch branch, Complex t);
Complex orbit_jacobi(const EnergyLevel& level, Branch branch, Complex t);

/// Hyperbolic separatrix forms at E = 1/2: -1 + 3/2 tanh^2(sqrt(3/2) t)
/// and -1 + 3/2 coth^2(sqrt(3/2) t). PoleError at t = 0 for the latter.
double separatrix(Branch branch, double t);
double separatrix_velocity(Branch branch, double t);

/// Period 2K(m)/sqrt(x1 - x3) of bounded motion; DomainError if |E| >= 1/2.
double bounded_period(const EnergyLevel& level);

/// Escape time of the turning-point-anchored unbounded orbit.
double escape_time(const EnergyLevel& level);

/// |x_A(t) + x_B(it)| for the imaginary-time pairs: bounded at E with
/// unbounded at -E (|E| < 1/2), and region IV unbounded with region I
/// unbounded at -E. DomainError for any other pairing.
double imaginary_time_check(const EnergyLevel& level_a, Branch branch_a, const EnergyLevel& level_b,
                            Branch branch_b, double t, Method method = Method::weierstrass);

struct EscapeNotice {
  double time;      // last time reached before |x| exceeded the limit
  double position;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Complex> positions;
  std::vector<Complex> velocities;
  Method method = Method::weierstrass;
  Branch branch = Branch::bounded;
  std::optional<EscapeNotice> escape;
};

inline constexpr double escape_limit = 1e6;

/// Classic RK4 integration of x'' = -V'(x) from x(t_grid[0]) = x0 with
/// v = v_sign sqrt(2E - 2V(x0)), fixed step at most max_step.
Trajectory ode_reference(const EnergyLevel& level, double x0, int v_sign, const std::vector<double>& t_grid,
                         double max_step = 1e-4);

/// Samples an orbit on t_grid with any method. Closed forms stop at the
/// first pole; the ode method starts from the same initial state as the
/// closed form (the turning point at t = 0, or the closed-form state at
/// t_grid[0] for pole-anchored orbits).
Trajectory sample_trajectory(const EnergyLevel& level, Branch branch, Method method,
                             const std::vector<double>& t_grid, TimeAnchor anchor = TimeAnchor::turning_point);

}  // namespace weierkit::orbits

#endif  // WEIERKIT_CUBIC_ORBITS_HPP
