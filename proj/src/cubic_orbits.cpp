#include "weierkit/cubic_orbits.hpp"

#include <array>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>
#include <cmath>
#include <string>

#include "weierkit/errors.hpp"

namespace weierkit::orbits {

namespace {

constexpr double pole_tolerance = 1e-12;
constexpr double energy_snap = 1e-12;
const double sqrt_three_halves = std::sqrt(1.5);

bool is_bounded(Branch b) { return b == Branch::bounded || b == Branch::separatrix_bounded; }

void require_increasing(const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw DomainError("time grid is empty");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("time grid must be strictly increasing");
  }
}

// -1 + 3/2 tanh^2 and -1 + 3/2 coth^2 at complex time, with velocities.
PhasePoint separatrix_at(Branch branch, Complex t) {
  const Complex u = sqrt_three_halves * t;
  const Complex th = std::tanh(u);
  if (branch == Branch::separatrix_bounded) {
    const Complex sech = 1.0 / std::cosh(u);
    return {-1.0 + 1.5 * th * th, 3.0 * sqrt_three_halves * th * sech * sech};
  }
  if (std::abs(th) < pole_tolerance) throw PoleError("unbounded separatrix is at infinity", t);
  const Complex csch = 1.0 / std::sinh(u);
  return {-1.0 + 1.5 / (th * th), -3.0 * sqrt_three_halves * csch * csch / th};
}

}  // namespace

double potential(double x) { return 1.5 * x - 2.0 * x * x * x; }

EnergyLevel energy_level(double E) {
  if (!std::isfinite(E)) throw DomainError("energy must be finite");
  EnergyLevel level;
  level.E = E;
  level.g3 = -2.0 * E;
  level.invariants = phase_from_invariants(3.0, level.g3);
  level.region = level.invariants.region;
  level.phi = level.invariants.phi;
  switch (level.region) {
    case Region::I: level.psi_or_varphi = -level.phi.imag(); break;
    case Region::IV: level.psi_or_varphi = level.phi.imag(); break;
    default: level.psi_or_varphi = level.phi.real(); break;
  }
  return level;
}

TurningPoints turning_points(const EnergyLevel& level) {
  const RootTriple e = weierstrass_roots(level.invariants);
  return {e.e1, e.e2, e.e3};
}

double chi_of_psi(double psi) { return 2.0 * std::atan(std::tanh(psi / 3.0) / std::sqrt(3.0)); }

ModulusPair modulus(const EnergyLevel& level) {
  ModulusPair mp;
  switch (level.region) {
    case Region::BoundaryLow: mp.m = 0.0; break;
    case Region::BoundaryMid: mp.m = 0.5; break;
    case Region::BoundaryHigh: mp.m = 1.0; break;
    default: {
      const Complex phi = level.phi;
      mp.m = std::sin(phi / 3.0) / std::sin((pi + phi) / 3.0);
      break;
    }
  }
  mp.m_prime = 1.0 - mp.m;
  const bool outer = level.region == Region::I || level.region == Region::IV;
  mp.chi = outer ? chi_of_psi(level.psi_or_varphi) : std::nan("");
  return mp;
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::bounded: return "bounded";
    case Branch::unbounded: return "unbounded";
    case Branch::separatrix_bounded: return "separatrix_bounded";
    case Branch::separatrix_unbounded: return "separatrix_unbounded";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::weierstrass: return "weierstrass";
    case Method::jacobi: return "jacobi";
    case Method::ode: return "ode";
  }
  return "?";
}

Branch parse_branch(std::string_view name) {
  for (Branch b : {Branch::bounded, Branch::unbounded, Branch::separatrix_bounded, Branch::separatrix_unbounded}) {
    if (name == to_string(b)) return b;
  }
  throw UsageError("unknown branch '" + std::string(name) + "'");
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::weierstrass, Method::jacobi, Method::ode}) {
    if (name == to_string(m)) return m;
  }
  throw UsageError("unknown method '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

CubicOrbit::CubicOrbit(const EnergyLevel& level, Branch branch, Method method, TimeAnchor anchor)
    : level_(level), branch_(branch), method_(method), anchor_(anchor) {
  if (method == Method::ode) throw DomainError("CubicOrbit is closed-form only; sample the ode method instead");
  const Region r = level.region;
  const bool separatrix = branch == Branch::separatrix_bounded || branch == Branch::separatrix_unbounded;
  if (separatrix && r != Region::BoundaryHigh) throw DomainError("separatrix branches exist only at E = 1/2");
  if (r == Region::BoundaryHigh) {
    branch_ = is_bounded(branch) ? Branch::separatrix_bounded : Branch::separatrix_unbounded;
  }
  if (branch_ == Branch::bounded && (r == Region::I || r == Region::IV)) {
    throw DomainError("bounded motion exists only for |E| < 1/2 (E = " + std::to_string(level.E) + ")");
  }
  const bool bounded = is_bounded(branch_);
  if (bounded) anchor_ = TimeAnchor::turning_point;
  if (branch_ == Branch::separatrix_unbounded) anchor_ = TimeAnchor::pole;

  x_ = turning_points(level);
  if (bounded && r == Region::BoundaryLow) {
    form_ = Form::equilibrium;
    return;
  }
  if (r == Region::BoundaryHigh) {
    form_ = Form::separatrix;
    escape_ = infinity;
    return;
  }

  const HalfPeriods hp = half_periods(level.invariants);
  const bool pole = anchor_ == TimeAnchor::pole;

  if (method == Method::weierstrass) {
    form_ = Form::weierstrass;
    wp_ = std::make_shared<const WeierstrassFunction>(level.invariants);
    if (bounded) {
      gamma_ = hp.omega3;
    } else if (pole) {
      gamma_ = 0.0;
    } else {
      gamma_ = r == Region::IV ? hp.omega3 : hp.omega1;
    }
  } else {
    jacobi_ = std::make_shared<const JacobiElliptic>(modulus(level).m);
    kappa_ = principal_sqrt(x_.x1 - x_.x3);
    if (bounded) {
      form_ = Form::sn2;
    } else if (pole) {
      form_ = Form::cs2;
    } else {
      form_ = r == Region::IV ? Form::sn2 : Form::sc2;
    }
  }

  if (bounded || branch_ == Branch::separatrix_unbounded) {
    escape_ = infinity;
  } else if (pole) {
    escape_ = (r == Region::IV ? 4.0 : 2.0) * hp.omega1.real();
  } else if (method == Method::weierstrass) {
    escape_ = (r == Region::IV ? 2.0 : 1.0) * hp.omega1.real();
  } else if (r == Region::IV) {
    escape_ = locate_jacobi_escape();
  } else {
    escape_ = (complete_K(jacobi_->parameter()) / kappa_).real();
  }
}

PhasePoint CubicOrbit::at(Complex t) const {
  switch (form_) {
    case Form::equilibrium:
      return {x_.x3, 0.0};
    case Form::separatrix:
      return separatrix_at(branch_, t);
    case Form::weierstrass: {
      const WpValue w = wp_->evaluate(t + gamma_);
      return {w.value, w.derivative};
    }
    case Form::sn2: {
      const JacobiTriple j = (*jacobi_)(kappa_ * t);
      const Complex a = x_.x2 - x_.x3;
      return {x_.x3 + a * j.sn * j.sn, 2.0 * a * kappa_ * j.sn * j.cn * j.dn};
    }
    case Form::sc2: {
      const JacobiTriple j = (*jacobi_)(kappa_ * t);
      if (std::abs(j.cn) < pole_tolerance) throw PoleError("orbit reaches infinity", t);
      const Complex a = x_.x1 - x_.x2;
      const Complex sc = j.sn / j.cn;
      return {x_.x1 + a * sc * sc, 2.0 * a * kappa_ * j.sn * j.dn / (j.cn * j.cn * j.cn)};
    }
    case Form::cs2: {
      const JacobiTriple j = (*jacobi_)(kappa_ * t);
      if (std::abs(j.sn) < pole_tolerance) throw PoleError("orbit reaches infinity", t);
      const Complex k2 = kappa_ * kappa_;
      const Complex cs = j.cn / j.sn;
      return {x_.x1 + k2 * cs * cs, -2.0 * k2 * kappa_ * j.cn * j.dn / (j.sn * j.sn * j.sn)};
    }
  }
  throw DomainError("unknown orbit form");
}

// Region IV in Jacobi form: the real-time pole is not a quarter period of
// sn(.|m), so bracket the sign change of the velocity and bisect.
double CubicOrbit::locate_jacobi_escape() const {
  auto moving_out = [this](double t) {
    try {
      return at(t).v.real() > 0.0;
    } catch (const PoleError&) {
      return false;
    }
  };
  const double step = 0.02;
  double hi = step;
  while (moving_out(hi)) {
    hi += step;
    if (hi > 1e3) throw NumericalFailure("no escape found for the region IV orbit");
  }
  double lo = hi - step;
  for (int i = 0; i < 200 && hi - lo > 4e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (moving_out(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Complex orbit_weierstrass(const EnergyLevel& level, Branch branch, Complex t) {
  return CubicOrbit(level, branch, Method::weierstrass).position(t);
}

Complex orbit_jacobi(const EnergyLevel& level, Branch branch, Complex t) {
  return CubicOrbit(level, branch, Method::jacobi).position(t);
}

double separatrix(Branch branch, double t) {
  const double th = std::tanh(sqrt_three_halves * t);
  switch (branch) {
    case Branch::separatrix_bounded:
      return -1.0 + 1.5 * th * th;
    case Branch::separatrix_unbounded:
      if (std::abs(th) < pole_tolerance) throw PoleError("unbounded separatrix is at infinity at t = 0", t);
      return -1.0 + 1.5 / (th * th);
    default:
      throw DomainError("separatrix needs a separatrix branch");
  }
}

double separatrix_velocity(Branch branch, double t) {
  const double u = sqrt_three_halves * t;
  const double th = std::tanh(u);
  switch (branch) {
    case Branch::separatrix_bounded: {
      const double sech = 1.0 / std::cosh(u);
      return 3.0 * sqrt_three_halves * th * sech * sech;
    }
    case Branch::separatrix_unbounded: {
      if (std::abs(th) < pole_tolerance) throw PoleError("unbounded separatrix is at infinity at t = 0", t);
      const double csch = 1.0 / std::sinh(u);
      return -3.0 * sqrt_three_halves * csch * csch / th;
    }
    default:
      throw DomainError("separatrix needs a separatrix branch");
  }
}

double bounded_period(const EnergyLevel& level) {
  const Region r = level.region;
  if (r != Region::II && r != Region::III && r != Region::BoundaryMid) {
    throw DomainError("bounded period is defined only for |E| < 1/2");
  }
  const TurningPoints x = turning_points(level);
  const double kappa = std::sqrt((x.x1 - x.x3).real());
  return 2.0 * complete_K(modulus(level).m).real() / kappa;
}

double escape_time(const EnergyLevel& level) { return CubicOrbit(level, Branch::unbounded).escape_time(); }

double imaginary_time_check(const EnergyLevel& level_a, Branch branch_a, const EnergyLevel& level_b,
                            Branch branch_b, double t, Method method) {
  if (std::abs(level_a.E + level_b.E) > energy_snap * std::max(1.0, std::abs(level_a.E))) {
    throw DomainError("imaginary-time pairs need mirrored energies E_B = -E_A");
  }
  const bool bounded_pair =
      branch_a == Branch::bounded && branch_b == Branch::unbounded && std::abs(level_a.E) < 0.5;
  const bool outer_pair = branch_a == Branch::unbounded && branch_b == Branch::unbounded &&
                          level_a.region == Region::IV && level_b.region == Region::I;
  if (!bounded_pair && !outer_pair) throw DomainError("not one of the imaginary-time orbit pairs");
  const Complex xa = CubicOrbit(level_a, branch_a, method).position(t);
  const Complex xb = CubicOrbit(level_b, branch_b, method).position(Complex(0.0, t));
  return std::abs(xa + xb);
}

// ---------------------------------------------------------------------------

Trajectory ode_reference(const EnergyLevel& level, double x0, int v_sign, const std::vector<double>& t_grid,
                         double max_step) {
  require_increasing(t_grid);
  if (!std::isfinite(x0)) throw DomainError("initial position must be finite");
  if (!(max_step > 0.0)) throw DomainError("step must be positive");
  const double kinetic2 = 2.0 * level.E - 2.0 * potential(x0);
  if (kinetic2 < -1e-10 * (1.0 + std::abs(x0 * x0 * x0))) {
    throw DomainError("initial position is outside the classically allowed region");
  }

  Trajectory tr;
  tr.method = Method::ode;
  using State = std::array<double, 2>;
  State s{x0, (v_sign < 0 ? -1.0 : 1.0) * std::sqrt(std::max(0.0, kinetic2))};
  auto rhs = [](const State& y, State& dy, double) {
    dy[0] = y[1];
    dy[1] = 6.0 * y[0] * y[0] - 1.5;
  };
  boost::numeric::odeint::runge_kutta4<State> stepper;

  double t = t_grid.front();
  tr.times.push_back(t);
  tr.positions.emplace_back(s[0]);
  tr.velocities.emplace_back(s[1]);
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double span = t_grid[i] - t_grid[i - 1];
    const auto steps = static_cast<long>(std::ceil(span / max_step));
    const double h = span / static_cast<double>(steps);
    for (long k = 0; k < steps; ++k) {
      stepper.do_step(rhs, s, t, h);
      t = t_grid[i - 1] + static_cast<double>(k + 1) * h;
      if (!(std::abs(s[0]) <= escape_limit)) {
        tr.escape = EscapeNotice{t, s[0]};
        return tr;
      }
    }
    t = t_grid[i];
    tr.times.push_back(t);
    tr.positions.emplace_back(s[0]);
    tr.velocities.emplace_back(s[1]);
  }
  return tr;
}

Trajectory sample_trajectory(const EnergyLevel& level, Branch branch, Method method,
                             const std::vector<double>& t_grid, TimeAnchor anchor) {
  require_increasing(t_grid);

  if (method != Method::ode) {
    const CubicOrbit orbit(level, branch, method, anchor);
    Trajectory tr;
    tr.method = method;
    tr.branch = orbit.branch();
    for (double t : t_grid) {
      if (t >= orbit.escape_time()) {
        tr.escape = EscapeNotice{orbit.escape_time(), infinity};
        break;
      }
      PhasePoint p;
      try {
        p = orbit.at(t);
      } catch (const PoleError&) {
        tr.escape = EscapeNotice{t, infinity};
        break;
      }
      if (!(std::abs(p.x) <= escape_limit)) {
        tr.escape = EscapeNotice{t, p.x.real()};
        break;
      }
      tr.times.push_back(t);
      tr.positions.push_back(p.x);
      tr.velocities.push_back(p.v);
    }
    return tr;
  }

  // Same initial state as the closed form, then integrate independently.
  const CubicOrbit seed(level, branch, Method::weierstrass, anchor);
  const TurningPoints x = turning_points(level);
  std::vector<double> grid = t_grid;
  double x0 = 0.0;
  int sign = 1;
  bool prepended = false;
  if (seed.anchor() == TimeAnchor::pole) {
    const PhasePoint p = seed.at(grid.front());
    x0 = p.x.real();
    sign = p.v.real() < 0.0 ? -1 : 1;
  } else {
    if (grid.front() < 0.0) throw DomainError("ode sampling of a turning-point orbit starts at t = 0");
    const bool from_x3 = is_bounded(seed.branch()) || level.region == Region::IV;
    x0 = (from_x3 ? x.x3 : x.x1).real();
    if (seed.branch() == Branch::separatrix_bounded) x0 = -1.0;
    if (grid.front() > 0.0) {
      grid.insert(grid.begin(), 0.0);
      prepended = true;
    }
  }
  Trajectory tr = ode_reference(level, x0, sign, grid);
  if (prepended) {
    tr.times.erase(tr.times.begin());
    tr.positions.erase(tr.positions.begin());
    tr.velocities.erase(tr.velocities.begin());
  }
  tr.branch = seed.branch();
  return tr;
}

}  // namespace weierkit::orbits
