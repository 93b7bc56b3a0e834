#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "test_support.hpp"
#include "weierkit/cubic_orbits.hpp"
#include "weierkit/errors.hpp"

using namespace weierkit;
using namespace weierkit::orbits;

namespace {

double err(Complex a, Complex b) { return std::abs(a - b); }

const double grid_energies[] = {-1.5, -1, -0.75, -0.4, -0.25, -0.1, 0.1, 0.25, 0.4, 0.75, 1, 1.5};

bool has_bounded(double E) { return std::abs(E) < 0.5; }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
  return out;
}

Complex complex_potential(Complex x) { return 1.5 * x - 2.0 * x * x * x; }

}  // namespace

TEST_CASE("potential") {
  CHECK(potential(-0.5) == -0.5);
  CHECK(potential(0.5) == 0.5);
  CHECK(potential(0.0) == 0.0);
}

TEST_CASE("energy levels") {
  EnergyLevel a = energy_level(-0.25);
  CHECK(a.region == Region::II);
  CHECK(std::abs(a.phi.real() - pi / 3) < 1e-15);
  CHECK(a.g3 == 0.5);

  EnergyLevel b = energy_level(-1);
  CHECK(b.region == Region::I);
  CHECK(std::abs(b.psi_or_varphi - testing::acosh_log(2)) < 1e-14);

  EnergyLevel c = energy_level(1);
  CHECK(c.region == Region::IV);
  CHECK(std::abs(c.psi_or_varphi - testing::acosh_log(2)) < 1e-14);
  CHECK(std::abs(energy_level(0.25).phi.real() - (pi - std::acos(0.5))) < 1e-15);

  for (double E = -3; E <= 3; E += 0.0731) {
    const EnergyLevel l = energy_level(E);
    CHECK(std::abs(E + 0.5 * std::cos(l.phi)) < 1e-12 * std::max(1.0, std::abs(E)));
    if (E < -0.5) CHECK(l.region == Region::I);
    if (E > -0.5 && E < 0) CHECK(l.region == Region::II);
    if (E > 0 && E < 0.5) CHECK(l.region == Region::III);
    if (E > 0.5) CHECK(l.region == Region::IV);
  }
  CHECK(energy_level(-0.5).region == Region::BoundaryLow);
  CHECK(energy_level(0.5).region == Region::BoundaryHigh);
  CHECK(energy_level(0.0).region == Region::BoundaryMid);
}

TEST_CASE("turning points") {
  TurningPoints z = turning_points(energy_level(0));
  CHECK(err(z.x1, std::sqrt(3.0) / 2) < 1e-15);
  CHECK(err(z.x2, 0.0) < 1e-15);

  TurningPoints q = turning_points(energy_level(-0.25));
  CHECK(err(q.x1, std::cos(pi / 9)) < 1e-15);
  CHECK(err(q.x2, -std::cos(4 * pi / 9)) < 1e-15);
  CHECK(err(q.x3, -std::cos(2 * pi / 9)) < 1e-15);

  TurningPoints o = turning_points(energy_level(-1));
  CHECK(err(o.x1, std::cosh(testing::acosh_log(2) / 3)) < 1e-14);
  CHECK(err(o.x2, std::conj(o.x3)) < 1e-15);

  for (double E = -2.5; E <= 2.5; E += 0.093) {
    const EnergyLevel l = energy_level(E);
    const TurningPoints x = turning_points(l);
    CHECK(std::abs(x.x1 + x.x2 + x.x3) < 1e-12);
    for (Complex xk : {x.x1, x.x2, x.x3}) CHECK(std::abs(complex_potential(xk) - E) < 1e-10);
    if (l.region == Region::I) CHECK((x.x1.real() > 1 && x.x1.imag() == 0));
    if (l.region == Region::IV) CHECK((x.x3.real() < -1 && x.x3.imag() == 0));
    // Symmetry under E -> -E.
    const TurningPoints m = turning_points(energy_level(-E));
    CHECK(err(m.x1, -x.x3) < 1e-12);
    CHECK(err(m.x3, -x.x1) < 1e-12);
  }
}

TEST_CASE("modulus") {
  CHECK(err(modulus(energy_level(0)).m, 0.5) < 1e-12);
  CHECK(err(modulus(energy_level(-0.5)).m, 0.0) < 1e-12);
  CHECK(std::abs(chi_of_psi(50) - pi / 3) < 1e-6);
  CHECK(std::isnan(modulus(energy_level(0.2)).chi));

  for (double E = -3; E <= 3; E += 0.0717) {
    const EnergyLevel l = energy_level(E);
    const ModulusPair mp = modulus(l);
    const TurningPoints x = turning_points(l);
    CHECK(mp.m + mp.m_prime == Complex(1.0));
    CHECK(err(mp.m, (x.x2 - x.x3) / (x.x1 - x.x3)) < 1e-12);
    if (l.region == Region::II) CHECK((mp.m.imag() == 0 && mp.m.real() > 0 && mp.m.real() < 0.5));
    if (l.region == Region::III) CHECK((mp.m.imag() == 0 && mp.m.real() > 0.5 && mp.m.real() < 1));
    if (l.region == Region::I) {
      CHECK(std::abs(std::abs(mp.m - 1.0) - 1.0) < 1e-12);
      CHECK(err(mp.m, 1.0 - std::polar(1.0, mp.chi)) < 1e-12);
      CHECK(err(mp.m_prime, modulus(energy_level(-E)).m) < 1e-12);
    }
    if (l.region == Region::IV) {
      CHECK(std::abs(std::abs(mp.m) - 1.0) < 1e-12);
      CHECK(err(mp.m, std::polar(1.0, mp.chi)) < 1e-12);
    }
  }
}

TEST_CASE("orbit examples") {
  const EnergyLevel q = energy_level(-0.25);
  const TurningPoints x = turning_points(q);
  CHECK(err(orbit_weierstrass(q, Branch::bounded, 0.0), x.x3) < 1e-12);
  CHECK(err(orbit_weierstrass(q, Branch::bounded, half_periods(q.invariants).omega1), x.x2) < 1e-12);
  CHECK(err(orbit_jacobi(q, Branch::bounded, 0.0), x.x3) < 1e-15);
  const double K = complete_K(modulus(q).m).real();
  const double kappa = std::sqrt((x.x1 - x.x3).real());
  CHECK(err(orbit_jacobi(q, Branch::bounded, K / kappa), x.x2) < 1e-12);

  const EnergyLevel o = energy_level(-1);
  CHECK(err(orbit_weierstrass(o, Branch::unbounded, 0.0), turning_points(o).x1) < 1e-12);

  const EnergyLevel p = energy_level(0.25);
  const CubicOrbit j(p, Branch::unbounded, Method::jacobi);
  const double t_esc = j.escape_time();
  const TurningPoints xp = turning_points(p);
  CHECK(std::abs(t_esc - (complete_K(modulus(p).m) / std::sqrt(xp.x1 - xp.x3)).real()) < 1e-14);
  CHECK(j.position(t_esc * (1 - 1e-6)).real() > 1e10);

  CHECK_THROWS_AS(orbit_weierstrass(o, Branch::bounded, 0.1), DomainError);
  CHECK_THROWS_AS(orbit_jacobi(energy_level(1), Branch::bounded, 0.1), DomainError);
  CHECK_THROWS_AS(CubicOrbit(q, Branch::separatrix_bounded), DomainError);
  CHECK_THROWS_AS(CubicOrbit(q, Branch::bounded, Method::ode), DomainError);
  CHECK_THROWS_AS(orbit_weierstrass(o, Branch::unbounded, turning_points(o).x1.real() * 0 + t_esc * 0 +
                                                              half_periods(o.invariants).omega1.real()),
                  PoleError);
}

TEST_CASE("Weierstrass and Jacobi closed forms agree") {
  for (double E : grid_energies) {
    const EnergyLevel l = energy_level(E);
    for (Branch b : {Branch::bounded, Branch::unbounded}) {
      if (b == Branch::bounded && !has_bounded(E)) continue;
      const CubicOrbit w(l, b, Method::weierstrass);
      const CubicOrbit j(l, b, Method::jacobi);
      const double t_end = b == Branch::bounded ? bounded_period(l) : 0.95 * w.escape_time();
      CAPTURE(E);
      CAPTURE(to_string(b));
      for (double t : linspace(0, t_end, 50)) {
        const PhasePoint a = w.at(t), c = j.at(t);
        CHECK(err(a.x, c.x) < 1e-7);
        CHECK(err(a.v, c.v) < 1e-7 * (1 + std::abs(a.v)));
        CHECK(std::abs(a.x.imag()) < 1e-8 * (1 + std::abs(a.x)));
      }
      if (b == Branch::unbounded) CHECK(std::abs(w.escape_time() - j.escape_time()) < 1e-9 * w.escape_time());
    }
  }
}

TEST_CASE("closed forms follow the RK4 oracle") {
  for (double E : grid_energies) {
    const EnergyLevel l = energy_level(E);
    for (Branch b : {Branch::bounded, Branch::unbounded}) {
      if (b == Branch::bounded && !has_bounded(E)) continue;
      const CubicOrbit w(l, b);
      const double t_lo = b == Branch::bounded ? 0.0 : 0.1;
      const double t_hi = b == Branch::bounded ? std::min(bounded_period(l), 3.0) : 0.9 * w.escape_time();
      const std::vector<double> grid = linspace(t_lo, t_hi, 60);
      const Trajectory ode = sample_trajectory(l, b, Method::ode, grid);
      const Trajectory jac = sample_trajectory(l, b, Method::jacobi, grid);
      REQUIRE(ode.positions.size() == grid.size());
      REQUIRE(jac.positions.size() == grid.size());
      double worst_w = 0.0, worst_j = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        worst_w = std::max(worst_w, err(w.position(grid[i]), ode.positions[i]));
        worst_j = std::max(worst_j, err(jac.positions[i], ode.positions[i]));
      }
      CAPTURE(E);
      CAPTURE(to_string(b));
      CHECK(worst_w < 1e-5);
      CHECK(worst_j < 1e-5);
    }
  }
}

TEST_CASE("bounded orbits stay between x3 and x2") {
  for (double E : {-0.4, -0.25, -0.1, 0.0, 0.1, 0.25, 0.4}) {
    const EnergyLevel l = energy_level(E);
    const TurningPoints x = turning_points(l);
    const Trajectory tr = sample_trajectory(l, Branch::bounded, Method::weierstrass,
                                            linspace(0, bounded_period(l), 2001));
    double lo = 1e9, hi = -1e9;
    for (Complex p : tr.positions) {
      lo = std::min(lo, p.real());
      hi = std::max(hi, p.real());
    }
    CAPTURE(E);
    CHECK(std::abs(lo - x.x3.real()) < 1e-6);
    CHECK(std::abs(hi - x.x2.real()) < 1e-6);
  }
}

TEST_CASE("bounded period") {
  for (double E = -0.49; E < 0.5; E += 0.07) {
    const EnergyLevel l = energy_level(E);
    const HalfPeriods hp = half_periods(l.invariants);
    const double real_half = hp.omega1.real();
    CAPTURE(E);
    CHECK(std::abs(bounded_period(l) - 2 * real_half) < 1e-8);
  }
  CHECK(std::abs(bounded_period(energy_level(-0.5 + 1e-4)) - 2 * pi / std::sqrt(6.0)) < 1e-3);
  CHECK(std::abs(bounded_period(energy_level(0)) - 2 * testing::K_by_quadrature(0.5) / std::pow(3.0, 0.25)) < 1e-9);
  CHECK(bounded_period(energy_level(0.5 - 1e-4)) > 5);
  CHECK_THROWS_AS(bounded_period(energy_level(0.5)), DomainError);
  CHECK_THROWS_AS(bounded_period(energy_level(-0.5)), DomainError);
  CHECK_THROWS_AS(bounded_period(energy_level(1.2)), DomainError);
}

TEST_CASE("RK4 period matches the closed-form period") {
  const EnergyLevel l = energy_level(-0.25);
  const double T = bounded_period(l);
  const Trajectory tr = ode_reference(l, turning_points(l).x3.real(), 1, linspace(0, 1.3 * T, 13001));
  // The second downward zero crossing of v after t = 0 is one full period.
  std::vector<double> crossings;
  for (std::size_t i = 1; i < tr.times.size(); ++i) {
    const double a = tr.velocities[i - 1].real(), b = tr.velocities[i].real();
    if (a > 0 && b <= 0) crossings.push_back(tr.times[i - 1] + (tr.times[i] - tr.times[i - 1]) * a / (a - b));
    if (a < 0 && b >= 0) crossings.push_back(tr.times[i - 1] + (tr.times[i] - tr.times[i - 1]) * a / (a - b));
  }
  REQUIRE(crossings.size() >= 2);
  CHECK(std::abs(crossings[1] - T) < 1e-5);
}

TEST_CASE("ode reference") {
  const EnergyLevel eq = energy_level(-0.5);
  const Trajectory flat = ode_reference(eq, -0.5, -1, linspace(0, 3, 31));
  for (Complex x : flat.positions) CHECK(x.real() == -0.5);

  const EnergyLevel l = energy_level(-0.25);
  const Trajectory tr = ode_reference(l, turning_points(l).x3.real(), 1, linspace(0, 1, 101));
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const double x = tr.positions[i].real(), v = tr.velocities[i].real();
    CHECK(std::abs(0.5 * v * v + potential(x) - l.E) < 1e-9);
  }

  const EnergyLevel u = energy_level(1);
  const Trajectory esc = ode_reference(u, turning_points(u).x3.real(), 1, linspace(0, 10, 11));
  REQUIRE(esc.escape.has_value());
  CHECK(esc.escape->time < escape_time(u) + 1e-3);
  CHECK(esc.escape->time > escape_time(u) - 1e-2);

  CHECK_THROWS_AS(ode_reference(l, 0.9, 1, {0, 1}), DomainError);
  CHECK_THROWS_AS(ode_reference(l, -0.5, 1, {1, 0}), DomainError);
}

TEST_CASE("phase-plane closure") {
  for (double E : grid_energies) {
    const EnergyLevel l = energy_level(E);
    for (Method m : {Method::weierstrass, Method::jacobi}) {
      const CubicOrbit orbit(l, has_bounded(E) ? Branch::bounded : Branch::unbounded, m);
      const double t_end = has_bounded(E) ? bounded_period(l) : 0.5 * orbit.escape_time();
      for (double t : linspace(0, t_end, 40)) {
        const PhasePoint p = orbit.at(t);
        CHECK(std::abs(p.v * p.v - (2 * E - 3.0 * p.x + 4.0 * p.x * p.x * p.x)) < 1e-8);
      }
    }
  }
}

TEST_CASE("separatrices") {
  CHECK(separatrix(Branch::separatrix_bounded, 0) == -1.0);
  CHECK(std::abs(separatrix(Branch::separatrix_bounded, 10) - 0.5) < 1e-8);
  CHECK(std::abs(separatrix(Branch::separatrix_unbounded, 10) - 0.5) < 1e-8);
  CHECK_THROWS_AS(separatrix(Branch::separatrix_unbounded, 0), PoleError);
  CHECK_THROWS_AS(separatrix(Branch::bounded, 1), DomainError);

  const EnergyLevel half = energy_level(0.5);
  const WeierstrassFunction f(half.invariants);
  const HalfPeriods hp = half_periods(half.invariants);
  for (double t : linspace(0.1, 4, 20)) {
    CHECK(err(f.value(t + hp.omega3), separatrix(Branch::separatrix_bounded, t)) < 1e-8);
    CHECK(err(f.value(t), separatrix(Branch::separatrix_unbounded, t)) < 1e-8);
    for (Method m : {Method::weierstrass, Method::jacobi}) {
      const PhasePoint b = CubicOrbit(half, Branch::bounded, m).at(t);
      const PhasePoint u = CubicOrbit(half, Branch::unbounded, m).at(t);
      CHECK(err(b.x, separatrix(Branch::separatrix_bounded, t)) < 1e-8);
      CHECK(err(b.v, separatrix_velocity(Branch::separatrix_bounded, t)) < 1e-8);
      CHECK(err(u.x, separatrix(Branch::separatrix_unbounded, t)) < 1e-8);
      CHECK(err(u.v, separatrix_velocity(Branch::separatrix_unbounded, t)) < 1e-8 * (1 + std::abs(u.v)));
    }
  }
  CHECK(CubicOrbit(half, Branch::unbounded).branch() == Branch::separatrix_unbounded);
  CHECK(CubicOrbit(half, Branch::unbounded).anchor() == TimeAnchor::pole);
}

TEST_CASE("equilibrium and E = -1/2 unbounded") {
  const EnergyLevel low = energy_level(-0.5);
  const CubicOrbit eq(low, Branch::bounded, Method::jacobi);
  CHECK(err(eq.at(2.0).x, -0.5) == 0.0);
  CHECK(err(eq.at(2.0).v, 0.0) == 0.0);
  // -1/2 + 3/2 sec^2(sqrt(3/2) t), the closed form of the degenerate lattice.
  for (double t : linspace(0, 1.1, 12)) {
    const double c = std::cos(std::sqrt(1.5) * t);
    const double expected = -0.5 + 1.5 / (c * c);
    CHECK(err(orbit_weierstrass(low, Branch::unbounded, t), expected) < 1e-9 * expected);
    CHECK(err(orbit_jacobi(low, Branch::unbounded, t), expected) < 1e-9 * expected);
  }
  CHECK(std::abs(escape_time(low) - pi / std::sqrt(6.0)) < 1e-14);
}

TEST_CASE("pole-anchored orbits are time shifts of the turning-point orbits") {
  for (double E : {-1.0, -0.25, 0.25, 1.0}) {
    const EnergyLevel l = energy_level(E);
    const CubicOrbit turn(l, Branch::unbounded);
    const double shift = turn.escape_time();
    for (Method m : {Method::weierstrass, Method::jacobi}) {
      const CubicOrbit pole(l, Branch::unbounded, m, TimeAnchor::pole);
      for (double t : linspace(0.2, 0.9 * shift, 10)) {
        const Complex a = pole.position(t);
        const Complex b = turn.position(t - shift);
        CHECK(err(a, b) < 1e-9 * (1 + std::abs(a)));
      }
    }
  }
}

TEST_CASE("imaginary-time relations") {
  const double pairs[][2] = {{-0.25, 0.25}, {0.25, -0.25}, {-0.4, 0.4}, {0.1, -0.1}, {0.0, 0.0}};
  for (const auto& p : pairs) {
    const EnergyLevel a = energy_level(p[0]), b = energy_level(p[1]);
    for (Method m : {Method::weierstrass, Method::jacobi}) {
      for (double t : linspace(0.05, 0.5, 10)) {
        CHECK(imaginary_time_check(a, Branch::bounded, b, Branch::unbounded, t, m) < 1e-8);
      }
    }
  }
  for (double E : {0.75, 1.0, 1.5}) {
    for (Method m : {Method::weierstrass, Method::jacobi}) {
      for (double t : linspace(0.05, 0.5, 10)) {
        CHECK(imaginary_time_check(energy_level(E), Branch::unbounded, energy_level(-E), Branch::unbounded, t, m) <
              1e-8);
      }
    }
  }
  CHECK_THROWS_AS(imaginary_time_check(energy_level(-0.25), Branch::bounded, energy_level(0.3), Branch::unbounded, 0.1),
                  DomainError);
  CHECK_THROWS_AS(imaginary_time_check(energy_level(-1), Branch::unbounded, energy_level(1), Branch::unbounded, 0.1),
                  DomainError);
  CHECK_THROWS_AS(imaginary_time_check(energy_level(-0.25), Branch::unbounded, energy_level(0.25), Branch::bounded, 0.1),
                  DomainError);
}

TEST_CASE("trajectory sampling") {
  const EnergyLevel l = energy_level(1.0);
  const double t_esc = escape_time(l);
  const Trajectory tr = sample_trajectory(l, Branch::unbounded, Method::weierstrass, linspace(0, 1.2 * t_esc, 100));
  REQUIRE(tr.escape.has_value());
  CHECK(tr.times.back() < t_esc);
  CHECK(tr.times.size() == tr.positions.size());
  CHECK(tr.times.size() == tr.velocities.size());
  CHECK(tr.method == Method::weierstrass);

  const Trajectory sep = sample_trajectory(energy_level(0.5), Branch::separatrix_unbounded, Method::ode,
                                           linspace(0.3, 2.0, 30));
  for (std::size_t i = 0; i < sep.times.size(); ++i) {
    CHECK(std::abs(sep.positions[i].real() - separatrix(Branch::separatrix_unbounded, sep.times[i])) < 1e-6);
  }
  CHECK(parse_branch("separatrix_bounded") == Branch::separatrix_bounded);
  CHECK(parse_method("jacobi") == Method::jacobi);
  CHECK_THROWS_AS(parse_method("euler"), UsageError);
}
