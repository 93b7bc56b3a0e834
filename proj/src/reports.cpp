#include "weierkit/reports.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "weierkit/errors.hpp"

namespace weierkit::reports {

using orbits::Branch;
using orbits::EnergyLevel;
using orbits::Method;

namespace {

constexpr double snap_tolerance = 1e-12;
constexpr long max_samples = 10'000'000;
const std::vector<double> representative_energies{-1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0};

void append_complex(std::vector<Cell>& row, Complex z) {
  row.emplace_back(z.real());
  row.emplace_back(z.imag());
}

std::vector<std::string> with_complex(std::vector<std::string> head, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    head.push_back(std::string("re_") + n);
    head.push_back(std::string("im_") + n);
  }
  return head;
}

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

Invariants request_invariants(const ReportRequest& req) {
  if (req.g3) return phase_from_invariants(req.g2, *req.g3);
  if (req.energy) {
    if (req.g2 != 3.0) throw UsageError("--energy fixes g2 = 3; pass --g3 instead");
    return phase_from_invariants(3.0, -2.0 * *req.energy);
  }
  throw UsageError("need --g3 or --energy");
}

struct OrbitPlan {
  EnergyLevel level;
  Branch branch;
  std::vector<double> times;
  bool mirror = false;  // orbit is even in t; phase plots add the t < 0 half
};

OrbitPlan plan_orbit(const ReportRequest& req) {
  const bool separatrix_request =
      req.branch && (*req.branch == Branch::separatrix_bounded || *req.branch == Branch::separatrix_unbounded);
  double E = 0.5;
  if (req.energy) {
    E = *req.energy;
  } else if (!separatrix_request) {
    throw UsageError("orbit needs --energy (or a separatrix branch)");
  }
  if (!std::isfinite(E)) throw UsageError("energy must be finite");
  if (separatrix_request && std::abs(E - 0.5) > snap_tolerance) {
    throw UsageError("separatrix branches live at E = 0.5");
  }
  const EnergyLevel level = orbits::energy_level(E);
  const Branch requested = req.branch.value_or(std::abs(E) <= 0.5 ? Branch::bounded : Branch::unbounded);
  if (requested == Branch::bounded && (level.region == Region::I || level.region == Region::IV)) {
    throw UsageError("bounded motion needs |E| < 1/2, but E = " + format_number(E) + " lies in region " +
                     std::string(to_string(level.region)) + "; use --branch unbounded");
  }

  const Method closed = req.method == Method::ode ? Method::weierstrass : req.method;
  const orbits::CubicOrbit orbit(level, requested, closed);
  OrbitPlan plan{level, orbit.branch(), {}, false};

  double t0 = 0.0;
  double t1 = 0.0;
  const double t_escape = orbit.escape_time();
  switch (plan.branch) {
    case Branch::bounded:
      t1 = level.region == Region::BoundaryLow ? 2.0 * pi / std::sqrt(6.0) : orbits::bounded_period(level);
      break;
    case Branch::unbounded:
      t1 = 0.9 * t_escape;
      plan.mirror = true;
      break;
    case Branch::separatrix_bounded:
      t1 = 5.0;
      plan.mirror = true;
      break;
    case Branch::separatrix_unbounded:
      t0 = 0.05;
      t1 = 5.0;
      plan.mirror = true;
      break;
  }
  t0 = req.t0.value_or(t0);
  t1 = req.t1.value_or(t1);
  const double dt = req.dt.value_or((t1 - t0) / 512.0);
  if (!(t0 < t1)) throw UsageError("need t0 < t1");
  if (!(dt > 0.0)) throw UsageError("need dt > 0");
  const double count = std::round((t1 - t0) / dt);
  if (count > static_cast<double>(max_samples)) throw UsageError("too many samples; raise --dt");
  const long n = std::max(1L, static_cast<long>(count));
  if (t0 < 0.0) plan.mirror = false;

  const bool pole_at_zero = plan.branch == Branch::separatrix_unbounded;
  for (long i = 0; i <= n; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n);
    if (plan.branch == Branch::unbounded && !(std::abs(t) < t_escape)) continue;
    if (pole_at_zero && std::abs(t) < snap_tolerance) continue;
    plan.times.push_back(t);
  }
  if (plan.times.empty()) throw UsageError("time range contains no regular points of this orbit");
  return plan;
}

orbits::Trajectory sample_checked(const ReportRequest& req, const OrbitPlan& plan) {
  orbits::Trajectory tr;
  try {
    tr = orbits::sample_trajectory(plan.level, plan.branch, req.method, plan.times);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const double E = plan.level.E;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const double x = tr.positions[i].real();
    const double v = tr.velocities[i].real();
    const double scale = 1.0 + std::abs(x * x * x);
    const double residual = std::abs(v * v - (2.0 * E - 3.0 * x + 4.0 * x * x * x));
    const double drift = std::max(std::abs(tr.positions[i].imag()), std::abs(tr.velocities[i].imag()));
    if (!(residual <= req.tolerance * scale) || !(drift <= req.tolerance * scale)) {
      throw NumericalFailure("orbit self-check failed at t = " + format_number(tr.times[i]) +
                             " (energy residual " + format_number(residual) + ")");
    }
  }
  return tr;
}

}  // namespace

void CsvTable::add_row(std::vector<Cell> row) {
  if (row.size() != header.size()) throw std::logic_error("row width does not match header");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const CsvTable& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string text = cell_text(row[i]);
      if (text.find_first_of(",\"\n") != std::string::npos) throw std::logic_error("CSV text cell needs quoting");
      out << (i ? "," : "") << text;
    }
    out << '\n';
  }
  return out.str();
}

std::string to_markdown(const CsvTable& table) {
  std::ostringstream out;
  out << '|';
  for (const auto& h : table.header) out << ' ' << h << " |";
  out << "\n|";
  for (std::size_t i = 0; i < table.header.size(); ++i) out << "---|";
  out << '\n';
  for (const auto& row : table.rows) {
    out << '|';
    for (const auto& c : row) out << ' ' << cell_text(c) << " |";
    out << '\n';
  }
  return out.str();
}

CsvTable parse_csv(std::string_view text) {
  auto split = [](std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return fields;
  };

  CsvTable table;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto fields = split(line);
    if (!have_header) {
      for (auto f : fields) table.header.emplace_back(f);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) throw UsageError("CSV row width does not match the header");
    std::vector<Cell> row;
    for (auto f : fields) {
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (ec == std::errc() && ptr == f.data() + f.size() && !f.empty()) {
        row.emplace_back(value);
      } else {
        row.emplace_back(std::string(f));
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw UsageError("CSV input has no header");
  return table;
}

std::vector<double> energy_grid(double e_min, double e_max, double e_step) {
  if (!std::isfinite(e_min) || !std::isfinite(e_max) || !std::isfinite(e_step)) {
    throw UsageError("scan range must be finite");
  }
  if (!(e_min < e_max)) throw UsageError("scan needs emin < emax");
  if (!(e_step > 0.0)) throw UsageError("scan needs step > 0");
  const double count = std::round((e_max - e_min) / e_step);
  if (count > static_cast<double>(max_samples)) throw UsageError("scan grid too large");
  const long n = static_cast<long>(count);
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    double E = e_min + static_cast<double>(i) * e_step;
    for (double anchor : {0.0, -0.5, 0.5}) {
      if (std::abs(E - anchor) <= snap_tolerance) E = anchor;
    }
    grid.push_back(E);
  }
  return grid;
}

CsvTable cmd_roots(const ReportRequest& req) {
  const Invariants inv = request_invariants(req);
  CsvTable t;
  t.header = with_complex({"g2", "g3", "region"}, {"e1", "e2", "e3"});
  const RootTriple e = weierstrass_roots(inv);
  std::vector<Cell> row{inv.g2, inv.g3, std::string(to_string(inv.region))};
  append_complex(row, e.e1);
  append_complex(row, e.e2);
  append_complex(row, e.e3);
  t.add_row(std::move(row));
  return t;
}

CsvTable cmd_half_periods(const ReportRequest& req) {
  const Invariants inv = request_invariants(req);
  CsvTable t;
  t.header = with_complex({"g2", "g3", "region"}, {"omega1", "omega3", "omega2"});
  t.header.emplace_back("degenerate");
  const HalfPeriods hp = half_periods(inv);
  std::vector<Cell> row{inv.g2, inv.g3, std::string(to_string(inv.region))};
  append_complex(row, hp.omega1);
  append_complex(row, hp.omega3);
  append_complex(row, hp.omega2);
  row.emplace_back(hp.degenerate ? 1.0 : 0.0);
  t.add_row(std::move(row));
  return t;
}

CsvTable cmd_orbit(const ReportRequest& req) {
  const OrbitPlan plan = plan_orbit(req);
  const orbits::Trajectory tr = sample_checked(req, plan);
  CsvTable t;
  t.header = {"t", "x", "v"};
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    t.add_row({tr.times[i], tr.positions[i].real(), tr.velocities[i].real()});
  }
  return t;
}

CsvTable cmd_phase_plot(const ReportRequest& req) {
  const OrbitPlan plan = plan_orbit(req);
  const orbits::Trajectory tr = sample_checked(req, plan);
  CsvTable t;
  t.header = {"x", "v"};
  if (plan.mirror) {
    // x(-t) = x(t) and v(-t) = -v(t) for orbits anchored at a turning point or a pole.
    for (std::size_t i = tr.times.size(); i-- > 0;) {
      if (tr.times[i] == 0.0) continue;
      t.add_row({tr.positions[i].real(), -tr.velocities[i].real()});
    }
  }
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    t.add_row({tr.positions[i].real(), tr.velocities[i].real()});
  }
  return t;
}

CsvTable cmd_scan(const ReportRequest& req) {
  const std::vector<double> grid = energy_grid(req.e_min, req.e_max, req.e_step);
  CsvTable t;
  if (req.quantity == "half-periods") {
    t.header = with_complex({"E"}, {"omega1", "omega3", "omega2"});
    for (double E : grid) {
      const HalfPeriods hp = half_periods(orbits::energy_level(E).invariants);
      std::vector<Cell> row{E};
      append_complex(row, hp.omega1);
      append_complex(row, hp.omega3);
      append_complex(row, hp.omega2);
      t.add_row(std::move(row));
    }
  } else if (req.quantity == "roots") {
    t.header = with_complex({"E"}, {"x1", "x2", "x3"});
    for (double E : grid) {
      const orbits::TurningPoints x = orbits::turning_points(orbits::energy_level(E));
      std::vector<Cell> row{E};
      append_complex(row, x.x1);
      append_complex(row, x.x2);
      append_complex(row, x.x3);
      t.add_row(std::move(row));
    }
  } else if (req.quantity == "modulus") {
    t.header = with_complex({"E"}, {"m", "mprime"});
    t.header.emplace_back("chi");
    for (double E : grid) {
      const orbits::ModulusPair mp = orbits::modulus(orbits::energy_level(E));
      std::vector<Cell> row{E};
      append_complex(row, mp.m);
      append_complex(row, mp.m_prime);
      row.emplace_back(mp.chi);
      t.add_row(std::move(row));
    }
  } else {
    throw UsageError("unknown scan quantity '" + req.quantity + "' (roots, half-periods, modulus)");
  }
  return t;
}

CsvTable cmd_table(const ReportRequest& req) {
  CsvTable t;
  const std::string& id = req.table_id;
  if (id == "energy-levels") {
    t.header = {"E", "region", "g3", "re_phi", "im_phi", "psi_or_varphi"};
  } else if (id == "turning-points") {
    t.header = with_complex({"E", "region"}, {"x1", "x2", "x3"});
  } else if (id == "half-periods") {
    t.header = with_complex({"E", "region"}, {"omega1", "omega3", "omega2"});
  } else if (id == "adapter") {
    t.header = with_complex({"E", "region"}, {"omega_a", "omega_b"});
    t.header.emplace_back("mapping");
    t.header = with_complex(t.header, {"omega1", "omega3", "omega2"});
  } else {
    throw UsageError("unknown table '" + id + "' (energy-levels, turning-points, half-periods, adapter)");
  }

  for (double E : representative_energies) {
    const EnergyLevel level = orbits::energy_level(E);
    std::vector<Cell> row{E, std::string(to_string(level.region))};
    if (id == "energy-levels") {
      row.emplace_back(level.g3);
      append_complex(row, level.phi);
      row.emplace_back(level.psi_or_varphi);
    } else if (id == "turning-points") {
      const orbits::TurningPoints x = orbits::turning_points(level);
      append_complex(row, x.x1);
      append_complex(row, x.x2);
      append_complex(row, x.x3);
    } else if (id == "half-periods") {
      const HalfPeriods hp = half_periods(level.invariants);
      append_complex(row, hp.omega1);
      append_complex(row, hp.omega3);
      append_complex(row, hp.omega2);
    } else {
      const StandardHalfPeriods std_hp = emulate_standard_halfperiods(level.invariants);
      const HalfPeriods hp = adapt_standard_halfperiods(std_hp.omega_a, std_hp.omega_b, level.invariants);
      append_complex(row, std_hp.omega_a);
      append_complex(row, std_hp.omega_b);
      row.emplace_back(std::string(adapter_mapping(level.region)));
      append_complex(row, hp.omega1);
      append_complex(row, hp.omega3);
      append_complex(row, hp.omega2);
    }
    t.add_row(std::move(row));
  }
  return t;
}

CsvTable run(const ReportRequest& req) {
  switch (req.command) {
    case Command::roots: return cmd_roots(req);
    case Command::half_periods: return cmd_half_periods(req);
    case Command::orbit: return cmd_orbit(req);
    case Command::phase_plot: return cmd_phase_plot(req);
    case Command::scan: return cmd_scan(req);
    case Command::table: return cmd_table(req);
  }
  throw UsageError("unknown command");
}

}  // namespace weierkit::reports
