// weierkit: roots, half-periods, orbits and table/scan reports as CSV or markdown.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "weierkit/errors.hpp"
#include "weierkit/reports.hpp"

namespace {

using weierkit::reports::Command;
using weierkit::reports::ReportRequest;

enum ExitCode : int { ok = 0, numerical_failure = 1, usage_error = 2 };

struct Flags {
  double g2 = 3.0;
  std::optional<double> g3, energy, t0, t1, dt;
  std::optional<double> emin, emax, step;
  std::string branch, method = "weierstrass", format = "csv", output;
  std::string quantity, table_id;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--g2", f.g2, "invariant g2 (> 0)")->capture_default_str();
  sub->add_option("--g3", f.g3, "invariant g3");
  sub->add_option("--energy", f.energy, "particle energy E (sets g2 = 3, g3 = -2E)");
  sub->add_option("--branch", f.branch, "bounded | unbounded | separatrix_bounded | separatrix_unbounded");
  sub->add_option("--method", f.method, "weierstrass | jacobi | ode")->capture_default_str();
  sub->add_option("--emin", f.emin, "scan start energy (default -2)");
  sub->add_option("--emax", f.emax, "scan end energy (default 2)");
  sub->add_option("--step", f.step, "scan energy step (default 0.05)");
  sub->add_option("--t0", f.t0, "first sample time");
  sub->add_option("--t1", f.t1, "last sample time");
  sub->add_option("--dt", f.dt, "sample spacing");
  sub->add_option("--format", f.format, "csv | markdown")->capture_default_str()->check(CLI::IsMember({"csv", "markdown"}));
  sub->add_option("--output", f.output, "write to PATH instead of standard output");
}

double tolerance_from_env() {
  const char* raw = std::getenv("WEIERKIT_TOL");
  if (raw == nullptr || *raw == '\0') return 1e-10;
  char* end = nullptr;
  const double tol = std::strtod(raw, &end);
  if (*end != '\0' || !(tol > 0.0)) throw weierkit::UsageError("WEIERKIT_TOL must be a positive number");
  return tol;
}

ReportRequest build_request(Command command, const Flags& f) {
  ReportRequest req;
  req.command = command;
  req.g2 = f.g2;
  req.g3 = f.g3;
  req.energy = f.energy;
  if (!f.branch.empty()) req.branch = weierkit::orbits::parse_branch(f.branch);
  req.method = weierkit::orbits::parse_method(f.method);
  req.e_min = f.emin.value_or(req.e_min);
  req.e_max = f.emax.value_or(req.e_max);
  req.e_step = f.step.value_or(req.e_step);
  req.t0 = f.t0;
  req.t1 = f.t1;
  req.dt = f.dt;
  req.quantity = f.quantity;
  req.table_id = f.table_id;
  req.output_path = f.output;
  req.format = f.format == "markdown" ? weierkit::reports::Format::markdown : weierkit::reports::Format::csv;
  req.tolerance = tolerance_from_env();
  return req;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weierstrass elliptic functions and cubic-potential orbits"};
  app.require_subcommand(1);
  Flags flags;

  struct Entry {
    CLI::App* app;
    Command command;
  };
  const Entry entries[] = {
      {app.add_subcommand("roots", "roots e1, e2, e3 of 4w^3 - g2 w - g3"), Command::roots},
      {app.add_subcommand("half-periods", "half-periods omega1, omega3, omega2 = omega1 + omega3"),
       Command::half_periods},
      {app.add_subcommand("orbit", "orbit samples t,x,v"), Command::orbit},
      {app.add_subcommand("phase-plot", "phase-plane samples x,v"), Command::phase_plot},
      {app.add_subcommand("scan", "energy scan of roots, half-periods or modulus"), Command::scan},
      {app.add_subcommand("table", "energy-levels, turning-points, half-periods or adapter table"), Command::table},
  };
  for (const Entry& e : entries) add_common(e.app, flags);
  entries[4].app->add_option("quantity", flags.quantity, "roots | half-periods | modulus")->required();
  entries[5].app->add_option("id", flags.table_id, "energy-levels | turning-points | half-periods | adapter")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage_error;
  }

  try {
    Command command = Command::roots;
    for (const Entry& e : entries) {
      if (e.app->parsed()) command = e.command;
    }
    const ReportRequest req = build_request(command, flags);
    const weierkit::reports::CsvTable table = weierkit::reports::run(req);
    const std::string text = req.format == weierkit::reports::Format::markdown ? weierkit::reports::to_markdown(table)
                                                                               : weierkit::reports::to_csv(table);
    if (req.output_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(req.output_path);
      if (!out) throw weierkit::UsageError("cannot open " + req.output_path);
      out << text;
    }
    return ok;
  } catch (const weierkit::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return usage_error;
  } catch (const weierkit::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return usage_error;
  } catch (const weierkit::PoleError& e) {
    std::cerr << "pole: " << e.what() << '\n';
    return numerical_failure;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  }
}
