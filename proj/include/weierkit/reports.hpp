#ifndef WEIERKIT_REPORTS_HPP
#define WEIERKIT_REPORTS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "weierkit/cubic_orbits.hpp"

namespace weierkit::reports {

using Cell = std::variant<double, std::string>;

/// Rectangular table; complex values occupy re_/im_ column pairs.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// %.17g, with "nan", "inf" and "-inf" literals.
std::string format_number(double x);
std::string to_csv(const CsvTable& table);
std::string to_markdown(const CsvTable& table);
/// Inverse of to_csv. Fields that parse completely as numbers become
/// doubles; everything else stays text. Throws UsageError on ragged rows.
CsvTable parse_csv(std::string_view text);

enum class Command { roots, half_periods, orbit, phase_plot, scan, table };
enum class Format { csv, markdown };

struct ReportRequest {
  Command command = Command::roots;
  double g2 = 3.0;
  std::optional<double> g3;
  std::optional<double> energy;
  std::optional<orbits::Branch> branch;
  orbits::Method method = orbits::Method::weierstrass;
  double e_min = -2.0;
  double e_max = 2.0;
  double e_step = 0.05;
  std::optional<double> t0;
  std::optional<double> t1;
  std::optional<double> dt;
  std::string quantity;  // scan: roots | half-periods | modulus
  std::string table_id;  // table: energy-levels | turning-points | half-periods | adapter
  std::string output_path;
  Format format = Format::csv;
  double tolerance = 1e-10;  // self-check on orbit energy residuals
};

/// Energies emin + i*step for i = 0..round((emax - emin)/step), with values
/// within 1e-12 of 0 and +-1/2 snapped onto them.
std::vector<double> energy_grid(double e_min, double e_max, double e_step);

CsvTable cmd_roots(const ReportRequest& req);
CsvTable cmd_half_periods(const ReportRequest& req);
CsvTable cmd_orbit(const ReportRequest& req);
CsvTable cmd_phase_plot(const ReportRequest& req);
CsvTable cmd_scan(const ReportRequest& req);
CsvTable cmd_table(const ReportRequest& req);

/// Dispatches on req.command.
CsvTable run(const ReportRequest& req);

}  // namespace weierkit::reports

#endif  // WEIERKIT_REPORTS_HPP
