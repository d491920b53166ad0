// commands.hpp
// Implementations behind the qcrit subcommands. Each writes to a stream so
// the output bytes can be tested without touching the filesystem.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcrit/cli/csv.hpp"
#include "qcrit/ising.hpp"
#include "qcrit/scaling.hpp"

namespace qcrit::cli {

// Precondition failures: exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Range {
  double min = 0.0;
  double max = 2.0;
  std::size_t steps = 2001;

  void validate(const char* what) const;
  // min + (max - min) k / (steps - 1); the end points are hit exactly.
  std::vector<double> grid() const;
};

struct IsingScanConfig {
  std::vector<std::size_t> ns{1000};
  Range lambda{0.0, 2.0, 2001};
  ising::Method method = ising::Method::analytic;
  double fd_step = 1e-3;
  // Adds a fine grid (step 0.05 / N over +-10 / N) around the drho22 maximum.
  bool refine_peak = false;
};

struct IsingRow {
  std::size_t n;
  double lambda;
  double rho11, rho22, rho33, rho44, rho14, rho23;
  double mz, energy, de, d2e_populations, d2e_generic;
  double drho22, drho44, drho14;
  double concurrence, negativity, dc;
};

const std::vector<std::string>& ising_columns();
// Derivative cells are NaN where the chosen method is undefined (fd too
// close to lambda = 0; the population identity at lambda = 0).
IsingRow ising_row(const TwoBodyHamiltonian& chain, std::size_t n, double lambda,
                   ising::Method method, double fd_step);
std::vector<double> ising_scan_grid(const IsingScanConfig& cfg, std::size_t n);
void ising_scan(const IsingScanConfig& cfg, std::ostream& out);

struct LadderScanConfig {
  double jr = 1.0;
  double j = 0.25;
  Range h{0.0, 2.0, 2001};
};

const std::vector<std::string>& ladder_columns();
void ladder_scan(const LadderScanConfig& cfg, std::ostream& out);

struct CollapseConfig {
  std::vector<std::filesystem::path> inputs;
  double nu = 1.0;
  double window = 5.0;
  std::size_t grid_points = 401;
};

struct CollapseResult {
  scaling::CollapseReport report;
  std::vector<std::size_t> ns;
  std::vector<scaling::Peak> peaks22;
  std::vector<scaling::Peak> peaks44;
  bool has_fit = false;  // needs >= 4 sizes
  scaling::LogFit fit22;
  scaling::LogFit fit44;
};

// Groups scan rows by N; uses the drho22 and drho44 columns.
std::vector<scaling::Curve> curves_from_table(const CsvTable& table,
                                              const std::string& column);
CollapseResult collapse_curves(std::vector<scaling::Curve> drho22,
                               std::vector<scaling::Curve> drho44, double nu,
                               const scaling::CollapseOptions& opts);
CollapseResult run_collapse(const CollapseConfig& cfg);
void write_collapse_csv(const CollapseResult& r, std::ostream& out);
std::string collapse_summary_json(const CollapseResult& r);

// 16 real entries or 32 interleaved (re, im) values, row-major. Separators:
// whitespace, commas, semicolons.
ComplexMatrix parse_matrix_entries(const std::string& text);
// Human-readable report of both measures and their ingredient spectra.
std::string measure_report(const ComplexMatrix& rho, bool as_json);

std::string ed_summary(const std::filesystem::path& model, double lambda);

}  // namespace qcrit::cli
