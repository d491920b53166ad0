#include "qcrit/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcrit/ed.hpp"
#include "qcrit/entanglement.hpp"
#include "qcrit/ladder.hpp"
#include "qcrit/model_io.hpp"

namespace qcrit::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double re(const DensityMatrix& rho, std::size_t a, std::size_t b) {
  return rho.element(a, b).real();
}

// JSON numbers in the same shortest round-trip form as the CSV files.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

void Range::validate(const char* what) const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
    throw UsageError(std::string(what) + ": need a finite range with min < max");
  if (steps < 2) throw UsageError(std::string(what) + ": need at least 2 steps");
}

std::vector<double> Range::grid() const {
  std::vector<double> g(steps);
  const double span = max - min;
  for (std::size_t k = 0; k < steps; ++k)
    g[k] = min + span * static_cast<double>(k) / static_cast<double>(steps - 1);
  g.back() = max;
  return g;
}

const std::vector<std::string>& ising_columns() {
  static const std::vector<std::string> cols{
      "N",       "lambda",  "rho11",  "rho22",  "rho33",       "rho44",      "rho14",
      "rho23",   "mz",      "energy", "dE",     "d2E_sde",     "d2E_eq4",    "drho22",
      "drho44",  "drho14",  "concurrence", "negativity", "dC"};
  return cols;
}

IsingRow ising_row(const TwoBodyHamiltonian& chain, std::size_t n, double lambda,
                   ising::Method method, double fd_step) {
  const ising::IsingParams p(n, lambda);
  const auto c = ising::correlators(p);
  const auto rho = ising::rdm_from_correlators(c);
  IsingRow row{};
  row.n = n;
  row.lambda = lambda;
  row.rho11 = re(rho, 1, 1);
  row.rho22 = re(rho, 2, 2);
  row.rho33 = re(rho, 3, 3);
  row.rho44 = re(rho, 4, 4);
  row.rho14 = re(rho, 1, 4);
  row.rho23 = re(rho, 2, 3);
  row.mz = c.mz;
  row.energy = -ising::pairwise_sum(c.omega) / static_cast<double>(n);
  row.de = -c.xx();
  row.concurrence = concurrence(rho).value;
  row.negativity = negativity(rho).value;

  const bool derivable = method == ising::Method::analytic || lambda >= fd_step;
  if (derivable) {
    const auto d = ising::drho_dlambda(p, method, fd_step);
    row.drho22 = d(1, 1).real();
    row.drho44 = d(3, 3).real();
    row.drho14 = d(0, 3).real();
    row.d2e_populations = lambda > 0.0 ? -(2.0 / lambda) * (row.drho22 + row.drho44) : kNaN;
    row.d2e_generic = ising::d2e_generic(chain, p, method, fd_step);
    row.dc = row.concurrence > 0.0 ? 2.0 * (row.drho14 - row.drho22) : 0.0;
  } else {
    row.drho22 = row.drho44 = row.drho14 = kNaN;
    row.d2e_populations = row.d2e_generic = row.dc = kNaN;
  }
  return row;
}

std::vector<double> ising_scan_grid(const IsingScanConfig& cfg, std::size_t n) {
  auto grid = cfg.lambda.grid();
  if (!cfg.refine_peak) return grid;

  // Coarse pass: locate the discrete drho22 maximum.
  double best = -std::numeric_limits<double>::infinity(), centre = grid.front();
  for (double lam : grid) {
    const ising::IsingParams p(n, lam);
    if (cfg.method == ising::Method::fd && lam < cfg.fd_step) continue;
    const double v = ising::drho_dlambda(p, cfg.method, cfg.fd_step)(1, 1).real();
    if (v > best) {
      best = v;
      centre = lam;
    }
  }
  const double half = 10.0 / static_cast<double>(n);
  constexpr std::size_t kFine = 401;
  std::vector<double> merged = grid;
  for (std::size_t k = 0; k < kFine; ++k) {
    const double lam = centre + half * (2.0 * static_cast<double>(k) / (kFine - 1) - 1.0);
    if (lam > cfg.lambda.min && lam < cfg.lambda.max) merged.push_back(lam);
  }
  std::sort(merged.begin(), merged.end());
  std::vector<double> out;
  for (double lam : merged)
    if (out.empty() || lam - out.back() > 1e-12 * std::max(1.0, std::abs(lam))) out.push_back(lam);
  return out;
}

void ising_scan(const IsingScanConfig& cfg, std::ostream& out) {
  cfg.lambda.validate("lambda range");
  if (cfg.ns.empty()) throw UsageError("ising-scan: no system size given");
  if (cfg.lambda.min < 0.0) throw UsageError("ising-scan: lambda must be non-negative");
  if (cfg.method == ising::Method::fd && !(cfg.fd_step > 1e-8))
    throw UsageError("ising-scan: fd step must exceed 1e-8");
  auto ns = cfg.ns;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (auto n : ns)
    if (n < 4 || n % 2 != 0) throw UsageError("ising-scan: N must be even and at least 4");

  CsvWriter w(out, ising_columns());
  for (auto n : ns) {
    const auto chain = ising::hamiltonian(n);
    for (double lam : ising_scan_grid(cfg, n)) {
      const auto r = ising_row(chain, n, lam, cfg.method, cfg.fd_step);
      w << r.n << r.lambda << r.rho11 << r.rho22 << r.rho33 << r.rho44 << r.rho14 << r.rho23
        << r.mz << r.energy << r.de << r.d2e_populations << r.d2e_generic << r.drho22 << r.drho44
        << r.drho14 << r.concurrence << r.negativity << r.dc;
      w.end_row();
    }
  }
}

const std::vector<std::string>& ladder_columns() {
  static const std::vector<std::string> cols{
      "h",      "phase", "rho11_r",     "rho22_r",    "rho23_r",           "energy",
      "dEdh",   "concurrence", "negativity", "relation_residual", "at_critical"};
  return cols;
}

void ladder_scan(const LadderScanConfig& cfg, std::ostream& out) {
  cfg.h.validate("field range");
  try {
    ladder::LadderParams check(cfg.jr, cfg.j, 0.0);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("ladder-scan: ") + e.what());
  }
  CsvWriter w(out, ladder_columns());
  for (double h : cfg.h.grid()) {
    const ladder::LadderParams p(cfg.jr, cfg.j, h);
    const auto state = ladder::rung_rdm(p);
    const auto d = ladder::denergy_dh(p);
    const auto ent = ladder::rung_entanglement(p);
    w << h << ladder::to_string(state.phase) << re(state.averaged, 1, 1)
      << re(state.averaged, 2, 2) << re(state.averaged, 2, 3) << ladder::energy_density(p)
      << d.value << ent.concurrence << ent.negativity
      << d.value - (ent.negativity - 1.0) / 2.0 << std::size_t{d.at_discontinuity ? 1u : 0u};
    w.end_row();
  }
}

std::vector<scaling::Curve> curves_from_table(const CsvTable& table, const std::string& column) {
  const auto ns = table.numeric("N");
  const auto lambdas = table.numeric("lambda");
  const auto values = table.numeric(column);
  std::map<std::size_t, std::vector<std::pair<double, double>>> groups;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    if (std::isnan(values[k])) continue;
    groups[static_cast<std::size_t>(ns[k])].emplace_back(lambdas[k], values[k]);
  }
  std::vector<scaling::Curve> out;
  for (auto& [n, pts] : groups) {
    std::sort(pts.begin(), pts.end());
    scaling::Curve c;
    c.n = n;
    c.quantity = column;
    for (const auto& [x, y] : pts) {
      if (!c.grid.empty() && x == c.grid.back()) continue;
      c.grid.push_back(x);
      c.values.push_back(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

CollapseResult collapse_curves(std::vector<scaling::Curve> drho22,
                               std::vector<scaling::Curve> drho44, double nu,
                               const scaling::CollapseOptions& opts) {
  if (drho22.size() < 3) throw UsageError("collapse: need curves for at least 3 values of N");
  auto by_n = [](const scaling::Curve& a, const scaling::Curve& b) { return a.n < b.n; };
  std::sort(drho22.begin(), drho22.end(), by_n);
  std::sort(drho44.begin(), drho44.end(), by_n);
  CollapseResult r;
  r.report = scaling::collapse(drho22, nu, opts);
  std::vector<double> ns, p22, p44;
  for (const auto& c : drho22) {
    r.ns.push_back(c.n);
    r.peaks22.push_back(scaling::find_peak(c));
    ns.push_back(static_cast<double>(c.n));
    p22.push_back(r.peaks22.back().value);
  }
  for (const auto& c : drho44) {
    r.peaks44.push_back(scaling::find_peak(c));
    p44.push_back(r.peaks44.back().value);
  }
  if (ns.size() >= 4) {
    r.has_fit = true;
    r.fit22 = scaling::logfit(ns, p22);
    if (p44.size() == ns.size()) r.fit44 = scaling::logfit(ns, p44);
  }
  return r;
}

CollapseResult run_collapse(const CollapseConfig& cfg) {
  if (cfg.inputs.empty()) throw UsageError("collapse: no input files");
  if (!(cfg.nu > 0.0)) throw UsageError("collapse: nu must be positive");
  CsvTable all;
  for (const auto& path : cfg.inputs) {
    CsvTable t;
    try {
      t = read_csv_file(path);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("collapse: ") + e.what());
    }
    if (all.header.empty()) all.header = t.header;
    if (t.header != all.header) throw UsageError("collapse: input files have different columns");
    for (auto& row : t.rows) all.rows.push_back(std::move(row));
  }
  try {
    for (const char* col : {"N", "lambda", "drho22", "drho44"}) all.column(col);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("collapse: ") + e.what());
  }
  return collapse_curves(curves_from_table(all, "drho22"), curves_from_table(all, "drho44"),
                         cfg.nu, {cfg.window, cfg.grid_points});
}

void write_collapse_csv(const CollapseResult& r, std::ostream& out) {
  std::vector<std::string> header{"x"};
  for (const auto& c : r.report.curves) header.push_back("N_" + std::to_string(c.n));
  CsvWriter w(out, header);
  for (std::size_t k = 0; k < r.report.x.size(); ++k) {
    w << r.report.x[k];
    for (const auto& c : r.report.curves) w << c.values[k];
    w.end_row();
  }
}

std::string collapse_summary_json(const CollapseResult& r) {
  nlohmann::ordered_json j;
  j["quantity"] = "drho22";
  j["nu"] = r.report.nu;
  j["window"] = r.report.x.empty() ? 0.0 : std::max(-r.report.x.front(), r.report.x.back());
  j["quality"] = number(r.report.quality);
  auto peaks = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < r.ns.size(); ++k) {
    nlohmann::ordered_json e;
    e["N"] = r.ns[k];
    e["lambda_m"] = r.peaks22[k].position;
    e["peak_drho22"] = r.peaks22[k].value;
    if (k < r.peaks44.size()) e["peak_drho44"] = r.peaks44[k].value;
    peaks.push_back(std::move(e));
  }
  j["peaks"] = std::move(peaks);
  if (r.has_fit) {
    auto fit = [](const scaling::LogFit& f) {
      nlohmann::ordered_json o;
      o["slope"] = f.slope;
      o["intercept"] = f.intercept;
      o["residual_rms"] = f.residual_rms;
      return o;
    };
    j["logfit"]["x22"] = fit(r.fit22);
    j["logfit"]["x44"] = fit(r.fit44);
  } else {
    j["logfit"] = nullptr;
  }
  return j.dump(2) + "\n";
}

ComplexMatrix parse_matrix_entries(const std::string& text) {
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',' || c == ';' || c == '[' || c == ']' || c == '(' || c == ')') c = ' ';
  std::istringstream in(cleaned);
  std::vector<double> v;
  std::string tok;
  while (in >> tok) {
    try {
      v.push_back(parse_double(tok));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("measure: ") + e.what());
    }
  }
  ComplexMatrix m(4, 4);
  if (v.size() == 16) {
    for (std::size_t k = 0; k < 16; ++k) m(k / 4, k % 4) = v[k];
  } else if (v.size() == 32) {
    for (std::size_t k = 0; k < 16; ++k) m(k / 4, k % 4) = Complex(v[2 * k], v[2 * k + 1]);
  } else {
    throw UsageError("measure: expected 16 real or 32 (re, im) values, got " +
                     std::to_string(v.size()));
  }
  return m;
}

std::string measure_report(const ComplexMatrix& m, bool as_json) {
  DensityMatrix rho = [&] {
    try {
      return DensityMatrix(m, {2, 2});
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("measure: ") + e.what());
    }
  }();
  MeasureResult c, n;
  try {
    c = concurrence(rho);
    n = negativity(rho);
  } catch (const std::domain_error& e) {
    throw UsageError(std::string("measure: ") + e.what());
  }
  if (as_json) {
    nlohmann::ordered_json j;
    j["concurrence"] = c.value;
    j["negativity"] = n.value;
    j["gamma"] = c.ingredients;
    j["mu"] = n.ingredients;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  auto list = [&](const std::vector<double>& xs) {
    for (std::size_t k = 0; k < xs.size(); ++k) out << (k ? " " : "") << format_double(xs[k]);
  };
  out << "concurrence " << format_double(c.value) << '\n';
  out << "negativity " << format_double(n.value) << '\n';
  out << "gamma ";
  list(c.ingredients);
  out << "\nmu ";
  list(n.ingredients);
  out << '\n';
  return out.str();
}

std::string ed_summary(const std::filesystem::path& model_path, double lambda) {
  io::Model model = [&] {
    try {
      return io::load_model(model_path);
    } catch (const io::ModelError& e) {
      throw UsageError(std::string("ed: ") + e.what());
    }
  }();
  ed::GroundLevel level;
  try {
    level = ed::ground_level(model.hamiltonian, lambda);
  } catch (const std::length_error& e) {
    throw UsageError(std::string("ed: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("ed: ") + e.what());
  }
  return io::ground_level_json(model, lambda, level);
}

}  // namespace qcrit::cli
