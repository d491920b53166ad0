// qcrit: scans, verification and scaling analysis from the command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcrit/cli/commands.hpp"
#include "qcrit/cli/verify.hpp"

namespace {

using namespace qcrit::cli;

// Output is rendered in full before the file is opened, so a failed
// computation never truncates an existing file.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw UsageError("write to " + path + " failed");
}

std::string json_path_for(const std::string& out) {
  if (out.empty() || out == "-") return "";
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? out.substr(0, dot) : out) + ".json";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcrit: reduced density matrices, energy derivatives and entanglement at "
               "quantum phase transitions"};
  app.require_subcommand(1);

  const std::map<std::string, qcrit::ising::Method> methods{
      {"analytic", qcrit::ising::Method::analytic}, {"fd", qcrit::ising::Method::fd}};

  IsingScanConfig ising_cfg;
  std::string ising_out;
  auto* ising = app.add_subcommand("ising-scan", "Transverse-field Ising chain scan (CSV)");
  ising->add_option("--n", ising_cfg.ns, "Chain length(s), even and >= 4")->delimiter(',');
  ising->add_option("--lambda-min", ising_cfg.lambda.min, "Smallest lambda");
  ising->add_option("--lambda-max", ising_cfg.lambda.max, "Largest lambda");
  ising->add_option("--steps", ising_cfg.lambda.steps, "Number of grid points");
  ising->add_option("--method", ising_cfg.method, "Derivative method")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  ising->add_option("--fd-step", ising_cfg.fd_step, "Finite-difference step");
  ising->add_flag("--refine-peak", ising_cfg.refine_peak,
                  "Add a fine grid around the drho22 maximum of each N");
  ising->add_option("--out", ising_out, "Output CSV (stdout if omitted)");

  LadderScanConfig ladder_cfg;
  std::string ladder_out;
  auto* ladder = app.add_subcommand("ladder-scan", "Frustrated two-leg ladder field scan (CSV)");
  ladder->add_option("--jr", ladder_cfg.jr, "Rung exchange J_R");
  ladder->add_option("--j", ladder_cfg.j, "Leg and diagonal exchange J");
  ladder->add_option("--h-min", ladder_cfg.h.min, "Smallest field");
  ladder->add_option("--h-max", ladder_cfg.h.max, "Largest field");
  ladder->add_option("--steps", ladder_cfg.h.steps, "Number of grid points");
  ladder->add_option("--out", ladder_out, "Output CSV (stdout if omitted)");

  VerifyConfig verify_cfg;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Randomized identity and cross-check suite (JSON)");
  verify->add_option("--seed", verify_cfg.seed, "Random seed");
  verify->add_option("--trials", verify_cfg.trials, "Random Hamiltonians")->check(CLI::PositiveNumber);
  verify->add_option("--min-qubits", verify_cfg.min_qubits, "Smallest random system");
  verify->add_option("--max-qubits", verify_cfg.max_qubits, "Largest random system");
  verify->add_flag("--corrupt-u", verify_cfg.corrupt_u, "Negative control: perturb U(0,1)");
  verify->add_option("--out", verify_out, "Output JSON (stdout if omitted)");

  CollapseConfig collapse_cfg;
  std::string collapse_out, collapse_summary;
  std::vector<std::string> collapse_inputs;
  auto* coll = app.add_subcommand("collapse", "Finite-size collapse of ising-scan output");
  coll->add_option("inputs", collapse_inputs, "ising-scan CSV files")->required();
  coll->add_option("--nu", collapse_cfg.nu, "Correlation-length exponent");
  coll->add_option("--window", collapse_cfg.window, "Half width in the scaled variable");
  coll->add_option("--points", collapse_cfg.grid_points, "Common grid points");
  coll->add_option("--out", collapse_out, "Collapsed curves CSV (stdout if omitted)");
  coll->add_option("--summary", collapse_summary,
                   "Summary JSON (default: --out with a .json extension)");

  std::string rho_text, rho_file;
  bool measure_json = false;
  auto* measure = app.add_subcommand("measure", "Concurrence and negativity of a two-qubit RDM");
  auto* rho_opt = measure->add_option("--rho", rho_text, "16 real or 32 (re, im) entries");
  auto* file_opt = measure->add_option("--file", rho_file, "File holding the entries");
  rho_opt->excludes(file_opt);
  measure->add_flag("--json", measure_json, "Print JSON");

  std::string model_path, ed_out;
  double ed_lambda = 0.0;
  auto* edc = app.add_subcommand("ed", "Ground level of a JSON model file (JSON)");
  edc->add_option("--model", model_path, "Model file")->required();
  edc->add_option("--lambda", ed_lambda, "Parameter value");
  edc->add_option("--out", ed_out, "Output JSON (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*ising) {
      std::ostringstream buf;
      ising_scan(ising_cfg, buf);
      emit(ising_out, buf.str());
    } else if (*ladder) {
      std::ostringstream buf;
      ladder_scan(ladder_cfg, buf);
      emit(ladder_out, buf.str());
    } else if (*verify) {
      const auto report = run_verify(verify_cfg);
      emit(verify_out, report.to_json());
      if (!report.passed()) {
        std::cerr << "verify: one or more checks failed\n";
        return 2;
      }
    } else if (*coll) {
      collapse_cfg.inputs.assign(collapse_inputs.begin(), collapse_inputs.end());
      const auto result = run_collapse(collapse_cfg);
      std::ostringstream buf;
      write_collapse_csv(result, buf);
      emit(collapse_out, buf.str());
      const std::string summary =
          collapse_summary.empty() ? json_path_for(collapse_out) : collapse_summary;
      if (summary.empty())
        std::cerr << collapse_summary_json(result);
      else
        emit(summary, collapse_summary_json(result));
    } else if (*measure) {
      std::string text = rho_text;
      if (!rho_file.empty()) {
        std::ifstream in(rho_file);
        if (!in) throw UsageError("cannot open " + rho_file);
        std::ostringstream s;
        s << in.rdbuf();
        text = s.str();
      }
      if (text.empty()) throw UsageError("measure: give --rho or --file");
      std::cout << measure_report(parse_matrix_entries(text), measure_json);
    } else if (*edc) {
      emit(ed_out, ed_summary(model_path, ed_lambda));
    }
  } catch (const std::exception& e) {
    std::cerr << "qcrit: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
