// paneitz-lab: deterministic command-line front end for the spectral
// laboratory.  Emits CSV (default) or JSON on the data stream; notes and
// errors go to stderr.  Exit codes: 0 success, 2 argument/domain error,
// 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "paneitz/cli/run.hpp"

namespace {

using paneitz::cli::Command;
using paneitz::cli::GridSpec;
using paneitz::cli::ModelKind;
using paneitz::cli::OutputFormat;
using paneitz::cli::RunConfig;

GridSpec parse_grid(const std::string& text) {
  GridSpec g{};
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw CLI::ValidationError("grid", "expected a:b:n");
  try {
    g.lo = std::stod(text.substr(0, c1));
    g.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    g.count = std::stoi(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("grid", "expected a:b:n with numeric fields");
  }
  return g;
}

int threads_from_env(std::ostream& diag) {
  const char* env = std::getenv("PANEITZ_LAB_THREADS");
  if (!env || !*env) return 1;
  try {
    const int n = std::stoi(env);
    if (n < 1 || n > 256) throw std::out_of_range("range");
    return n;
  } catch (const std::exception&) {
    diag << "error: PANEITZ_LAB_THREADS must be an integer in [1, 256]\n";
    return -1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral laboratory for a fourth-order conformal boundary eigenvalue problem"};
  app.require_subcommand(1);
  app.fallthrough(false);

  RunConfig cfg;
  std::string model_name, format_name = "csv", output_path, delta_grid_text, tau_grid_text;
  double tau = 0.0, alpha = 0.0, rho = 0.0, beta = 0.0, delta = 0.0, rel_tol = 0.0,
         inject = 0.0;
  long long lmax = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", model_name, "model: ball|annulus|cylinder|sphere");
    sub->add_option("--tau", tau, "annulus log-modulus tau");
    sub->add_option("--alpha", alpha, "annulus boundary weight alpha in (0,1)");
    sub->add_option("--rho", rho, "annulus inner radius rho in (0,1); tau = -log(rho)");
    sub->add_option("--ratio", cfg.ratio, "boundary volume ratio (bounds)");
    sub->add_option("--period", cfg.period, "cylinder period");
    sub->add_option("--beta", beta, "alpha(1-alpha) in (0, 1/4]");
    sub->add_option("--epsilon", cfg.epsilon, "concentration parameter in (0,1)");
    sub->add_option("--delta0", cfg.delta0, "dilation floor in (0,1]");
    sub->add_option("--lmax", lmax, "largest spherical-harmonic level");
    sub->add_option("--delta", delta, "single Moebius dilation parameter");
    sub->add_option("--delta-grid", delta_grid_text, "log-spaced delta grid a:b:n");
    sub->add_option("--tau-grid", tau_grid_text, "log-spaced tau grid a:b:n");
    sub->add_option("--format", format_name, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output_path, "write the data stream to a file");
    sub->add_option("--rel-tol", rel_tol, "relative tolerance override");
    sub->add_option("--inject-error", inject, "perturb closed forms (verify test hook)")
        ->group("");  // hidden
    return sub;
  };

  CLI::App* sub_spectrum = add_common(app.add_subcommand("spectrum", "eigenvalue table"));
  CLI::App* sub_verify =
      add_common(app.add_subcommand("verify", "closed forms vs determinant oracle"));
  CLI::App* sub_tau_star =
      add_common(app.add_subcommand("tau-star", "crossing of the spectral-gap ratio"));
  CLI::App* sub_scan = add_common(app.add_subcommand("scan", "monotonicity scan in ell"));
  CLI::App* sub_energy =
      add_common(app.add_subcommand("energy", "Moebius calibration energy curve"));
  CLI::App* sub_bounds = add_common(app.add_subcommand("bounds", "eigenvalue bound constants"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  const int threads = threads_from_env(std::cerr);
  if (threads < 0) return 2;
  cfg.threads = threads;

  if (sub_spectrum->parsed()) cfg.command = Command::spectrum;
  if (sub_verify->parsed()) cfg.command = Command::verify;
  if (sub_tau_star->parsed()) cfg.command = Command::tau_star;
  if (sub_scan->parsed()) cfg.command = Command::scan;
  if (sub_energy->parsed()) cfg.command = Command::energy;
  if (sub_bounds->parsed()) cfg.command = Command::bounds;

  CLI::App* used = app.get_subcommands().front();
  auto passed = [&](const std::string& name) { return used->count(name) > 0; };

  if (passed("--model")) {
    if (model_name == "ball") cfg.model = ModelKind::ball;
    else if (model_name == "annulus") cfg.model = ModelKind::annulus;
    else if (model_name == "cylinder") cfg.model = ModelKind::cylinder;
    else if (model_name == "sphere") cfg.model = ModelKind::sphere;
    else {
      std::cerr << "error: unknown model '" << model_name << "'\n";
      return 2;
    }
  }
  if (passed("--tau")) cfg.tau = tau;
  if (passed("--alpha")) cfg.alpha = alpha;
  if (passed("--rho")) cfg.rho = rho;
  if (passed("--beta")) cfg.beta = beta;
  if (passed("--lmax")) cfg.lmax = lmax;
  if (passed("--delta")) cfg.delta = delta;
  if (passed("--rel-tol")) cfg.rel_tol = rel_tol;
  if (passed("--inject-error")) cfg.inject_error = inject;
  try {
    if (passed("--delta-grid")) cfg.delta_grid = parse_grid(delta_grid_text);
    if (passed("--tau-grid")) cfg.tau_grid = parse_grid(tau_grid_text);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  cfg.format = format_name == "json" ? OutputFormat::json : OutputFormat::csv;

  if (!output_path.empty()) {
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output file '" << output_path << "'\n";
      return 2;
    }
    return paneitz::cli::run_command(cfg, out, std::cerr);
  }
  return paneitz::cli::run_command(cfg, std::cout, std::cerr);
}
