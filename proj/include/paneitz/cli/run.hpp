#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "../lab.hpp"
#include "format.hpp"

namespace paneitz::cli {

enum class Command { spectrum, verify, tau_star, scan, energy, bounds };
enum class ModelKind { ball, annulus, cylinder, sphere };
enum class OutputFormat { csv, json };

inline const char* to_string(ModelKind m) {
  switch (m) {
    case ModelKind::ball: return "ball";
    case ModelKind::annulus: return "annulus";
    case ModelKind::cylinder: return "cylinder";
    case ModelKind::sphere: return "sphere";
  }
  return "?";
}

/// Log-spaced grid description a:b:n.
struct GridSpec {
  double lo;
  double hi;
  int count;
};

struct RunConfig {
  Command command = Command::spectrum;
  std::optional<ModelKind> model;
  std::optional<double> tau;      // default 1.0 where needed
  std::optional<double> alpha;    // default 0.5
  std::optional<double> rho;      // alternative to --tau (tau = -log rho)
  double ratio = 1.0;
  double period = 2.0 * pi;
  std::optional<double> beta;
  double epsilon = 0.5;
  double delta0 = 0.5;
  std::optional<long long> lmax;  // spectrum/verify default 20, scan default 10
  std::optional<double> delta;
  std::optional<GridSpec> delta_grid;
  std::optional<GridSpec> tau_grid;
  OutputFormat format = OutputFormat::csv;
  std::optional<double> rel_tol;  // overrides quadrature/root relative tolerance
  std::optional<double> inject_error;  // hidden test hook: perturbs closed forms in verify
  int threads = 1;                // from PANEITZ_LAB_THREADS; 1 = fully serial
};

namespace detail_cli {

inline std::vector<double> log_spaced(const GridSpec& g) {
  if (!(g.lo > 0.0) || !(g.hi > g.lo) || g.count < 2)
    throw std::domain_error("grid: expects 0 < lo < hi and count >= 2");
  std::vector<double> v(static_cast<std::size_t>(g.count));
  const double span = std::log(g.hi / g.lo);
  for (int i = 0; i < g.count; ++i)
    v[static_cast<std::size_t>(i)] = g.lo * std::exp(span * static_cast<double>(i) / (g.count - 1));
  v.front() = g.lo;
  v.back() = g.hi;
  return v;
}

/// Evaluates fn(0..n-1) into a vector, optionally across worker threads.
/// Slot i always receives fn(i), so the result is identical for any thread
/// count; emission order is the caller's.
template <class T, class Fn>
std::vector<T> compute_ordered(std::size_t n, int threads, Fn&& fn) {
  std::vector<T> out(n);
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

inline AnnulusModel make_annulus(const RunConfig& cfg) {
  if (cfg.rho && cfg.tau)
    throw std::domain_error("pass either --tau or --rho, not both");
  double tau;
  if (cfg.rho) {
    if (!(*cfg.rho > 0.0 && *cfg.rho < 1.0))
      throw std::domain_error("--rho must lie in (0, 1)");
    tau = -std::log(*cfg.rho);
  } else {
    tau = cfg.tau.value_or(1.0);
  }
  return AnnulusModel(tau, cfg.alpha.value_or(0.5));
}

inline QuadratureSpec quadrature_spec(const RunConfig& cfg) {
  QuadratureSpec spec;
  if (cfg.rel_tol) {
    if (!(*cfg.rel_tol > 0.0)) throw std::domain_error("--rel-tol must be positive");
    spec.rel_tol = *cfg.rel_tol;
  }
  return spec;
}

inline RootSpec root_spec(const RunConfig& cfg) {
  RootSpec spec;
  if (cfg.rel_tol) {
    if (!(*cfg.rel_tol > 0.0)) throw std::domain_error("--rel-tol must be positive");
    spec.rel_tol = *cfg.rel_tol;
  }
  return spec;
}

inline int branch_rank(Branch b) {
  switch (b) {
    case Branch::zero: return 0;
    case Branch::minus: return 1;
    case Branch::plus: return 2;
    case Branch::cylinder: return 3;
  }
  return 4;
}

inline void sort_pairs(std::vector<EigenPair>& pairs) {
  std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair& x, const EigenPair& y) {
    if (x.value != y.value) return x.value < y.value;
    if (x.mode.ell() != y.mode.ell()) return x.mode.ell() < y.mode.ell();
    return branch_rank(x.branch) < branch_rank(y.branch);
  });
}

}  // namespace detail_cli

inline Table cmd_spectrum(const RunConfig& cfg) {
  if (!cfg.model) throw std::domain_error("spectrum requires --model ball|annulus|cylinder");
  const long long lmax = cfg.lmax.value_or(20);
  if (lmax < 0) throw std::domain_error("--lmax must be nonnegative");
  Table table;
  table.command = "spectrum";
  table.columns = {"model", "ell", "branch", "eigenvalue", "multiplicity"};
  std::vector<EigenPair> pairs;
  const std::string name = to_string(*cfg.model);
  switch (*cfg.model) {
    case ModelKind::ball: {
      pairs.push_back({0.0, ModeIndex(0), Branch::zero, 1, RadialProfile::constant()});
      for (long long l = 1; l <= lmax; ++l) {
        const ModeIndex m(l);
        pairs.push_back({ball_eigenvalue(m), m, Branch::plus, m.multiplicity(),
                         ball_eigenfunction(m)});
      }
      table.params = {{"model", name}, {"lmax", lmax}};
      break;
    }
    case ModelKind::annulus: {
      const AnnulusModel model = detail_cli::make_annulus(cfg);
      pairs.push_back({0.0, ModeIndex(0), Branch::zero, 1, RadialProfile::constant()});
      pairs.push_back(annulus_zero_mode(model));
      for (long long l = 1; l <= lmax; ++l) {
        pairs.push_back(annulus_eigenpair(ModeIndex(l), Branch::minus, model));
        pairs.push_back(annulus_eigenpair(ModeIndex(l), Branch::plus, model));
      }
      table.params = {{"model", name}, {"tau", model.tau()}, {"alpha", model.alpha()},
                      {"lmax", lmax}};
      break;
    }
    case ModelKind::cylinder: {
      const CylinderModel model(cfg.period);
      pairs.push_back({0.0, ModeIndex(0), Branch::zero, 1, RadialProfile::constant()});
      for (long long l = 0; l <= lmax; ++l) {
        const ModeIndex m(l);
        pairs.push_back({cylinder_eigenvalue(m, model), m, Branch::cylinder, m.multiplicity(),
                         std::nullopt});
      }
      table.params = {{"model", name}, {"period", model.period()}, {"lmax", lmax}};
      break;
    }
    case ModelKind::sphere:
      throw std::domain_error("spectrum supports --model ball|annulus|cylinder");
  }
  detail_cli::sort_pairs(pairs);
  for (const auto& p : pairs)
    table.rows.push_back({name, p.mode.ell(), std::string(to_string(p.branch)), p.value,
                          p.multiplicity});
  return table;
}

/// Closed forms against boundary-determinant oracle roots; exit 3 when any
/// relative deviation exceeds 1e-8.
inline Table cmd_verify(const RunConfig& cfg, int& exit_code) {
  if (!cfg.model || (*cfg.model != ModelKind::ball && *cfg.model != ModelKind::annulus))
    throw std::domain_error("verify requires --model ball|annulus");
  const long long lmax = cfg.lmax.value_or(20);
  if (lmax < 1) throw std::domain_error("--lmax must be >= 1");
  const double inject = cfg.inject_error.value_or(0.0);

  Table table;
  table.command = "verify";
  table.columns = {"model", "ell", "branch", "closed_form", "oracle", "rel_deviation"};
  double worst = 0.0;
  auto emit = [&](const std::string& model_name, long long ell, Branch branch, double closed,
                  double oracle) {
    const double dev = std::abs(closed - oracle) / std::max(std::abs(oracle), 1e-300);
    worst = std::max(worst, dev);
    table.rows.push_back({model_name, ell, std::string(to_string(branch)), closed, oracle, dev});
  };
  auto nearest = [](const std::vector<double>& roots, double target) {
    double best = roots.front();
    for (double r : roots)
      if (std::abs(r - target) < std::abs(best - target)) best = r;
    return best;
  };

  if (*cfg.model == ModelKind::ball) {
    table.params = {{"model", std::string("ball")}, {"lmax", lmax}};
    const BallModel model;
    for (long long l = 1; l <= lmax; ++l) {
      const double closed = ball_eigenvalue(ModeIndex(l)) * (1.0 + inject);
      const auto roots =
          oracle_eigenvalues(ModeIndex(l), model, 2.0 * ball_eigenvalue(ModeIndex(l)));
      if (roots.empty())
        throw numerical_error("verify: oracle found no ball root at l=" + std::to_string(l));
      emit("ball", l, Branch::plus, closed, nearest(roots, closed));
    }
  } else {
    const AnnulusModel model = detail_cli::make_annulus(cfg);
    table.params = {{"model", std::string("annulus")}, {"tau", model.tau()},
                    {"alpha", model.alpha()}, {"lmax", lmax}};
    {
      const double closed = annulus_zero_mode(model).value;
      const auto roots = oracle_eigenvalues(ModeIndex(0), model, 2.0 * closed, 512,
                                            1e-3 * closed);
      if (roots.empty())
        throw numerical_error("verify: oracle found no zero-mode root");
      emit("annulus", 0, Branch::plus, closed * (1.0 + inject), nearest(roots, closed));
    }
    for (long long l = 1; l <= lmax; ++l) {
      const auto [lam_minus, lam_plus] = annulus_eigenvalues(ModeIndex(l), model);
      const auto roots = oracle_eigenvalues(ModeIndex(l), model, 2.0 * lam_plus, 512,
                                            1e-3 * lam_minus);
      if (roots.empty())
        throw numerical_error("verify: oracle found no roots at l=" + std::to_string(l));
      emit("annulus", l, Branch::minus, lam_minus * (1.0 + inject), nearest(roots, lam_minus));
      emit("annulus", l, Branch::plus, lam_plus * (1.0 + inject), nearest(roots, lam_plus));
    }
  }
  exit_code = worst > 1e-8 ? 3 : 0;
  if (exit_code != 0)
    table.trailing_comments.push_back("verification FAILED: max relative deviation " +
                                      format_double(worst));
  return table;
}

inline Table cmd_tau_star(const RunConfig& cfg) {
  if (!cfg.beta) throw std::domain_error("tau-star requires --beta");
  const double beta = *cfg.beta;
  const TauStarResult res = find_tau_star(beta, detail_cli::root_spec(cfg));
  const double f_star = gap_ratio(beta, res.tau_star);
  Table table;
  table.command = "tau-star";
  table.params = {{"beta", beta}};
  table.columns = {"beta", "tau_star", "crossing_count", "f_at_tau_star", "f_residual"};
  table.rows.push_back({beta, res.tau_star, res.crossing_count, f_star,
                        std::abs(f_star - 1.0)});
  return table;
}

inline Table cmd_scan(const RunConfig& cfg, std::ostream& diag) {
  const GridSpec grid_spec = cfg.tau_grid.value_or(GridSpec{0.05, 5.0, 20});
  const long long lmax = cfg.lmax.value_or(10);
  if (lmax < 2) throw std::domain_error("--lmax must be >= 2 for scan");
  const double alpha = cfg.alpha.value_or(0.5);
  const std::vector<double> taus = detail_cli::log_spaced(grid_spec);

  const auto reports = detail_cli::compute_ordered<MonotonicityReport>(
      taus.size(), cfg.threads,
      [&](std::size_t i) { return scan_monotonicity(AnnulusModel(taus[i], alpha), lmax); });

  Table table;
  table.command = "scan";
  table.params = {{"tau_lo", grid_spec.lo}, {"tau_hi", grid_spec.hi},
                  {"tau_count", static_cast<long long>(grid_spec.count)}, {"alpha", alpha},
                  {"lmax", lmax}};
  table.columns = {"tau", "ell", "lambda_minus", "lambda0_plus", "violation"};
  long long violations = 0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const auto& rep = reports[i];
    violations += static_cast<long long>(rep.violations.size());
    for (std::size_t j = 0; j < rep.values.size(); ++j) {
      const bool violated =
          j > 0 && rep.values[j].lambda_minus <= rep.values[j - 1].lambda_minus;
      table.rows.push_back({taus[i], rep.values[j].ell, rep.values[j].lambda_minus,
                            rep.lambda0_plus, static_cast<long long>(violated ? 1 : 0)});
    }
  }
  table.trailing_comments.push_back("summary violations=" + std::to_string(violations) +
                                    " rows=" + std::to_string(table.rows.size()));
  diag << "scan: " << table.rows.size() << " rows, " << violations << " violation(s)\n";
  return table;
}

inline Table cmd_energy(const RunConfig& cfg) {
  const CylinderModel model(cfg.period);
  const QuadratureSpec spec = detail_cli::quadrature_spec(cfg);
  std::vector<double> deltas;
  if (cfg.delta && cfg.delta_grid)
    throw std::domain_error("pass either --delta or --delta-grid, not both");
  if (cfg.delta)
    deltas = {*cfg.delta};
  else
    deltas = detail_cli::log_spaced(cfg.delta_grid.value_or(GridSpec{0.01, 1.0, 32}));

  const auto results = detail_cli::compute_ordered<EnergyResult>(
      deltas.size(), cfg.threads,
      [&](std::size_t i) { return cylinder_moebius_energy(deltas[i], model, spec); });

  Table table;
  table.command = "energy";
  table.params = {{"period", model.period()}};
  if (cfg.delta) {
    table.params.emplace_back("delta", *cfg.delta);
  } else {
    const GridSpec g = cfg.delta_grid.value_or(GridSpec{0.01, 1.0, 32});
    table.params.emplace_back("delta_lo", g.lo);
    table.params.emplace_back("delta_hi", g.hi);
    table.params.emplace_back("delta_count", static_cast<long long>(g.count));
  }
  table.columns = {"delta", "energy", "energy_delta_over_pi_rho"};
  for (std::size_t i = 0; i < deltas.size(); ++i)
    table.rows.push_back({deltas[i], results[i].value,
                          results[i].value * deltas[i] / (pi * model.period())});
  return table;
}

inline Table cmd_bounds(const RunConfig& cfg, std::ostream& diag) {
  const QuadratureSpec spec = detail_cli::quadrature_spec(cfg);
  Table table;
  table.command = "bounds";
  table.columns = {"name", "value"};
  const std::string which = cfg.model ? to_string(*cfg.model) : "all";
  table.params = {{"model", which}};
  auto want = [&](ModelKind m) { return !cfg.model || *cfg.model == m; };
  if (want(ModelKind::sphere))
    table.rows.push_back({std::string("sphere_energy_sum"), sphere_coordinate_energy_sum(spec)});
  if (want(ModelKind::ball)) {
    table.rows.push_back({std::string("ball_boundary_bound"), ball_bound_constant()});
    diag << "ball bound is sharp: attained by the flat unit ball\n";
  }
  if (want(ModelKind::cylinder)) {
    const CylinderModel model(cfg.period);
    table.params.emplace_back("period", model.period());
    table.params.emplace_back("epsilon", cfg.epsilon);
    table.params.emplace_back("delta0", cfg.delta0);
    table.rows.push_back({std::string("cylinder_energy_delta1"),
                          cylinder_moebius_energy(1.0, model, spec).value});
    const HerschBound hb = hersch_bound_constant(cfg.epsilon, cfg.delta0, spec);
    table.rows.push_back({std::string("hersch_constant"), hb.constant});
    table.rows.push_back({std::string("hersch_maximizing_delta"), hb.maximizing_delta});
  }
  if (want(ModelKind::annulus)) {
    const double rho = cfg.rho.value_or(cfg.tau ? std::exp(-*cfg.tau) : std::exp(-1.0));
    table.params.emplace_back("rho", rho);
    table.params.emplace_back("ratio", cfg.ratio);
    table.rows.push_back({std::string("annulus_boundary_bound"),
                          annulus_bound_constant(rho, cfg.ratio)});
  }
  return table;
}

/// Runs the configured command, writing the data stream to `data` and
/// diagnostics to `diag`.  Returns the process exit code: 0 success,
/// 2 argument/domain error, 3 numerical failure.
inline int run_command(const RunConfig& cfg, std::ostream& data, std::ostream& diag) {
  try {
    Table table;
    int code = 0;
    switch (cfg.command) {
      case Command::spectrum: table = cmd_spectrum(cfg); break;
      case Command::verify: table = cmd_verify(cfg, code); break;
      case Command::tau_star: table = cmd_tau_star(cfg); break;
      case Command::scan: table = cmd_scan(cfg, diag); break;
      case Command::energy: table = cmd_energy(cfg); break;
      case Command::bounds: table = cmd_bounds(cfg, diag); break;
    }
    if (cfg.format == OutputFormat::csv)
      write_csv(table, data);
    else
      write_json(table, data);
    return code;
  } catch (const numerical_error& e) {
    diag << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    diag << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace paneitz::cli
