#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "paneitz/cli/run.hpp"

using Catch::Matchers::WithinRel;

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(PANEITZ_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("cli: spectrum tables") {
  const CliResult ball = run_cli("spectrum --model ball --lmax 3");
  CHECK(ball.exit_code == 0);
  const auto rows = lines_of(ball.output);
  REQUIRE(rows.size() == 5);  // header + zero + 3 levels
  CHECK(rows[0] == "model,ell,branch,eigenvalue,multiplicity");
  const auto zero = split_csv(rows[1]);
  CHECK(zero[1] == "0");
  CHECK(zero[2] == "zero");
  CHECK(std::stod(zero[3]) == 0.0);
  CHECK(zero[4] == "1");
  const auto first = split_csv(rows[2]);
  CHECK(std::stod(first[3]) == 12.0);
  CHECK(first[4] == "4");
  // eigenvalues ascend
  double prev = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = std::stod(split_csv(rows[i])[3]);
    CHECK(v >= prev);
    prev = v;
  }

  const CliResult ann = run_cli("spectrum --model annulus --tau 1 --alpha 0.5 --lmax 2");
  const auto ann_rows = lines_of(ann.output);
  REQUIRE(ann_rows.size() == 1 + 2 + 4);  // header, zero + zero-mode, two levels x two branches
  CHECK(split_csv(ann_rows[1])[2] == "zero");
  bool has_zero_mode = false;
  for (const auto& line : ann_rows)
    if (split_csv(line).size() == 5 && split_csv(line)[1] == "0" && split_csv(line)[2] == "plus")
      has_zero_mode = true;
  CHECK(has_zero_mode);

  const CliResult cyl = run_cli("spectrum --model cylinder --period 6.283185307179586 --lmax 0");
  const auto cyl_rows = lines_of(cyl.output);
  REQUIRE(cyl_rows.size() == 3);  // header + zero + l=0
  CHECK_THAT(std::stod(split_csv(cyl_rows[2])[3]), WithinRel(5.0, 1e-12));
}

TEST_CASE("cli: verify passes for ball and annulus") {
  const CliResult ball = run_cli("verify --model ball --lmax 5");
  CHECK(ball.exit_code == 0);
  for (std::size_t i = 1; i < lines_of(ball.output).size(); ++i) {
    const auto cells = split_csv(lines_of(ball.output)[i]);
    CHECK(std::stod(cells[5]) <= 1e-10);
  }
  const CliResult ann = run_cli("verify --model annulus --tau 1 --alpha 0.3 --lmax 5");
  CHECK(ann.exit_code == 0);

  // corrupted closed forms must be caught (exit 3)
  const CliResult bad = run_cli("verify --model ball --lmax 3 --inject-error 1e-5");
  CHECK(bad.exit_code == 3);
}

TEST_CASE("cli: tau-star") {
  const CliResult ok = run_cli("tau-star --beta 0.25");
  CHECK(ok.exit_code == 0);
  const auto rows = lines_of(ok.output);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "beta,tau_star,crossing_count,f_at_tau_star,f_residual");
  const auto cells = split_csv(rows[1]);
  CHECK(std::stod(cells[4]) <= 1e-9);
  CHECK(cells[2] == "1");

  CHECK(run_cli("tau-star --beta 0.3").exit_code == 2);   // beta > 1/4
  CHECK(run_cli("tau-star").exit_code == 2);              // missing beta
}

TEST_CASE("cli: scan default grid") {
  const CliResult scan = run_cli("scan");
  CHECK(scan.exit_code == 0);
  const auto rows = lines_of(scan.output);
  // header + 20*10 rows + summary comment
  REQUIRE(rows.size() == 1 + 200 + 1);
  CHECK(rows[0] == "tau,ell,lambda_minus,lambda0_plus,violation");
  CHECK(rows.back().rfind("# summary violations=0", 0) == 0);
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) CHECK(split_csv(rows[i])[4] == "0");
}

TEST_CASE("cli: energy") {
  const CliResult one = run_cli("energy --period 1 --delta 1");
  CHECK(one.exit_code == 0);
  const auto rows = lines_of(one.output);
  REQUIRE(rows.size() == 2);
  CHECK_THAT(std::stod(split_csv(rows[1])[1]), WithinRel(18.0 * paneitz::pi * paneitz::pi, 1e-9));

  const CliResult grid = run_cli("energy --period 2 --delta-grid 0.1:1:5");
  REQUIRE(lines_of(grid.output).size() == 6);
}

TEST_CASE("cli: bounds") {
  const CliResult ball = run_cli("bounds --model ball");
  const auto cells = split_csv(lines_of(ball.output)[1]);
  CHECK(cells[0] == "ball_boundary_bound");
  CHECK_THAT(std::stod(cells[1]), WithinRel(24.0 * paneitz::pi * paneitz::pi, 1e-12));

  const CliResult sphere = run_cli("bounds --model sphere");
  CHECK_THAT(std::stod(split_csv(lines_of(sphere.output)[1])[1]),
             WithinRel(64.0 * paneitz::pi * paneitz::pi, 1e-12));

  const CliResult all = run_cli("bounds");
  CHECK(all.exit_code == 0);
  CHECK(lines_of(all.output).size() >= 6);
}

TEST_CASE("cli: json schema") {
  const CliResult json = run_cli("spectrum --model ball --lmax 1 --format json");
  CHECK(json.exit_code == 0);
  CHECK(json.output.rfind("{\"schema_version\":1,\"command\":\"spectrum\",\"params\":", 0) == 0);
  CHECK(json.output.find("\"rows\":[") != std::string::npos);
  CHECK(json.output.find("\"eigenvalue\":1.2000000000000000e+01") != std::string::npos);
}

TEST_CASE("cli: determinism across reruns and thread counts") {
  const std::vector<std::string> cmds = {
      "spectrum --model annulus --tau 1 --alpha 0.5 --lmax 4",
      "scan --tau-grid 0.1:2:5 --lmax 6",
      "energy --period 1 --delta-grid 0.05:1:8",
      "tau-star --beta 0.15",
      "bounds --model ball --format json",
  };
  for (const auto& cmd : cmds) {
    const CliResult a = run_cli(cmd);
    const CliResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
  }
  // worker threads must not change a single byte
  const CliResult serial = run_cli("scan", "PANEITZ_LAB_THREADS=1");
  const CliResult parallel = run_cli("scan", "PANEITZ_LAB_THREADS=4");
  CHECK(serial.output == parallel.output);
  CHECK(run_cli("scan", "PANEITZ_LAB_THREADS=frog").exit_code == 2);
}

TEST_CASE("cli: argument errors") {
  CHECK(run_cli("spectrum --model teapot").exit_code == 2);
  CHECK(run_cli("spectrum --frobnicate 1").exit_code == 2);
  CHECK(run_cli("spectrum").exit_code == 2);                      // missing model
  CHECK(run_cli("").exit_code == 2);                              // missing subcommand
  CHECK(run_cli("verify --model cylinder").exit_code == 2);       // no cylinder oracle
  CHECK(run_cli("spectrum --model annulus --tau 1 --rho 0.5").exit_code == 2);
  CHECK(run_cli("spectrum --model annulus --tau 400").exit_code == 2);
  CHECK(run_cli("energy --delta-grid nonsense").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli: output file") {
  const std::string path = "cli_test_output.csv";
  const CliResult r = run_cli("bounds --model ball --output " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
  FILE* f = fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::array<char, 512> buf{};
  const std::size_t n = fread(buf.data(), 1, buf.size(), f);
  fclose(f);
  std::remove(path.c_str());
  const std::string content(buf.data(), n);
  CHECK(content.rfind("name,value", 0) == 0);
}

TEST_CASE("run_command is callable in-process") {
  using namespace paneitz::cli;
  RunConfig cfg;
  cfg.command = Command::spectrum;
  cfg.model = ModelKind::ball;
  cfg.lmax = 2;
  std::ostringstream data, diag;
  CHECK(run_command(cfg, data, diag) == 0);
  CHECK(lines_of(data.str()).size() == 4);
}
