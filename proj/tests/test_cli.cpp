#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string out_path = "cli_stdout_" + std::to_string(counter++) + ".tmp";
  std::string cmd = std::string(SPINEVO_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  std::ifstream f(out_path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  std::remove(out_path.c_str());
  int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return RunResult{code, ss.str()};
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double report_value(const std::string& text, const std::string& key) {
  for (const auto& line : split_lines(text)) {
    auto pos = line.find(" = ");
    if (pos != std::string::npos && line.substr(0, pos) == key)
      return std::stod(line.substr(pos + 3));
  }
  FAIL("missing report key " + key);
  return 0.0;
}

std::string report_string(const std::string& text, const std::string& key) {
  for (const auto& line : split_lines(text)) {
    auto pos = line.find(" = ");
    if (pos != std::string::npos && line.substr(0, pos) == key) return line.substr(pos + 3);
  }
  FAIL("missing report key " + key);
  return "";
}

}  // namespace

TEST_CASE("evolve writes the trace table with the fixed header") {
  RunResult r = run_cli("evolve --model B --n 64 --t-max-gnt 6 --points 100");
  REQUIRE(r.exit_code == 0);
  auto lines = split_lines(r.stdout_text);
  REQUIRE(lines.size() == 101);
  CHECK(lines[0] == "t,gnt,P,R,S_e");
  CHECK(lines[1] == "0,0,1,1,0");
  auto last = split_csv(lines.back());
  REQUIRE(last.size() == 5);
  CHECK_THAT(std::stod(last[1]), Catch::Matchers::WithinRel(6.0, 1e-12));
}

TEST_CASE("evolve at n = 256 passes through half survival near gnt = 1") {
  RunResult r = run_cli("evolve --model A --n 256 --t-max-gnt 3 --points 601");
  REQUIRE(r.exit_code == 0);
  auto lines = split_lines(r.stdout_text);
  REQUIRE(lines.size() == 602);
  auto row = split_csv(lines[201]);  // gnt = 3*200/600 = 1
  CHECK_THAT(std::stod(row[1]), Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(std::stod(row[2]), Catch::Matchers::WithinAbs(0.5, 0.01));
}

TEST_CASE("evolve handles the analytic rotation model") {
  RunResult r = run_cli("evolve --model C --N 2 --t-max 0.5 --points 101");
  REQUIRE(r.exit_code == 0);
  auto lines = split_lines(r.stdout_text);
  auto row = split_csv(lines[51]);  // t = 0.25
  CHECK_THAT(std::stod(row[0]), Catch::Matchers::WithinAbs(0.25, 1e-12));
  CHECK_THAT(std::stod(row[3]), Catch::Matchers::WithinAbs(0.5, 1e-9));
  CHECK(std::stod(row[4]) == 0.0);
}

TEST_CASE("bounds reports for both tier models") {
  RunResult a = run_cli("bounds --model A --n 8 --epsilon 1e-9");
  REQUIRE(a.exit_code == 0);
  CHECK_THAT(report_value(a.stdout_text, "tau_limit"),
             Catch::Matchers::WithinRel(3.14159265 / 16.0, 1e-3));
  CHECK(report_string(a.stdout_text, "dominant") == "MeanEnergy");

  RunResult b = run_cli("bounds --model B --n 8 --epsilon 1e-9");
  REQUIRE(b.exit_code == 0);
  CHECK_THAT(report_value(b.stdout_text, "tau_limit"),
             Catch::Matchers::WithinRel(3.14159265 / 16.0, 1e-3));
  CHECK(report_string(b.stdout_text, "dominant") == "Spread");

  RunResult b64 = run_cli("bounds --model B --n 64 --epsilon 0.1");
  REQUIRE(b64.exit_code == 0);
  CHECK_THAT(report_value(b64.stdout_text, "E0"),
             Catch::Matchers::WithinRel(-2066.914813723105, 1e-8));
  CHECK(report_value(b64.stdout_text, "deltaE") == 64.0);
}

TEST_CASE("identical configurations produce byte-identical output") {
  std::string args = "evolve --model B --n 32 --t-max-gnt 4 --points 200";
  RunResult r1 = run_cli(args);
  RunResult r2 = run_cli(args);
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.stdout_text == r2.stdout_text);
}

TEST_CASE("configuration errors exit with code 2") {
  CHECK(run_cli("evolve --model X --n 8").exit_code == 2);
  CHECK(run_cli("evolve --model B --n 0").exit_code == 2);
  CHECK(run_cli("evolve --model B --n 8 --t-max 1 --t-max-gnt 1").exit_code == 2);
  CHECK(run_cli("bounds --model B --n 8 --epsilon 2").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("fit-e0 reproduces the quadratic ground-state fit") {
  RunResult r = run_cli("fit-e0 --n-min 4 --n-max 100");
  REQUIRE(r.exit_code == 0);
  double a = report_value(r.stdout_text, "a");
  double b = report_value(r.stdout_text, "b");
  double res = report_value(r.stdout_text, "max_rel_residual");
  CHECK(a > -0.36);
  CHECK(a < -0.32);
  CHECK(b > -0.50);
  CHECK(b < -0.48);
  CHECK(res <= 0.01);
}

TEST_CASE("sweep emits crossing rows with spacing increments") {
  RunResult r = run_cli(
      "sweep --model B --observable R --threshold 0.4 --n-list 8,16,32 --horizon-gnt 20");
  REQUIRE(r.exit_code == 0);
  auto lines = split_lines(r.stdout_text);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "n,observable,threshold,status,t_star,gnt_star,dgnt,min_value");
  auto row1 = split_csv(lines[1]);
  CHECK(row1[0] == "8");
  CHECK(row1[3] == "ok");
  auto row2 = split_csv(lines[2]);
  CHECK_THAT(std::stod(row2[6]), Catch::Matchers::WithinAbs(0.406, 0.02));
}

TEST_CASE("sweep reports unreachable thresholds per row") {
  RunResult r = run_cli(
      "sweep --model B --observable P --threshold 0.5 --n-list 8 --horizon-gnt 0.4");
  REQUIRE(r.exit_code == 0);
  auto lines = split_lines(r.stdout_text);
  auto row = split_csv(lines[1]);
  CHECK(row[3] == "no-crossing");
  CHECK(std::stod(row[7]) > 0.5);
}

TEST_CASE("figure tables carry the advertised columns") {
  RunResult f1 = run_cli("figure 1 --n 64 --points 51");
  REQUIRE(f1.exit_code == 0);
  auto lines1 = split_lines(f1.stdout_text);
  CHECK(lines1[0] == "gnt,P,epsilon_saturation");
  REQUIRE(lines1.size() == 52);
  auto row = split_csv(lines1[1]);
  CHECK(std::stod(row[1]) == 1.0);
  CHECK(std::stod(row[2]) == 1.0);

  RunResult f4 = run_cli("figure 4 --points 41");
  REQUIRE(f4.exit_code == 0);
  auto lines4 = split_lines(f4.stdout_text);
  CHECK(lines4[0] == "gnt,R_n8,R_n16,R_n32,R_n64,R_n128,R_n256,R_n512");

  CHECK(run_cli("figure 5").exit_code == 2);
}

TEST_CASE("figure can render an SVG next to the table") {
  RunResult f = run_cli("figure 3 --n 16 --points 41 --out cli_fig3.csv --svg");
  REQUIRE(f.exit_code == 0);
  std::ifstream svg("cli_fig3.csv.svg");
  REQUIRE(svg.good());
  std::stringstream ss;
  ss << svg.rdbuf();
  CHECK(ss.str().find("<svg") != std::string::npos);
  std::remove("cli_fig3.csv");
  std::remove("cli_fig3.csv.svg");
}

TEST_CASE("oracle-check passes on an unmodified build") {
  RunResult r = run_cli("oracle-check");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("all checks passed") != std::string::npos);
}
