#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(FERMI_RMT_BIN) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  while (std::fgets(buf.data(), buf.size(), p) != nullptr) r.out += buf.data();
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path tmpdir() {
  const fs::path d = CLI_TEST_TMPDIR;
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("exact spot values") {
  const auto r = run("exact --m 1 --n 1 --stat mean-entropy");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("value 0.5") != std::string::npos);

  const auto v = run("exact --m 1 --n 1 --stat variance-entropy");
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("0.03502197771725") != std::string::npos);
  CHECK(v.out.find("conjecture") == std::string::npos);  // m = n is proven

  const auto c = run("exact --m 1 --n 1 --stat mean-capacity");
  CHECK(c.exit_code == 0);
  CHECK(c.out.find("0.2149780222827") != std::string::npos);
}

TEST_CASE("exact labels the conjecture for m != n") {
  const auto r = run("exact --m 2 --n 4 --stat variance-entropy");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("conjecture") != std::string::npos);
}

TEST_CASE("exit codes: invalid input and unsupported closed form") {
  CHECK(run("exact --m 0 --n 1 --stat mean-entropy").exit_code == 2);
  CHECK(run("exact --m 3 --n 2 --stat mean-entropy").exit_code == 2);
  CHECK(run("exact --m 1 --n 1 --stat no-such-stat").exit_code == 2);
  CHECK(run("exact --m 2 --n 8 --stat mean-capacity").exit_code == 3);
  CHECK(run("figure --which 1 --out /nonexistent/dir/x.csv --m-max 1 --samples 400").exit_code == 4);
  CHECK(run("no-such-subcommand").exit_code == 2);
}

TEST_CASE("quad and sums routes agree with exact from the command line") {
  const auto q = run("quad --m 2 --n 2 --stat variance-entropy");
  CHECK(q.exit_code == 0);
  CHECK(q.out.find("value 0.03059323164228") != std::string::npos);
  const auto s = run("sums --m 2 --n 2");
  CHECK(s.exit_code == 0);
  CHECK(s.out.find("variance_entropy 0.03059323164228") != std::string::npos);
}

TEST_CASE("sample subcommand reports a summary with error bars") {
  const auto r = run("sample --m 2 --n 2 --stat entropy --samples 2000 --seed 5 --burn-in 200 --thinning 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("mean ") != std::string::npos);
  CHECK(r.out.find("stderr_mean ") != std::string::npos);
  CHECK(r.out.find("acceptance_rate ") != std::string::npos);

  const auto x = run("sample --m 2 --n 4 --stat standardized-entropy --samples 2000 --seed 5 --burn-in 200 --thinning 3");
  CHECK(x.exit_code == 0);
  CHECK(x.out.find("skewness ") != std::string::npos);
  CHECK(x.out.find("variance_model conjecture") != std::string::npos);
}

TEST_CASE("verify identities emits a passing JSON report") {
  const fs::path out = tmpdir() / "identities.json";
  const auto r = run("verify --suite identities --trials 100 --out " + out.string());
  CHECK(r.exit_code == 0);
  const auto report = nlohmann::json::parse(slurp(out));
  CHECK(report.is_array());
  CHECK(report.size() >= 16);
  for (const auto& c : report) {
    CHECK(c.contains("check"));
    CHECK(c.contains("params"));
    CHECK(c.contains("max_error"));
    CHECK(c["pass"].get<bool>());
  }
}

TEST_CASE("verify routes passes at small m") {
  const auto r = run("verify --suite routes --max-m 3 --out " + (tmpdir() / "routes.json").string());
  CHECK(r.exit_code == 0);
}

TEST_CASE("figure 1 CSV has the documented columns and reproduces byte-identically") {
  const fs::path out1 = tmpdir() / "fig1_a.csv";
  const fs::path out2 = tmpdir() / "fig1_b.csv";
  CHECK(run("figure --which 1 --out " + out1.string() + " --m-max 2 --samples 600 --seed 9").exit_code == 0);
  CHECK(run("figure --which 1 --out " + out2.string() + " --m-max 2 --samples 600 --seed 9").exit_code == 0);
  const std::string a = slurp(out1);
  CHECK(a == slurp(out2));
  CHECK(a.find("# meta: tool=fermi-rmt") != std::string::npos);
  CHECK(a.find("m,n,exact_var,mc_var,mc_stderr") != std::string::npos);
}

TEST_CASE("figure 2 and 3 produce their column sets") {
  const fs::path f2 = tmpdir() / "fig2.csv";
  CHECK(run("figure --which 2 --out " + f2.string() + " --m 2 --n 4 --samples 1000 --bins 11").exit_code == 0);
  CHECK(slurp(f2).find("bin_center,density,gauss_ref") != std::string::npos);
  const fs::path f3 = tmpdir() / "fig3.csv";
  CHECK(run("figure --which 3 --out " + f3.string() + " --a 0 --n-max 3 --samples 600").exit_code == 0);
  CHECK(slurp(f3).find("n,exact_capacity,mc_capacity,mc_stderr") != std::string::npos);
}

TEST_CASE("FERMI_RMT_THREADS is honored in CSV meta and results") {
  const fs::path out1 = tmpdir() / "env1.csv";
  const fs::path out2 = tmpdir() / "env2.csv";
  const std::string base = " figure --which 3 --a 0 --n-max 2 --samples 400 --seed 4 --out ";
  {
    const std::string cmd = "FERMI_RMT_THREADS=1 " + std::string(FERMI_RMT_BIN) + base + out1.string();
    REQUIRE(std::system(cmd.c_str()) == 0);
  }
  {
    const std::string cmd = "FERMI_RMT_THREADS=2 " + std::string(FERMI_RMT_BIN) + base + out2.string();
    REQUIRE(std::system(cmd.c_str()) == 0);
  }
  const std::string a = slurp(out1), b = slurp(out2);
  CHECK(a.find("threads=1") != std::string::npos);
  CHECK(b.find("threads=2") != std::string::npos);
  // numeric columns agree independent of the worker count
  CHECK(a.substr(a.find('\n') + 1) == b.substr(b.find('\n') + 1));
}

TEST_CASE("sweep: grid expansion, deltas, error diagnostics") {
  const fs::path cfg = tmpdir() / "sweep.cfg";
  {
    std::ofstream f(cfg);
    f << "# sweep over a small grid\n";
    f << "seed 3\n";
    f << "stats mean-entropy\n";
    f << "routes exact,quad\n";
    f << "grid m=1..4 n=m..m+3\n";
  }
  const fs::path out = tmpdir() / "sweep.csv";
  CHECK(run("sweep --config " + cfg.string() + " --out " + out.string()).exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.find("m,n,a,stat,exact,quad,delta_max") != std::string::npos);
  long rows = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '#' && line[0] != 'm') ++rows;
  }
  CHECK(rows == 16);

  const fs::path bad = tmpdir() / "bad.cfg";
  {
    std::ofstream f(bad);
    f << "grid m=oops n=1..2\n";
  }
  const auto br = run("sweep --config " + bad.string());
  CHECK(br.exit_code == 2);
  CHECK(br.out.find("line 1") != std::string::npos);

  const fs::path empty = tmpdir() / "empty.cfg";
  {
    std::ofstream f(empty);
    f << "stats mean-entropy\n";
  }
  CHECK(run("sweep --config " + empty.string()).exit_code == 2);
}
