// fermi-rmt: entanglement statistics of fermionic Gaussian states.
// Subcommands compute statistics through the exact, quadrature, summation and
// Monte Carlo routes, run the verification suites and emit figure/sweep data.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <numbers>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fermirmt/integral_sums.hpp"
#include "fermirmt/closed_forms.hpp"
#include "fermirmt/kernel.hpp"
#include "fermirmt/ks.hpp"
#include "fermirmt/parallel.hpp"
#include "fermirmt/quadrature.hpp"
#include "fermirmt/sampling.hpp"
#include "fermirmt/special_functions.hpp"
#include "fermirmt/version.hpp"

namespace {

using namespace fermirmt;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitUnsupportedClosedForm = 3;
constexpr int kExitIo = 4;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string meta_line(const std::string& cmd, std::uint64_t seed, double tol) {
  std::ostringstream os;
  os << "# meta: tool=fermi-rmt version=" << kVersion << " cmd=" << cmd << " seed=" << seed
     << " tol=" << fmt17(tol) << " threads=" << worker_count();
  return os.str();
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

EnsembleParams make_params(long m, long n) {
  if (m < 1 || n < m) throw UsageError("need 1 <= m <= n");
  return {m, n};
}

enum class Stat { MeanEntropy, VarianceEntropy, MeanCapacity };

Stat parse_stat(const std::string& s) {
  if (s == "mean-entropy") return Stat::MeanEntropy;
  if (s == "variance-entropy") return Stat::VarianceEntropy;
  if (s == "mean-capacity") return Stat::MeanCapacity;
  throw UsageError("unknown statistic '" + s + "'");
}

ClosedFormValue exact_value(Stat stat, const EnsembleParams& e) {
  switch (stat) {
    case Stat::MeanEntropy: return mean_entropy(e);
    case Stat::VarianceEntropy:
      return e.m == e.n ? variance_entropy_a0(e.n) : variance_entropy_conjecture(e);
    case Stat::MeanCapacity: return mean_capacity(e.a(), e.n);
  }
  throw UsageError("bad statistic");
}

int cmd_exact(long m, long n, const std::string& stat_name) {
  const EnsembleParams e = make_params(m, n);
  const Stat stat = parse_stat(stat_name);
  const ClosedFormValue v = exact_value(stat, e);
  std::cout << "statistic " << stat_name << "\n";
  std::cout << "m " << e.m << "\nn " << e.n << "\na " << e.a() << "\n";
  if (stat == Stat::VarianceEntropy && e.m != e.n) std::cout << "model conjecture\n";
  for (const auto& [term, coeff] : v.terms()) {
    std::cout << "term " << term.name() << " " << rational_to_string(coeff) << "\n";
  }
  std::cout << "value " << fmt17(v.evaluate()) << "\n";
  return kExitOk;
}

int cmd_quad(long m, long n, const std::string& stat_name, double tol) {
  const EnsembleParams e = make_params(m, n);
  QuadratureConfig cfg;
  cfg.target_abs_tol = tol;
  QuadratureResult r;
  switch (parse_stat(stat_name)) {
    case Stat::MeanEntropy: r = mean_entropy_quad(e, cfg); break;
    case Stat::VarianceEntropy: r = variance_quad(e, cfg); break;
    case Stat::MeanCapacity: r = capacity_quad(e, cfg); break;
  }
  std::cout << "statistic " << stat_name << "\nm " << e.m << "\nn " << e.n << "\n";
  std::cout << "value " << fmt17(r.value) << "\n";
  std::cout << "err_estimate " << fmt17(r.err_estimate) << "\n";
  std::cout << "nodes " << r.nodes_used << "\n";
  return kExitOk;
}

int cmd_sums(long m, long n) {
  const EnsembleParams e = make_params(m, n);
  const SecondOrderStatistics s = assemble(e);
  std::cout << "m " << e.m << "\nn " << e.n << "\na " << e.a() << "\n";
  std::cout << "A1 " << fmt17(s.a1.value) << "\nA2 " << fmt17(s.a2.value) << "\n";
  std::cout << "B1 " << fmt17(s.b1.value) << "\nB2 " << fmt17(s.b2.value) << "\n";
  std::cout << "I_A " << fmt17(s.i_a) << "\nI_B " << fmt17(s.i_b) << "\nI_C " << fmt17(s.i_c)
            << "\n";
  std::cout << "mean_entropy " << fmt17(mean_entropy_sums(e)) << "\n";
  std::cout << "variance_entropy " << fmt17(s.variance) << "\n";
  std::cout << "mean_capacity " << fmt17(s.capacity) << "\n";
  const long terms = s.a1.terms_evaluated + s.a2.terms_evaluated + s.b1.terms_evaluated +
                     s.b2.terms_evaluated + s.ic.terms_evaluated;
  const long indet = s.a1.indeterminacies_resolved + s.a2.indeterminacies_resolved +
                     s.b1.indeterminacies_resolved + s.b2.indeterminacies_resolved +
                     s.ic.indeterminacies_resolved;
  std::cout << "terms_evaluated " << terms << "\n";
  std::cout << "indeterminacies_resolved " << indet << "\n";
  return kExitOk;
}

int cmd_sample(long m, long n, const std::string& stat_name, long samples, const ChainConfig& cfg) {
  const EnsembleParams e = make_params(m, n);
  Statistic stat;
  if (stat_name == "entropy") {
    stat = Statistic::Entropy;
  } else if (stat_name == "capacity") {
    stat = Statistic::Capacity;
  } else if (stat_name == "standardized-entropy") {
    stat = Statistic::StandardizedEntropy;
  } else {
    throw UsageError("unknown statistic '" + stat_name + "'");
  }
  const StatSummary s = estimate(e, cfg, samples, stat);
  std::cout << "statistic " << stat_name << "\nm " << e.m << "\nn " << e.n << "\n";
  std::cout << "count " << s.count << "\nseed " << cfg.seed << "\n";
  std::cout << "mean " << fmt17(s.mean) << "\nstderr_mean " << fmt17(s.stderr_mean) << "\n";
  std::cout << "variance " << fmt17(s.variance) << "\nstderr_variance "
            << fmt17(s.stderr_variance) << "\n";
  std::cout << "acceptance_rate " << fmt17(s.acceptance_rate) << "\n";
  if (s.skewness) std::cout << "skewness " << fmt17(*s.skewness) << "\n";
  if (s.excess_kurtosis) std::cout << "excess_kurtosis " << fmt17(*s.excess_kurtosis) << "\n";
  if (s.variance_model_conjecture) std::cout << "variance_model conjecture\n";
  return kExitOk;
}

// ---- verify ----

struct VerifyCheck {
  std::string name;
  std::string params;
  double max_error = 0.0;
  bool pass = false;
};

void verify_routes(std::vector<VerifyCheck>& out, long max_m, double tol) {
  for (long m = 1; m <= max_m; ++m) {
    for (long a = 0; a <= 3; ++a) {
      const EnsembleParams e(m, m + a);
      std::ostringstream ps;
      ps << "m=" << e.m << " n=" << e.n;
      const SecondOrderStatistics sums = assemble(e);
      {
        VerifyCheck c{"routes/mean_entropy", ps.str(), 0.0, false};
        const double exact = mean_entropy(e).evaluate();
        c.max_error = std::max(std::abs(exact - mean_entropy_quad(e).value),
                               std::abs(exact - mean_entropy_sums(e)));
        c.pass = c.max_error <= tol;
        out.push_back(c);
      }
      {
        VerifyCheck c{"routes/variance_entropy", ps.str(), 0.0, false};
        const double exact =
            (e.m == e.n ? variance_entropy_a0(e.n) : variance_entropy_conjecture(e)).evaluate();
        c.max_error = std::max(std::abs(exact - variance_quad(e).value),
                               std::abs(exact - sums.variance));
        c.pass = c.max_error <= tol;
        out.push_back(c);
      }
      {
        VerifyCheck c{"routes/mean_capacity", ps.str(), 0.0, false};
        const double exact = mean_capacity(a, e.n).evaluate();
        c.max_error = std::max(std::abs(exact - capacity_quad(e).value),
                               std::abs(exact - sums.capacity));
        c.pass = c.max_error <= tol;
        out.push_back(c);
      }
    }
  }
}

void verify_samplers(std::vector<VerifyCheck>& out, std::uint64_t seed, long draws) {
  {  // log-gas vs uniform law at (1,1)
    const EnsembleParams e(1, 1);
    ChainConfig cfg;
    cfg.seed = seed;
    cfg.burn_in = 500;
    cfg.thinning = 5;
    std::vector<double> xs;
    for (const auto& s : sample_loggas(e, cfg, draws)) xs.push_back(s.values[0]);
    const double d = ks_statistic(xs, [](double x) { return x; });
    const double crit = ks_critical_one_sample(0.01, xs.size());
    out.push_back({"samplers/loggas_uniform_ks", "m=1 n=1", d, d < crit});
  }
  {  // log-gas vs kernel density at (1,2)
    const EnsembleParams e(1, 2);
    ChainConfig cfg;
    cfg.seed = seed + 1;
    cfg.burn_in = 500;
    cfg.thinning = 5;
    std::vector<double> xs;
    for (const auto& s : sample_loggas(e, cfg, draws)) xs.push_back(s.values[0]);
    const KernelContext ctx(e);
    const CdfTable cdf([&](double x) { return density_one(ctx, x); });
    const double d = ks_statistic(xs, cdf);
    const double crit = ks_critical_one_sample(0.01, xs.size());
    out.push_back({"samplers/loggas_density_ks", "m=1 n=2", d, d < crit});
  }
  {  // physical sampler vs kernel density at (1,2)
    const EnsembleParams e(1, 2);
    std::mt19937_64 rng(derive_seed(seed, 77));
    std::vector<double> xs;
    for (long t = 0; t < draws; ++t) xs.push_back(sample_physical(e, rng).values[0]);
    const KernelContext ctx(e);
    const CdfTable cdf([&](double x) { return density_one(ctx, x); });
    const double d = ks_statistic(xs, cdf);
    const double crit = ks_critical_one_sample(0.01, xs.size());
    out.push_back({"samplers/physical_density_ks", "m=1 n=2", d, d < crit});
  }
  {  // two-sampler agreement at (2,3)
    const EnsembleParams e(2, 3);
    ChainConfig cfg;
    cfg.seed = seed + 2;
    cfg.burn_in = 1000;
    cfg.thinning = 10;
    std::vector<double> gas, phys;
    for (const auto& s : sample_loggas(e, cfg, draws)) {
      gas.insert(gas.end(), s.values.begin(), s.values.end());
    }
    std::mt19937_64 rng(derive_seed(seed, 78));
    for (long t = 0; t < draws; ++t) {
      const Spectrum s = sample_physical(e, rng);
      phys.insert(phys.end(), s.values.begin(), s.values.end());
    }
    const double d = ks_statistic_two_sample(gas, phys);
    const double crit = ks_critical_two_sample(0.01, gas.size(), phys.size());
    out.push_back({"samplers/two_sampler_ks", "m=2 n=3", d, d < crit});
  }
  {  // detailed balance of the incremental update
    const EnsembleParams e(4, 6);
    std::mt19937_64 rng(derive_seed(seed, 79));
    std::uniform_real_distribution<double> u(0.01, 0.99);
    std::vector<double> xs(4);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
      for (auto& x : xs) x = u(rng);
      const std::size_t i = rng() % xs.size();
      std::vector<double> moved = xs;
      moved[i] = u(rng);
      const double incr = loggas_coordinate_delta(xs, i, moved[i], e);
      const double full = loggas_log_density(e, moved) - loggas_log_density(e, xs);
      worst = std::max(worst, std::abs(incr - full) / std::max(1.0, std::abs(full)));
    }
    out.push_back({"samplers/detailed_balance", "m=4 n=6", worst, worst <= 1e-12});
  }
}

int cmd_verify(const std::string& suite, long trials, std::uint64_t seed, double tol, long max_m,
               long draws, const std::string& out_path) {
  std::vector<VerifyCheck> checks;
  if (suite == "identities" || suite == "all") {
    const IdentityReport rep = identity_suite(trials, seed);
    for (const auto& c : rep.checks) {
      checks.push_back({"identities/" + c.name, c.worst_params, c.max_rel_err, c.pass});
    }
  }
  if (suite == "routes" || suite == "all") verify_routes(checks, max_m, tol);
  if (suite == "samplers" || suite == "all") verify_samplers(checks, seed, draws);
  if (checks.empty()) throw UsageError("unknown suite '" + suite + "'");

  json report = json::array();
  bool all_pass = true;
  for (const auto& c : checks) {
    report.push_back(
        {{"check", c.name}, {"params", c.params}, {"max_error", c.max_error}, {"pass", c.pass}});
    all_pass = all_pass && c.pass;
  }
  const std::string text = report.dump(2);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitIo;
    }
    f << text << "\n";
  }
  std::cerr << (all_pass ? "verify: all checks passed" : "verify: FAILURES present") << " ("
            << checks.size() << " checks)\n";
  return all_pass ? kExitOk : kExitVerifyFail;
}

// ---- figures ----

int write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream f(path);
  if (!f) {
    std::cerr << "cannot write " << path << "\n";
    return kExitIo;
  }
  for (const auto& l : lines) f << l << "\n";
  return f.good() ? kExitOk : kExitIo;
}

int cmd_figure1(long m_max, long samples, std::uint64_t seed, const std::string& out) {
  std::vector<std::string> lines;
  lines.push_back(meta_line("figure1", seed, 0.0));
  lines.push_back("m,n,exact_var,mc_var,mc_stderr");
  for (long m = 1; m <= m_max; ++m) {
    for (long ratio = 1; ratio <= 3; ++ratio) {
      const EnsembleParams e(m, ratio * m);
      const double exact =
          (ratio == 1 ? variance_entropy_a0(m) : variance_entropy_conjecture(e)).evaluate();
      ChainConfig cfg;
      cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(m * 8 + ratio));
      cfg.burn_in = 1000;
      cfg.thinning = 10;
      const StatSummary s = estimate(e, cfg, samples, Statistic::Entropy);
      lines.push_back(std::to_string(e.m) + "," + std::to_string(e.n) + "," + fmt17(exact) + "," +
                      fmt17(s.variance) + "," + fmt17(s.stderr_variance));
    }
  }
  return write_lines(out, lines);
}

int cmd_figure2(long m, long n, long samples, long bins, std::uint64_t seed,
                const std::string& out) {
  const EnsembleParams e = make_params(m, n);
  const double es = mean_entropy(e).evaluate();
  const double vs =
      (e.m == e.n ? variance_entropy_a0(e.n) : variance_entropy_conjecture(e)).evaluate();
  ChainConfig cfg;
  cfg.seed = seed;
  cfg.burn_in = 2000;
  cfg.thinning = 10;
  const auto spectra = sample_loggas(e, cfg, samples);
  const double lo = -4.0, hi = 4.0;
  const double bw = (hi - lo) / static_cast<double>(bins);
  std::vector<long> counts(static_cast<std::size_t>(bins), 0);
  for (const auto& s : spectra) {
    const double x = (entropy_of(s) - es) / std::sqrt(vs);
    if (x < lo || x >= hi) continue;
    ++counts[static_cast<std::size_t>((x - lo) / bw)];
  }
  std::vector<std::string> lines;
  lines.push_back(meta_line("figure2", seed, 0.0));
  lines.push_back("bin_center,density,gauss_ref");
  for (long b = 0; b < bins; ++b) {
    const double center = lo + (static_cast<double>(b) + 0.5) * bw;
    const double density =
        static_cast<double>(counts[static_cast<std::size_t>(b)]) / (static_cast<double>(samples) * bw);
    const double gauss = std::exp(-0.5 * center * center) / std::sqrt(2.0 * std::numbers::pi);
    lines.push_back(fmt17(center) + "," + fmt17(density) + "," + fmt17(gauss));
  }
  return write_lines(out, lines);
}

// a = -1 emits all four closed-form differences with a leading `a` column.
int cmd_figure3(long a, long n_max, long samples, std::uint64_t seed, const std::string& out) {
  if (a < -1 || a > 3) throw UnsupportedDifferenceError("figure 3 needs a in 0..3");
  const bool all = a < 0;
  std::vector<std::string> lines;
  lines.push_back(meta_line("figure3", seed, 0.0));
  lines.push_back(all ? "a,n,exact_capacity,mc_capacity,mc_stderr"
                      : "n,exact_capacity,mc_capacity,mc_stderr");
  for (long da = (all ? 0 : a); da <= (all ? 3 : a); ++da) {
    for (long n = da + 1; n <= n_max; ++n) {
      const EnsembleParams e(n - da, n);
      const double exact = mean_capacity(da, n).evaluate();
      ChainConfig cfg;
      cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(8 * n + da));
      cfg.burn_in = 1000;
      cfg.thinning = 10;
      const StatSummary s = estimate(e, cfg, samples, Statistic::Capacity);
      lines.push_back((all ? std::to_string(da) + "," : std::string()) + std::to_string(n) + "," +
                      fmt17(exact) + "," + fmt17(s.mean) + "," + fmt17(s.stderr_mean));
    }
  }
  return write_lines(out, lines);
}

// ---- sweep ----

struct SweepGrid {
  long m_lo = 0, m_hi = 0;
  // n bounds are either absolute or m-relative (n = m + offset)
  bool n_lo_rel = false, n_hi_rel = false;
  long n_lo = 0, n_hi = 0;
};

struct SweepConfig {
  std::uint64_t seed = 1;
  double tol = 1e-8;
  long samples = 10000;
  std::vector<std::string> stats;
  std::vector<std::string> routes;
  std::vector<SweepGrid> grids;
};

long parse_bound(const std::string& tok, bool& relative, int line_no) {
  relative = false;
  if (tok == "m") {
    relative = true;
    return 0;
  }
  if (tok.rfind("m+", 0) == 0) {
    relative = true;
    return std::stol(tok.substr(2));
  }
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config line " + std::to_string(line_no) + ": bad bound '" + tok + "'");
  }
}

void parse_range(const std::string& spec, long& lo, long& hi, bool& lo_rel, bool& hi_rel,
                 int line_no) {
  const auto dots = spec.find("..");
  if (dots == std::string::npos) {
    lo = parse_bound(spec, lo_rel, line_no);
    hi = lo;
    hi_rel = lo_rel;
    return;
  }
  lo = parse_bound(spec.substr(0, dots), lo_rel, line_no);
  hi = parse_bound(spec.substr(dots + 2), hi_rel, line_no);
}

SweepConfig parse_sweep_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file '" + path + "'");
  SweepConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "seed") {
      if (!(ls >> cfg.seed)) throw UsageError("config line " + std::to_string(line_no) + ": bad seed");
    } else if (key == "tol") {
      if (!(ls >> cfg.tol) || !(cfg.tol > 0)) {
        throw UsageError("config line " + std::to_string(line_no) + ": bad tol");
      }
    } else if (key == "samples") {
      if (!(ls >> cfg.samples) || cfg.samples < 20) {
        throw UsageError("config line " + std::to_string(line_no) + ": bad samples");
      }
    } else if (key == "stat" || key == "stats") {
      std::string rest, tok;
      std::getline(ls, rest);
      std::istringstream rs(rest);
      while (std::getline(rs, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (!tok.empty()) {
          parse_stat(tok);  // validates
          cfg.stats.push_back(tok);
        }
      }
    } else if (key == "route" || key == "routes") {
      std::string rest, tok;
      std::getline(ls, rest);
      std::istringstream rs(rest);
      while (std::getline(rs, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (tok.empty()) continue;
        if (tok != "exact" && tok != "quad" && tok != "sums" && tok != "sample") {
          throw UsageError("config line " + std::to_string(line_no) + ": unknown route '" + tok + "'");
        }
        cfg.routes.push_back(tok);
      }
    } else if (key == "grid") {
      SweepGrid g;
      std::string mspec, nspec;
      if (!(ls >> mspec >> nspec) || mspec.rfind("m=", 0) != 0 || nspec.rfind("n=", 0) != 0) {
        throw UsageError("config line " + std::to_string(line_no) +
                         ": grid wants 'grid m=LO..HI n=LO..HI'");
      }
      bool dummy_lo = false, dummy_hi = false;
      parse_range(mspec.substr(2), g.m_lo, g.m_hi, dummy_lo, dummy_hi, line_no);
      if (dummy_lo || dummy_hi) {
        throw UsageError("config line " + std::to_string(line_no) + ": m bounds must be absolute");
      }
      parse_range(nspec.substr(2), g.n_lo, g.n_hi, g.n_lo_rel, g.n_hi_rel, line_no);
      if (g.m_lo < 1 || g.m_hi < g.m_lo) {
        throw UsageError("config line " + std::to_string(line_no) + ": bad m range");
      }
      cfg.grids.push_back(g);
    } else {
      throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (cfg.stats.empty()) cfg.stats.push_back("mean-entropy");
  if (cfg.routes.empty()) cfg.routes.push_back("exact");
  return cfg;
}

std::optional<double> route_value(const std::string& route, Stat stat, const EnsembleParams& e,
                                  const SweepConfig& cfg, std::uint64_t cell_index) {
  if (route == "exact") {
    if (stat == Stat::MeanCapacity && e.a() > 3) return std::nullopt;
    return exact_value(stat, e).evaluate();
  }
  if (route == "quad") {
    switch (stat) {
      case Stat::MeanEntropy: return mean_entropy_quad(e).value;
      case Stat::VarianceEntropy: return variance_quad(e).value;
      case Stat::MeanCapacity: return capacity_quad(e).value;
    }
  }
  if (route == "sums") {
    if (stat == Stat::MeanEntropy) return mean_entropy_sums(e);
    const SecondOrderStatistics s = assemble(e);
    return stat == Stat::VarianceEntropy ? s.variance : s.capacity;
  }
  // Monte Carlo
  ChainConfig ccfg;
  ccfg.seed = derive_seed(cfg.seed, cell_index);
  ccfg.burn_in = 1000;
  ccfg.thinning = 10;
  const StatSummary s = estimate(
      e, ccfg, cfg.samples,
      stat == Stat::MeanCapacity ? Statistic::Capacity : Statistic::Entropy);
  return stat == Stat::VarianceEntropy ? s.variance : s.mean;
}

int cmd_sweep(const std::string& config_path, const std::string& out) {
  const SweepConfig cfg = parse_sweep_config(config_path);
  std::vector<EnsembleParams> cells;
  for (const auto& g : cfg.grids) {
    for (long m = g.m_lo; m <= g.m_hi; ++m) {
      const long lo = g.n_lo_rel ? m + g.n_lo : g.n_lo;
      const long hi = g.n_hi_rel ? m + g.n_hi : g.n_hi;
      for (long n = lo; n <= hi; ++n) {
        if (n >= m && m >= 1) cells.emplace_back(m, n);
      }
    }
  }
  if (cells.empty()) throw UsageError("sweep grid is empty");

  std::vector<std::string> rows(cells.size() * cfg.stats.size());
  parallel_for(rows.size(), [&](std::size_t idx) {
    const EnsembleParams& e = cells[idx / cfg.stats.size()];
    const Stat stat = parse_stat(cfg.stats[idx % cfg.stats.size()]);
    std::ostringstream row;
    row << e.m << "," << e.n << "," << e.a() << "," << cfg.stats[idx % cfg.stats.size()];
    std::vector<double> values;
    for (const auto& route : cfg.routes) {
      const auto v = route_value(route, stat, e, cfg, static_cast<std::uint64_t>(idx));
      row << ",";
      if (v) {
        row << fmt17(*v);
        values.push_back(*v);
      } else {
        row << "nan";
      }
    }
    if (cfg.routes.size() > 1) {
      double delta = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
          delta = std::max(delta, std::abs(values[i] - values[j]));
        }
      }
      row << "," << fmt17(delta);
    }
    rows[idx] = row.str();
  });

  std::vector<std::string> lines;
  lines.push_back(meta_line("sweep", cfg.seed, cfg.tol));
  std::string header = "m,n,a,stat";
  for (const auto& r : cfg.routes) header += "," + r;
  if (cfg.routes.size() > 1) header += ",delta_max";
  lines.push_back(header);
  for (auto& r : rows) lines.push_back(std::move(r));
  if (out.empty()) {
    for (const auto& l : lines) std::cout << l << "\n";
    return kExitOk;
  }
  return write_lines(out, lines);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement statistics of fermionic Gaussian states"};
  app.require_subcommand(1);

  long m = 1, n = 1;
  std::string stat = "mean-entropy";
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string out_path;

  auto* exact = app.add_subcommand("exact", "closed-form value with its basis decomposition");
  exact->add_option("--m", m, "subsystem dimension m")->required();
  exact->add_option("--n", n, "subsystem dimension n")->required();
  exact->add_option("--stat", stat, "mean-entropy|variance-entropy|mean-capacity");

  long qm = 1, qn = 1;
  std::string qstat = "mean-entropy";
  auto* quad = app.add_subcommand("quad", "deterministic quadrature route");
  quad->add_option("--m", qm)->required();
  quad->add_option("--n", qn)->required();
  quad->add_option("--stat", qstat);
  quad->add_option("--tol", tol, "target absolute tolerance");

  long sm = 1, sn = 1;
  auto* sums = app.add_subcommand("sums", "summation route for the five underlying integrals");
  sums->add_option("--m", sm)->required();
  sums->add_option("--n", sn)->required();

  long pm = 2, pn = 2, samples = 10000;
  std::string pstat = "entropy";
  ChainConfig chain;
  bool tune = false;
  auto* sample = app.add_subcommand("sample", "log-gas Monte Carlo estimate");
  sample->add_option("--m", pm)->required();
  sample->add_option("--n", pn)->required();
  sample->add_option("--stat", pstat, "entropy|capacity|standardized-entropy");
  sample->add_option("--samples", samples, "thinned sample count");
  sample->add_option("--seed", chain.seed);
  sample->add_option("--burn-in", chain.burn_in);
  sample->add_option("--thinning", chain.thinning);
  sample->add_option("--chains", chain.chains);
  sample->add_option("--width", chain.proposal_width);
  sample->add_flag("--tune", tune, "tune the proposal width before burn-in");

  std::string suite = "all";
  long trials = 1000, max_m = 5, draws = 10000;
  std::uint64_t vseed = 42;
  double vtol = 1e-8;
  auto* verify = app.add_subcommand("verify", "verification suites with a JSON report");
  verify->add_option("--suite", suite, "identities|routes|samplers|all");
  verify->add_option("--trials", trials, "identity draws per check");
  verify->add_option("--seed", vseed);
  verify->add_option("--tol", vtol, "route agreement tolerance");
  verify->add_option("--max-m", max_m);
  verify->add_option("--draws", draws, "sampler draws per KS check");
  verify->add_option("--out", out_path, "write the JSON report here");

  int which = 1;
  long fm = 16, fn = 32, m_max = 8, n_max = 12, fa = -1, bins = 61, fsamples = 20000;
  std::uint64_t fseed = 42;
  std::string fout;
  auto* figure = app.add_subcommand("figure", "CSV series for the variance, Gaussianity and capacity figures");
  figure->add_option("--which", which, "1, 2 or 3")->required();
  figure->add_option("--out", fout, "output CSV path")->required();
  figure->add_option("--m-max", m_max, "figure 1: largest m");
  figure->add_option("--m", fm, "figure 2: m");
  figure->add_option("--n", fn, "figure 2: n");
  figure->add_option("--a", fa, "figure 3: dimension difference (omit for all of 0..3)");
  figure->add_option("--n-max", n_max, "figure 3: largest n");
  figure->add_option("--bins", bins, "figure 2: histogram bins");
  figure->add_option("--samples", fsamples, "Monte Carlo samples per point");
  figure->add_option("--seed", fseed);

  std::string config_path, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "batch evaluation over an (m,n) grid");
  sweep->add_option("--config", config_path, "flat key-value config file")->required();
  sweep->add_option("--out", sweep_out, "output CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    if (exact->parsed()) return cmd_exact(m, n, stat);
    if (quad->parsed()) return cmd_quad(qm, qn, qstat, tol);
    if (sums->parsed()) return cmd_sums(sm, sn);
    if (sample->parsed()) {
      chain.tune_width = tune;
      return cmd_sample(pm, pn, pstat, samples, chain);
    }
    if (verify->parsed()) return cmd_verify(suite, trials, vseed, vtol, max_m, draws, out_path);
    if (figure->parsed()) {
      switch (which) {
        case 1: return cmd_figure1(m_max, fsamples, fseed, fout);
        case 2: return cmd_figure2(fm, fn, fsamples, bins, fseed, fout);
        case 3: return cmd_figure3(fa, n_max, fsamples, fseed, fout);
        default: throw UsageError("figure --which must be 1, 2 or 3");
      }
    }
    if (sweep->parsed()) return cmd_sweep(config_path, sweep_out);
  } catch (const UnsupportedDifferenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupportedClosedForm;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
