#include "fermirmt/sampling.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "fermirmt/closed_forms.hpp"
#include "fermirmt/observables.hpp"
#include "fermirmt/parallel.hpp"
#include "fermirmt/summation.hpp"

namespace fermirmt {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double reflect_into_unit(double x) {
  while (x < 0.0 || x > 1.0) {
    if (x < 0.0) x = -x;
    if (x > 1.0) x = 2.0 - x;
  }
  return x;
}

double default_width(const EnsembleParams& e) {
  return 0.5 / std::sqrt(static_cast<double>(e.m + e.n));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over the combined state
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double loggas_log_density(const EnsembleParams& e, std::span<const double> xs) {
  const double a = static_cast<double>(e.a());
  NeumaierSum acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 0.0 || xs[i] > 1.0) return -std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double rep = std::log(std::abs(xs[i] * xs[i] - xs[j] * xs[j]));
      if (std::isinf(rep)) return -std::numeric_limits<double>::infinity();  // coincident pair
      acc.add(2.0 * rep);
    }
    if (a != 0.0) acc.add(a * std::log1p(-xs[i] * xs[i]));
  }
  return acc.value();
}

double loggas_coordinate_delta(std::span<const double> xs, std::size_t i, double proposal,
                               const EnsembleParams& e) {
  const double a = static_cast<double>(e.a());
  const double x2 = xs[i] * xs[i], p2 = proposal * proposal;
  double delta = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (j == i) continue;
    const double y2 = xs[j] * xs[j];
    delta += 2.0 * (std::log(std::abs(p2 - y2)) - std::log(std::abs(x2 - y2)));
  }
  if (a != 0.0) delta += a * (std::log1p(-p2) - std::log1p(-x2));
  return delta;
}

long loggas_sweep(std::vector<double>& xs, const EnsembleParams& e, double width, std::mt19937_64& rng) {
  const std::size_t m = xs.size();
  long accepted = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double prop = reflect_into_unit(xs[i] + width * (2.0 * uniform01(rng) - 1.0));
    const double delta = loggas_coordinate_delta(xs, i, prop, e);
    if (delta >= 0.0 || std::log(uniform01(rng)) < delta) {
      xs[i] = prop;
      ++accepted;
    }
  }
  return accepted;
}

LogGasSampler::LogGasSampler(const EnsembleParams& e, const ChainConfig& cfg, int chain_index)
    : params_(e), cfg_(cfg), rng_(derive_seed(cfg.seed, static_cast<std::uint64_t>(chain_index))) {
  if (cfg.burn_in < 0 || cfg.thinning < 1 || cfg.chains < 1) {
    throw std::domain_error("ChainConfig: need burn_in >= 0, thinning >= 1, chains >= 1");
  }
  width_ = cfg.proposal_width > 0.0 ? cfg.proposal_width : default_width(e);
  state_.resize(static_cast<std::size_t>(e.m));
  for (long i = 0; i < e.m; ++i) {
    state_[static_cast<std::size_t>(i)] = static_cast<double>(i + 1) / static_cast<double>(e.m + 1);
  }
  if (cfg.tune_width) {
    for (int round = 0; round < 16; ++round) {
      long acc = 0;
      for (int s = 0; s < 100; ++s) acc += loggas_sweep(state_, params_, width_, rng_);
      const double rate = static_cast<double>(acc) / (100.0 * static_cast<double>(e.m));
      if (rate < 0.30) {
        width_ *= 0.8;
      } else if (rate > 0.40) {
        width_ *= 1.25;
      } else {
        break;
      }
    }
  }
  for (long s = 0; s < cfg.burn_in; ++s) loggas_sweep(state_, params_, width_, rng_);
}

Spectrum LogGasSampler::next() {
  for (long s = 0; s < cfg_.thinning; ++s) {
    accepted_ += loggas_sweep(state_, params_, width_, rng_);
    proposals_ += params_.m;
  }
  Spectrum out{state_};
  std::sort(out.values.begin(), out.values.end());
  return out;
}

double LogGasSampler::acceptance_rate() const {
  return proposals_ == 0 ? 0.0 : static_cast<double>(accepted_) / static_cast<double>(proposals_);
}

std::vector<Spectrum> sample_loggas(const EnsembleParams& e, const ChainConfig& cfg, long count) {
  if (count < 0) throw std::domain_error("sample_loggas: need count >= 0");
  const int chains = cfg.chains;
  std::vector<long> per_chain(static_cast<std::size_t>(chains), count / chains);
  for (long r = 0; r < count % chains; ++r) ++per_chain[static_cast<std::size_t>(r)];
  std::vector<std::vector<Spectrum>> chunks(static_cast<std::size_t>(chains));
  parallel_for(static_cast<std::size_t>(chains), [&](std::size_t c) {
    LogGasSampler sampler(e, cfg, static_cast<int>(c));
    auto& chunk = chunks[c];
    chunk.reserve(static_cast<std::size_t>(per_chain[c]));
    for (long s = 0; s < per_chain[c]; ++s) chunk.push_back(sampler.next());
  });
  std::vector<Spectrum> out;
  out.reserve(static_cast<std::size_t>(count));
  for (auto& chunk : chunks) {
    for (auto& s : chunk) out.push_back(std::move(s));
  }
  return out;
}

namespace {

Eigen::MatrixXd covariance_block_impl(const EnsembleParams& e, std::mt19937_64& rng) {
  const long n2 = 2 * (e.m + e.n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(n2, n2);
  for (long i = 0; i < n2; ++i) {
    for (long j = 0; j < n2; ++j) g(i, j) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long i = 0; i < n2; ++i) {
    if (r(i, i) < 0.0) q.col(i) *= -1.0;  // uncorrected QR is not Haar
  }
  Eigen::MatrixXd omega0 = Eigen::MatrixXd::Zero(n2, n2);
  for (long i = 0; i < e.m + e.n; ++i) {
    omega0(2 * i, 2 * i + 1) = 1.0;
    omega0(2 * i + 1, 2 * i) = -1.0;
  }
  return (q * omega0 * q.transpose()).topLeftCorner(2 * e.m, 2 * e.m);
}

}  // namespace

std::vector<double> physical_covariance_block(const EnsembleParams& e, std::mt19937_64& rng) {
  const Eigen::MatrixXd block = covariance_block_impl(e, rng);
  std::vector<double> out(static_cast<std::size_t>(block.size()));
  for (long i = 0; i < block.rows(); ++i) {
    for (long j = 0; j < block.cols(); ++j) {
      out[static_cast<std::size_t>(i * block.cols() + j)] = block(i, j);
    }
  }
  return out;
}

Spectrum sample_physical(const EnsembleParams& e, std::mt19937_64& rng) {
  const Eigen::MatrixXd omega_a = covariance_block_impl(e, rng);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(omega_a);
  const Eigen::VectorXd sv = svd.singularValues();  // descending
  Spectrum out;
  out.values.reserve(static_cast<std::size_t>(e.m));
  for (long i = 0; i < e.m; ++i) {
    const double s1 = sv(2 * i), s2 = sv(2 * i + 1);
    if (std::abs(s1 - s2) > 1e-8) {
      throw IntegrityError("sample_physical: singular values failed to pair");
    }
    double x = 0.5 * (s1 + s2);
    if (x > 1.0 + 1e-10 || x < -1e-10) {
      throw IntegrityError("sample_physical: singular value outside [0,1]");
    }
    x = std::clamp(x, 0.0, 1.0);
    out.values.push_back(x);
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

double entropy_of(const Spectrum& s) {
  NeumaierSum acc;
  for (double x : s.values) acc.add(-entropy_v(x));
  return acc.value();
}

double capacity_of(const Spectrum& s) {
  NeumaierSum acc;
  for (double x : s.values) acc.add(capacity_term(x));
  return acc.value();
}

StatSummary estimate(const EnsembleParams& e, const ChainConfig& cfg, long count, Statistic stat) {
  constexpr long kBatches = 20;
  if (count < kBatches) {
    throw InsufficientDataError("estimate: need at least 20 samples for batch means");
  }
  StatSummary out;
  double shift = 0.0, scale = 1.0;
  if (stat == Statistic::StandardizedEntropy) {
    shift = mean_entropy(e).evaluate();
    const ClosedFormValue var =
        e.m == e.n ? variance_entropy_a0(e.n) : variance_entropy_conjecture(e);
    scale = std::sqrt(var.evaluate());
    out.variance_model_conjecture = e.m != e.n;
  }

  std::vector<double> values(static_cast<std::size_t>(count));
  double acceptance = 0.0;
  {
    const int chains = cfg.chains;
    std::vector<long> per_chain(static_cast<std::size_t>(chains), count / chains);
    for (long r = 0; r < count % chains; ++r) ++per_chain[static_cast<std::size_t>(r)];
    std::vector<long> offset(static_cast<std::size_t>(chains), 0);
    for (int c = 1; c < chains; ++c) offset[c] = offset[c - 1] + per_chain[c - 1];
    std::vector<double> chain_acc(static_cast<std::size_t>(chains), 0.0);
    parallel_for(static_cast<std::size_t>(chains), [&](std::size_t c) {
      LogGasSampler sampler(e, cfg, static_cast<int>(c));
      for (long s = 0; s < per_chain[c]; ++s) {
        const Spectrum spec = sampler.next();
        const double raw = stat == Statistic::Capacity ? capacity_of(spec) : entropy_of(spec);
        values[static_cast<std::size_t>(offset[c] + s)] = (raw - shift) / scale;
      }
      chain_acc[c] = sampler.acceptance_rate();
    });
    for (int c = 0; c < chains; ++c) {
      acceptance += chain_acc[static_cast<std::size_t>(c)] * static_cast<double>(per_chain[c]);
    }
    acceptance /= static_cast<double>(count);
  }

  NeumaierSum sum;
  for (double v : values) sum.add(v);
  const double mean = sum.value() / static_cast<double>(count);
  NeumaierSum m2s, m3s, m4s;
  for (double v : values) {
    const double d = v - mean;
    m2s.add(d * d);
    m3s.add(d * d * d);
    m4s.add(d * d * d * d);
  }
  const double m2 = m2s.value() / static_cast<double>(count);
  out.mean = mean;
  out.variance = m2s.value() / static_cast<double>(count - 1);
  out.count = count;
  out.acceptance_rate = acceptance;
  if (stat == Statistic::StandardizedEntropy) {
    const double m3 = m3s.value() / static_cast<double>(count);
    const double m4 = m4s.value() / static_cast<double>(count);
    out.skewness = m3 / std::pow(m2, 1.5);
    out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }

  // batch means: independent-ish estimates of the mean and the variance
  const long batch_len = count / kBatches;
  std::vector<double> bmeans, bvars;
  bmeans.reserve(kBatches);
  bvars.reserve(kBatches);
  for (long b = 0; b < kBatches; ++b) {
    const long lo = b * batch_len;
    const long hi = (b == kBatches - 1) ? count : lo + batch_len;
    NeumaierSum bm;
    for (long i = lo; i < hi; ++i) bm.add(values[static_cast<std::size_t>(i)]);
    const double bmean = bm.value() / static_cast<double>(hi - lo);
    NeumaierSum bv;
    for (long i = lo; i < hi; ++i) {
      const double d = values[static_cast<std::size_t>(i)] - mean;
      bv.add(d * d);
    }
    bmeans.push_back(bmean);
    bvars.push_back(bv.value() / static_cast<double>(hi - lo));
  }
  const auto stderr_of = [](const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double mu = 0.0;
    for (double x : xs) mu += x;
    mu /= n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / (n * (n - 1.0)));
  };
  out.stderr_mean = stderr_of(bmeans);
  out.stderr_variance = stderr_of(bvars);
  return out;
}

}  // namespace fermirmt
