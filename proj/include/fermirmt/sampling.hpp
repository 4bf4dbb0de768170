#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "fermirmt/jacobi.hpp"

namespace fermirmt {

// One draw of the ensemble: m eigenvalues in [0,1], ascending.
struct Spectrum {
  std::vector<double> values;
};

struct ChainConfig {
  std::uint64_t seed = 1;
  long burn_in = 1000;
  long thinning = 10;
  double proposal_width = 0.0;  // <= 0 selects the default 0.5/sqrt(m+n)
  int chains = 1;
  bool tune_width = false;  // pre-burn-in tuning toward 30-40% acceptance
};

struct StatSummary {
  double mean = 0.0;
  double variance = 0.0;
  double stderr_mean = 0.0;
  double stderr_variance = 0.0;
  long count = 0;
  double acceptance_rate = 0.0;
  std::optional<double> skewness;         // standardized entropy only
  std::optional<double> excess_kurtosis;  // standardized entropy only
  bool variance_model_conjecture = false; // standardization used the conjectured V[S]
};

enum class Statistic { Entropy, Capacity, StandardizedEntropy };

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sampled eigenvalues drifted outside [0,1] or lost their pairing beyond
// tolerance; indicates an eigensolver failure.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Log of the unnormalized eigenvalue density
// prod_{i<j} (x_i^2 - x_j^2)^2 prod_i (1 - x_i^2)^{n-m}; -inf off support or
// at coincident coordinates.
double loggas_log_density(const EnsembleParams& e, std::span<const double> xs);

// log pi(x with coordinate i replaced by proposal) - log pi(x), O(m).
double loggas_coordinate_delta(std::span<const double> xs, std::size_t i, double proposal,
                               const EnsembleParams& e);

// One Metropolis sweep over all coordinates: uniform proposal of the given
// width reflected into [0,1], accepted on the incremental log-density ratio.
// Returns the number of accepted moves.
long loggas_sweep(std::vector<double>& xs, const EnsembleParams& e, double width, std::mt19937_64& rng);

// Per-chain streaming view of the log-gas chain (burn-in done in the
// constructor; next() advances `thinning` sweeps).
class LogGasSampler {
 public:
  LogGasSampler(const EnsembleParams& e, const ChainConfig& cfg, int chain_index = 0);
  Spectrum next();
  [[nodiscard]] double acceptance_rate() const;
  [[nodiscard]] double width() const { return width_; }

 private:
  EnsembleParams params_;
  ChainConfig cfg_;
  std::vector<double> state_;
  std::mt19937_64 rng_;
  double width_ = 0.0;
  long proposals_ = 0;
  long accepted_ = 0;
};

// `count` thinned samples; chains run independently on decorrelated seeds and
// samples are concatenated chain-major, so the stream is a pure function of
// (params, cfg, count).
std::vector<Spectrum> sample_loggas(const EnsembleParams& e, const ChainConfig& cfg, long count);

// Physical construction: Haar orthogonal O (sign-corrected QR of a Gaussian
// matrix), Omega = O Omega0 O^T, paired singular values of the top-left
// 2m x 2m block.
Spectrum sample_physical(const EnsembleParams& e, std::mt19937_64& rng);

// The 2m x 2m block itself (row-major), before spectral extraction.
std::vector<double> physical_covariance_block(const EnsembleParams& e, std::mt19937_64& rng);

// S = -sum v(x_i) in [0, m ln 2].
double entropy_of(const Spectrum& s);

// C = sum (1-x_i^2)/4 ln^2((1+x_i)/(1-x_i)) >= 0.
double capacity_of(const Spectrum& s);

// Monte Carlo estimate with batch-means standard errors (20 batches).
StatSummary estimate(const EnsembleParams& e, const ChainConfig& cfg, long count, Statistic stat);

// Seed decorrelation for chain RNGs (splitmix64 over seed and stream index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace fermirmt
