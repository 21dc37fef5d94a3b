#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "nomasec/model.hpp"

namespace nomasec {

using Rng = std::mt19937_64;

enum class EavesdropperMode {
  SicWithInterference,  // E sees x_N as interference while decoding x_F
  WorstCase,            // E decodes x_F interference-free
};

const char* to_string(EavesdropperMode mode);

// One draw of the MRC gain over L branches: Gamma(m L, lambda / m).
double sample_mrc_gain(Rng& rng, int m, double lambda, int antennas);

struct TrialOutcome {
  bool outageN = false;
  bool outageF = false;
  bool outageOverall = false;
  int nearEvent = 0;  // 1, 2, 3 for the disjoint outage events at N, 0 for none
};

struct ChannelDraw {
  double x = 0.0;  // far gain at the selected antenna
  double y = 0.0;  // near gain at the selected antenna
  double z = 0.0;  // eavesdropper gain at the selected antenna
};

// Simulates the raw system model: draws gains, selects the antenna, forms the
// SINRs and applies the outage definitions. No closed form is consulted.
class TrialSimulator {
 public:
  TrialSimulator(const Model& model, SolutionId sol, EavesdropperMode mode,
                 bool fullMatrix = false);

  // fullMatrix draws all L_S gains of every link and indexes them by the
  // selected antenna; otherwise only the selection link gets L_S draws.
  ChannelDraw draw(Rng& rng) const;
  TrialOutcome evaluate(const ChannelDraw& g) const;
  TrialOutcome operator()(Rng& rng) const { return evaluate(draw(rng)); }

 private:
  SystemConfig cfg_;
  DerivedParams d_;
  SolutionId sol_;
  EavesdropperMode mode_;
  bool fullMatrix_;
  mutable std::vector<double> scratch_;
};

TrialOutcome simulate_trial(const Model& model, SolutionId sol, EavesdropperMode mode, Rng& rng);

struct McEstimate {
  double mean = 0.0;
  double stdError = 0.0;  // sqrt(p (1 - p) / n)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  static McEstimate from_count(std::uint64_t hits, std::uint64_t trials, std::uint64_t seed);
};

struct SopEstimates {
  McEstimate near;
  McEstimate far;
  McEstimate overall;  // joint frequency from the same trials
  std::array<std::uint64_t, 4> nearEvents{};  // counts of none, event 1, 2, 3
};

struct McOptions {
  unsigned workers = 0;                // 0: hardware concurrency
  std::uint64_t blockSize = 1 << 16;  // trials per independent stream
  bool fullMatrix = false;
};

// Stream seed of block b: splitmix64 finalizer over (seed, b).
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block);

// Deterministic for fixed inputs whatever the worker count: block b always
// runs on its own stream and block counts are merged in block order.
SopEstimates estimate_sop(const Model& model, SolutionId sol, EavesdropperMode mode,
                          std::uint64_t trials, std::uint64_t seed, const McOptions& options = {});

class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double x) const;  // fraction of samples <= x
  const std::vector<double>& sorted() const noexcept { return sorted_; }
  std::size_t size() const noexcept { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

EmpiricalCdf empirical_cdf(std::vector<double> samples);

// sup_x |F_n(x) - F(x)|, checked on both sides of every jump.
double ks_distance(const EmpiricalCdf& empirical, const std::function<double(double)>& cdf);

// Asymptotic one-sample Kolmogorov critical value sqrt(-ln(alpha / 2) / 2) / sqrt(n).
double ks_critical_value(std::size_t n, double alpha = 0.01);

}  // namespace nomasec
