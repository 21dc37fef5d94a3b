#include "nomasec/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "nomasec/error.hpp"

namespace nomasec {

const char* to_string(EavesdropperMode mode) {
  return mode == EavesdropperMode::WorstCase ? "wces" : "sic";
}

double sample_mrc_gain(Rng& rng, int m, double lambda, int antennas) {
  if (m < 1 || antennas < 1 || !(lambda > 0.0)) {
    throw DomainError("sample_mrc_gain: need m >= 1, L >= 1, lambda > 0");
  }
  std::gamma_distribution<double> gamma(static_cast<double>(m) * antennas, lambda / m);
  return gamma(rng);
}

TrialSimulator::TrialSimulator(const Model& model, SolutionId sol, EavesdropperMode mode,
                               bool fullMatrix)
    : cfg_(model.config()), d_(model.derived()), sol_(sol), mode_(mode), fullMatrix_(fullMatrix) {}

ChannelDraw TrialSimulator::draw(Rng& rng) const {
  const int L = cfg_.sourceAntennas;
  std::gamma_distribution<double> near(d_.aN, d_.lambdaN / cfg_.near.fading.m);
  std::gamma_distribution<double> far(d_.aF, d_.lambdaF / cfg_.far.fading.m);
  std::gamma_distribution<double> eve(d_.aE, d_.lambdaE / cfg_.eve.fading.m);
  auto& selection = sol_ == SolutionId::SolutionI ? near : far;

  ChannelDraw g;
  if (!fullMatrix_) {
    double best = 0.0;
    for (int i = 0; i < L; ++i) best = std::max(best, selection(rng));
    if (sol_ == SolutionId::SolutionI) {
      g.y = best;
      g.x = far(rng);
    } else {
      g.x = best;
      g.y = near(rng);
    }
    g.z = eve(rng);
    return g;
  }

  // Rows: near, far, eve; one column per transmit antenna.
  scratch_.resize(static_cast<std::size_t>(3 * L));
  for (int i = 0; i < L; ++i) scratch_[static_cast<std::size_t>(i)] = near(rng);
  for (int i = 0; i < L; ++i) scratch_[static_cast<std::size_t>(L + i)] = far(rng);
  for (int i = 0; i < L; ++i) scratch_[static_cast<std::size_t>(2 * L + i)] = eve(rng);
  const auto row = scratch_.begin() + (sol_ == SolutionId::SolutionI ? 0 : L);
  const auto pick = std::max_element(row, row + L) - row;
  g.y = scratch_[static_cast<std::size_t>(pick)];
  g.x = scratch_[static_cast<std::size_t>(L + pick)];
  g.z = scratch_[static_cast<std::size_t>(2 * L + pick)];
  return g;
}

TrialOutcome TrialSimulator::evaluate(const ChannelDraw& g) const {
  const double aF = cfg_.alphaF;
  const double aN = cfg_.alphaN;
  const double g0 = cfg_.gamma0;
  const double gE = cfg_.gammaE;

  const double farOwn = aF * g0 * g.x / (aN * g0 * g.x + 1.0);   // F decodes x_F
  const double nearFar = aF * g0 * g.y / (aN * g0 * g.y + 1.0);  // N decodes x_F first
  const double nearOwn = aN * g0 * g.y;                          // N decodes x_N after SIC
  const double eveFar = mode_ == EavesdropperMode::WorstCase
                            ? aF * gE * g.z
                            : aF * gE * g.z / (aN * gE * g.z + 1.0);
  const double eveNear = aN * gE * g.z;

  auto capacity_gap = [](double legit, double eve) {
    return (std::log1p(legit) - std::log1p(eve)) / std::numbers::ln2;
  };

  TrialOutcome out;
  const double th = d_.gammaTh;
  if (nearFar < th) {
    out.nearEvent = 1;
  } else if (eveFar < th) {
    if (std::log1p(nearOwn) / std::numbers::ln2 < cfg_.secrecyRateN) out.nearEvent = 2;
  } else if (capacity_gap(nearOwn, eveNear) < cfg_.secrecyRateN) {
    out.nearEvent = 3;
  }
  out.outageN = out.nearEvent != 0;
  out.outageF = capacity_gap(farOwn, eveFar) < cfg_.secrecyRateF;
  out.outageOverall = out.outageN || out.outageF;
  return out;
}

TrialOutcome simulate_trial(const Model& model, SolutionId sol, EavesdropperMode mode, Rng& rng) {
  return TrialSimulator(model, sol, mode)(rng);
}

McEstimate McEstimate::from_count(std::uint64_t hits, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw DomainError("Monte Carlo estimate needs at least one trial");
  McEstimate e;
  e.trials = trials;
  e.seed = seed;
  e.mean = static_cast<double>(hits) / static_cast<double>(trials);
  e.stdError = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
  return e;
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (block + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

struct BlockCounts {
  std::uint64_t near = 0;
  std::uint64_t far = 0;
  std::uint64_t overall = 0;
  std::array<std::uint64_t, 4> events{};
};

}  // namespace

SopEstimates estimate_sop(const Model& model, SolutionId sol, EavesdropperMode mode,
                          std::uint64_t trials, std::uint64_t seed, const McOptions& options) {
  if (trials < 1) throw DomainError("estimate_sop: trials must be >= 1");
  if (options.blockSize < 1) throw DomainError("estimate_sop: blockSize must be >= 1");
  const std::uint64_t blocks = (trials + options.blockSize - 1) / options.blockSize;
  std::vector<BlockCounts> counts(blocks);

  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, blocks));

  std::atomic<std::uint64_t> next{0};
  auto run = [&]() {
    const TrialSimulator sim(model, sol, mode, options.fullMatrix);
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      Rng rng(block_seed(seed, b));
      const std::uint64_t n = std::min(options.blockSize, trials - b * options.blockSize);
      BlockCounts& c = counts[b];
      for (std::uint64_t t = 0; t < n; ++t) {
        const TrialOutcome o = sim(rng);
        c.near += o.outageN;
        c.far += o.outageF;
        c.overall += o.outageOverall;
        ++c.events[static_cast<std::size_t>(o.nearEvent)];
      }
    }
  };

  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }

  BlockCounts total;
  for (const auto& c : counts) {
    total.near += c.near;
    total.far += c.far;
    total.overall += c.overall;
    for (std::size_t k = 0; k < 4; ++k) total.events[k] += c.events[k];
  }
  SopEstimates out;
  out.near = McEstimate::from_count(total.near, trials, seed);
  out.far = McEstimate::from_count(total.far, trials, seed);
  out.overall = McEstimate::from_count(total.overall, trials, seed);
  out.nearEvents = total.events;
  return out;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw DomainError("empirical CDF needs at least one sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCdf empirical_cdf(std::vector<double> samples) { return EmpiricalCdf(std::move(samples)); }

double ks_distance(const EmpiricalCdf& empirical, const std::function<double(double)>& cdf) {
  const auto& s = empirical.sorted();
  const double n = static_cast<double>(s.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    worst = std::max({worst, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return worst;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("ks_critical_value: need n >= 1 and 0 < alpha < 1");
  }
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

}  // namespace nomasec
