#include "nomasec/channel_stats.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nomasec/error.hpp"

namespace nomasec {

namespace {

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) throw DomainError(std::string(what) + ": x must be >= 0");
}

void require_unselected(const GainDistribution& d, const char* what) {
  if (d.selection != 1) {
    throw DomainError(std::string(what) + " describes an unselected gain; use the TAS forms");
  }
}

// Lower and upper regularized gamma for integer shape a, split so neither side
// suffers cancellation: the tail series of P below the mode, the finite Erlang
// sum for Q above it.
struct ErlangTail {
  extended lower;
  extended upper;
};

ErlangTail erlang_split(int a, extended t) {
  if (t <= 0.0L) return {0.0L, 1.0L};
  if (std::isinf(t)) return {1.0L, 0.0L};
  if (t <= extended(a)) {
    // P(a,t) = e^{-t} t^a / a! * sum_j t^j / ((a+1)...(a+j))
    const extended lead = std::exp(-t + a * std::log(t) - std::lgamma(extended(a) + 1));
    extended term = 1.0L;
    extended sum = 1.0L;
    for (int j = 1; j < 100000; ++j) {
      term *= t / (a + j);
      sum += term;
      if (term < sum * std::numeric_limits<extended>::epsilon()) break;
    }
    const extended lower = lead * sum;
    return {lower, 1.0L - lower};
  }
  // Q(a,t) = e^{-t} sum_{k<a} t^k / k!, each term formed in log space.
  const extended logT = std::log(t);
  extended upper = 0.0L;
  for (int k = a - 1; k >= 0; --k) {
    upper += std::exp(-t + k * logT - std::lgamma(extended(k) + 1));
  }
  return {1.0L - upper, upper};
}

}  // namespace

void GainDistribution::validate() const {
  if (m < 1 || antennas < 1 || selection < 1) {
    throw DomainError("gain distribution needs m, antennas and selection >= 1");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("gain distribution needs a finite lambda > 0");
  }
}

double mrc_gain_cdf(double x, const GainDistribution& d) {
  require_nonnegative(x, "mrc_gain_cdf");
  require_unselected(d, "mrc_gain_cdf");
  d.validate();
  const extended t = extended(d.m) * x / d.lambda;
  return static_cast<double>(erlang_split(d.shape(), t).lower);
}

double mrc_gain_survival(double x, const GainDistribution& d) {
  require_nonnegative(x, "mrc_gain_survival");
  require_unselected(d, "mrc_gain_survival");
  d.validate();
  const extended t = extended(d.m) * x / d.lambda;
  return static_cast<double>(erlang_split(d.shape(), t).upper);
}

double mrc_gain_pdf(double x, const GainDistribution& d) {
  require_nonnegative(x, "mrc_gain_pdf");
  require_unselected(d, "mrc_gain_pdf");
  d.validate();
  const int a = d.shape();
  if (x == 0.0) return a == 1 ? d.m / d.lambda : 0.0;
  if (std::isinf(x)) return 0.0;
  const double logPdf = a * std::log(d.m / d.lambda) + (a - 1) * std::log(x) -
                        d.m * x / d.lambda - std::lgamma(static_cast<double>(a));
  return std::exp(logPdf);
}

double gain_survival(double x, const GainDistribution& d) {
  require_nonnegative(x, "gain_survival");
  d.validate();
  GainDistribution single = d;
  single.selection = 1;
  if (d.selection == 1) return mrc_gain_survival(x, single);
  // 1 - (1 - Q)^L without losing Q when it is tiny.
  const double q = mrc_gain_survival(x, single);
  return -std::expm1(d.selection * std::log1p(-q));
}

double tas_best_cdf_direct(double x, const GainDistribution& d) {
  require_nonnegative(x, "tas_best_cdf_direct");
  d.validate();
  GainDistribution single = d;
  single.selection = 1;
  const double base = mrc_gain_cdf(x, single);
  return d.selection == 1 ? base : std::pow(base, d.selection);
}

GainSeries::GainSeries(const GainDistribution& d) : dist_(d) {
  d.validate();
  const int slots = d.shape();
  for (int p = 1; p <= d.selection; ++p) {
    for (const auto& c : weak_compositions(p, slots)) {
      const PhiTerm phi = phi_term(c, d.selection, d.m, d.lambda);
      terms_.push_back(Term{phi.coefficient, phi.exponent, extended(p) * d.m / extended(d.lambda)});
      if (terms_.size() > kMaxSeriesTerms) {
        throw SeriesError("TAS CDF expansion exceeds the term limit");
      }
    }
  }
}

double GainSeries::cdf(double x) const {
  require_nonnegative(x, "tas_best_cdf_expanded");
  if (std::isinf(x)) return 1.0;
  std::vector<SignedLogValue> parts;
  parts.reserve(terms_.size() + 1);
  parts.push_back({1, 0.0L});
  const extended logX = x > 0.0 ? std::log(extended(x)) : 0.0L;
  for (const auto& t : terms_) {
    if (t.exponent > 0 && x == 0.0) continue;
    parts.push_back({t.coefficient.sign, t.coefficient.logMagnitude + t.exponent * logX -
                                             t.rate * x});
  }
  return signed_log_sum(parts);
}

double tas_best_cdf_expanded(double x, const GainDistribution& d) {
  return GainSeries(d).cdf(x);
}

double gain_cdf(double x, const GainDistribution& d) { return tas_best_cdf_direct(x, d); }

GainDistribution near_gain(const Model& model, SolutionId sol) {
  const auto& c = model.config();
  return {c.near.fading.m, model.derived().lambdaN, c.near.antennas,
          sol == SolutionId::SolutionI ? c.sourceAntennas : 1};
}

GainDistribution far_gain(const Model& model, SolutionId sol) {
  const auto& c = model.config();
  return {c.far.fading.m, model.derived().lambdaF, c.far.antennas,
          sol == SolutionId::SolutionII ? c.sourceAntennas : 1};
}

GainDistribution eve_gain(const Model& model) {
  const auto& c = model.config();
  return {c.eve.fading.m, model.derived().lambdaE, c.eve.antennas, 1};
}

double sinr_far_cdf(double x, const Model& model, SolutionId sol) {
  require_nonnegative(x, "sinr_far_cdf");
  const auto& c = model.config();
  if (x >= model.derived().beta) return 1.0;
  return gain_cdf(a_fraction(x, c.alphaF, c.alphaN) / c.gamma0, far_gain(model, sol));
}

double eve_sinr_far_cdf(double x, const Model& model) {
  require_nonnegative(x, "eve_sinr_far_cdf");
  const auto& c = model.config();
  if (x >= model.derived().beta) return 1.0;
  return mrc_gain_cdf(a_fraction(x, c.alphaF, c.alphaN) / c.gammaE, eve_gain(model));
}

double eve_sinr_far_pdf(double x, const Model& model) {
  require_nonnegative(x, "eve_sinr_far_pdf");
  const auto& c = model.config();
  const auto& d = model.derived();
  if (x >= d.beta) return 0.0;

  // sum_{k<a_E} m_E^k alpha_F A^{k-1} e^{-s} (s - k) / (k! lambda_E^k gammaE^k (alpha_F - alpha_N x)^2)
  const extended A = a_fraction(x, c.alphaF, c.alphaN);
  const extended rate = extended(c.eve.fading.m) / (extended(c.gammaE) * d.lambdaE);
  const extended s = rate * A;
  const extended denominator = extended(c.alphaF) - extended(c.alphaN) * x;
  const extended lead = extended(c.alphaF) * std::exp(-s) / (denominator * denominator);

  extended sum = rate;  // k = 0: A^{-1} * s
  extended power = 1.0L;  // rate^k A^{k-1} / k! for k >= 1
  for (int k = 1; k < d.aE; ++k) {
    power *= (k == 1 ? rate : rate * A) / k;
    sum += power * (s - k);
  }
  const double pdf = static_cast<double>(lead * sum);
  return pdf > 0.0 ? pdf : 0.0;
}

double eve_snr_near_cdf(double x, const Model& model) {
  require_nonnegative(x, "eve_snr_near_cdf");
  const auto& c = model.config();
  return mrc_gain_cdf(x / (c.alphaN * c.gammaE), eve_gain(model));
}

}  // namespace nomasec
