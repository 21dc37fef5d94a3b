#include "nomasec/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "nomasec/channel_stats.hpp"
#include "nomasec/error.hpp"
#include "nomasec/math_kernel.hpp"

namespace nomasec {

namespace {

struct NearSetup {
  double A;       // A_{gamma_th}
  double gammaSN;
  double kappa;   // 2^R_sN gammaE
  double c;       // A / gammaE, the Z-threshold
  GainDistribution y;
  GainDistribution z;
};

NearSetup near_setup(const Model& model, SolutionId sol) {
  if (model.near_saturated()) {
    throw DomainError("near-user terms are undefined when gamma_th >= beta (SOP_N = 1)");
  }
  const auto& c = model.config();
  const double A = model.a_threshold();
  return {A, model.derived().gammaSN, std::exp2(c.secrecyRateN) * c.gammaE, A / c.gammaE,
          near_gain(model, sol), eve_gain(model)};
}

bool lambda2_active(const Model& model) {
  // Zero branch for R_sN strictly below eta.
  return !(model.config().secrecyRateN < *model.derived().eta);
}

// F(hi) - F(lo) for hi >= lo, through whichever tail is small.
double cdf_difference(double lo, double hi, const GainDistribution& d) {
  const double Flo = gain_cdf(lo, d);
  if (Flo < 0.5) return std::max(0.0, gain_cdf(hi, d) - Flo);
  return std::max(0.0, gain_survival(lo, d) - gain_survival(hi, d));
}

extended log_or_skip(extended x) { return x > 0.0L ? std::log(x) : 0.0L; }

void clamp_check(double raw, const char* what) {
  if (raw < -1e-9 || raw > 1.0 + 1e-9) {
    throw SeriesError(std::string(what) + " evaluated to " + std::to_string(raw) +
                      ", outside [0, 1] by more than 1e-9");
  }
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// A_{g(t)} written through the gap w = u_F - t. Since beta - g(t) = 2^{R_sF} w,
// this avoids the cancellation in alphaF - alphaN g(t) as t approaches u_F.
extended shifted_fraction(extended w, const DerivedParams& d, const SystemConfig& c) {
  const extended scale = std::exp2(extended(c.secrecyRateF));
  const extended g = extended(d.beta) - scale * w;
  return g / (extended(c.alphaN) * scale * w);
}

}  // namespace

const char* to_string(Lambda3Route route) {
  switch (route) {
    case Lambda3Route::ClosedForm: return "closed";
    case Lambda3Route::Quadrature: return "quadrature";
    default: return "none";
  }
}

double lambda1(const Model& model, SolutionId sol) {
  const NearSetup s = near_setup(model, sol);
  return gain_cdf(s.A / model.config().gamma0, s.y);
}

double lambda2(const Model& model, SolutionId sol) {
  const NearSetup s = near_setup(model, sol);
  if (!lambda2_active(model)) return 0.0;
  const double g0 = model.config().gamma0;
  return cdf_difference(s.A / g0, s.gammaSN / g0, s.y) * mrc_gain_cdf(s.c, s.z);
}

double lambda3_integral(const Model& model, SolutionId sol) {
  const NearSetup s = near_setup(model, sol);
  const auto& d = model.derived();
  const double g0 = model.config().gamma0;
  const double mE = model.config().eve.fading.m;
  const double lo = s.A / g0;
  const double logGammaAE = std::lgamma(static_cast<double>(d.aE));

  // Z in units of lambda_E / m_E, so the weight is the unit-scale Gamma(a_E) density.
  const double scale = d.lambdaE / mE;
  auto integrand = [&](double u) {
    if (!(u > 0.0)) return 0.0;
    const double weight = std::exp((d.aE - 1) * std::log(u) - u - logGammaAE);
    if (weight == 0.0) return 0.0;
    const double hi = (s.kappa * scale * u + s.gammaSN) / g0;
    return cdf_difference(lo, hi, s.y) * weight;
  };
  IntegrationOptions options;
  options.tolAbs = 1e-300;
  options.tolRel = 1e-10;
  return adaptive_integrate(integrand, s.c / scale, std::numeric_limits<double>::infinity(),
                            options);
}

SeriesValue lambda3_closed_series(const Model& model, SolutionId sol) {
  const NearSetup s = near_setup(model, sol);
  const auto& c = model.config();
  const auto& d = model.derived();
  const GainSeries series(s.y);

  const extended g0 = c.gamma0;
  const extended mE = c.eve.fading.m;
  const extended lambdaE = d.lambdaE;
  const extended gammaSN = s.gammaSN;
  const extended kappa = s.kappa;
  const extended cz = s.c;
  const int aE = d.aE;

  // B^(1) = [1 - F_Y(A / gamma0)] [1 - F_Z(A / gammaE)]
  const double b1 = gain_survival(s.A / c.gamma0, s.y) * mrc_gain_survival(s.c, s.z);

  std::vector<SignedLogValue> terms;
  const extended common =
      aE * std::log(mE) - std::lgamma(extended(aE)) - aE * std::log(lambdaE);
  for (const auto& t : series.terms()) {
    const extended rate = t.rate;  // p m_N / lambda_N
    const extended b2 = rate * kappa / g0 + mE / lambdaE;
    const extended cb2 = cz * b2;
    const extended logCb2 = log_or_skip(cb2);
    const int phi = t.exponent;
    const extended head = t.coefficient.logMagnitude + common - rate * gammaSN / g0 -
                          phi * std::log(g0);
    for (int j = 0; j <= phi; ++j) {
      if (phi - j > 0 && gammaSN == 0.0L) continue;
      const extended psiJ = head + log_binomial(phi, j) + std::lgamma(extended(aE + j)) +
                            j * std::log(kappa) + (phi - j) * log_or_skip(gammaSN) -
                            (aE + j) * std::log(b2);
      for (int n = 0; n < aE + j; ++n) {
        if (n > 0 && cb2 == 0.0L) break;
        const extended logTerm = psiJ - std::lgamma(extended(n) + 1) + n * logCb2 - cb2;
        terms.push_back({t.coefficient.sign, logTerm});
      }
      if (terms.size() > kMaxSeriesTerms) {
        throw SeriesError("Lambda_3 closed form exceeds the term limit");
      }
    }
  }

  extended magnitude = 0.0L;
  for (const auto& t : terms) magnitude += std::exp(t.logMagnitude);
  const extended series_sum = signed_log_sum_ext(terms);
  SeriesValue out;
  out.value = static_cast<double>(extended(b1) + series_sum);
  out.magnitude = static_cast<double>(magnitude + std::fabs(extended(b1)));
  // B^(1) carries double rounding, the series long-double rounding per term.
  out.roundoff = static_cast<double>(64.0L * std::numeric_limits<extended>::epsilon() * magnitude) +
                 4.0 * std::numeric_limits<double>::epsilon() * b1;
  return out;
}

double lambda3_closed(const Model& model, SolutionId sol) {
  return lambda3_closed_series(model, sol).value;
}

SopBreakdown sop_near(const Model& model, SolutionId sol) {
  SopBreakdown out;
  if (model.near_saturated()) {
    out.saturatedN = true;
    out.sopN = 1.0;
    out.rawSopN = 1.0;
    return out;
  }
  out.lambda1 = lambda1(model, sol);
  out.lambda2 = lambda2(model, sol);

  const SeriesValue closed = lambda3_closed_series(model, sol);
  if (closed.roundoff <= 1e-12 * std::fabs(closed.value)) {
    out.lambda3 = closed.value;
    out.route = Lambda3Route::ClosedForm;
  } else {
    out.lambda3 = lambda3_integral(model, sol);
    out.route = Lambda3Route::Quadrature;
  }

  out.rawSopN = out.lambda1 + out.lambda2 + out.lambda3;
  clamp_check(out.rawSopN, "SOP_N");
  out.sopN = clamp01(out.rawSopN);
  return out;
}

double sop_far(const Model& model, SolutionId sol) {
  return sop_far(model, sol, model.config().quadratureN);
}

double sop_far(const Model& model, SolutionId sol, int quadratureN) {
  if (quadratureN < 1) throw ConfigError("quadratureN must be a positive integer");
  const auto& c = model.config();
  const auto& d = model.derived();
  if (d.uF <= 0.0) return 1.0;

  const GainSeries series(far_gain(model, sol));
  const std::vector<double> nodes = chebyshev_nodes(quadratureN);
  const extended u = d.uF;
  const extended g0 = c.gamma0;
  const extended rateE = extended(c.eve.fading.m) / (extended(c.gammaE) * d.lambdaE);
  const extended logRateE = std::log(rateE);
  const extended logAlphaF = std::log(extended(c.alphaF));
  const extended logG0 = std::log(g0);
  const int aE = d.aE;

  std::vector<SignedLogValue> terms;
  terms.reserve(nodes.size() * series.terms().size() * static_cast<std::size_t>(aE));
  for (double v : nodes) {
    const extended x = (extended(v) + 1.0L) * u / 2.0L;
    const extended weight = std::numbers::pi_v<extended> * u *
                            std::sqrt(1.0L - extended(v) * v) / (2.0L * quadratureN);
    const extended A = a_fraction(static_cast<double>(x), c.alphaF, c.alphaN);
    const extended Ag = shifted_fraction((1.0L - extended(v)) * u / 2.0L, d, c);
    const extended s = rateE * A;
    const extended den = extended(c.alphaF) - extended(c.alphaN) * x;
    const extended nodeLog = std::log(weight) + logAlphaF - 2.0L * std::log(den) - s;
    for (const auto& t : series.terms()) {
      const extended fLog = t.coefficient.logMagnitude - t.exponent * logG0 +
                            t.exponent * std::log(Ag) - t.rate * Ag / g0;
      for (int n = 0; n < aE; ++n) {
        const extended diff = s - n;
        if (diff == 0.0L) continue;
        // (m_E / (gammaE lambda_E))^n A^{n-1} / n!
        const extended eLog = n * logRateE + (n - 1) * std::log(A) - std::lgamma(extended(n) + 1);
        terms.push_back({t.coefficient.sign * (diff > 0 ? 1 : -1),
                         nodeLog + fLog + eLog + std::log(std::fabs(diff))});
      }
    }
    if (terms.size() > kMaxSeriesTerms) throw SeriesError("SOP_F closed form exceeds the term limit");
  }
  terms.push_back({1, 0.0L});
  return clamp01(signed_log_sum(terms));
}

double sop_far_integral(const Model& model, SolutionId sol) {
  const auto& c = model.config();
  const auto& d = model.derived();
  if (d.uF <= 0.0) return 1.0;

  const GainDistribution x = far_gain(model, sol);
  const GainDistribution z = eve_gain(model);
  // Integrate over the gap w = u_F - t. F_X(A_g / gamma0) rises from ~0 to 1
  // within ~1/gamma0 of w = 0, so the panels start on a geometric grid there.
  // alpha_F - alpha_N u_F is 0 at R_sF = 0 (u_F = beta); clamp away its rounding.
  const double denAtUf = std::max(c.alphaF - c.alphaN * d.uF, 0.0);
  auto integrand = [&](double w) {
    const double t = d.uF - w;
    const double den = denAtUf + c.alphaN * w;
    const double density =
        mrc_gain_pdf(t / den / c.gammaE, z) * c.alphaF / (den * den * c.gammaE);
    return gain_cdf(static_cast<double>(shifted_fraction(w, d, c)) / c.gamma0, x) * density;
  };
  std::vector<double> points{0.0};
  for (int k = 18; k >= 1; --k) points.push_back(d.uF * std::pow(10.0, -k));
  points.push_back(d.uF);
  IntegrationOptions options;
  options.tolAbs = 1e-15;
  options.tolRel = 1e-11;
  const double body = adaptive_integrate(integrand, points, options);
  // Mass of the eavesdropper SINR above u_F; none when u_F = beta.
  const double tail =
      denAtUf > 0.0 ? mrc_gain_survival(d.uF / denAtUf / c.gammaE, z) : 0.0;
  return clamp01(body + tail);
}

double combine_outage(double sopF, double sopN) { return 1.0 - (1.0 - sopF) * (1.0 - sopN); }

SopBreakdown sop_overall(const Model& model, SolutionId sol) {
  SopBreakdown out = sop_near(model, sol);
  out.sopF = sop_far(model, sol);
  out.sopOverall = combine_outage(out.sopF, out.sopN);
  return out;
}

AsymptoticSop sop_asymptotic(const Model& model, SolutionId sol) {
  const auto& c = model.config();
  const auto& d = model.derived();
  const bool selI = sol == SolutionId::SolutionI;
  const int L = c.sourceAntennas;
  const extended g0 = c.gamma0;
  const extended mN = c.near.fading.m;
  const extended mF = c.far.fading.m;
  const extended mE = c.eve.fading.m;
  const GainDistribution z = eve_gain(model);
  const int aE = d.aE;

  AsymptoticSop out;

  // Near user: F_Y(y) ~ K_N y^{e_N}.
  if (model.near_saturated()) {
    out.sopN = 1.0;
    out.diversityN = 0;
  } else {
    const int eN = selI ? d.bN : d.aN;
    const extended logKN = eN * std::log(mN / d.lambdaN) -
                           (selI ? L : 1) * std::lgamma(extended(d.aN) + 1);
    const extended A = model.a_threshold();
    const extended gammaSN = d.gammaSN;
    const extended kappa = std::exp2(extended(c.secrecyRateN)) * c.gammaE;
    const extended cz = A / c.gammaE;
    const double FZc = mrc_gain_cdf(static_cast<double>(cz), z);

    const extended l1 = std::exp(logKN + eN * (std::log(A) - std::log(g0)));
    extended l2 = 0.0L;
    if (lambda2_active(model)) {
      l2 = std::exp(logKN - eN * std::log(g0)) *
           (std::pow(gammaSN, extended(eN)) - std::pow(A, extended(eN))) * FZc;
    }
    const extended bAsym = l1 * (extended(FZc) - 1.0L);
    const extended sc = mE * A / (extended(c.gammaE) * d.lambdaE);
    std::vector<SignedLogValue> terms;
    for (int m = 0; m <= eN; ++m) {
      if (eN - m > 0 && gammaSN == 0.0L) continue;
      const extended psiM = log_binomial(eN, m) + logKN - eN * std::log(g0) +
                            std::lgamma(extended(aE + m)) - std::lgamma(extended(aE)) +
                            (eN - m) * log_or_skip(gammaSN) + m * std::log(kappa) +
                            m * std::log(extended(d.lambdaE)) - m * std::log(mE);
      for (int n = 0; n < aE + m; ++n) {
        if (n > 0 && sc == 0.0L) break;
        terms.push_back({1, psiM - std::lgamma(extended(n) + 1) + n * log_or_skip(sc) - sc});
      }
    }
    const extended l3 = bAsym + signed_log_sum_ext(terms);
    out.sopN = static_cast<double>(l1 + l2 + l3);
    out.diversityN = eN;
  }

  // Far user: F_X(x) ~ K_F x^{e_F}.
  if (d.uF <= 0.0) {
    out.sopF = 1.0;
  } else {
    const int eF = selI ? d.aF : d.bF;
    const extended logKF = eF * std::log(mF / d.lambdaF) -
                           (selI ? 1 : L) * std::lgamma(extended(d.aF) + 1);
    const extended u = d.uF;
    const int N = c.quadratureN;
    const extended rateE = mE / (extended(c.gammaE) * d.lambdaE);
    std::vector<SignedLogValue> terms;
    for (double v : chebyshev_nodes(N)) {
      const extended x = (extended(v) + 1.0L) * u / 2.0L;
      const extended weight =
          std::numbers::pi_v<extended> * u * std::sqrt(1.0L - extended(v) * v) / (2.0L * N);
      const extended A = a_fraction(static_cast<double>(x), c.alphaF, c.alphaN);
      const extended Ag = shifted_fraction((1.0L - extended(v)) * u / 2.0L, d, c);
      const extended s = rateE * A;
      const extended den = extended(c.alphaF) - extended(c.alphaN) * x;
      for (int m = 0; m < aE; ++m) {
        const extended diff = s - m;
        if (diff == 0.0L) continue;
        const extended logTerm = std::log(weight) + std::log(extended(c.alphaF)) + logKF -
                                 eF * std::log(g0) + m * std::log(rateE) -
                                 std::lgamma(extended(m) + 1) + eF * std::log(Ag) +
                                 (m - 1) * std::log(A) - s - 2.0L * std::log(den) +
                                 std::log(std::fabs(diff));
        terms.push_back({diff > 0 ? 1 : -1, logTerm});
      }
    }
    // Psi_{F,E}: the probability mass of the eavesdropper SINR above u_F.
    const extended denU = extended(c.alphaF) - extended(c.alphaN) * u;
    if (denU > 0.0L) {
      const extended su = rateE * u / denU;
      for (int m = 0; m < aE; ++m) {
        terms.push_back({1, m * std::log(su) - su - std::lgamma(extended(m) + 1)});
      }
    }
    out.sopF = signed_log_sum(terms);
  }
  out.diversityF = 0;
  // Below the high-SNR regime either expansion can exceed 1, and two such
  // factors would drive the product form negative; cap the inputs, not the parts.
  out.sopO = combine_outage(std::min(out.sopF, 1.0), std::min(out.sopN, 1.0));
  out.diversityO = 0;
  return out;
}

}  // namespace nomasec
