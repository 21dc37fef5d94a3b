#pragma once

#include <vector>

#include "nomasec/math_kernel.hpp"
#include "nomasec/model.hpp"

namespace nomasec {

// Law of one channel power gain: the MRC sum over `antennas` receive branches
// is Gamma(m * antennas, lambda / m). `selection` > 1 means the largest of that
// many i.i.d. copies (transmit antenna selection); 1 means no selection.
struct GainDistribution {
  int m = 1;
  double lambda = 1.0;
  int antennas = 1;
  int selection = 1;

  int shape() const { return m * antennas; }
  void validate() const;
};

// Erlang CDF 1 - sum_{k<a} (m x / lambda)^k e^{-m x / lambda} / k!. Requires selection == 1.
double mrc_gain_cdf(double x, const GainDistribution& d);
// 1 - mrc_gain_cdf, without the cancellation near 1.
double mrc_gain_survival(double x, const GainDistribution& d);
double mrc_gain_pdf(double x, const GainDistribution& d);

// [mrc_gain_cdf(x)]^selection.
double tas_best_cdf_direct(double x, const GainDistribution& d);

// F(x) = 1 + sum_{p, delta} Phi x^phi e^{-p m x / lambda}, the binomial/multinomial
// expansion of the selected-gain CDF. With selection == 1 the expansion collapses to
// the plain Erlang sum, so the same term list serves both selected and unselected gains.
class GainSeries {
 public:
  struct Term {
    SignedLogValue coefficient;  // Phi, sign included
    int exponent = 0;            // phi
    extended rate = 0.0L;        // p m / lambda
  };

  explicit GainSeries(const GainDistribution& d);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  const GainDistribution& distribution() const noexcept { return dist_; }
  double cdf(double x) const;

 private:
  GainDistribution dist_;
  std::vector<Term> terms_;
};

double tas_best_cdf_expanded(double x, const GainDistribution& d);

// CDF and survival of whichever law d describes (direct form).
double gain_cdf(double x, const GainDistribution& d);
double gain_survival(double x, const GainDistribution& d);

// Marginal laws of the three gains under each selection rule. Selection on
// one link leaves the other links' gains at the chosen antenna unselected.
GainDistribution near_gain(const Model& model, SolutionId sol);
GainDistribution far_gain(const Model& model, SolutionId sol);
GainDistribution eve_gain(const Model& model);

// CDF of the far user's SINR for its own message; 1 at and above beta.
double sinr_far_cdf(double x, const Model& model, SolutionId sol);

// Eavesdropper SINR for x_F (interference from x_N included).
double eve_sinr_far_cdf(double x, const Model& model);
double eve_sinr_far_pdf(double x, const Model& model);

// Eavesdropper SNR for x_N after cancelling x_F: alpha_N gammaE Z.
double eve_snr_near_cdf(double x, const Model& model);

}  // namespace nomasec
