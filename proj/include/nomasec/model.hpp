#pragma once

#include <optional>

namespace nomasec {

// Point in the 2-D deployment plane.
struct NodePosition {
  double x = 0.0;
  double y = 0.0;
};

// Large-scale attenuation of one S->U link.
struct LinkGeometry {
  double distance = 1.0;          // d_US > 0
  double pathLossExponent = 2.0;  // theta_US >= 0

  static LinkGeometry between(NodePosition source, NodePosition node, double pathLossExponent);
};

// Per-antenna Nakagami-m small-scale fading.
struct FadingProfile {
  int m = 1;           // shape, a positive integer (finite-sum closed forms need integer m*L)
  double omega = 1.0;  // E|h|^2 of one antenna pair
};

// Converts a real-valued shape read from user input; rejects non-integers.
int checked_shape(double m);

// Receiver side of one link from the source: antenna count, fading, and
// either a geometry or a directly given mean gain lambda = omega / d^theta.
// When both are present the geometry wins and a mismatch is a ConfigError.
struct Link {
  int antennas = 1;
  FadingProfile fading{};
  std::optional<LinkGeometry> geometry;
  std::optional<double> lambda;

  double mean_gain() const;  // lambda, resolved and validated
};

// Full scenario. All SNRs are linear; dB only exists at the input boundary.
struct SystemConfig {
  int sourceAntennas = 1;  // L_S
  Link near;               // S -> N
  Link far;                // S -> F
  Link eve;                // S -> E
  double alphaF = 0.6;
  double alphaN = 0.4;
  double gamma0 = 10.0;    // P_S / N_0
  double gammaE = 10.0;    // P_S / N_E
  double rateF = 0.5;          // R_F
  double secrecyRateN = 0.5;   // R_sN
  double secrecyRateF = 0.5;   // R_sF
  int quadratureN = 100;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Every auxiliary symbol the closed forms use.
struct DerivedParams {
  int aN = 0, aF = 0, aE = 0;  // m_U * L_U
  int bN = 0, bF = 0;          // a_U * L_S
  double lambdaN = 0.0, lambdaF = 0.0, lambdaE = 0.0;
  double beta = 0.0;           // alpha_F / alpha_N, the interference-limited SINR ceiling
  double gammaTh = 0.0;        // 2^R_F - 1
  std::optional<double> eta;   // log2(alpha_F / (alpha_F - alpha_N gammaTh)); only when gammaTh < beta
  double gammaSN = 0.0;        // (2^R_sN - 1) / alpha_N
  double uF = 0.0;             // 1 / (alpha_N 2^R_sF) - 1
};

DerivedParams derive_params(const SystemConfig& config);

// A_x = x / (alpha_F - alpha_N x). Defined on [0, beta); throws DomainError at or above beta.
double a_fraction(double x, double alphaF, double alphaN);

// g_{x,F} = 2^R_sF x + 2^R_sF - 1, the eavesdropper-SINR shift in the SOP_F integrand.
double g_shift(double x, double secrecyRateF);

enum class SolutionId { SolutionI, SolutionII };

const char* to_string(SolutionId id);

// Validated configuration bundled with its derived parameters. Immutable.
class Model {
 public:
  explicit Model(SystemConfig config);

  const SystemConfig& config() const noexcept { return config_; }
  const DerivedParams& derived() const noexcept { return derived_; }

  // A_{gamma_th}; only meaningful when gammaTh < beta.
  double a_threshold() const { return a_fraction(derived_.gammaTh, config_.alphaF, config_.alphaN); }
  bool near_saturated() const noexcept { return derived_.gammaTh >= derived_.beta; }

 private:
  SystemConfig config_;
  DerivedParams derived_;
};

double db_to_linear(double dB);
double linear_to_db(double linear);

}  // namespace nomasec
