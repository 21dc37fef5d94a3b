#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nomasec {

// Series terms are carried in extended precision. The TAS-expanded CDFs
// cancel terms of order one down to values of order 1e-6 and below.
using extended = long double;

// Hard ceiling on the number of terms any single closed-form expression may expand to.
inline constexpr std::size_t kMaxSeriesTerms = 1'000'000;

double log_gamma(double x);
extended log_gamma_ext(extended x);
extended log_binomial(int n, int k);

// P(a, x) = gamma(a, x) / Gamma(a).
double reg_lower_incomplete_gamma(double a, double x);

// Non-negative integer vector of length `slots` whose entries sum to `total`.
// Slot q holds delta_q, the multiplicity of the q-th Erlang term.
struct WeakComposition {
  std::vector<int> counts;
  int total = 0;

  int weighted_sum() const;  // sum_q q * delta_q
};

// Number of weak compositions of p into `slots` parts, C(p + slots - 1, slots - 1).
double weak_composition_count(int p, int slots);

// All weak compositions of p into `slots` parts, largest-first-slot order:
// (p,0,..,0), (p-1,1,0,..), ... , (0,..,0,p). Throws SeriesError above kMaxSeriesTerms.
std::vector<WeakComposition> weak_compositions(int p, int slots);

// sign * exp(logMagnitude). sign == 0 encodes an exact zero.
struct SignedLogValue {
  int sign = 0;
  extended logMagnitude = 0.0L;

  static SignedLogValue from(extended value);
  extended value() const;
};

// One term of the multinomial expansion of [1 - sum_q (m x/lambda)^q e^{-m x/lambda}/q!]^L_S:
// coefficient Phi (with its (-1)^p sign) and the power phi of x it multiplies.
struct PhiTerm {
  SignedLogValue coefficient;
  int exponent = 0;  // phi = sum_q q * delta_q
  int layer = 0;     // p
};

PhiTerm phi_term(const WeakComposition& c, int sourceAntennas, int m, double lambda);

// v_i = cos((2i - 1) pi / (2N)), i = 1..N.
std::vector<double> chebyshev_nodes(int n);

// sum of sign * exp(logMagnitude), scaled by the largest magnitude and
// accumulated with compensation. Empty input gives exactly 0.
double signed_log_sum(std::span<const SignedLogValue> terms);
extended signed_log_sum_ext(std::span<const SignedLogValue> terms);

struct IntegrationOptions {
  double tolAbs = 1e-12;
  double tolRel = 1e-10;
  int maxSubdivisions = 4000;
};

// Globally adaptive 15-point Gauss-Kronrod integration of f over [a, b].
// b may be +infinity (mapped through x = a + t / (1 - t)). The integrand is
// never evaluated at the endpoints. Throws IntegrationError when the
// estimated error stays above max(tolAbs, tolRel * |result|).
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          const IntegrationOptions& options = {});
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tolAbs, double tolRel);
// Same over [points.front(), points.back()], with the interior points as the
// initial panel edges. Useful when the integrand has a known narrow feature.
double adaptive_integrate(const std::function<double(double)>& f, std::span<const double> points,
                          const IntegrationOptions& options = {});

}  // namespace nomasec
