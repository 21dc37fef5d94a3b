#include "nomasec/math_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <iomanip>
#include <queue>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "nomasec/error.hpp"

namespace nomasec {

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: x must be > 0");
  return std::lgamma(x);
}

extended log_gamma_ext(extended x) {
  if (!(x > 0.0L)) throw DomainError("log_gamma: x must be > 0");
  return std::lgamma(x);
}

extended log_binomial(int n, int k) {
  if (k < 0 || k > n) throw DomainError("log_binomial: need 0 <= k <= n");
  return std::lgamma(extended(n) + 1) - std::lgamma(extended(k) + 1) -
         std::lgamma(extended(n - k) + 1);
}

double reg_lower_incomplete_gamma(double a, double x) {
  if (!(a > 0.0)) throw DomainError("reg_lower_incomplete_gamma: a must be > 0");
  if (!(x >= 0.0)) throw DomainError("reg_lower_incomplete_gamma: x must be >= 0");
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(a, x);
}

int WeakComposition::weighted_sum() const {
  int sum = 0;
  for (std::size_t q = 0; q < counts.size(); ++q) sum += static_cast<int>(q) * counts[q];
  return sum;
}

double weak_composition_count(int p, int slots) {
  if (p < 0 || slots < 1) throw DomainError("weak_composition_count: need p >= 0, slots >= 1");
  return std::round(std::exp(static_cast<double>(log_binomial(p + slots - 1, slots - 1))));
}

std::vector<WeakComposition> weak_compositions(int p, int slots) {
  if (p < 1 || slots < 1) throw DomainError("weak_compositions: need p >= 1 and slots >= 1");
  const double count = weak_composition_count(p, slots);
  if (count > static_cast<double>(kMaxSeriesTerms)) {
    throw SeriesError("multinomial expansion needs " + std::to_string(count) +
                      " terms (limit " + std::to_string(kMaxSeriesTerms) +
                      "); reduce L_S, m or the antenna count");
  }

  std::vector<WeakComposition> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> c(static_cast<std::size_t>(slots), 0);
  c[0] = p;
  for (;;) {
    out.push_back(WeakComposition{c, p});
    // Rightmost non-zero slot that still has a slot after it.
    int j = slots - 2;
    while (j >= 0 && c[static_cast<std::size_t>(j)] == 0) --j;
    if (j < 0) break;
    int tail = 1;
    for (int k = j + 1; k < slots; ++k) {
      tail += c[static_cast<std::size_t>(k)];
      c[static_cast<std::size_t>(k)] = 0;
    }
    --c[static_cast<std::size_t>(j)];
    c[static_cast<std::size_t>(j) + 1] = tail;
  }
  return out;
}

SignedLogValue SignedLogValue::from(extended value) {
  if (value == 0.0L) return {};
  return {value > 0 ? 1 : -1, std::log(std::fabs(value))};
}

extended SignedLogValue::value() const {
  if (sign == 0) return 0.0L;
  return sign * std::exp(logMagnitude);
}

PhiTerm phi_term(const WeakComposition& c, int sourceAntennas, int m, double lambda) {
  const int p = c.total;
  if (p < 1 || p > sourceAntennas) throw DomainError("phi_term: need 1 <= p <= L_S");
  if (!(lambda > 0.0) || m < 1) throw DomainError("phi_term: need m >= 1 and lambda > 0");

  extended logMag = log_binomial(sourceAntennas, p) + std::lgamma(extended(p) + 1);
  const extended logM = std::log(extended(m));
  const extended logLambda = std::log(extended(lambda));
  int sum = 0;
  for (std::size_t q = 0; q < c.counts.size(); ++q) {
    const int delta = c.counts[q];
    if (delta < 0) throw DomainError("phi_term: negative composition entry");
    sum += delta;
    if (delta == 0) continue;
    const extended qq = extended(q);
    logMag -= std::lgamma(extended(delta) + 1);
    logMag += delta * (qq * logM - std::lgamma(qq + 1) - qq * logLambda);
  }
  if (sum != p) throw DomainError("phi_term: composition does not sum to p");

  PhiTerm term;
  term.coefficient = {p % 2 == 0 ? 1 : -1, logMag};
  term.exponent = c.weighted_sum();
  term.layer = p;
  return term;
}

std::vector<double> chebyshev_nodes(int n) {
  if (n < 1) throw DomainError("chebyshev_nodes: N must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    v[static_cast<std::size_t>(i - 1)] = std::cos((2.0 * i - 1.0) * std::numbers::pi / (2.0 * n));
  }
  // Enforce exact antisymmetry; cos() rounding differs slightly between mirrored angles.
  for (int i = 0; i < n / 2; ++i) {
    const double mirrored = -v[static_cast<std::size_t>(i)];
    v[static_cast<std::size_t>(n - 1 - i)] = mirrored;
  }
  if (n % 2 == 1) v[static_cast<std::size_t>(n / 2)] = 0.0;
  return v;
}

extended signed_log_sum_ext(std::span<const SignedLogValue> terms) {
  extended maxLog = -std::numeric_limits<extended>::infinity();
  for (const auto& t : terms) {
    if (t.sign != 0) maxLog = std::max(maxLog, t.logMagnitude);
  }
  if (!std::isfinite(maxLog)) {
    if (maxLog > 0) throw DomainError("signed_log_sum: infinite term");
    return 0.0L;
  }

  // Neumaier compensated summation of the rescaled terms.
  extended sum = 0.0L;
  extended compensation = 0.0L;
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    const extended x = t.sign * std::exp(t.logMagnitude - maxLog);
    const extended s = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      compensation += (sum - s) + x;
    } else {
      compensation += (x - s) + sum;
    }
    sum = s;
  }
  return (sum + compensation) * std::exp(maxLog);
}

double signed_log_sum(std::span<const SignedLogValue> terms) {
  return static_cast<double>(signed_log_sum_ext(terms));
}

namespace {

struct Panel {
  double a;
  double b;
  double estimate;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

// Gauss-Kronrod 7/15 on one panel. Boost's own single-panel error estimate has
// a floor that does not shrink with the panel width, so the pair is formed here.
template <typename F>
Panel evaluate_panel(const F& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(center);
  double kronrod = wk[0] * f0;
  double gauss = wg[0] * f0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double pair = f(center - half * x[i]) + f(center + half * x[i]);
    kronrod += wk[i] * pair;
    if (i % 2 == 0) gauss += wg[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  const double error =
      std::max(std::fabs(kronrod - gauss), 50.0 * std::numeric_limits<double>::epsilon() *
                                               std::fabs(kronrod));
  return {a, b, kronrod, error};
}

double integrate_panels(const std::function<double(double)>& g, const std::vector<double>& edges,
                        const IntegrationOptions& options) {
  std::priority_queue<Panel> panels;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] > edges[i]) panels.push(evaluate_panel(g, edges[i], edges[i + 1]));
  }
  if (panels.empty()) return 0.0;

  auto totals = [&panels]() {
    // Recomputed from scratch to keep round-off from accumulating across updates.
    auto copy = panels;
    double estimate = 0.0;
    double error = 0.0;
    while (!copy.empty()) {
      estimate += copy.top().estimate;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair{estimate, error};
  };

  auto [runningEstimate, runningError] = totals();
  for (int step = 0; step < options.maxSubdivisions; ++step) {
    const double target = std::max(options.tolAbs, options.tolRel * std::fabs(runningEstimate));
    if (runningError <= target) break;
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // cannot refine further
    panels.pop();
    const Panel left = evaluate_panel(g, worst.a, mid);
    const Panel right = evaluate_panel(g, mid, worst.b);
    panels.push(left);
    panels.push(right);
    runningEstimate += left.estimate + right.estimate - worst.estimate;
    runningError += left.error + right.error - worst.error;
    if (step % 64 == 63) std::tie(runningEstimate, runningError) = totals();
  }
  const auto [estimate, error] = totals();
  if (!std::isfinite(estimate)) throw IntegrationError("adaptive_integrate: non-finite result");
  const double target = std::max(options.tolAbs, options.tolRel * std::fabs(estimate));
  if (error > target) {
    std::ostringstream msg;
    msg << std::setprecision(3) << "adaptive_integrate: estimated error " << error
        << " exceeds tolerance " << target << " after " << panels.size() << " panels";
    throw IntegrationError(msg.str());
  }
  return estimate;
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, std::span<const double> points,
                          const IntegrationOptions& options) {
  if (points.size() < 2) throw DomainError("adaptive_integrate: need at least two points");
  const double a = points.front();
  const double b = points.back();
  if (std::isnan(a) || std::isnan(b) || std::isinf(a)) {
    throw DomainError("adaptive_integrate: lower limit must be finite");
  }
  if (!std::is_sorted(points.begin(), points.end())) {
    throw DomainError("adaptive_integrate: points must be nondecreasing");
  }
  if (a == b) return 0.0;

  if (!std::isinf(b)) {
    std::vector<double> edges(points.begin(), points.end());
    if (edges.size() == 2) {
      // Start from four equal panels when no breakpoints are given.
      const double width = (b - a) / 4.0;
      edges = {a, a + width, a + 2.0 * width, a + 3.0 * width, b};
    }
    return integrate_panels(f, edges, options);
  }

  auto g = [&f, a](double t) {
    const double oneMinus = 1.0 - t;
    const double value = f(a + t / oneMinus);
    return value == 0.0 ? 0.0 : value / (oneMinus * oneMinus);
  };
  std::vector<double> edges;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double s = points[i] - a;
    edges.push_back(s / (1.0 + s));
  }
  if (edges.size() == 1) edges = {0.0, 0.25, 0.5, 0.75};
  edges.push_back(1.0);
  return integrate_panels(g, edges, options);
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          const IntegrationOptions& options) {
  if (std::isnan(a) || std::isnan(b) || std::isinf(a)) {
    throw DomainError("adaptive_integrate: lower limit must be finite");
  }
  if (b < a) throw DomainError("adaptive_integrate: need a <= b");
  const double points[] = {a, b};
  return adaptive_integrate(f, std::span<const double>(points), options);
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tolAbs, double tolRel) {
  return adaptive_integrate(f, a, b, IntegrationOptions{tolAbs, tolRel, 4000});
}

}  // namespace nomasec
