#include "nomasec/model.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "nomasec/error.hpp"

namespace nomasec {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

void validate_link(const Link& link, const char* name) {
  const std::string prefix = std::string(name) + ".";
  require(link.antennas >= 1, prefix + "L must be a positive integer");
  require(link.fading.m >= 1, prefix + "m must be a positive integer");
  require(finite_positive(link.fading.omega), prefix + "omega must be > 0");
  (void)link.mean_gain();
}

}  // namespace

LinkGeometry LinkGeometry::between(NodePosition source, NodePosition node, double pathLossExponent) {
  if (!std::isfinite(source.x) || !std::isfinite(source.y) || !std::isfinite(node.x) ||
      !std::isfinite(node.y)) {
    throw ConfigError("node coordinates must be finite");
  }
  return LinkGeometry{std::hypot(node.x - source.x, node.y - source.y), pathLossExponent};
}

int checked_shape(double m) {
  if (!std::isfinite(m) || m < 1.0 || m != std::floor(m) || m > 1e6) {
    throw ConfigError("Nakagami m must be a positive integer, got " + std::to_string(m));
  }
  return static_cast<int>(m);
}

double Link::mean_gain() const {
  if (geometry) {
    require(finite_positive(geometry->distance), "link distance must be > 0");
    require(std::isfinite(geometry->pathLossExponent) && geometry->pathLossExponent >= 0.0,
            "path-loss exponent must be >= 0");
    const double fromGeometry =
        fading.omega / std::pow(geometry->distance, geometry->pathLossExponent);
    require(finite_positive(fromGeometry), "link mean gain is not a positive finite number");
    if (lambda && std::abs(*lambda - fromGeometry) > 1e-9 * fromGeometry) {
      throw ConfigError("lambda " + std::to_string(*lambda) +
                        " disagrees with the geometry-derived value " +
                        std::to_string(fromGeometry));
    }
    return fromGeometry;
  }
  require(lambda.has_value(), "link needs either a geometry or lambda");
  require(finite_positive(*lambda), "lambda must be > 0");
  return *lambda;
}

void SystemConfig::validate() const {
  require(sourceAntennas >= 1, "L_S must be a positive integer");
  validate_link(near, "near");
  validate_link(far, "far");
  validate_link(eve, "eve");
  require(std::isfinite(alphaF) && std::isfinite(alphaN), "alphaF and alphaN must be finite");
  require(alphaN > 0.0, "alphaN must be > 0");
  require(alphaF > alphaN, "alphaF must exceed alphaN");
  require(std::abs(alphaF + alphaN - 1.0) <= 1e-12, "alphaF + alphaN must equal 1");
  require(finite_positive(gamma0), "gamma0 must be > 0");
  require(finite_positive(gammaE), "gammaE must be > 0");
  require(std::isfinite(rateF) && rateF >= 0.0, "R_F must be >= 0");
  require(std::isfinite(secrecyRateN) && secrecyRateN >= 0.0, "R_sN must be >= 0");
  require(std::isfinite(secrecyRateF) && secrecyRateF >= 0.0, "R_sF must be >= 0");
  require(quadratureN >= 1, "quadratureN must be a positive integer");
}

DerivedParams derive_params(const SystemConfig& config) {
  config.validate();
  DerivedParams d;
  d.aN = config.near.fading.m * config.near.antennas;
  d.aF = config.far.fading.m * config.far.antennas;
  d.aE = config.eve.fading.m * config.eve.antennas;
  d.bN = d.aN * config.sourceAntennas;
  d.bF = d.aF * config.sourceAntennas;
  d.lambdaN = config.near.mean_gain();
  d.lambdaF = config.far.mean_gain();
  d.lambdaE = config.eve.mean_gain();
  d.beta = config.alphaF / config.alphaN;
  d.gammaTh = std::exp2(config.rateF) - 1.0;
  if (d.gammaTh < d.beta) {
    d.eta = std::log2(config.alphaF / (config.alphaF - config.alphaN * d.gammaTh));
  }
  d.gammaSN = (std::exp2(config.secrecyRateN) - 1.0) / config.alphaN;
  d.uF = 1.0 / (config.alphaN * std::exp2(config.secrecyRateF)) - 1.0;
  return d;
}

double a_fraction(double x, double alphaF, double alphaN) {
  if (!(x >= 0.0)) throw DomainError("a_fraction: x must be >= 0");
  const double denominator = alphaF - alphaN * x;
  if (!(denominator > 0.0)) {
    throw DomainError("a_fraction: x must be below beta = alphaF / alphaN");
  }
  return x / denominator;
}

double g_shift(double x, double secrecyRateF) {
  const double scale = std::exp2(secrecyRateF);
  return scale * x + scale - 1.0;
}

const char* to_string(SolutionId id) {
  return id == SolutionId::SolutionI ? "I" : "II";
}

Model::Model(SystemConfig config) : config_(std::move(config)), derived_(derive_params(config_)) {}

double db_to_linear(double dB) { return std::pow(10.0, dB / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace nomasec
