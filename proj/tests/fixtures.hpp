#pragma once

#include "nomasec/model.hpp"
#include "nomasec/scenario.hpp"

namespace fixtures {

// Evaluation-section defaults: m = 2 and two antennas on every node, alphaF = 0.6.
inline nomasec::SystemConfig reference_config(double gamma0dB = 10.0, double gammaEdB = 10.0,
                                          double alphaF = 0.6) {
  using nomasec::SweepAxis;
  nomasec::SystemConfig c = nomasec::load_scenario("fig4").base;
  c = nomasec::apply_axis(c, SweepAxis::Gamma0dB, gamma0dB);
  c = nomasec::apply_axis(c, SweepAxis::GammaEdB, gammaEdB);
  return nomasec::apply_axis(c, SweepAxis::AlphaF, alphaF);
}

// Same with lambda given directly and explicit counts.
inline nomasec::SystemConfig simple_config(int LS, int L, int m, double lambdaN = 4.0,
                                           double lambdaF = 1.0, double lambdaE = 0.108108) {
  nomasec::SystemConfig c;
  c.sourceAntennas = LS;
  for (auto* link : {&c.near, &c.far, &c.eve}) {
    link->antennas = L;
    link->fading.m = m;
  }
  c.near.lambda = lambdaN;
  c.far.lambda = lambdaF;
  c.eve.lambda = lambdaE;
  return c;
}

constexpr nomasec::SolutionId kSolutions[] = {nomasec::SolutionId::SolutionI,
                                              nomasec::SolutionId::SolutionII};

}  // namespace fixtures
