#pragma once

#include "nomasec/model.hpp"

namespace nomasec {

// How Lambda_3 was evaluated for a reported SOP_N.
enum class Lambda3Route { None, ClosedForm, Quadrature };

const char* to_string(Lambda3Route route);

struct SopBreakdown {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double sopN = 0.0;
  double sopF = 0.0;
  double sopOverall = 0.0;
  bool saturatedN = false;  // gamma_th >= beta
  Lambda3Route route = Lambda3Route::None;
  double rawSopN = 0.0;     // lambda1 + lambda2 + lambda3 before clamping
};

// Near-user terms. All of them reject a saturated model (gamma_th >= beta) with DomainError.
double lambda1(const Model& model, SolutionId sol);
double lambda2(const Model& model, SolutionId sol);
// Reference: adaptive quadrature of the defining integral.
double lambda3_integral(const Model& model, SolutionId sol);
// Finite-sum closed form.
double lambda3_closed(const Model& model, SolutionId sol);

struct SeriesValue {
  double value = 0.0;
  double magnitude = 0.0;  // sum of |terms|; value / magnitude measures cancellation
  double roundoff = 0.0;   // estimated absolute rounding error of value
};
SeriesValue lambda3_closed_series(const Model& model, SolutionId sol);

// Lambda_1 + Lambda_2 + Lambda_3, with Lambda_3 from the closed form unless its
// cancellation would cost more than ~1e-12 relative, in which case quadrature.
// sopF / sopOverall are left at zero.
SopBreakdown sop_near(const Model& model, SolutionId sol);

// Gauss-Chebyshev closed form with the model's quadratureN, or an explicit node count.
double sop_far(const Model& model, SolutionId sol);
double sop_far(const Model& model, SolutionId sol, int quadratureN);
// Reference: adaptive quadrature of the defining integral.
double sop_far_integral(const Model& model, SolutionId sol);

// 1 - (1 - sopF)(1 - sopN).
double combine_outage(double sopF, double sopN);

SopBreakdown sop_overall(const Model& model, SolutionId sol);

struct AsymptoticSop {
  double sopN = 0.0;
  double sopF = 0.0;
  double sopO = 0.0;
  int diversityN = 0;
  int diversityF = 0;
  int diversityO = 0;
};

// High-gamma0 approximations; only meaningful at large gamma0 and may exceed 1 elsewhere.
AsymptoticSop sop_asymptotic(const Model& model, SolutionId sol);

}  // namespace nomasec
