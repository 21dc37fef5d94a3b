#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nomasec/scenario.hpp"

namespace nomasec {

struct SweepRow {
  std::string axis;
  double value = 0.0;
  SolutionId solution = SolutionId::SolutionI;
  std::optional<double> sopN_exact, sopF_exact, sopO_exact;
  std::optional<double> sopN_asym, sopF_asym, sopO_asym;
  std::optional<double> sopN_mc, sopN_mc_stderr;
  std::optional<double> sopF_mc, sopF_mc_stderr;
  std::optional<double> sopO_mc, sopO_mc_stderr;
  std::string error;  // empty when the row evaluated cleanly
};

struct SweepOptions {
  unsigned mcWorkers = 0;  // passed to estimate_sop
};

// One row per axis value per solution, in (value, solution) order. A failing
// row keeps whatever it computed, records the error and the sweep continues.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

struct AlphaStar {
  double alphaF = 0.0;
  double sopO = 0.0;
  std::size_t index = 0;  // position in the grid
  bool interior = false;  // not the first or last grid point
};

// Minimizer of the exact overall SOP over an alphaF grid inside (0.5, 1);
// ties go to the smaller alphaF.
AlphaStar find_alpha_star(const SystemConfig& config, SolutionId sol, std::vector<double> grid);

// Fixed column order, see csv_header().
const std::vector<std::string>& csv_header();
void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> read_csv(std::istream& in);

}  // namespace nomasec
