// nomasec: parameter sweeps, optimal power split and analytic-vs-simulation checks.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "nomasec/error.hpp"
#include "nomasec/scenario.hpp"
#include "nomasec/sweep.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitInput = 2;

struct Overrides {
  std::optional<int> quadratureN;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::string mode;
  std::string solutions;
  unsigned workers = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--quadrature-n", quadratureN, "Gauss-Chebyshev nodes for the far-user SOP")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--trials", trials, "Monte Carlo trials per operating point")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Monte Carlo seed");
    cmd->add_option("--mode", mode, "Eavesdropper model")->check(CLI::IsMember({"sic", "wces"}));
    cmd->add_option("--solutions", solutions, "Antenna selection solutions")
        ->check(CLI::IsMember({"1", "2", "both"}));
    cmd->add_option("--workers", workers, "Monte Carlo worker threads (0: all cores)");
  }

  void apply(nomasec::SweepSpec& spec) const {
    if (quadratureN) spec.base.quadratureN = *quadratureN;
    if (trials) spec.trials = *trials;
    if (seed) spec.seed = *seed;
    if (!mode.empty()) {
      spec.mode = mode == "wces" ? nomasec::EavesdropperMode::WorstCase
                                 : nomasec::EavesdropperMode::SicWithInterference;
    }
    if (solutions == "1") spec.solutions = {nomasec::SolutionId::SolutionI};
    if (solutions == "2") spec.solutions = {nomasec::SolutionId::SolutionII};
    if (solutions == "both") {
      spec.solutions = {nomasec::SolutionId::SolutionI, nomasec::SolutionId::SolutionII};
    }
  }
};

int report_row_errors(const std::vector<nomasec::SweepRow>& rows) {
  int failed = 0;
  for (const auto& r : rows) {
    if (r.error.empty()) continue;
    ++failed;
    std::cerr << "warning: " << r.axis << "=" << r.value << " solution " << to_string(r.solution)
              << ": " << r.error << "\n";
  }
  return failed;
}

int run_sweep_cmd(const std::string& source, const std::string& out, const Overrides& o) {
  nomasec::SweepSpec spec = nomasec::load_scenario(source);
  o.apply(spec);
  const auto rows = nomasec::run_sweep(spec, {o.workers});
  report_row_errors(rows);
  if (out == "-") {
    nomasec::emit_csv(rows, std::cout);
  } else {
    nomasec::write_csv(rows, out);
    std::cerr << "wrote " << rows.size() << " rows to " << out << "\n";
  }
  return 0;
}

int run_alpha_star_cmd(const std::string& source, int solution, const std::string& grid,
                       const Overrides& o) {
  nomasec::SweepSpec spec = nomasec::load_scenario(source);
  o.apply(spec);
  std::vector<double> values = grid.empty() ? std::vector<double>{} : nomasec::parse_values(grid);
  if (values.empty()) {
    if (spec.axis != nomasec::SweepAxis::AlphaF) {
      throw nomasec::ConfigError("--grid is required unless the scenario sweeps alphaF");
    }
    values = spec.values;
  }
  const auto sol = solution == 1 ? nomasec::SolutionId::SolutionI : nomasec::SolutionId::SolutionII;
  const nomasec::AlphaStar best = nomasec::find_alpha_star(spec.base, sol, values);
  std::printf("solution %s: alphaF* = %.6g, alphaN* = %.6g, SOP_O = %.10g%s\n", to_string(sol),
              best.alphaF, 1.0 - best.alphaF, best.sopO,
              best.interior ? "" : " (at the grid boundary)");
  return 0;
}

// Exact vs simulated SOPs at every operating point. A point fails when the gap
// exceeds max(3 standard errors, 1e-3).
int run_validate_cmd(const std::string& source, const Overrides& o) {
  nomasec::SweepSpec spec = nomasec::load_scenario(source);
  o.apply(spec);
  spec.outputs = {true, false, true};
  const auto rows = nomasec::run_sweep(spec, {o.workers});
  if (report_row_errors(rows) > 0) return kExitValidation;

  double maxZ = 0.0;
  int failures = 0;
  std::printf("%-10s %-10s %-3s %-5s %-14s %-14s %-10s %s\n", "axis", "value", "sol", "sop",
              "exact", "simulated", "stderr", "z");
  for (const auto& r : rows) {
    const struct {
      const char* name;
      double exact, mc, se;
    } items[] = {{"N", *r.sopN_exact, *r.sopN_mc, *r.sopN_mc_stderr},
                 {"F", *r.sopF_exact, *r.sopF_mc, *r.sopF_mc_stderr},
                 {"O", *r.sopO_exact, *r.sopO_mc, *r.sopO_mc_stderr}};
    for (const auto& it : items) {
      const double gap = std::fabs(it.exact - it.mc);
      // z under the analytic value, so rare events with no simulated hits stay finite.
      const double sigma = std::sqrt(it.exact * (1.0 - it.exact) / static_cast<double>(spec.trials));
      const double z = sigma > 0.0 ? gap / sigma
                                   : (gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      maxZ = std::max(maxZ, z);
      const bool ok = gap <= std::max(3.0 * it.se, 1e-3);
      failures += !ok;
      std::printf("%-10s %-10.4g %-3s %-5s %-14.6e %-14.6e %-10.3e %.2f%s\n", r.axis.c_str(),
                  r.value, to_string(r.solution), it.name, it.exact, it.mc, it.se, z,
                  ok ? "" : "  MISMATCH");
    }
  }
  std::printf("max |z| = %.3f over %zu points, %d mismatches\n", maxZ, rows.size(), failures);
  return failures ? kExitValidation : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy outage analysis for two-user downlink NOMA with antenna selection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "nomasec 0.1.0");

  std::string source;
  std::string out;
  int solution = 1;
  std::string grid;
  bool listPresets = false;
  Overrides sweepO, alphaO, validateO;

  auto* sweep = app.add_subcommand("sweep", "Evaluate a scenario file or preset and write CSV");
  sweep->add_option("scenario", source, "Scenario file or preset (fig2 .. fig10)")->required();
  sweep->add_option("--out,-o", out, "Output CSV path, '-' for stdout")->required();
  sweepO.add_to(sweep);

  auto* alpha = app.add_subcommand("alpha-star", "Power split minimizing the overall SOP");
  alpha->add_option("preset", source, "Scenario file or preset")->required();
  alpha->add_option("--solution", solution, "Antenna selection solution")
      ->check(CLI::IsMember({1, 2}));
  alpha->add_option("--grid", grid, "alphaF grid start:stop:step (default: the scenario values)");
  alphaO.add_to(alpha);

  auto* validate = app.add_subcommand("validate", "Compare exact SOPs with Monte Carlo");
  validate->add_option("preset", source, "Scenario file or preset")->required();
  validateO.add_to(validate);

  auto* presets = app.add_subcommand("presets", "List or print the built-in presets");
  presets->add_option("name", source, "Preset to print");
  presets->add_flag("--list", listPresets, "Only list the names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*sweep) return run_sweep_cmd(source, out, sweepO);
    if (*alpha) return run_alpha_star_cmd(source, solution, grid, alphaO);
    if (*validate) return run_validate_cmd(source, validateO);
    if (*presets) {
      if (source.empty() || listPresets) {
        for (const auto& name : nomasec::preset_names()) std::cout << name << "\n";
        return 0;
      }
      const auto text = nomasec::preset_text(source);
      if (text.empty()) throw nomasec::ConfigError("unknown preset '" + source + "'");
      std::cout << text;
      return 0;
    }
  } catch (const nomasec::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nomasec::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nomasec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
