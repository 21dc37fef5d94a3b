#include "nomasec/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "nomasec/error.hpp"
#include "nomasec/monte_carlo.hpp"
#include "nomasec/secrecy.hpp"

namespace nomasec {

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size() * spec.solutions.size());
  for (double value : spec.values) {
    for (SolutionId sol : spec.solutions) {
      SweepRow row;
      row.axis = to_string(spec.axis);
      row.value = value;
      row.solution = sol;
      try {
        const Model model(apply_axis(spec.base, spec.axis, value));
        if (spec.outputs.exact) {
          const SopBreakdown b = sop_overall(model, sol);
          row.sopN_exact = b.sopN;
          row.sopF_exact = b.sopF;
          row.sopO_exact = b.sopOverall;
        }
        if (spec.outputs.asymptotic) {
          const AsymptoticSop a = sop_asymptotic(model, sol);
          row.sopN_asym = a.sopN;
          row.sopF_asym = a.sopF;
          row.sopO_asym = a.sopO;
        }
        if (spec.outputs.montecarlo) {
          McOptions mc;
          mc.workers = options.mcWorkers;
          const SopEstimates e = estimate_sop(model, sol, spec.mode, spec.trials, spec.seed, mc);
          row.sopN_mc = e.near.mean;
          row.sopN_mc_stderr = e.near.stdError;
          row.sopF_mc = e.far.mean;
          row.sopF_mc_stderr = e.far.stdError;
          row.sopO_mc = e.overall.mean;
          row.sopO_mc_stderr = e.overall.stdError;
        }
      } catch (const Error& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

AlphaStar find_alpha_star(const SystemConfig& config, SolutionId sol, std::vector<double> grid) {
  if (grid.empty()) throw ConfigError("alphaF grid must not be empty");
  for (double a : grid) {
    if (!(a > 0.5 && a < 1.0)) throw ConfigError("alphaF grid values must lie in (0.5, 1)");
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  AlphaStar best;
  bool first = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Model model(apply_axis(config, SweepAxis::AlphaF, grid[i]));
    const double sopO = sop_overall(model, sol).sopOverall;
    if (first || sopO < best.sopO) {
      best = {grid[i], sopO, i, false};
      first = false;
    }
  }
  best.interior = best.index > 0 && best.index + 1 < grid.size();
  return best;
}

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

using Field = std::optional<double> SweepRow::*;

constexpr Field kValueFields[] = {
    &SweepRow::sopN_exact, &SweepRow::sopF_exact,     &SweepRow::sopO_exact,
    &SweepRow::sopN_asym,  &SweepRow::sopF_asym,      &SweepRow::sopO_asym,
    &SweepRow::sopN_mc,    &SweepRow::sopN_mc_stderr, &SweepRow::sopF_mc,
    &SweepRow::sopF_mc_stderr, &SweepRow::sopO_mc,    &SweepRow::sopO_mc_stderr,
};

// RFC-4180 record reader; returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  char ch = 0;
  while (in.get(ch)) {
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      break;
    } else if (ch != '\r') {
      field += ch;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field");
  fields.push_back(std::move(field));
  return true;
}

std::optional<double> parse_cell(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("CSV cell '" + s + "' is not a number");
  }
  return v;
}

}  // namespace

const std::vector<std::string>& csv_header() {
  static const std::vector<std::string> header = {
      "axis",         "value",          "solution",  "sopN_exact", "sopF_exact",
      "sopO_exact",   "sopN_asym",      "sopF_asym", "sopO_asym",  "sopN_mc",
      "sopN_mc_stderr", "sopF_mc",      "sopF_mc_stderr", "sopO_mc", "sopO_mc_stderr",
      "error"};
  return header;
}

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  if (rows.empty()) throw ConfigError("no rows to write");
  const auto& header = csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\r\n";
  for (const auto& r : rows) {
    out << quote(r.axis) << ',' << format_number(r.value) << ',' << to_string(r.solution);
    for (Field f : kValueFields) out << ',' << cell(r.*f);
    out << ',' << quote(r.error) << "\r\n";
  }
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  emit_csv(rows, out);
  out.flush();
  if (!out) throw Error("failed writing '" + path + "'");
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::vector<std::string> fields;
  if (!read_record(in, fields) || fields != csv_header()) {
    throw ParseError("CSV header does not match the sweep column layout", 1, 1);
  }
  std::vector<SweepRow> rows;
  int line = 1;
  while (read_record(in, fields)) {
    ++line;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != csv_header().size()) {
      throw ParseError("expected " + std::to_string(csv_header().size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line, 1);
    }
    SweepRow r;
    r.axis = fields[0];
    r.value = parse_cell(fields[1]).value_or(0.0);
    if (fields[2] == "I") {
      r.solution = SolutionId::SolutionI;
    } else if (fields[2] == "II") {
      r.solution = SolutionId::SolutionII;
    } else {
      throw ParseError("unknown solution '" + fields[2] + "'", line, 1);
    }
    for (std::size_t k = 0; k < std::size(kValueFields); ++k) r.*kValueFields[k] = parse_cell(fields[3 + k]);
    r.error = fields.back();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace nomasec
