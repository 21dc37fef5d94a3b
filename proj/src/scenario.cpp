#include "nomasec/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "nomasec/error.hpp"

namespace nomasec {

namespace {

struct AxisName {
  SweepAxis axis;
  const char* name;
};

constexpr AxisName kAxes[] = {
    {SweepAxis::Gamma0dB, "gamma0_dB"}, {SweepAxis::GammaEdB, "gammaE_dB"},
    {SweepAxis::AlphaF, "alphaF"},      {SweepAxis::LS, "L_S"},
    {SweepAxis::LN, "L_N"},             {SweepAxis::LF, "L_F"},
    {SweepAxis::LE, "L_E"},             {SweepAxis::mN, "m_N"},
    {SweepAxis::mF, "m_F"},             {SweepAxis::mE, "m_E"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

int checked_count(double v, const std::string& what) {
  if (!std::isfinite(v) || v < 1.0 || v != std::floor(v) || v > 1e6) {
    throw ConfigError(what + " must be a positive integer");
  }
  return static_cast<int>(v);
}

struct Entry {
  std::string value;
  int line = 0;
  int keyColumn = 0;
  int valueColumn = 0;
};

using Section = std::map<std::string, Entry, std::less<>>;

const std::map<std::string, std::set<std::string, std::less<>>, std::less<>>& known_keys() {
  static const std::map<std::string, std::set<std::string, std::less<>>, std::less<>> keys = {
      {"system",
       {"L_S", "alphaF", "alphaN", "gamma0_dB", "gammaE_dB", "gamma0", "gammaE", "R_F", "R_sN",
        "R_sF", "quadratureN"}},
      {"source", {"x", "y"}},
      {"near", {"L", "m", "omega", "theta", "x", "y", "distance", "lambda"}},
      {"far", {"L", "m", "omega", "theta", "x", "y", "distance", "lambda"}},
      {"eve", {"L", "m", "omega", "theta", "x", "y", "distance", "lambda"}},
      {"sweep", {"axis", "values", "solutions", "outputs", "trials", "seed", "mode"}},
  };
  return keys;
}

std::map<std::string, Section, std::less<>> tokenize(std::string_view text) {
  std::map<std::string, Section, std::less<>> sections;
  Section* current = nullptr;
  std::string currentName;
  int lineNo = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineNo;
    if (const auto hash = raw.find_first_of("#;"); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const int column = static_cast<int>(raw.find_first_not_of(" \t")) + 1;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", lineNo, column);
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().contains(name)) {
        throw ParseError("unknown section [" + name + "]", lineNo, column);
      }
      if (sections.contains(name)) {
        throw ParseError("duplicate section [" + name + "]", lineNo, column);
      }
      current = &sections[name];
      currentName = name;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", lineNo, column);
    }
    if (current == nullptr) {
      throw ParseError("key outside of any section", lineNo, column);
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const std::string& sectionName = currentName;
    if (key.empty()) throw ParseError("empty key", lineNo, column);
    if (!known_keys().at(sectionName).contains(key)) {
      throw ParseError("unknown key '" + key + "' in [" + sectionName + "]", lineNo, column);
    }
    if (current->contains(key)) {
      throw ParseError("duplicate key '" + key + "' in [" + sectionName + "]", lineNo, column);
    }
    if (value.empty()) throw ParseError("missing value for '" + key + "'", lineNo, column);
    const int valueColumn = static_cast<int>(value.data() - raw.data()) + 1;
    current->emplace(key, Entry{std::string(value), lineNo, column, valueColumn});
  }
  return sections;
}

class Reader {
 public:
  Reader(const std::map<std::string, Section, std::less<>>& sections) : sections_(sections) {}

  bool has_section(std::string_view s) const { return sections_.contains(s); }

  const Entry* find(std::string_view section, std::string_view key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  const Entry& require(std::string_view section, std::string_view key) const {
    const Entry* e = find(section, key);
    if (e == nullptr) {
      throw ConfigError("missing required key " + std::string(key) + " in [" +
                        std::string(section) + "]");
    }
    return *e;
  }

  static double number(const Entry& e, std::string_view key) {
    const auto v = to_double(e.value);
    if (!v || !std::isfinite(*v)) {
      throw ParseError("'" + std::string(key) + "' needs a number, got '" + e.value + "'", e.line,
                       e.valueColumn);
    }
    return *v;
  }

  double number(std::string_view section, std::string_view key) const {
    return number(require(section, key), key);
  }

  std::optional<double> optional_number(std::string_view section, std::string_view key) const {
    const Entry* e = find(section, key);
    if (e == nullptr) return std::nullopt;
    return number(*e, key);
  }

 private:
  const std::map<std::string, Section, std::less<>>& sections_;
};

Link read_link(const Reader& r, std::string_view name, const std::optional<NodePosition>& source) {
  Link link;
  const std::string prefix = std::string(name) + ".";
  link.antennas = checked_count(r.number(name, "L"), prefix + "L");
  try {
    link.fading.m = checked_shape(r.number(name, "m"));
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + e.what());
  }
  link.fading.omega = r.optional_number(name, "omega").value_or(1.0);
  const double theta = r.optional_number(name, "theta").value_or(2.0);

  const auto x = r.optional_number(name, "x");
  const auto y = r.optional_number(name, "y");
  const auto distance = r.optional_number(name, "distance");
  if (x.has_value() != y.has_value()) {
    throw ConfigError(prefix + "x and " + prefix + "y must be given together");
  }
  if (x && distance) throw ConfigError(prefix + "give either coordinates or distance, not both");
  if (x) {
    if (!source) throw ConfigError(prefix + "coordinates need a [source] section");
    link.geometry = LinkGeometry::between(*source, NodePosition{*x, *y}, theta);
  } else if (distance) {
    link.geometry = LinkGeometry{*distance, theta};
  }
  link.lambda = r.optional_number(name, "lambda");
  if (!link.geometry && !link.lambda) {
    throw ConfigError(prefix + "needs coordinates, a distance or lambda");
  }
  return link;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto next = text.find_first_of(", \t", pos);
    const auto token = text.substr(pos, next == std::string_view::npos ? text.size() - pos
                                                                       : next - pos);
    if (!token.empty()) out.push_back(token);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

double linear_snr(const Reader& r, std::string_view dbKey, std::string_view linearKey) {
  const Entry* db = r.find("system", dbKey);
  const Entry* lin = r.find("system", linearKey);
  if (db && lin) {
    throw ConfigError("give either " + std::string(dbKey) + " or " + std::string(linearKey));
  }
  if (lin) return Reader::number(*lin, linearKey);
  return db_to_linear(r.number("system", dbKey));
}

}  // namespace

const char* to_string(SweepAxis axis) {
  for (const auto& a : kAxes) {
    if (a.axis == axis) return a.name;
  }
  return "?";
}

SweepAxis parse_axis(std::string_view name) {
  for (const auto& a : kAxes) {
    if (name == a.name) return a.axis;
  }
  std::string valid;
  for (const auto& a : kAxes) valid += std::string(valid.empty() ? "" : ", ") + a.name;
  throw ConfigError("unknown sweep axis '" + std::string(name) + "' (valid: " + valid + ")");
}

SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value) {
  SystemConfig c = base;
  switch (axis) {
    case SweepAxis::Gamma0dB: c.gamma0 = db_to_linear(value); break;
    case SweepAxis::GammaEdB: c.gammaE = db_to_linear(value); break;
    case SweepAxis::AlphaF:
      c.alphaF = value;
      c.alphaN = 1.0 - value;
      break;
    case SweepAxis::LS: c.sourceAntennas = checked_count(value, "L_S"); break;
    case SweepAxis::LN: c.near.antennas = checked_count(value, "L_N"); break;
    case SweepAxis::LF: c.far.antennas = checked_count(value, "L_F"); break;
    case SweepAxis::LE: c.eve.antennas = checked_count(value, "L_E"); break;
    case SweepAxis::mN: c.near.fading.m = checked_shape(value); break;
    case SweepAxis::mF: c.far.fading.m = checked_shape(value); break;
    case SweepAxis::mE: c.eve.fading.m = checked_shape(value); break;
  }
  return c;
}

std::vector<double> parse_values(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
      throw ConfigError("range must look like start:stop:step");
    }
    const auto start = to_double(text.substr(0, a));
    const auto stop = to_double(text.substr(a + 1, b - a - 1));
    const auto step = to_double(text.substr(b + 1));
    if (!start || !stop || !step) throw ConfigError("range bounds must be numbers");
    if (!(*step > 0.0) || *stop < *start) {
      throw ConfigError("range needs step > 0 and stop >= start");
    }
    const double count = std::floor((*stop - *start) / *step + 1e-9);
    if (count > 1e6) throw ConfigError("range has too many points");
    for (int k = 0; k <= static_cast<int>(count); ++k) {
      // Rounded to 12 decimals so 0.51:0.99:0.01 yields 0.57, not 0.5700000000000001.
      out.push_back(std::round((*start + k * *step) * 1e12) / 1e12);
    }
  } else {
    for (const auto token : split_list(text)) {
      const auto v = to_double(token);
      if (!v || !std::isfinite(*v)) {
        throw ConfigError("value list entry '" + std::string(token) + "' is not a number");
      }
      out.push_back(*v);
    }
  }
  if (out.empty()) throw ConfigError("sweep values must not be empty");
  return out;
}

void SweepSpec::validate() const {
  base.validate();
  if (!outputs.any()) throw ConfigError("outputs must name at least one of exact, asymptotic, montecarlo");
  if (values.empty()) throw ConfigError("sweep values must not be empty");
  if (solutions.empty()) throw ConfigError("solutions must not be empty");
  if (outputs.montecarlo && trials < 1) throw ConfigError("trials must be >= 1");
  for (double v : values) {
    try {
      apply_axis(base, axis, v).validate();
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("sweep value ") + to_string(axis) + " = " + std::to_string(v) +
                        ": " + e.what());
    }
  }
}

SweepSpec parse_scenario(std::string_view text, std::string name) {
  const auto sections = tokenize(text);
  const Reader r(sections);
  if (!r.has_section("system")) throw ConfigError("missing [system] section");

  SweepSpec spec;
  spec.name = std::move(name);
  SystemConfig& c = spec.base;
  c.sourceAntennas = checked_count(r.number("system", "L_S"), "L_S");
  c.alphaF = r.number("system", "alphaF");
  c.alphaN = r.number("system", "alphaN");
  c.gamma0 = linear_snr(r, "gamma0_dB", "gamma0");
  c.gammaE = linear_snr(r, "gammaE_dB", "gammaE");
  c.rateF = r.number("system", "R_F");
  c.secrecyRateN = r.number("system", "R_sN");
  c.secrecyRateF = r.number("system", "R_sF");
  if (const auto n = r.optional_number("system", "quadratureN")) {
    c.quadratureN = checked_count(*n, "quadratureN");
  }

  std::optional<NodePosition> source;
  if (r.has_section("source")) {
    source = NodePosition{r.number("source", "x"), r.number("source", "y")};
  }
  for (const char* link : {"near", "far", "eve"}) {
    if (!r.has_section(link)) throw ConfigError(std::string("missing [") + link + "] section");
  }
  c.near = read_link(r, "near", source);
  c.far = read_link(r, "far", source);
  c.eve = read_link(r, "eve", source);

  if (!r.has_section("sweep")) throw ConfigError("missing [sweep] section");
  spec.axis = parse_axis(r.require("sweep", "axis").value);
  spec.values = parse_values(r.require("sweep", "values").value);

  if (const Entry* e = r.find("sweep", "solutions")) {
    spec.solutions.clear();
    for (const auto token : split_list(e->value)) {
      if (token == "I" || token == "1") {
        spec.solutions.push_back(SolutionId::SolutionI);
      } else if (token == "II" || token == "2") {
        spec.solutions.push_back(SolutionId::SolutionII);
      } else if (token == "both") {
        spec.solutions = {SolutionId::SolutionI, SolutionId::SolutionII};
      } else {
        throw ParseError("unknown solution '" + std::string(token) + "' (use I, II or both)",
                         e->line, e->valueColumn);
      }
    }
    std::sort(spec.solutions.begin(), spec.solutions.end());
    spec.solutions.erase(std::unique(spec.solutions.begin(), spec.solutions.end()),
                         spec.solutions.end());
  }
  if (const Entry* e = r.find("sweep", "outputs")) {
    spec.outputs = {};
    for (const auto token : split_list(e->value)) {
      if (token == "exact") {
        spec.outputs.exact = true;
      } else if (token == "asymptotic") {
        spec.outputs.asymptotic = true;
      } else if (token == "montecarlo") {
        spec.outputs.montecarlo = true;
      } else {
        throw ParseError("unknown output '" + std::string(token) +
                             "' (use exact, asymptotic, montecarlo)",
                         e->line, e->valueColumn);
      }
    }
  }
  if (const auto t = r.optional_number("sweep", "trials")) {
    spec.trials = static_cast<std::uint64_t>(checked_count(*t, "trials"));
  }
  if (const Entry* e = r.find("sweep", "seed")) {
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), seed);
    if (ec != std::errc() || ptr != e->value.data() + e->value.size()) {
      throw ParseError("seed must be a non-negative integer", e->line, e->valueColumn);
    }
    spec.seed = seed;
  }
  if (const Entry* e = r.find("sweep", "mode")) {
    if (e->value == "sic") {
      spec.mode = EavesdropperMode::SicWithInterference;
    } else if (e->value == "wces") {
      spec.mode = EavesdropperMode::WorstCase;
    } else {
      throw ParseError("mode must be sic or wces", e->line, e->valueColumn);
    }
  }
  spec.validate();
  return spec;
}

namespace {

struct PresetParams {
  const char* comment;
  int LS = 2, LN = 2, LF = 2, LE = 2;
  int mN = 2, mF = 2, mE = 2;
  double gamma0dB = 10.0;
  double gammaEdB = 10.0;
  const char* sweep;
};

std::string fmt_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string render(const PresetParams& p) {
  std::ostringstream os;
  os << p.comment
     << "# Common settings: unit omega, path-loss exponent 2 on every link,\n"
        "# S(0,0.5) F(1,0.5) N(0.5,0.5) E(3,0), R_F = R_sN = R_sF = 0.5, 100 nodes.\n"
        "[system]\n"
     << "L_S = " << p.LS << "\n"
     << "alphaF = 0.6\nalphaN = 0.4\n"
     << "gamma0_dB = " << fmt_number(p.gamma0dB) << "\n"
     << "gammaE_dB = " << fmt_number(p.gammaEdB) << "\n"
     << "R_F = 0.5\nR_sN = 0.5\nR_sF = 0.5\nquadratureN = 100\n\n"
     << "[source]\nx = 0\ny = 0.5\n\n";
  auto link = [&os](const char* name, int L, int m, const char* x, const char* y) {
    os << "[" << name << "]\nL = " << L << "\nm = " << m << "\nomega = 1\ntheta = 2\nx = " << x
       << "\ny = " << y << "\n\n";
  };
  link("near", p.LN, p.mN, "0.5", "0.5");
  link("far", p.LF, p.mF, "1", "0.5");
  link("eve", p.LE, p.mE, "3", "0");
  os << "[sweep]\n" << p.sweep;
  return os.str();
}

const std::map<std::string, std::string, std::less<>>& presets() {
  static const std::map<std::string, std::string, std::less<>> table = [] {
    std::map<std::string, std::string, std::less<>> t;
    const char* gammaSweep =
        "axis = gamma0_dB\nvalues = 0:40:10\nsolutions = both\n"
        "outputs = exact, asymptotic, montecarlo\ntrials = 1000000\nseed = 1\nmode = sic\n";
    const char* gammaSweepAnalytic =
        "axis = gamma0_dB\nvalues = 0:60:5\nsolutions = both\noutputs = exact, asymptotic\n";
    t["fig2"] = render({"# SOP_N against gamma0. The figure also shows gammaE_dB = 0.\n"
                        "# L_F is not in the caption and stays at 2.\n",
                        2, 2, 2, 2, 2, 2, 2, 10.0, 10.0, gammaSweep});
    t["fig3"] = render({"# SOP_F against gamma0. The figure also shows gammaE_dB = 0.\n"
                        "# L_N is not in the caption and stays at 2.\n",
                        2, 2, 2, 2, 2, 2, 2, 10.0, 10.0, gammaSweep});
    t["fig4"] = render({"# SOP_O against gamma0. The figure also shows gammaE_dB = 0.\n",
                        2, 2, 2, 2, 2, 2, 2, 10.0, 10.0, gammaSweep});
    t["fig5"] = render({"# SOP_N against gamma0 for several (L_S, L_N, L_E); this is the\n"
                        "# (2, 2, 2) curve, edit the L values for the others.\n",
                        2, 2, 2, 2, 2, 2, 2, 10.0, 10.0, gammaSweepAnalytic});
    t["fig6"] = render({"# SOP_F against gamma0 for several (L_S, L_F, L_E); this is the\n"
                        "# (2, 2, 2) curve, edit the L values for the others.\n",
                        2, 2, 2, 2, 2, 2, 2, 10.0, 10.0, gammaSweepAnalytic});
    t["fig7"] = render({"# SOP_O against gamma0 for several (L_S, L_F, L_N, L_E); this is the\n"
                        "# (2, 2, 2, 2) curve, edit the L values for the others.\n",
                        2, 2, 2, 2, 2, 2, 2, 10.0, 10.0, gammaSweepAnalytic});
    t["fig8"] = render({"# SOP_O against alphaF (alphaN = 1 - alphaF), gamma0 = gammaE = 10 dB.\n",
                        2, 2, 2, 2, 2, 2, 2, 10.0, 10.0,
                        "axis = alphaF\nvalues = 0.51:0.99:0.01\nsolutions = both\n"
                        "outputs = exact\n"});
    t["fig9"] = render({"# SOP_O against m_E; this is the (m_N, m_F) = (2, 2) curve.\n",
                        2, 2, 2, 2, 2, 2, 2, 10.0, 10.0,
                        "axis = m_E\nvalues = 1:5:1\nsolutions = both\noutputs = exact\n"});
    t["fig10"] = render({"# Protocol comparison, Solution I, L_S = 2 and one antenna elsewhere.\n"
                         "# The caption fixes L_N = L_F = L_E = 1, unlike the other figures.\n"
                         "# Run once more with mode = wces for the worst-case benchmark.\n",
                         2, 1, 1, 1, 2, 2, 2, 10.0, 10.0,
                         "axis = gamma0_dB\nvalues = 0:40:5\nsolutions = I\n"
                         "outputs = exact, montecarlo\ntrials = 1000000\nseed = 1\nmode = sic\n"});
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : presets()) names.push_back(name);
  std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return names;
}

std::string_view preset_text(std::string_view name) {
  const auto it = presets().find(name);
  return it == presets().end() ? std::string_view{} : std::string_view(it->second);
}

SweepSpec load_scenario(const std::string& presetOrPath) {
  if (const auto text = preset_text(presetOrPath); !text.empty()) {
    return parse_scenario(text, presetOrPath);
  }
  std::ifstream in(presetOrPath);
  if (!in) {
    throw ConfigError("'" + presetOrPath + "' is neither a preset nor a readable scenario file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), presetOrPath);
}

}  // namespace nomasec
