#ifndef COVGAME_IO_HPP
#define COVGAME_IO_HPP

// Text formats: scenario files, deviation files, trace and region CSV.
//
// Scenario and deviation files are line based. `[name]` opens a section,
// `key = value` sets a field, `#` starts a comment. [sbs] and [deviation]
// may repeat; every other section appears at most once. Player ids in files
// are 1-based.

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "covgame/errors.hpp"
#include "covgame/geometry_channel.hpp"
#include "covgame/identification.hpp"
#include "covgame/obs_graph.hpp"
#include "covgame/simulation.hpp"
#include "covgame/static_game.hpp"
#include "covgame/utility.hpp"

namespace covgame {

struct RepeatedConfig {
  std::optional<double> lambda;       // none: 0.9 of the threshold
  std::optional<double> horizon_tol;  // none: 1e-9 of the largest ideal utility
  int grid_levels = kDefaultGridLevels;
  std::size_t cycle_length = kDefaultCycleLength;
  friend bool operator==(const RepeatedConfig&, const RepeatedConfig&) = default;
};

struct ScenarioFile {
  Scenario scenario;
  ObservationGraph graph;
  QuadratureSpec quadrature;
  RepeatedConfig repeated;
};

/// %.17g: shortest fixed format that round-trips every double.
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto a = s.find_first_not_of(ws);
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(ws);
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size() && (s[k] == ' ' || s[k] == '\t')) ++k;
    const std::size_t a = k;
    while (k < s.size() && s[k] != ' ' && s[k] != '\t') ++k;
    if (k > a) out.push_back(s.substr(a, k - a));
  }
  return out;
}

struct Line {
  int number;
  std::string_view key;    // empty for bare lines
  std::string_view value;  // whole content for bare lines
};

struct Section {
  std::string name;
  int line;
  std::vector<Line> lines;
};

inline std::vector<Section> split_sections(std::string_view text, const std::string& source) {
  std::vector<Section> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(source, number, "unterminated section header");
      out.push_back({std::string(trim(line.substr(1, line.size() - 2))), number, {}});
    } else {
      if (out.empty()) throw ParseError(source, number, "content before the first section");
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        out.back().lines.push_back({number, {}, line});
      } else {
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError(source, number, "missing key before '='");
        out.back().lines.push_back({number, key, trim(line.substr(eq + 1))});
      }
    }
    if (end == text.size()) break;
  }
  return out;
}

inline double parse_double(std::string_view s, const std::string& source, int line) {
  std::string tmp(s);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size() || errno == ERANGE)
    throw ParseError(source, line, "expected a number, got '" + tmp + "'");
  return v;
}

inline long long parse_int(std::string_view s, const std::string& source, int line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(source, line, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

inline std::vector<double> parse_doubles(std::string_view s, const std::string& source, int line) {
  std::vector<double> out;
  for (auto tok : split_ws(s)) out.push_back(parse_double(tok, source, line));
  return out;
}

inline bool parse_bool(std::string_view s, const std::string& source, int line) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ParseError(source, line, "expected true or false, got '" + std::string(s) + "'");
}

/// Rejects bare lines, duplicates and keys outside `allowed`.
inline void check_keys(const Section& sec, std::initializer_list<std::string_view> allowed, const std::string& source) {
  std::set<std::string_view> seen;
  for (const auto& l : sec.lines) {
    if (l.key.empty()) throw ParseError(source, l.number, "expected 'key = value' in [" + sec.name + "]");
    if (std::find(allowed.begin(), allowed.end(), l.key) == allowed.end())
      throw ParseError(source, l.number, "unknown key '" + std::string(l.key) + "' in [" + sec.name + "]");
    if (!seen.insert(l.key).second) throw ParseError(source, l.number, "duplicate key '" + std::string(l.key) + "'");
  }
}

inline const Line* find_key(const Section& sec, std::string_view key) {
  for (const auto& l : sec.lines)
    if (l.key == key) return &l;
  return nullptr;
}

inline SbsConfig parse_sbs(const Section& sec, const std::string& source) {
  check_keys(sec,
             {"location", "p_max", "gamma", "b", "b_cross", "radius", "mass", "grid_origin", "grid_spacing",
              "grid_shape", "grid_values"},
             source);
  SbsConfig s;
  const auto need = [&](std::string_view key) -> const Line& {
    const Line* l = find_key(sec, key);
    if (!l) throw ParseError(source, sec.line, "[sbs] is missing '" + std::string(key) + "'");
    return *l;
  };
  const auto count = [&](const Line& l, std::size_t n) {
    auto v = parse_doubles(l.value, source, l.number);
    if (v.size() != n)
      throw ParseError(source, l.number, "'" + std::string(l.key) + "' expects " + std::to_string(n) + " values");
    return v;
  };
  const auto scalar = [&](std::string_view key, double& dst) {
    if (const Line* l = find_key(sec, key)) dst = count(*l, 1)[0];
  };
  const auto loc = count(need("location"), 3);
  s.location = {loc[0], loc[1], loc[2]};
  s.radius = count(need("radius"), 1)[0];
  scalar("p_max", s.p_max);
  scalar("gamma", s.gamma);
  scalar("b", s.b_self);
  if (const Line* l = find_key(sec, "b_cross")) s.b_cross = parse_doubles(l->value, source, l->number);

  const bool grid = find_key(sec, "grid_origin") || find_key(sec, "grid_spacing") || find_key(sec, "grid_shape") ||
                    find_key(sec, "grid_values");
  if (grid) {
    if (const Line* l = find_key(sec, "mass")) throw ParseError(source, l->number, "'mass' conflicts with a density grid");
    GridDensity g;
    const auto origin = count(need("grid_origin"), 2);
    g.origin_x = origin[0];
    g.origin_y = origin[1];
    g.spacing = count(need("grid_spacing"), 1)[0];
    const Line& shape = need("grid_shape");
    const auto dims = split_ws(shape.value);
    if (dims.size() != 2) throw ParseError(source, shape.number, "'grid_shape' expects nx ny");
    const long long nx = parse_int(dims[0], source, shape.number);
    const long long ny = parse_int(dims[1], source, shape.number);
    if (nx < 2 || ny < 2) throw ParseError(source, shape.number, "grid needs at least 2 x 2 nodes");
    g.nx = static_cast<std::size_t>(nx);
    g.ny = static_cast<std::size_t>(ny);
    g.values = count(need("grid_values"), g.nx * g.ny);
    s.density = std::move(g);
  } else {
    UniformDensity u;
    scalar("mass", u.total_mass);
    s.density = u;
  }
  return s;
}

}  // namespace detail

inline ScenarioFile parse_scenario(std::string_view text, const std::string& source = "<scenario>") {
  using namespace detail;
  const auto sections = split_sections(text, source);
  ScenarioFile out;
  std::set<std::string> singles;
  const Section* graph_section = nullptr;
  for (const auto& sec : sections) {
    if (sec.name != "sbs" && !singles.insert(sec.name).second)
      throw ParseError(source, sec.line, "section [" + sec.name + "] appears twice");
    if (sec.name == "sbs") {
      out.scenario.sbs.push_back(parse_sbs(sec, source));
    } else if (sec.name == "noise") {
      check_keys(sec, {"power"}, source);
      if (const Line* l = find_key(sec, "power")) out.scenario.noise_power = parse_double(l->value, source, l->number);
    } else if (sec.name == "gain") {
      check_keys(sec, {"mode"}, source);
      if (const Line* l = find_key(sec, "mode")) {
        const auto m = gain_mode_from_string(l->value);
        if (!m) throw ParseError(source, l->number, "unknown gain mode '" + std::string(l->value) + "'");
        out.scenario.gain_mode = *m;
      }
    } else if (sec.name == "graph") {
      graph_section = &sec;
    } else if (sec.name == "quadrature") {
      check_keys(sec, {"radial_nodes", "angular_nodes", "target_rel_tol", "max_refinements"}, source);
      auto& q = out.quadrature;
      if (const Line* l = find_key(sec, "radial_nodes")) q.radial_nodes = static_cast<int>(parse_int(l->value, source, l->number));
      if (const Line* l = find_key(sec, "angular_nodes")) q.angular_nodes = static_cast<int>(parse_int(l->value, source, l->number));
      if (const Line* l = find_key(sec, "target_rel_tol")) q.target_rel_tol = parse_double(l->value, source, l->number);
      if (const Line* l = find_key(sec, "max_refinements")) q.max_refinements = static_cast<int>(parse_int(l->value, source, l->number));
      try {
        validate(q);
      } catch (const InvalidArgument& e) {
        throw ParseError(source, sec.line, e.what());
      }
    } else if (sec.name == "repeated") {
      check_keys(sec, {"lambda", "horizon_tol", "grid_levels", "cycle_length"}, source);
      auto& r = out.repeated;
      if (const Line* l = find_key(sec, "lambda")) {
        r.lambda = parse_double(l->value, source, l->number);
        if (!(*r.lambda > 0.0 && *r.lambda < 1.0)) throw ParseError(source, l->number, "lambda must lie in (0, 1)");
      }
      if (const Line* l = find_key(sec, "horizon_tol")) {
        r.horizon_tol = parse_double(l->value, source, l->number);
        if (!(*r.horizon_tol > 0.0)) throw ParseError(source, l->number, "horizon_tol must be > 0");
      }
      if (const Line* l = find_key(sec, "grid_levels")) {
        r.grid_levels = static_cast<int>(parse_int(l->value, source, l->number));
        if (r.grid_levels < 2) throw ParseError(source, l->number, "grid_levels must be >= 2");
      }
      if (const Line* l = find_key(sec, "cycle_length")) {
        const long long c = parse_int(l->value, source, l->number);
        if (c < 1) throw ParseError(source, l->number, "cycle_length must be >= 1");
        r.cycle_length = static_cast<std::size_t>(c);
      }
    } else {
      throw ParseError(source, sec.line, "unknown section [" + sec.name + "]");
    }
  }
  const std::size_t n = out.scenario.size();
  if (n == 0) throw ParseError(source, 1, "no [sbs] section");
  try {
    validate(out.scenario);
  } catch (const InvalidArgument& e) {
    throw ParseError(source, 1, e.what());
  }

  if (!graph_section) {
    out.graph = ObservationGraph::complete(n);
  } else {
    out.graph = ObservationGraph(n);
    for (const auto& l : graph_section->lines) {
      if (!l.key.empty()) throw ParseError(source, l.number, "[graph] lines are 'i j' pairs");
      const auto tok = split_ws(l.value);
      if (tok.size() != 2) throw ParseError(source, l.number, "[graph] lines are 'i j' pairs");
      const long long a = parse_int(tok[0], source, l.number);
      const long long b = parse_int(tok[1], source, l.number);
      if (a < 1 || b < 1 || a > static_cast<long long>(n) || b > static_cast<long long>(n))
        throw ParseError(source, l.number, "edge endpoint outside 1.." + std::to_string(n));
      if (a == b) throw ParseError(source, l.number, "self-loop in [graph]");
      out.graph.add_edge(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
    }
  }
  return out;
}

/// Edge list, one "i j" pair per line, 1-based.
inline std::string serialize_edges(const ObservationGraph& g) {
  std::string out;
  for (const auto& [a, b] : g.edges()) out += std::to_string(a + 1) + " " + std::to_string(b + 1) + "\n";
  return out;
}

inline ObservationGraph parse_edges(std::string_view text, std::size_t n, const std::string& source = "<graph>") {
  const std::string doc = "[graph]\n" + std::string(text);
  ObservationGraph g(n);
  const auto sections = detail::split_sections(doc, source);
  for (const auto& l : sections.front().lines) {
    const auto tok = detail::split_ws(l.value);
    if (!l.key.empty() || tok.size() != 2) throw ParseError(source, l.number - 1, "expected 'i j'");
    const long long a = detail::parse_int(tok[0], source, l.number - 1);
    const long long b = detail::parse_int(tok[1], source, l.number - 1);
    if (a < 1 || b < 1 || a > static_cast<long long>(n) || b > static_cast<long long>(n) || a == b)
      throw ParseError(source, l.number - 1, "invalid edge");
    g.add_edge(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
  }
  return g;
}

/// Canonical form: every field spelled out, numbers with 17 significant digits.
inline std::string serialize(const ScenarioFile& f) {
  std::ostringstream os;
  const auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + fmt(v[k]);
    return s;
  };
  for (const auto& s : f.scenario.sbs) {
    os << "[sbs]\n";
    os << "location = " << fmt(s.location.x) << " " << fmt(s.location.y) << " " << fmt(s.location.z) << "\n";
    os << "p_max = " << fmt(s.p_max) << "\n";
    os << "gamma = " << fmt(s.gamma) << "\n";
    os << "b = " << fmt(s.b_self) << "\n";
    if (!s.b_cross.empty()) os << "b_cross = " << list(s.b_cross) << "\n";
    os << "radius = " << fmt(s.radius) << "\n";
    if (const auto* u = std::get_if<UniformDensity>(&s.density)) {
      os << "mass = " << fmt(u->total_mass) << "\n";
    } else {
      const auto& g = std::get<GridDensity>(s.density);
      os << "grid_origin = " << fmt(g.origin_x) << " " << fmt(g.origin_y) << "\n";
      os << "grid_spacing = " << fmt(g.spacing) << "\n";
      os << "grid_shape = " << g.nx << " " << g.ny << "\n";
      os << "grid_values = " << list(g.values) << "\n";
    }
    os << "\n";
  }
  os << "[noise]\npower = " << fmt(f.scenario.noise_power) << "\n\n";
  os << "[gain]\nmode = " << to_string(f.scenario.gain_mode) << "\n\n";
  os << "[graph]\n" << serialize_edges(f.graph) << "\n";
  os << "[quadrature]\n";
  os << "radial_nodes = " << f.quadrature.radial_nodes << "\n";
  os << "angular_nodes = " << f.quadrature.angular_nodes << "\n";
  os << "target_rel_tol = " << fmt(f.quadrature.target_rel_tol) << "\n";
  os << "max_refinements = " << f.quadrature.max_refinements << "\n\n";
  os << "[repeated]\n";
  if (f.repeated.lambda) os << "lambda = " << fmt(*f.repeated.lambda) << "\n";
  if (f.repeated.horizon_tol) os << "horizon_tol = " << fmt(*f.repeated.horizon_tol) << "\n";
  os << "grid_levels = " << f.repeated.grid_levels << "\n";
  os << "cycle_length = " << f.repeated.cycle_length << "\n";
  return os.str();
}

/// Two SBS, uniform densities, constant gain over overlapping ranges,
/// mutual observation.
inline ScenarioFile default_scenario() {
  ScenarioFile f;
  SbsConfig a;
  a.location = {0.0, 0.0, 1.0};
  a.p_max = 1.0;
  a.gamma = 3.0;
  a.b_self = 1.0;
  a.radius = std::sqrt(101.0);  // ground radius 10
  a.density = UniformDensity{1.0};
  SbsConfig b = a;
  b.location = {5.0, 0.0, 1.0};
  f.scenario.sbs = {a, b};
  f.scenario.noise_power = 0.01;
  f.scenario.gain_mode = GainMode::kConstantOverRange;
  f.graph = ObservationGraph::complete(2);
  f.quadrature = {32, 64, 1e-6, 3};
  return f;
}

// ---------------------------------------------------------------------------
// Deviation files

inline std::vector<DeviationSpec> parse_deviations(std::string_view text, std::size_t players,
                                                   const std::string& source = "<deviation>") {
  using namespace detail;
  std::vector<DeviationSpec> out;
  for (const auto& sec : split_sections(text, source)) {
    if (sec.name != "deviation") throw ParseError(source, sec.line, "unknown section [" + sec.name + "]");
    check_keys(sec, {"player", "start_stage", "mode", "seed", "open_max", "subsets"}, source);
    DeviationSpec d;
    const Line* player = find_key(sec, "player");
    if (!player) throw ParseError(source, sec.line, "[deviation] is missing 'player'");
    const long long p = parse_int(player->value, source, player->number);
    if (p < 1 || p > static_cast<long long>(players))
      throw ParseError(source, player->number, "player outside 1.." + std::to_string(players));
    d.player = static_cast<PlayerId>(p - 1);
    if (const Line* l = find_key(sec, "start_stage")) {
      d.start_stage = parse_int(l->value, source, l->number);
      if (d.start_stage < 0) throw ParseError(source, l->number, "start_stage must be >= 0 (0 = automatic)");
    }
    if (const Line* l = find_key(sec, "mode")) {
      const auto m = deviation_mode_from_string(l->value);
      if (!m) throw ParseError(source, l->number, "unknown deviation mode '" + std::string(l->value) + "'");
      d.mode = *m;
    }
    if (const Line* l = find_key(sec, "seed")) {
      const long long s = parse_int(l->value, source, l->number);
      if (s < 0) throw ParseError(source, l->number, "seed must be >= 0");
      d.seed = static_cast<std::uint64_t>(s);
    }
    if (const Line* l = find_key(sec, "open_max")) d.open_max = parse_bool(l->value, source, l->number);
    if (const Line* l = find_key(sec, "subsets")) {
      // {1,3} {2} {}
      std::string_view v = l->value;
      while (!(v = trim(v)).empty()) {
        if (v.front() != '{') throw ParseError(source, l->number, "subsets are written as {i,j,...}");
        const auto close = v.find('}');
        if (close == std::string_view::npos) throw ParseError(source, l->number, "unterminated subset");
        std::vector<PlayerId> set;
        std::string_view body = v.substr(1, close - 1);
        while (!(body = trim(body)).empty()) {
          const auto comma = body.find(',');
          const auto tok = trim(body.substr(0, comma));
          const long long k = parse_int(tok, source, l->number);
          if (k < 1 || k > static_cast<long long>(players))
            throw ParseError(source, l->number, "subset member outside 1.." + std::to_string(players));
          set.push_back(static_cast<PlayerId>(k - 1));
          body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
        }
        d.subsets.push_back(std::move(set));
        v = v.substr(close + 1);
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

inline std::string serialize(const DeviationSpec& d) {
  std::ostringstream os;
  os << "[deviation]\n";
  os << "player = " << d.player + 1 << "\n";
  os << "start_stage = " << d.start_stage << "\n";
  os << "mode = " << to_string(d.mode) << "\n";
  os << "seed = " << d.seed << "\n";
  os << "open_max = " << (d.open_max ? "true" : "false") << "\n";
  if (!d.subsets.empty()) {
    os << "subsets =";
    for (const auto& set : d.subsets) {
      os << " {";
      for (std::size_t k = 0; k < set.size(); ++k) os << (k ? "," : "") << set[k] + 1;
      os << "}";
    }
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// CSV

inline std::string trace_csv(const SimulationTrace& trace) {
  const std::size_t n = trace.stages.empty() ? 0 : trace.stages.front().powers.size();
  std::string out = "stage";
  for (const char* prefix : {"phase_", "p_", "u_"})
    for (std::size_t i = 1; i <= n; ++i) out += "," + std::string(prefix) + std::to_string(i);
  out += "\n";
  for (const auto& r : trace.stages) {
    out += std::to_string(r.stage);
    for (auto t : r.phases) out += std::string(",") + to_char(t);
    for (double p : r.powers) out += "," + fmt(p);
    for (double u : r.utilities) out += "," + fmt(u);
    out += "\n";
  }
  return out;
}

struct RegionReport {
  RegionSample region;
  std::optional<Hull2> hull;  // two players only
  BargainingOutcome outcome;
};

/// kind,index,weight,p_1..p_S,u_1..u_S with kinds region, hull, ne, ideal, ks, ks_atom.
inline std::string region_csv(const RegionReport& r, std::size_t players) {
  std::string out = "kind,index,weight";
  for (std::size_t i = 1; i <= players; ++i) out += ",p_" + std::to_string(i);
  for (std::size_t i = 1; i <= players; ++i) out += ",u_" + std::to_string(i);
  out += "\n";
  const auto row = [&](std::string_view kind, std::size_t index, const std::optional<double>& weight,
                       const PowerProfile* p, const UtilityVector& u) {
    out += std::string(kind) + "," + std::to_string(index) + "," + (weight ? fmt(*weight) : "");
    for (std::size_t i = 0; i < players; ++i) out += "," + (p ? fmt((*p)[i]) : std::string());
    for (std::size_t i = 0; i < players; ++i) out += "," + fmt(u[i]);
    out += "\n";
  };
  for (std::size_t k = 0; k < r.region.points.size(); ++k)
    row("region", k, std::nullopt, &r.region.points[k].powers, r.region.points[k].utilities);
  if (r.hull)
    for (std::size_t k = 0; k < r.hull->source.size(); ++k) {
      const auto& pt = r.region.points[r.hull->source[k]];
      row("hull", k, std::nullopt, &pt.powers, pt.utilities);
    }
  PowerProfile ne(players);
  for (std::size_t i = 0; i < players; ++i) ne[i] = r.region.points.back().powers[i];
  row("ne", 0, std::nullopt, &ne, r.outcome.disagreement);
  row("ideal", 0, std::nullopt, nullptr, r.outcome.ideal);
  row("ks", 0, std::nullopt, nullptr, r.outcome.ks_utilities);
  for (std::size_t k = 0; k < r.outcome.schedule.atoms.size(); ++k) {
    const auto& a = r.outcome.schedule.atoms[k];
    row("ks_atom", k, a.weight, &a.powers, a.utilities);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes via a temporary sibling and rename, so readers never see a partial file.
inline void write_file_atomic(const std::string& path, std::string_view content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InvalidArgument("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InvalidArgument("cannot move output into '" + path + "'");
  }
}

}  // namespace covgame

#endif  // COVGAME_IO_HPP
