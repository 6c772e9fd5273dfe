#pragma once

// JSON readers/writers for specs, rules, machines and count grids; PGM/PPM output.

#include "cae/ca.hpp"
#include "cae/entropy.hpp"
#include "cae/error.hpp"
#include "cae/machine.hpp"
#include "cae/macrotile.hpp"
#include "cae/symbolic.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cae::io {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

inline void require_keys(const json& j, const std::set<std::string>& allowed, const std::set<std::string>& required,
                         const std::string& what) {
  if (!j.is_object()) throw invalid_spec(what + ": expected a JSON object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw invalid_spec(what + ": unknown key '" + k + "'");
  for (const auto& k : required)
    if (!j.contains(k)) throw invalid_spec(what + ": missing key '" + k + "'");
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw invalid_spec(path + ": " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_input("cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------- specs
//
// {"name": "golden-mean", "alphabet": ["0","1"], "dimension": 1,
//  "forbidden": ["11"]}
// 2D patterns are arrays of rows, top row first: [["10","01"]].

inline Pattern pattern_from_json(const json& p, const Alphabet& a, int dimension) {
  if (dimension == 1) {
    if (p.is_string()) return Pattern::word(parse_word(p.get<std::string>(), a));
    if (p.is_array()) {
      std::vector<Symbol> w;
      for (const auto& s : p) w.push_back(a.index(s.get<std::string>()));
      return Pattern::word(w);
    }
    throw invalid_spec("1D forbidden pattern must be a string or a list of letters");
  }
  if (!p.is_array() || p.empty()) throw invalid_spec("2D forbidden pattern must be a non-empty list of rows");
  std::vector<std::vector<Symbol>> rows;
  for (auto it = p.rbegin(); it != p.rend(); ++it) rows.push_back(parse_word(it->get<std::string>(), a));
  return Pattern::grid(rows);
}

inline SftSpec spec_from_json(const json& j) {
  require_keys(j, {"name", "alphabet", "dimension", "forbidden", "version"}, {"alphabet", "dimension", "forbidden"},
               "spec");
  try {
    std::vector<std::string> names = j.at("alphabet").get<std::vector<std::string>>();
    Alphabet a(names);
    int dim = j.at("dimension").get<int>();
    if (dim != 1 && dim != 2) throw invalid_spec("dimension must be 1 or 2");
    std::vector<Pattern> forbidden;
    for (const auto& p : j.at("forbidden")) forbidden.push_back(pattern_from_json(p, a, dim));
    return SftSpec(a, dim, forbidden, j.value("name", std::string{}));
  } catch (const json::exception& e) {
    throw invalid_spec(std::string("spec: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw invalid_spec(std::string("spec: unknown letter: ") + e.what());
  }
}

inline SftSpec load_spec(const std::string& path) { return spec_from_json(read_json_file(path)); }

inline json pattern_to_json(const Pattern& p, const Alphabet& a) {
  if (p.dimension() == 1) return pattern_text(p, a);
  json rows = json::array();
  std::istringstream in(pattern_text(p, a));
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  return rows;
}

inline json spec_to_json(const SftSpec& s) {
  json f = json::array();
  for (const auto& p : s.forbidden()) f.push_back(pattern_to_json(p, s.alphabet()));
  return {{"version", schema_version},
          {"name", s.name()},
          {"alphabet", s.alphabet().names()},
          {"dimension", s.dimension()},
          {"forbidden", f}};
}

// ---------------------------------------------------------------- CA rules
//
// {"builtin": "xor" | "shift" | "identity"} or
// {"alphabet": [...], "radius": r, "table": [output letter per neighbourhood]}

inline CaRule rule_from_json(const json& j) {
  require_keys(j, {"name", "builtin", "alphabet", "radius", "table", "version"}, {}, "rule");
  try {
    if (j.contains("builtin")) {
      std::string b = j.at("builtin").get<std::string>();
      Alphabet bits({"0", "1"});
      Alphabet a = j.contains("alphabet") ? Alphabet(j.at("alphabet").get<std::vector<std::string>>()) : bits;
      if (b == "xor") return xor_rule();
      if (b == "shift") return shift_rule(a);
      if (b == "identity") return identity_rule(a, j.value("radius", 1));
      throw invalid_spec("rule: unknown builtin '" + b + "'");
    }
    if (!j.contains("alphabet") || !j.contains("radius") || !j.contains("table"))
      throw invalid_spec("rule: needs builtin or alphabet/radius/table");
    Alphabet a(j.at("alphabet").get<std::vector<std::string>>());
    std::vector<Symbol> table;
    for (const auto& s : j.at("table")) table.push_back(a.index(s.get<std::string>()));
    return CaRule(a, j.at("radius").get<int>(), table, j.value("name", std::string{}));
  } catch (const json::exception& e) {
    throw invalid_spec(std::string("rule: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw invalid_spec(std::string("rule: unknown letter: ") + e.what());
  }
}

// ---------------------------------------------------------------- machines
//
// {"name": "m", "start": "q0", "halting": ["halt"], "blank": "_",
//  "transitions": [["q0", "1", "halt", "1", "S"], ...]}

inline DensityMachine machine_from_json(const json& j) {
  require_keys(j, {"name", "start", "halting", "blank", "transitions", "builtin", "n", "letters", "version"}, {},
               "machine");
  try {
    std::vector<std::string> letters = j.value("letters", std::vector<std::string>{"0", "1"});
    if (j.contains("builtin")) {
      std::string b = j.at("builtin").get<std::string>();
      if (b == "never-halts") return never_halts(letters);
      if (b == "halt-at-step") return halt_at_step(j.at("n").get<long long>(), letters);
      if (b == "halt-immediately") return halt_immediately();
      throw invalid_spec("machine: unknown builtin '" + b + "'");
    }
    DensityMachine m;
    m.name = j.value("name", std::string{"machine"});
    m.start = j.value("start", std::string{"q0"});
    if (j.contains("halting")) {
      auto h = j.at("halting").get<std::vector<std::string>>();
      m.halting = std::set<std::string>(h.begin(), h.end());
    }
    m.blank = j.value("blank", std::string{"_"});
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 5) throw invalid_spec("machine: a transition has 5 entries");
      std::string mv = t[4].get<std::string>();
      Move move = mv == "L" ? Move::left : mv == "R" ? Move::right : mv == "S" ? Move::stay
                                                                                : throw invalid_spec("machine: move must be L, R or S");
      m.add(t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>(), t[3].get<std::string>(), move);
    }
    return m;
  } catch (const json::exception& e) {
    throw invalid_spec(std::string("machine: ") + e.what());
  }
}

// ---------------------------------------------------------------- count grids

inline json grid_to_json(const CountGrid& g) {
  json cells = json::array();
  for (const auto& [kr, c] : g.cells()) cells.push_back({kr.first, kr.second, to_string(c)});
  return {{"version", schema_version}, {"cells", cells}};
}

inline CountGrid grid_from_json(const json& j) {
  require_keys(j, {"cells", "version"}, {"cells"}, "count grid");
  CountGrid g;
  try {
    for (const auto& c : j.at("cells")) {
      if (!c.is_array() || c.size() != 3) throw invalid_spec("count grid: a cell is [k, r, count]");
      std::string v = c[2].is_string() ? c[2].get<std::string>() : std::to_string(c[2].get<long long>());
      g.set(c[0].get<int>(), c[1].get<int>(), Count(v));
    }
  } catch (const json::exception& e) {
    throw invalid_spec(std::string("count grid: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw invalid_spec(std::string("count grid: bad count: ") + e.what());
  }
  return g;
}

// ---------------------------------------------------------------- macrotile

inline json trace_to_json(const PhaseTrace& t) {
  json j{{"phase", t.phase}, {"steps", t.steps}, {"verdict", t.ok ? "ok" : "reject"}};
  if (!t.ok) {
    j["reason"] = t.reason;
    j["cell"] = t.cell;
  }
  if (t.phase == 1) {
    j["lmail_steps"] = t.lmail_steps;
    j["rmail_steps"] = t.rmail_steps;
  }
  return j;
}

inline json grid_to_json(const MacrotileGrid& g) {
  std::string check;
  for (const auto& c : g.check) check += c;
  return {{"n", g.n},         {"B", g.B},         {"T", g.T()},       {"age", g.age.empty() ? 0 : g.age[0]},
          {"info", g.info},   {"lmail", g.lmail}, {"rmail", g.rmail}, {"work", g.work},
          {"prog", g.prog},   {"check", check}};
}

// ---------------------------------------------------------------- images

/// Binary PGM, rows[0] drawn at the top.
inline void write_pgm(const std::string& path, const std::vector<std::vector<int>>& rows, int maxval) {
  if (rows.empty() || maxval < 1 || maxval > 255) throw invalid_input("empty image or bad maxval");
  std::size_t w = rows[0].size();
  std::ostringstream out;
  out << "P5\n" << w << " " << rows.size() << "\n" << maxval << "\n";
  for (const auto& r : rows) {
    if (r.size() != w) throw invalid_input("ragged image rows");
    for (int v : r) out.put(static_cast<char>(std::clamp(v, 0, maxval)));
  }
  write_text(path, out.str());
}

struct Rgb {
  unsigned char r, g, b;
};

inline void write_ppm(const std::string& path, const std::vector<std::vector<Rgb>>& rows) {
  if (rows.empty()) throw invalid_input("empty image");
  std::size_t w = rows[0].size();
  std::ostringstream out;
  out << "P6\n" << w << " " << rows.size() << "\n255\n";
  for (const auto& r : rows) {
    if (r.size() != w) throw invalid_input("ragged image rows");
    for (auto p : r) out.put(static_cast<char>(p.r)).put(static_cast<char>(p.g)).put(static_cast<char>(p.b));
  }
  write_text(path, out.str());
}

/// Grey level per symbol, evenly spread over 0..255.
inline std::vector<std::vector<int>> symbol_rows(const std::vector<std::vector<Symbol>>& rows, int letters) {
  std::vector<std::vector<int>> out;
  for (const auto& r : rows) {
    std::vector<int> o;
    for (auto s : r) o.push_back(letters <= 1 ? 0 : static_cast<int>(s) * 255 / (letters - 1));
    out.push_back(o);
  }
  return out;
}

/// One row per field (Info, Lmail, Rmail, Work, Prog, Check), one column per cell.
inline std::vector<std::vector<int>> field_heatmap(const MacrotileGrid& g) {
  auto shade = [](char c) {
    switch (c) {
      case '0': return 96;
      case '1': return 255;
      case '/': return 176;
      case info_pad: return 32;
      default: return 0;
    }
  };
  std::vector<std::vector<int>> rows;
  for (const std::string* f : {&g.info, &g.lmail, &g.rmail, &g.work, &g.prog}) {
    std::vector<int> r;
    for (char c : *f) r.push_back(shade(c));
    rows.push_back(r);
  }
  std::vector<int> r;
  for (const auto& c : g.check) r.push_back(c.size() == 1 ? shade(c[0]) : 0);
  rows.push_back(r);
  return rows;
}

}  // namespace cae::io
