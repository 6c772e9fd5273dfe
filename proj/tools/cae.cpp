// cae: command-line jobs over the workbench library.
//
// Exit codes: 0 ok, 1 a checked property failed, 2 bad input, 3 budget exceeded.

#include "cae/ca.hpp"
#include "cae/counting.hpp"
#include "cae/entropy.hpp"
#include "cae/io.hpp"
#include "cae/machine.hpp"
#include "cae/macrotile.hpp"
#include "cae/robinson.hpp"
#include "cae/s_sets.hpp"
#include "cae/sft_ops.hpp"
#include "cae/streams.hpp"
#include "cae/toeplitz.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>
#include <variant>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace cae;

namespace {

constexpr int exit_ok = 0, exit_violation = 1, exit_input = 2, exit_budget = 3;

struct Job {
  std::string command;
  std::string out;
  int jobs = 1;
  long long max_nodes = 0;
  json params = json::object();

  SearchBudget budget() const {
    SearchBudget b;
    if (max_nodes > 0) b.max_nodes = static_cast<std::uint64_t>(max_nodes);
    return b;
  }
};

// Report to stdout; with --out also report.json and manifest.json.
int finish(const Job& job, json report, int code) {
  report["command"] = job.command;
  report["exit_code"] = code;
  std::cout << report.dump(2) << "\n";
  if (!job.out.empty()) {
    fs::create_directories(job.out);
    json manifest{{"version", io::schema_version},
                  {"command", job.command},
                  {"params", job.params},
                  {"jobs", job.jobs},
                  {"max_nodes", job.max_nodes},
                  {"exit_code", code}};
    io::write_text((fs::path(job.out) / "manifest.json").string(), manifest.dump(2) + "\n");
    io::write_text((fs::path(job.out) / "report.json").string(), report.dump(2) + "\n");
  }
  return code;
}

std::string artifact(const Job& job, const std::string& name) {
  if (job.out.empty()) return {};
  fs::create_directories(job.out);
  return (fs::path(job.out) / name).string();
}

// Runs f(0..n-1) on up to `jobs` threads; results land in index order.
template <class F>
void parallel_for(int jobs, std::size_t n, F&& f) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs && static_cast<std::size_t>(t) < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// ---------------------------------------------------------------- count

struct CountArgs {
  std::string spec;
  int length = 0, width = 0, height = 0, margin = 0;
};

int cmd_count(const Job& job, const CountArgs& a) {
  SftSpec s = io::load_spec(a.spec);
  RectWindow w = s.dimension() == 1 ? RectWindow::line(a.length) : RectWindow::rect(a.width, a.height);
  if ((s.dimension() == 1 && a.length < 1) || (s.dimension() == 2 && (a.width < 1 || a.height < 1)))
    throw invalid_input(s.dimension() == 1 ? "count needs --length" : "count needs --width and --height");
  Count c = count_patterns(s, w, a.margin, job.budget());
  return finish(job,
                {{"spec", s.name()},
                 {"window", {{"width", w.width}, {"height", w.height}}},
                 {"margin", a.margin},
                 {"count", to_string(c)},
                 {"bits", log2_count(c)}},
                exit_ok);
}

// ---------------------------------------------------------------- toeplitz

struct ToeplitzArgs {
  std::string alpha, choices, alphabet, uncovered;
  long long length = 0, start = 0;
  bool decode = false;
};

int cmd_toeplitz(const Job& job, const ToeplitzArgs& a) {
  std::vector<std::string> names;
  if (!a.alphabet.empty()) {
    names = split(a.alphabet, ',');
  } else {
    std::set<std::string> letters;
    for (char c : a.alpha) letters.insert(std::string(1, c));
    if (!a.uncovered.empty()) letters.insert(a.uncovered);
    names.assign(letters.begin(), letters.end());
  }
  if (names.empty()) throw invalid_input("alpha must be non-empty");
  Alphabet al(names);
  SymbolSequence alpha(al, parse_word(a.alpha, al));
  if (a.length < 1 || (a.length & (a.length - 1)) != 0) throw invalid_input("length must be a power of two");
  int n = __builtin_ctzll(static_cast<unsigned long long>(a.length));
  std::vector<int> ch;
  for (char c : a.choices) {
    if (c != '0' && c != '1') throw invalid_input("net choices are bits");
    ch.push_back(c - '0');
  }
  while (static_cast<int>(ch.size()) < n) ch.push_back(0);
  Symbol unc = a.uncovered.empty() ? Symbol(0) : al.index(a.uncovered);
  auto w = generate_toeplitz_window(alpha, build_one_net(ch), a.length, unc, a.start);
  std::string word;
  for (auto s : w.letters) word += al.name(s);
  json rep{{"alpha", a.alpha}, {"length", a.length}, {"word", word}, {"offsets", build_one_net(ch).offsets()}};
  for (Symbol s = 0; s < al.size(); ++s) rep["frequency"][al.name(s)] = to_string(letter_frequency(w.letters, s));
  if (a.decode) {
    auto d = decode_density_prefix(w.letters);
    if (d) {
      std::string t;
      for (auto s : *d) t += al.name(s);
      rep["decoded"] = t;
    } else {
      rep["decoded"] = nullptr;
    }
  }
  return finish(job, rep, exit_ok);
}

// ---------------------------------------------------------------- robinson

struct RobinsonArgs {
  int size = 33;
  int levels = 3;
  bool mutate = false;
};

int cmd_robinson(const Job& job, const RobinsonArgs& a) {
  const WangTileset& ts = robinson_tileset();
  TilerOptions opt;
  opt.budget = job.budget();
  auto t = tile_rectangle(ts.spec, a.size, a.size, opt);
  if (!t) return finish(job, {{"size", a.size}, {"tiled", false}}, exit_violation);
  std::string mutated;
  if (a.mutate) {
    // swap the most central cross for a tile that is not one
    int c = a.size / 2;
    std::size_t best = t->tiles.size();
    long long bd = -1;
    for (int y = 0; y < a.size; ++y)
      for (int x = 0; x < a.size; ++x) {
        std::size_t i = static_cast<std::size_t>(y * a.size + x);
        long long d = static_cast<long long>(x - c) * (x - c) + static_cast<long long>(y - c) * (y - c);
        if (ts.cross[static_cast<std::size_t>(t->tiles[i])] && (bd < 0 || d < bd)) {
          bd = d;
          best = i;
        }
      }
    if (best < t->tiles.size()) {
      for (Symbol s = 0; s < static_cast<Symbol>(ts.cross.size()); ++s)
        if (!ts.cross[static_cast<std::size_t>(s)]) {
          t->tiles[best] = s;
          break;
        }
      mutated = std::to_string(best % a.size) + "," + std::to_string(best / a.size);
    }
  }
  auto rep = verify_cross_net(*t, a.levels);
  json levels = json::array();
  for (const auto& l : rep.levels)
    levels.push_back({{"level", l.level},
                      {"period", l.period},
                      {"offset", {l.offset_x, l.offset_y}},
                      {"crosses", l.crosses},
                      {"coset_cells", l.coset_cells},
                      {"missing", l.missing.size()},
                      {"stray", l.stray.size()},
                      {"truncated", l.truncated},
                      {"consistent", l.consistent()}});
  json out{{"size", a.size}, {"tileset", ts.version}, {"tiled", true}, {"levels", levels},
           {"consistent", rep.consistent()}};
  if (!mutated.empty()) out["mutated"] = mutated;
  if (auto path = artifact(job, "robinson.pgm"); !path.empty()) {
    std::vector<std::vector<int>> rows;
    for (int y = a.size - 1; y >= 0; --y) {
      std::vector<int> r;
      for (int x = 0; x < a.size; ++x) r.push_back(ts.cross[static_cast<std::size_t>(t->at(x, y))] ? 255 : 40);
      rows.push_back(r);
    }
    io::write_pgm(path, rows, 255);
    out["image"] = "robinson.pgm";
  }
  return finish(job, out, rep.consistent() ? exit_ok : exit_violation);
}

// ---------------------------------------------------------------- entropy

json entropy_json(const EntropyReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"r", s.size}, {"cells", s.cells}, {"count", to_string(s.count)}, {"bits", s.bits}});
  return {{"spec", r.spec},       {"direction", r.direction}, {"k", r.k},
          {"samples", samples},   {"raw_last", r.raw_last},   {"fit", r.fit},
          {"fit_method", r.fit_method}};
}

struct EntropyArgs {
  std::string spec;
  int r_max = 8, margin = 0, k_max = 0;
  std::string direction = "e2";
};

int cmd_entropy(const Job& job, const EntropyArgs& a) {
  SftSpec s = io::load_spec(a.spec);
  json out;
  if (a.k_max > 0) {
    if (a.direction != "e1" && a.direction != "e2") throw invalid_input("direction is e1 or e2");
    auto reps = directional_entropy_series(s, a.k_max, a.r_max, a.margin,
                                           a.direction == "e1" ? Direction::e1 : Direction::e2, job.budget());
    out["series"] = json::array();
    for (const auto& r : reps) out["series"].push_back(entropy_json(r));
  } else {
    out = entropy_json(entropy_series(s, a.r_max, a.margin, job.budget()));
  }
  if (auto path = artifact(job, "series.tsv"); !path.empty()) {
    std::ostringstream tsv;
    tsv << "k\tr\tcount\tbits\n";
    auto emit = [&](const json& r) {
      for (const auto& s : r["samples"])
        tsv << r["k"].get<int>() << "\t" << s["r"].get<int>() << "\t" << s["count"].get<std::string>() << "\t"
            << s["bits"].get<double>() << "\n";
    };
    if (out.contains("series"))
      for (const auto& r : out["series"]) emit(r);
    else
      emit(out);
    io::write_text(path, tsv.str());
  }
  return finish(job, out, exit_ok);
}

// ---------------------------------------------------------------- ca

struct CaArgs {
  std::string rule, init;
  int steps = 8;
  bool periodic = false;
};

int cmd_ca(const Job& job, const CaArgs& a) {
  CaRule rule = io::rule_from_json(io::read_json_file(a.rule));
  auto init = parse_word(a.init, rule.alphabet());
  auto b = space_time(rule, init, a.steps, a.periodic ? Boundary::periodic : Boundary::shrinking);
  json rows = json::array();
  for (const auto& r : b.rows) rows.push_back(pattern_text(Pattern::word(r), rule.alphabet()));
  json out{{"rule", rule.name()}, {"mode", to_string(b.mode)}, {"rows", rows}};
  if (auto path = artifact(job, "spacetime.pgm"); !path.empty()) {
    // shrinking rows are centred on the initial width; the cut-off margin is black
    std::size_t w = b.rows[0].size();
    std::vector<std::vector<Symbol>> img;
    for (std::size_t t = 0; t < b.rows.size(); ++t) {
      std::size_t pad = (w - b.rows[t].size()) / 2;
      std::vector<Symbol> r(w, 0);
      std::copy(b.rows[t].begin(), b.rows[t].end(), r.begin() + static_cast<long long>(pad));
      img.push_back(r);
    }
    io::write_pgm(path, io::symbol_rows(img, rule.alphabet().size()), 255);
    out["image"] = "spacetime.pgm";
  }
  return finish(job, out, exit_ok);
}

// ---------------------------------------------------------------- split

struct SplitArgs {
  std::string spec, pi;
  int max_length = 8, margin = 0;
};

int cmd_split(const Job& job, const SplitArgs& a) {
  SftSpec s = io::load_spec(a.spec);
  if (s.dimension() != 1) throw invalid_input("split works on 1D specs");
  std::vector<int> pi;
  if (a.pi.empty()) {
    pi.assign(static_cast<std::size_t>(s.alphabet().size()), 0);
    pi.back() = 1;
  } else {
    for (const auto& t : split(a.pi, ',')) pi.push_back(t == "1" ? 1 : t == "0" ? 0 : throw invalid_input("pi is a list of bits"));
  }
  std::vector<SplitIdentity> ids(static_cast<std::size_t>(std::max(a.max_length, 0)));
  parallel_for(job.jobs, ids.size(), [&](std::size_t i) {
    ids[i] = split_count_identity(s, pi, RectWindow::line(static_cast<int>(i) + 1), a.margin, job.budget());
  });
  json rows = json::array();
  bool all = true;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    rows.push_back({{"length", i + 1}, {"left", to_string(ids[i].left)}, {"right", to_string(ids[i].right)},
                    {"holds", ids[i].holds()}});
    all = all && ids[i].holds();
  }
  return finish(job, {{"spec", s.name()}, {"pi", pi}, {"windows", rows}, {"holds", all}},
                all ? exit_ok : exit_violation);
}

// ---------------------------------------------------------------- macrotile

struct MacrotileArgs {
  int n = 1;
  long long c1 = 5, c2 = 0, budget = 0;
  std::string machine, mutate;
  long long halt_at = 0;
};

int cmd_macrotile(const Job& job, const MacrotileArgs& a) {
  DensityMachine m = !a.machine.empty() ? io::machine_from_json(io::read_json_file(a.machine))
                     : a.halt_at > 0    ? halt_at_step(a.halt_at, {"0", "1"})
                                        : never_halts({"0", "1"});
  json out;
  long long c2 = a.c2;
  if (c2 == 0) {
    auto f = feasibility(a.c1, 1, never_halts({"0", "1"}));
    if (!f.found) throw invalid_input("no feasible c2 up to 64");
    c2 = f.c2;
    out["feasibility"] = {{"c2", f.c2}, {"steps", f.steps}, {"T1", f.T}};
  }
  ScheduleParams p{a.c1, c2, {}};
  auto f = consistent_fixture(a.n, p);
  // field faults, as in the mutation suite
  PhaseHook after;
  if (!a.mutate.empty()) {
    auto flip = [](char c) { return c == '0' ? '1' : '0'; };
    MacrotileGrid& g = f.grid;
    if (a.mutate == "level") g.level[4 % g.B] += "1";
    else if (a.mutate == "addr") g.addr[5 % g.B] += 1;
    else if (a.mutate == "age") g.age[3 % g.B] += 1;
    else if (a.mutate == "info") g.info[static_cast<std::size_t>(a.n) + 2] = flip(g.info[static_cast<std::size_t>(a.n) + 2]);
    else if (a.mutate == "prog") g.prog[1] = flip(g.prog[1]);
    else if (a.mutate == "work") g.work[g.B - 1] = '1';
    else if (a.mutate == "check") g.check[0] = std::string(1, flip(g.check[0][0]));
    else if (a.mutate == "lmail") after = [](MacrotileGrid& x, int ph) { if (ph == 1) x.lmail[x.n + 2] = '1'; };
    else if (a.mutate == "rmail") after = [](MacrotileGrid& x, int ph) { if (ph == 1) x.rmail[x.n + 2] = '0'; };
    else throw invalid_input("unknown field '" + a.mutate + "'");
  }
  std::string heat = artifact(job, "");
  PhaseHook hook = [&](MacrotileGrid& g, int ph) {
    if (after) after(g, ph);
    if (!heat.empty()) io::write_pgm(heat + "/phase" + std::to_string(ph) + ".pgm", io::field_heatmap(g), 255);
  };
  long long budget = a.budget > 0 ? a.budget : f.grid.T();
  auto run = run_schedule(f.grid, f.neighbors, m, budget, hook);
  json traces = json::array();
  for (const auto& t : run.traces) traces.push_back(io::trace_to_json(t));
  out["c1"] = a.c1;
  out["c2"] = c2;
  out["n"] = a.n;
  out["machine"] = m.name;
  out["outcome"] = to_string(run.outcome);
  out["total_steps"] = run.total_steps;
  out["limit"] = run.limit;
  out["traces"] = traces;
  out["grid"] = io::grid_to_json(run.grid);
  int code = run.outcome == ScheduleOutcome::completed ? exit_ok
             : run.outcome == ScheduleOutcome::rejected ? exit_violation
                                                        : exit_budget;
  return finish(job, out, code);
}

// ---------------------------------------------------------------- schedule

int cmd_schedule(const Job& job, long long c1, long long c2, int n_max) {
  auto rep = validate_schedule({c1, c2, {}}, n_max);
  json levels = json::array();
  for (const auto& l : rep.levels)
    levels.push_back({{"n", l.n},
                      {"B", to_string(l.B)},
                      {"T", to_string(l.T)},
                      {"log2_alphabet", l.log2_alphabet},
                      {"representable", l.representable},
                      {"closed_form", l.closed_form},
                      {"odd", l.odd},
                      {"large", l.large},
                      {"increasing", l.increasing},
                      {"t_above_one", l.t_above_one}});
  return finish(job, {{"c1", c1}, {"c2", c2}, {"levels", levels}, {"passed", rep.passed()}},
                rep.passed() ? exit_ok : exit_violation);
}

// ---------------------------------------------------------------- verify-sim

struct SimArgs {
  std::string x, y;
  int B = 2, T = 2, l = 0, k_max = 3, r_max = 3;
};

// A file holding {"cells": ...} is a count grid; anything else is a spec.
std::variant<SftSpec, CountGrid> load_grid_or_spec(const std::string& path) {
  json j = io::read_json_file(path);
  if (j.is_object() && j.contains("cells")) return io::grid_from_json(j);
  return io::spec_from_json(j);
}

CountGrid fill_grid(const SftSpec& s, std::vector<std::pair<int, int>> cells, const Job& job) {
  std::vector<Count> v(cells.size());
  parallel_for(job.jobs, cells.size(),
               [&](std::size_t i) { v[i] = directional_counts(s, cells[i].first, cells[i].second, 0, job.budget()); });
  CountGrid g;
  for (std::size_t i = 0; i < cells.size(); ++i) g.set(cells[i].first, cells[i].second, v[i]);
  return g;
}

int cmd_verify_sim(const Job& job, const SimArgs& a) {
  auto ysrc = load_grid_or_spec(a.y);
  std::variant<SftSpec, CountGrid> xsrc;
  if (!a.x.empty()) {
    xsrc = load_grid_or_spec(a.x);
  } else {
    if (!std::holds_alternative<SftSpec>(ysrc)) throw invalid_input("--x may only be omitted when --y is a spec");
    xsrc = blow_up_spec(std::get<SftSpec>(ysrc), a.B, a.T);
  }
  std::vector<std::pair<int, int>> xc, yc;
  for (int k = 1; k <= a.k_max; ++k)
    for (int r = 1; r <= a.r_max; ++r) {
      xc.push_back({k * a.B, r * a.T});
      std::pair<int, int> c{k + 1 + 2 * a.l, r + 1};
      if (std::find(yc.begin(), yc.end(), c) == yc.end()) yc.push_back(c);
    }
  CountGrid gx = std::holds_alternative<CountGrid>(xsrc) ? std::get<CountGrid>(xsrc)
                                                         : fill_grid(std::get<SftSpec>(xsrc), xc, job);
  CountGrid gy = std::holds_alternative<CountGrid>(ysrc) ? std::get<CountGrid>(ysrc)
                                                         : fill_grid(std::get<SftSpec>(ysrc), yc, job);
  auto rep = verify_simulation_bound(gx, gy, a.B, a.T, a.l, a.k_max, a.r_max);
  json cells = json::array();
  for (const auto& c : rep.cells)
    cells.push_back({{"k", c.k}, {"r", c.r}, {"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)}, {"pass", c.pass}});
  json out{{"B", a.B}, {"T", a.T}, {"l", a.l}, {"cells", cells}, {"passed", rep.passed()}};
  if (auto f = rep.first_failure()) out["first_failure"] = {f->k, f->r};
  if (auto path = artifact(job, "x_grid.json"); !path.empty()) {
    io::write_text(path, io::grid_to_json(gx).dump(2) + "\n");
    io::write_text(artifact(job, "y_grid.json"), io::grid_to_json(gy).dump(2) + "\n");
  }
  return finish(job, out, rep.passed() ? exit_ok : exit_violation);
}

// ---------------------------------------------------------------- slices

struct SlicesArgs {
  std::string stack;
  std::string family = "1;1,1/2";
  long long loop_budget = 16;
};

int cmd_slices(const Job& job, const SlicesArgs& a) {
  std::ifstream in(a.stack);
  if (!in) throw invalid_input("cannot open " + a.stack);
  std::vector<std::vector<Symbol>> stack;
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) stack.push_back(parse_slice_word(line));
  }
  std::vector<DensityMachine> family;
  for (const auto& s : split(a.family, ';')) {
    std::vector<Rational> q;
    for (const auto& t : split(s, ',')) q.push_back(parse_rational(t));
    family.push_back(pi1_interval_machine(Pi1Stream(q)));
  }
  auto v = verify_slice_stack(stack, family, a.loop_budget);
  std::string verdict = to_string(v.form);
  using F = StackVerdict::Form;
  if (v.form == F::b) verdict += " m=" + std::to_string(v.m) + " k=" + std::to_string(v.k);
  if (v.form == F::violation) verdict += " at " + std::to_string(v.m);
  json out{{"slices", stack.size()}, {"verdict", verdict}};
  if (v.form == F::violation) out["detail"] = {{"position", v.detail.position}, {"reason", v.detail.reason}};
  return finish(job, out, v.form == F::violation ? exit_violation : exit_ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for SFT counting, Toeplitz densities, Robinson nets, CA splits and macrotile schedules"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  Job job;
  app.add_option("--out", job.out, "Job directory for report.json, manifest.json and images");
  app.add_option("--jobs", job.jobs, "Worker threads for independent cells")->check(CLI::PositiveNumber);
  app.add_option("--max-nodes", job.max_nodes, "Search node budget (0 = library default)");

  CountArgs count;
  auto* c = app.add_subcommand("count", "Count admissible patterns on a window");
  c->add_option("spec", count.spec, "Spec JSON")->required();
  c->add_option("--length", count.length);
  c->add_option("--width", count.width);
  c->add_option("--height", count.height);
  c->add_option("--margin", count.margin);

  ToeplitzArgs tp;
  auto* t = app.add_subcommand("toeplitz", "Toeplitz window from an alpha prefix and net choices");
  t->add_option("alpha", tp.alpha)->required();
  t->add_option("--choices", tp.choices, "Net choice bits, one per level");
  t->add_option("--length", tp.length)->required();
  t->add_option("--start", tp.start);
  t->add_option("--alphabet", tp.alphabet, "Comma separated letters");
  t->add_option("--uncovered", tp.uncovered);
  t->add_flag("--decode", tp.decode);

  RobinsonArgs rb;
  auto* r = app.add_subcommand("robinson", "Tile a square with the Robinson set and check the cross net");
  r->add_option("--size", rb.size);
  r->add_option("--levels", rb.levels);
  r->add_flag("--mutate", rb.mutate, "Replace one cross before checking");

  EntropyArgs en;
  auto* e = app.add_subcommand("entropy", "Entropy series of a spec");
  e->add_option("spec", en.spec)->required();
  e->add_option("--r-max", en.r_max);
  e->add_option("--margin", en.margin);
  e->add_option("--k-max", en.k_max, "Directional strips up to this width (2D)");
  e->add_option("--direction", en.direction);

  CaArgs ca;
  auto* a = app.add_subcommand("ca", "Space-time diagram of a CA rule");
  a->add_option("rule", ca.rule, "Rule JSON")->required();
  a->add_option("--init", ca.init)->required();
  a->add_option("--steps", ca.steps);
  a->add_flag("--periodic", ca.periodic);

  SplitArgs sp;
  auto* s = app.add_subcommand("split", "Check the split counting identity on windows 1..max-length");
  s->add_option("spec", sp.spec)->required();
  s->add_option("--pi", sp.pi, "Comma separated bits, one per letter");
  s->add_option("--max-length", sp.max_length);
  s->add_option("--margin", sp.margin);

  MacrotileArgs mt;
  auto* m = app.add_subcommand("macrotile", "Run the seven phases on the consistent fixture");
  m->add_option("--n", mt.n);
  m->add_option("--c1", mt.c1);
  m->add_option("--c2", mt.c2, "0 = smallest feasible");
  m->add_option("--budget", mt.budget);
  m->add_option("--machine", mt.machine, "Machine JSON");
  m->add_option("--halt-at", mt.halt_at, "Use a machine halting at this step");
  m->add_option("--mutate", mt.mutate, "level|addr|age|info|lmail|rmail|prog|work|check");

  long long c1 = 5, c2 = 2;
  int n_max = 4;
  auto* sc = app.add_subcommand("schedule", "Check the B(n) = c1 3^n schedule restrictions");
  sc->add_option("c1", c1)->required();
  sc->add_option("c2", c2)->required();
  sc->add_option("n_max", n_max)->required();

  SimArgs sim;
  auto* v = app.add_subcommand("verify-sim", "Check the simulation counting bound");
  v->add_option("--x", sim.x, "X spec or count grid; omitted: blow-up of Y");
  v->add_option("--y", sim.y, "Y spec or count grid")->required();
  v->add_option("--B", sim.B);
  v->add_option("--T", sim.T);
  v->add_option("--l", sim.l);
  v->add_option("--k-max", sim.k_max);
  v->add_option("--r-max", sim.r_max);

  SlicesArgs sl;
  auto* z = app.add_subcommand("slices", "Classify a slice stack (one slice per line)");
  z->add_option("stack", sl.stack)->required();
  z->add_option("--family", sl.family, "Pi1 tables: ';' between machines, ',' between approximants");
  z->add_option("--loop-budget", sl.loop_budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return exit_input;
  }

  CLI::App* sub = app.get_subcommands().front();
  job.command = sub->get_name();
  for (const CLI::Option* o : sub->get_options()) {
    if (o->get_name() == "--help") continue;
    std::string key = o->get_name(false, true);
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    if (o->count() > 0) {
      auto res = o->results();
      job.params[key] = res.size() == 1 ? json(res[0]) : json(res);
    } else {
      job.params[key] = o->get_type_size() == 0 ? json(false) : json(o->get_default_str());
    }
  }

  try {
    if (sub == c) return cmd_count(job, count);
    if (sub == t) return cmd_toeplitz(job, tp);
    if (sub == r) return cmd_robinson(job, rb);
    if (sub == e) return cmd_entropy(job, en);
    if (sub == a) return cmd_ca(job, ca);
    if (sub == s) return cmd_split(job, sp);
    if (sub == m) return cmd_macrotile(job, mt);
    if (sub == sc) return cmd_schedule(job, c1, c2, n_max);
    if (sub == v) return cmd_verify_sim(job, sim);
    if (sub == z) return cmd_slices(job, sl);
  } catch (const BudgetError& err) {
    std::cerr << "budget exceeded: " << err.what() << "\n";
    if (!err.partial_report().empty()) std::cerr << err.partial_report() << "\n";
    return exit_budget;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return err.kind() == ErrorKind::budget_exceeded ? exit_budget : exit_input;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_input;
  }
  return exit_input;
}
