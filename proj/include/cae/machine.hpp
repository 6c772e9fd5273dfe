#pragma once

// Table-driven Turing machines over symbol names, the density-machine wrapper
// that runs an inner machine on decoded prefixes, and the comparison machine
// for binary expansions against a Pi_1 table.

#include "cae/error.hpp"
#include "cae/streams.hpp"
#include "cae/symbolic.hpp"
#include "cae/toeplitz.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cae {

enum class Move { left, right, stay };

struct Transition {
  std::string next;
  std::string write;
  Move move = Move::stay;
};

/// One-tape machine. The head starts on cell 0 holding the first input letter;
/// cells outside the input hold `blank`. One transition is one step; a missing
/// transition halts, as does entering a state in `halting`.
struct DensityMachine {
  std::string name;
  std::string start = "q0";
  std::set<std::string> halting{"halt"};
  std::string blank = "_";
  std::map<std::pair<std::string, std::string>, Transition> table;

  void add(const std::string& state, const std::string& read, const std::string& next, const std::string& write,
           Move m) {
    if (!table.emplace(std::make_pair(state, read), Transition{next, write, m}).second)
      throw invalid_spec("machine '" + name + "' has two transitions for (" + state + ", " + read + ")");
  }
};

struct MachineRun {
  bool halted = false;
  long long steps = 0;
  std::string state;
};

inline MachineRun run_machine(const DensityMachine& m, const std::vector<std::string>& input, long long max_steps) {
  std::map<long long, std::string> tape;
  for (std::size_t i = 0; i < input.size(); ++i) tape[static_cast<long long>(i)] = input[i];
  MachineRun r{false, 0, m.start};
  long long head = 0;
  while (true) {
    if (m.halting.count(r.state)) {
      r.halted = true;
      return r;
    }
    auto cell = tape.find(head);
    const std::string& sym = cell == tape.end() ? m.blank : cell->second;
    auto it = m.table.find({r.state, sym});
    if (it == m.table.end()) {
      r.halted = true;
      return r;
    }
    if (r.steps == max_steps) return r;
    ++r.steps;
    tape[head] = it->second.write;
    r.state = it->second.next;
    head += it->second.move == Move::left ? -1 : it->second.move == Move::right ? 1 : 0;
  }
}

inline DensityMachine halt_immediately() {
  DensityMachine m;
  m.name = "halt-immediately";
  m.start = "halt";
  return m;
}

/// Never halts on any input over `letters` plus blank.
inline DensityMachine never_halts(const std::vector<std::string>& letters) {
  DensityMachine m;
  m.name = "never-halts";
  for (const auto& a : letters) m.add("q0", a, "q0", a, Move::stay);
  m.add("q0", m.blank, "q0", m.blank, Move::stay);
  return m;
}

/// Halts in one step iff the first letter is `target`; otherwise loops.
inline DensityMachine halt_if_first(const std::string& target, const std::vector<std::string>& letters) {
  DensityMachine m;
  m.name = "halt-if-first-" + target;
  for (const auto& a : letters) {
    if (a == target) {
      m.add("q0", a, "halt", a, Move::stay);
    } else {
      m.add("q0", a, "loop", a, Move::stay);
      m.add("loop", a, "loop", a, Move::stay);
    }
  }
  m.add("q0", m.blank, "loop", m.blank, Move::stay);
  m.add("loop", m.blank, "loop", m.blank, Move::stay);
  if (std::find(letters.begin(), letters.end(), target) != letters.end())
    m.add("loop", target, "loop", target, Move::stay);
  return m;
}

/// Halts at step n (counting from 1) on any input over `letters`.
inline DensityMachine halt_at_step(long long n, const std::vector<std::string>& letters) {
  DensityMachine m;
  m.name = "halt-at-step-" + std::to_string(n);
  std::vector<std::string> syms = letters;
  syms.push_back(m.blank);
  for (long long i = 0; i < n; ++i) {
    std::string from = i == 0 ? m.start : "c" + std::to_string(i);
    std::string to = i + 1 == n ? "halt" : "c" + std::to_string(i + 1);
    for (const auto& a : syms) m.add(from, a, to, a, Move::stay);
  }
  return m;
}

enum class WrapperOutcome { halted, still_running, rejected_input };

inline const char* to_string(WrapperOutcome o) {
  return o == WrapperOutcome::halted ? "halted" : o == WrapperOutcome::still_running ? "still-running" : "rejected-input";
}

struct WrapperResult {
  WrapperOutcome outcome = WrapperOutcome::still_running;
  long long loop = 0;  // t at which the inner machine halted or decoding failed; loops done otherwise
};

/// For t = 1, 2, ...: decode x[0, 2^t) and run `inner` for t steps on the
/// decoded word. Stops at the first halt, at a decoding error, when 2^t
/// exceeds |x| or after `loop_budget` loops.
inline WrapperResult density_machine_run(const DensityMachine& inner, const std::vector<Symbol>& x,
                                         const Alphabet& alphabet, long long loop_budget) {
  if (loop_budget < 1) throw invalid_input("loop budget must be >= 1");
  WrapperResult r;
  for (long long t = 1; t <= loop_budget && t < 62; ++t) {
    std::size_t len = std::size_t{1} << t;
    if (len > x.size()) break;
    auto decoded = decode_density_prefix(std::vector<Symbol>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(len)));
    if (!decoded) return {WrapperOutcome::rejected_input, t};
    std::vector<std::string> word;
    for (auto s : *decoded) word.push_back(alphabet.name(s));
    r.loop = t;
    if (run_machine(inner, word, t).halted) return {WrapperOutcome::halted, t};
  }
  return r;
}

/// Compares the binary expansion read from the tape with the last approximant q
/// of `alpha`: halts as soon as the prefix read proves the value exceeds q, or on
/// a letter outside {0, 1}. Values <= q never halt.
inline DensityMachine pi1_interval_machine(const Pi1Stream& alpha) {
  const Rational& q = alpha.last();
  DensityMachine m;
  m.name = "pi1-interval";
  m.add("below", "0", "below", "0", Move::right);
  m.add("below", "1", "below", "1", Move::right);
  m.add("below", m.blank, "below", m.blank, Move::stay);
  if (q >= 1) {
    m.start = "below";
    return m;
  }
  // State eq<r>: the prefix equals the expansion of q so far and q's remaining
  // fraction is r / den.
  Count num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  std::set<Count> seen;
  std::vector<Count> todo{num};
  m.start = "eq" + num.str();
  while (!todo.empty()) {
    Count r = todo.back();
    todo.pop_back();
    if (!seen.insert(r).second) continue;
    Count twice = 2 * r;
    int bit = twice >= den ? 1 : 0;
    Count next = bit ? Count(twice - den) : twice;
    std::string st = "eq" + r.str(), nx = "eq" + next.str();
    if (bit == 0) {
      m.add(st, "0", nx, "0", Move::right);
      m.add(st, "1", "halt", "1", Move::stay);
    } else {
      m.add(st, "0", "below", "0", Move::right);
      m.add(st, "1", nx, "1", Move::right);
    }
    m.add(st, m.blank, st, m.blank, Move::stay);
    todo.push_back(next);
  }
  return m;
}

}  // namespace cae
