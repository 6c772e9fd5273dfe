#pragma once

// One-dimensional cellular automata with an optional absorbing "⊥", space-time
// blocks, column counting, the SFT-to-CA conversion and the split construction.

#include "cae/counting.hpp"
#include "cae/error.hpp"
#include "cae/numeric.hpp"
#include "cae/sft_ops.hpp"
#include "cae/symbolic.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cae {

inline const std::string bottom_name = "⊥";

/// Rule F(x)_i = f(x_{i-r} .. x_{i+r}), stored as a full table indexed by the
/// neighbourhood read as a base-|A| number, leftmost cell most significant.
class CaRule {
 public:
  CaRule() = default;
  CaRule(Alphabet alphabet, int radius, std::vector<Symbol> table, std::string name = {})
      : alphabet_(std::move(alphabet)), radius_(radius), table_(std::move(table)), name_(std::move(name)) {
    if (radius_ < 0 || radius_ > 4) throw invalid_spec("radius must be in 0..4");
    std::size_t expected = 1;
    for (int i = 0; i < 2 * radius_ + 1; ++i) {
      expected *= static_cast<std::size_t>(alphabet_.size());
      if (expected > (std::size_t{1} << 26)) throw invalid_spec("rule table too large");
    }
    if (table_.size() != expected) throw invalid_spec("rule table is not total");
    for (auto s : table_)
      if (s < 0 || s >= alphabet_.size()) throw invalid_spec("rule output outside alphabet");
    if (alphabet_.contains(bottom_name)) {
      bottom_ = alphabet_.index(bottom_name);
      for (std::size_t i = 0; i < table_.size(); ++i)
        if (reads_bottom(i) && table_[i] != *bottom_) throw invalid_spec("⊥ must be absorbing");
    }
  }

  static CaRule from_function(Alphabet alphabet, int radius, const std::function<Symbol(const std::vector<Symbol>&)>& f,
                              std::string name = {}) {
    std::size_t n = 1;
    for (int i = 0; i < 2 * radius + 1; ++i) n *= static_cast<std::size_t>(alphabet.size());
    std::vector<Symbol> table(n);
    std::vector<Symbol> nb(static_cast<std::size_t>(2 * radius + 1));
    for (std::size_t code = 0; code < n; ++code) {
      std::size_t c = code;
      for (std::size_t j = nb.size(); j-- > 0;) {
        nb[j] = static_cast<Symbol>(c % static_cast<std::size_t>(alphabet.size()));
        c /= static_cast<std::size_t>(alphabet.size());
      }
      table[code] = f(nb);
    }
    return CaRule(std::move(alphabet), radius, std::move(table), std::move(name));
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int radius() const noexcept { return radius_; }
  const std::string& name() const noexcept { return name_; }
  std::optional<Symbol> bottom() const noexcept { return bottom_; }
  const std::vector<Symbol>& table() const noexcept { return table_; }

  Symbol apply(const std::vector<Symbol>& neighbourhood) const {
    std::size_t code = 0;
    for (auto s : neighbourhood) {
      if (s < 0 || s >= alphabet_.size()) throw invalid_input("symbol outside the rule alphabet");
      code = code * static_cast<std::size_t>(alphabet_.size()) + static_cast<std::size_t>(s);
    }
    return table_.at(code);
  }

 private:
  bool reads_bottom(std::size_t code) const {
    for (int j = 0; j < 2 * radius_ + 1; ++j) {
      if (static_cast<Symbol>(code % static_cast<std::size_t>(alphabet_.size())) == *bottom_) return true;
      code /= static_cast<std::size_t>(alphabet_.size());
    }
    return false;
  }

  Alphabet alphabet_;
  int radius_ = 0;
  std::vector<Symbol> table_;
  std::string name_;
  std::optional<Symbol> bottom_;
};

inline CaRule identity_rule(const Alphabet& a, int radius = 1) {
  return CaRule::from_function(a, radius, [radius](const std::vector<Symbol>& n) { return n[static_cast<std::size_t>(radius)]; },
                               "identity");
}

/// F(x)_i = x_{i+1}.
inline CaRule shift_rule(const Alphabet& a) {
  return CaRule::from_function(a, 1, [](const std::vector<Symbol>& n) { return n[2]; }, "shift");
}

inline CaRule xor_rule() {
  return CaRule::from_function(Alphabet::numbered(2), 1, [](const std::vector<Symbol>& n) { return n[0] ^ n[2]; }, "xor");
}

enum class Boundary { shrinking, periodic };

inline const char* to_string(Boundary b) { return b == Boundary::shrinking ? "shrinking" : "periodic"; }

struct Row {
  std::vector<Symbol> cells;
  Boundary mode = Boundary::shrinking;
};

/// Shrinking mode drops r cells on each side; periodic mode wraps around.
inline Row step(const CaRule& rule, const std::vector<Symbol>& row, Boundary mode = Boundary::shrinking) {
  const int r = rule.radius();
  const long long n = static_cast<long long>(row.size());
  for (auto s : row)
    if (s < 0 || s >= rule.alphabet().size()) throw invalid_input("row symbol outside the rule alphabet");
  Row out{{}, mode};
  std::vector<Symbol> nb(static_cast<std::size_t>(2 * r + 1));
  if (mode == Boundary::shrinking) {
    if (n <= 2 * r) throw invalid_input("row of length " + std::to_string(n) + " too short for radius " + std::to_string(r));
    for (long long i = r; i < n - r; ++i) {
      for (int j = -r; j <= r; ++j) nb[static_cast<std::size_t>(j + r)] = row[static_cast<std::size_t>(i + j)];
      out.cells.push_back(rule.apply(nb));
    }
  } else {
    if (n == 0) throw invalid_input("empty periodic row");
    for (long long i = 0; i < n; ++i) {
      for (int j = -r; j <= r; ++j) nb[static_cast<std::size_t>(j + r)] = row[static_cast<std::size_t>(((i + j) % n + n) % n)];
      out.cells.push_back(rule.apply(nb));
    }
  }
  return out;
}

/// rows[t] is the configuration at time t. In shrinking mode row t is
/// centred and shorter by 2rt.
struct SpaceTimeBlock {
  std::vector<std::vector<Symbol>> rows;
  Boundary mode = Boundary::shrinking;
  int radius = 0;
};

inline SpaceTimeBlock space_time(const CaRule& rule, const std::vector<Symbol>& init, int steps,
                                 Boundary mode = Boundary::shrinking) {
  if (steps < 0) throw invalid_input("negative step count");
  if (mode == Boundary::shrinking && static_cast<long long>(init.size()) <= 2LL * rule.radius() * steps)
    throw invalid_input("initial row too narrow for " + std::to_string(steps) + " shrinking steps");
  SpaceTimeBlock b{{init}, mode, rule.radius()};
  for (int t = 0; t < steps; ++t) b.rows.push_back(step(rule, b.rows.back(), mode).cells);
  return b;
}

/// Distinct k x (T+1) central blocks over all initial words of width k + 2rT
/// (⊥ excluded from initial words).
inline Count ca_column_count(const CaRule& rule, int k, int steps, SearchBudget budget = {}) {
  if (k < 1 || steps < 0) throw invalid_input("column count needs k >= 1 and T >= 0");
  std::vector<Symbol> letters;
  for (Symbol s = 0; s < rule.alphabet().size(); ++s)
    if (!rule.bottom() || s != *rule.bottom()) letters.push_back(s);
  const int width = k + 2 * rule.radius() * steps;
  detail::NodeCounter nodes(budget, "ca_column_count");
  std::set<std::vector<Symbol>> blocks;
  std::vector<std::size_t> digits(static_cast<std::size_t>(width), 0);
  std::vector<Symbol> init(static_cast<std::size_t>(width));
  while (true) {
    nodes.tick("distinct blocks so far: " + std::to_string(blocks.size()));
    for (std::size_t i = 0; i < digits.size(); ++i) init[i] = letters[digits[i]];
    std::vector<Symbol> block;
    std::vector<Symbol> row = init;
    for (int t = 0; t <= steps; ++t) {
      std::size_t off = static_cast<std::size_t>(rule.radius() * (steps - t));
      block.insert(block.end(), row.begin() + static_cast<std::ptrdiff_t>(off),
                   row.begin() + static_cast<std::ptrdiff_t>(off + static_cast<std::size_t>(k)));
      if (t < steps) row = step(rule, row).cells;
    }
    blocks.insert(std::move(block));
    std::size_t i = digits.size();
    while (i > 0 && ++digits[i - 1] == letters.size()) digits[--i] = 0;
    if (i == 0) break;
  }
  return Count(blocks.size());
}

/// The rule reading the unique admissible symbol above each (2r+1)-row of a
/// south-deterministic 2D spec, and ⊥ where no admissible symbol exists.
inline CaRule ca_from_sft(const SftSpec& spec, int radius = 1, SearchBudget budget = {}) {
  auto verdict = check_south_deterministic(spec, 2, radius, budget);
  if (!verdict.deterministic) {
    std::string row;
    for (auto s : verdict.row) row += (row.empty() ? "" : " ") + spec.alphabet().name(s);
    throw invalid_spec("spec '" + spec.name() + "' is not south-deterministic: row [" + row + "] admits both " +
                       spec.alphabet().name(verdict.above_first) + " and " + spec.alphabet().name(verdict.above_second) +
                       " above its centre");
  }
  auto names = spec.alphabet().names();
  if (spec.alphabet().contains(bottom_name)) throw invalid_spec("spec alphabet already uses ⊥");
  names.push_back(bottom_name);
  Alphabet a(names);
  const Symbol bot = static_cast<Symbol>(names.size() - 1);
  const int w = 2 * radius + 1;
  std::map<std::vector<Symbol>, Symbol> above;
  for_each_pattern(
      spec, RectWindow::rect(w, 2), 0,
      [&](const Pattern& p) {
        std::vector<Symbol> row(p.symbols().begin(), p.symbols().begin() + w);
        above.emplace(row, p.symbols()[static_cast<std::size_t>(w + radius)]);
        return true;
      },
      budget);
  return CaRule::from_function(
      a, radius,
      [&](const std::vector<Symbol>& nb) {
        auto it = above.find(nb);
        return it == above.end() ? bot : it->second;
      },
      spec.name().empty() ? "from-sft" : spec.name() + "-ca");
}

/// Letters (a, 0) for every a and (a, 1) where pi(a) = 1; base_of / bit_of
/// recover the layers.
struct SplitSpec {
  SftSpec spec;
  std::vector<Symbol> base_of;
  std::vector<int> bit_of;
  std::vector<int> pi;

  Symbol lift(Symbol base, int bit) const {
    for (std::size_t i = 0; i < base_of.size(); ++i)
      if (base_of[i] == base && bit_of[i] == bit) return static_cast<Symbol>(i);
    throw invalid_input("no split letter for this base and bit");
  }
};

namespace detail {

inline std::pair<Alphabet, std::pair<std::vector<Symbol>, std::vector<int>>> split_alphabet(const Alphabet& base,
                                                                                          const std::vector<int>& pi) {
  if (static_cast<int>(pi.size()) != base.size()) throw invalid_spec("projection is not total");
  std::vector<std::string> names;
  std::vector<Symbol> base_of;
  std::vector<int> bit_of;
  for (Symbol a = 0; a < base.size(); ++a) {
    int v = pi[static_cast<std::size_t>(a)];
    if (v != 0 && v != 1) throw invalid_spec("projection image outside {0, 1}");
    for (int bit = 0; bit <= v; ++bit) {
      names.push_back("(" + base.name(a) + "," + std::to_string(bit) + ")");
      base_of.push_back(a);
      bit_of.push_back(bit);
    }
  }
  return {Alphabet(names), {base_of, bit_of}};
}

}  // namespace detail

inline SplitSpec split_construction(const SftSpec& spec, const std::vector<int>& pi) {
  auto [alphabet, layers] = detail::split_alphabet(spec.alphabet(), pi);
  const auto& base_of = layers.first;
  std::vector<std::vector<Symbol>> lifts(static_cast<std::size_t>(spec.alphabet().size()));
  for (std::size_t i = 0; i < base_of.size(); ++i) lifts[static_cast<std::size_t>(base_of[i])].push_back(static_cast<Symbol>(i));
  std::vector<Pattern> forbidden;
  for (const auto& f : spec.forbidden()) {
    std::vector<Symbol> cur(f.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == f.size()) {
        std::vector<std::pair<Cell, Symbol>> cells;
        for (std::size_t j = 0; j < f.size(); ++j) cells.emplace_back(f.cells()[j], cur[j]);
        forbidden.emplace_back(f.dimension(), std::move(cells));
        return;
      }
      for (auto s : lifts[static_cast<std::size_t>(f.symbols()[i])]) {
        cur[i] = s;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  }
  SplitSpec out{SftSpec(alphabet, spec.dimension(), std::move(forbidden), spec.name() + "-split"), base_of, layers.second, pi};
  return out;
}

/// First layer runs `rule`; the bit layer shifts left where the new letter has
/// pi = 1 and is 0 elsewhere. ⊥ (pi = 0) stays absorbing.
inline CaRule split_rule(const CaRule& rule, const std::vector<int>& pi) {
  if (rule.radius() < 1) throw invalid_spec("split rule needs radius >= 1");
  if (rule.bottom() && pi.at(static_cast<std::size_t>(*rule.bottom())) != 0) throw invalid_spec("⊥ must project to 0");
  auto [alphabet, layers] = detail::split_alphabet(rule.alphabet(), pi);
  auto base_of = layers.first;
  auto bit_of = layers.second;
  auto lift = [&](Symbol b, int bit) {
    for (std::size_t i = 0; i < base_of.size(); ++i)
      if (base_of[i] == b && bit_of[i] == bit) return static_cast<Symbol>(i);
    return Symbol{-1};
  };
  std::optional<Symbol> bot;
  if (rule.bottom()) bot = lift(*rule.bottom(), 0);
  const int r = rule.radius();
  std::vector<Symbol> tmp(static_cast<std::size_t>(2 * r + 1));
  // The split ⊥ letter is renamed so the table checks absorption.
  auto names = alphabet.names();
  if (bot) names[static_cast<std::size_t>(*bot)] = bottom_name;
  return CaRule::from_function(
      Alphabet(names), r,
      [&](const std::vector<Symbol>& nb) {
        for (std::size_t j = 0; j < nb.size(); ++j) {
          if (bot && nb[j] == *bot) return *bot;
          tmp[j] = base_of[static_cast<std::size_t>(nb[j])];
        }
        Symbol b = rule.apply(tmp);
        int bit = pi[static_cast<std::size_t>(b)] == 1 ? bit_of[static_cast<std::size_t>(nb[static_cast<std::size_t>(r + 1)])] : 0;
        return lift(b, bit);
      },
      rule.name() + "-split");
}

struct SplitIdentity {
  Count left;
  Count right;
  bool holds() const { return left == right; }
};

/// left: count of the split spec on the window; right: sum over base patterns
/// of 2^(number of cells with pi = 1).
inline SplitIdentity split_count_identity(const SftSpec& spec, const std::vector<int>& pi, const RectWindow& window,
                                          int margin = 0, SearchBudget budget = {}) {
  auto split = split_construction(spec, pi);
  SplitIdentity r{count_patterns(split.spec, window, margin, budget), 0};
  for_each_pattern(
      spec, window, margin,
      [&](const Pattern& p) {
        unsigned occ = 0;
        for (auto s : p.symbols()) occ += pi[static_cast<std::size_t>(s)] == 1;
        r.right += Count(1) << occ;
        return true;
      },
      budget);
  return r;
}

}  // namespace cae
