#pragma once

// Exact pattern counting on finite windows.
//
// A pattern on window U is counted when it extends to a pattern on U inflated
// by `margin` cells on every side that contains no forbidden pattern. Margin 0
// counts locally admissible patterns; larger margins can only remove patterns.
//
// Engines:
//   * margin 0, 1D and 2D: row-major frontier dynamic programming;
//   * margin > 0, 1D: subset construction over left contexts;
//   * margin > 0, 2D: backtracking enumeration plus an extension search.

#include "cae/error.hpp"
#include "cae/numeric.hpp"
#include "cae/symbolic.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace cae {

struct SearchBudget {
  std::uint64_t max_nodes = 200'000'000;
};

enum class Direction { e1, e2 };

namespace detail {

class NodeCounter {
 public:
  NodeCounter(SearchBudget b, std::string what) : budget_(b), what_(std::move(what)) {}

  void tick(const std::string& partial = {}) {
    if (++used_ > budget_.max_nodes) {
      throw BudgetError(what_ + ": search budget of " + std::to_string(budget_.max_nodes) +
                            " nodes exceeded",
                        partial);
    }
  }
  std::uint64_t used() const { return used_; }

 private:
  SearchBudget budget_;
  std::string what_;
  std::uint64_t used_ = 0;
};

inline void append_symbol(std::string& key, Symbol s) {
  key.push_back(static_cast<char>(s & 0xff));
  key.push_back(static_cast<char>((s >> 8) & 0xff));
}

inline Symbol key_symbol(const std::string& key, std::size_t i) {
  auto lo = static_cast<unsigned char>(key[2 * i]);
  auto hi = static_cast<unsigned char>(key[2 * i + 1]);
  int v = lo | (hi << 8);
  return v == 0xffff ? -1 : v;
}

/// Margin-0 count on a width x height rectangle by sweeping cells row-major and
/// remembering only the trailing cells a forbidden pattern can still reach.
inline Count frontier_count(const SftSpec& spec, int width, int height, SearchBudget budget) {
  const auto& idx = spec.index();
  if (idx.has_empty_pattern()) return 0;
  const int n_sym = spec.alphabet().size();
  const long long cells = static_cast<long long>(width) * height;
  int reach = 0;
  if (!idx.shapes().empty()) reach = (idx.max_height() - 1) * width + idx.max_width() - 1;
  reach = static_cast<int>(std::min<long long>(reach, cells));

  NodeCounter nodes(budget, "frontier count");
  std::unordered_map<std::string, Count> layer;
  {
    std::string key;
    for (int i = 0; i < reach; ++i) append_symbol(key, -1);
    layer.emplace(std::move(key), Count(1));
  }
  for (long long p = 0; p < cells; ++p) {
    const int x = static_cast<int>(p % width);
    const int y = static_cast<int>(p / width);
    std::unordered_map<std::string, Count> next;
    for (const auto& [key, count] : layer) {
      for (Symbol a = 0; a < n_sym; ++a) {
        nodes.tick("frontier layer " + std::to_string(p) + " of " + std::to_string(cells));
        auto lookup = [&](Cell c) -> int {
          if (c.x < 0 || c.x >= width || c.y < 0) return -1;
          long long q = static_cast<long long>(c.y) * width + c.x;
          if (q == p) return a;
          long long back = p - q;  // 1..reach
          if (back < 1 || back > reach) return -1;
          return key_symbol(key, static_cast<std::size_t>(reach - back));
        };
        if (idx.completes_forbidden({x, y}, lookup)) continue;
        std::string nk = reach > 0 ? key.substr(2) : std::string();
        if (reach > 0) append_symbol(nk, a);
        next[nk] += count;
      }
    }
    layer.swap(next);
    if (layer.empty()) return 0;
  }
  Count total = 0;
  for (const auto& kv : layer) total += kv.second;
  return total;
}

/// 1D count with an extension margin. The DP state is the set of left contexts
/// (last `reach` symbols, with -1 before the start) consistent with some left extension.
class ContextAutomaton {
 public:
  explicit ContextAutomaton(const SftSpec& spec)
      : spec_(spec), n_sym_(spec.alphabet().size()), reach_(spec.index().max_width() - 1) {
    if (spec.index().shapes().empty()) reach_ = 0;
  }

  using Context = std::vector<Symbol>;
  using ContextSet = std::set<Context>;

  Context blank() const { return Context(static_cast<std::size_t>(reach_), -1); }

  /// Appends `a` after context `c`; false when that completes a forbidden word.
  bool step(const Context& c, Symbol a, Context& out) const {
    auto lookup = [&](Cell cell) -> int {
      if (cell.x == 0) return a;
      int pos = reach_ + cell.x;  // cell.x < 0
      if (pos < 0) return -1;
      return c[static_cast<std::size_t>(pos)];
    };
    if (spec_.index().completes_forbidden({0, 0}, lookup)) return false;
    out.assign(c.begin() + (reach_ > 0 ? 1 : 0), c.end());
    if (reach_ > 0) out.push_back(a);
    return true;
  }

  ContextSet step_all(const ContextSet& s, Symbol a) const {
    ContextSet out;
    Context n;
    for (const auto& c : s)
      if (step(c, a, n)) out.insert(n);
    return out;
  }

  ContextSet step_any(const ContextSet& s) const {
    ContextSet out;
    for (Symbol a = 0; a < n_sym_; ++a) {
      auto part = step_all(s, a);
      out.insert(part.begin(), part.end());
    }
    return out;
  }

  int symbols() const { return n_sym_; }

 private:
  const SftSpec& spec_;
  int n_sym_;
  int reach_;
};

inline Count count_1d_with_margin(const SftSpec& spec, int length, int margin, SearchBudget budget) {
  if (spec.index().has_empty_pattern()) return 0;
  ContextAutomaton aut(spec);
  NodeCounter nodes(budget, "1D margin count");
  ContextAutomaton::ContextSet start{aut.blank()};
  for (int i = 0; i < margin; ++i) start = aut.step_any(start);
  if (start.empty()) return 0;

  std::map<ContextAutomaton::ContextSet, Count> layer{{start, Count(1)}};
  for (int i = 0; i < length; ++i) {
    std::map<ContextAutomaton::ContextSet, Count> next;
    for (const auto& [set, count] : layer) {
      for (Symbol a = 0; a < aut.symbols(); ++a) {
        nodes.tick("position " + std::to_string(i));
        auto s2 = aut.step_all(set, a);
        if (!s2.empty()) next[s2] += count;
      }
    }
    layer.swap(next);
  }
  Count total = 0;
  for (const auto& [set, count] : layer) {
    auto s = set;
    for (int i = 0; i < margin && !s.empty(); ++i) s = aut.step_any(s);
    if (!s.empty()) total += count;
  }
  return total;
}

/// Rectangle of partially assigned cells (-1 = unassigned) used by the searches.
struct Board {
  RectWindow window;
  std::vector<int> cells;

  explicit Board(RectWindow w)
      : window(w), cells(static_cast<std::size_t>(w.cells()), -1) {}

  int get(Cell c) const {
    if (!window.contains(c)) return -1;
    return cells[index(c)];
  }
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.y - window.origin.y) * static_cast<std::size_t>(window.width) +
           static_cast<std::size_t>(c.x - window.origin.x);
  }
  Cell cell(std::size_t i) const {
    return {window.origin.x + static_cast<int>(i % static_cast<std::size_t>(window.width)),
            window.origin.y + static_cast<int>(i / static_cast<std::size_t>(window.width))};
  }
};

/// Enumerates margin-0 admissible fillings of `window` in lexicographic
/// row-major order; `emit` returns false to stop early.
inline void backtrack_enumerate(const SftSpec& spec, const RectWindow& window, NodeCounter& nodes,
                                const std::function<bool(const Board&)>& emit) {
  if (spec.index().has_empty_pattern()) return;
  Board b(window);
  const std::size_t n = b.cells.size();
  const int n_sym = spec.alphabet().size();
  auto lookup = [&](Cell c) { return b.get(c); };
  std::size_t pos = 0;
  // Iterative DFS: cells[pos] holds the symbol being tried.
  while (true) {
    if (pos == n) {
      if (!emit(b)) return;
      if (n == 0) return;
      --pos;
    }
    int next = b.cells[pos] + 1;
    b.cells[pos] = -1;
    bool placed = false;
    for (; next < n_sym; ++next) {
      nodes.tick();
      b.cells[pos] = next;
      if (!spec.index().completes_forbidden(b.cell(pos), lookup)) {
        placed = true;
        break;
      }
      b.cells[pos] = -1;
    }
    if (placed) {
      ++pos;
    } else {
      if (pos == 0) return;
      --pos;
    }
  }
}

/// Whether the assignment of `inner` extends to `inner` inflated by `margin`.
inline bool extends(const SftSpec& spec, const Board& inner, int margin, NodeCounter& nodes) {
  if (margin == 0) return true;
  Board b(inner.window.inflated(margin));
  std::vector<std::size_t> free_cells;
  for (std::size_t i = 0; i < b.cells.size(); ++i) {
    Cell c = b.cell(i);
    if (inner.window.contains(c)) {
      b.cells[i] = inner.get(c);
    } else {
      free_cells.push_back(i);
    }
  }
  const int n_sym = spec.alphabet().size();
  auto lookup = [&](Cell c) { return b.get(c); };
  std::size_t pos = 0;
  while (true) {
    if (pos == free_cells.size()) return true;
    auto i = free_cells[pos];
    int next = b.cells[i] + 1;
    b.cells[i] = -1;
    bool placed = false;
    for (; next < n_sym; ++next) {
      nodes.tick();
      b.cells[i] = next;
      if (!spec.index().touches_forbidden(b.cell(i), lookup)) {
        placed = true;
        break;
      }
      b.cells[i] = -1;
    }
    if (placed) {
      ++pos;
    } else {
      if (pos == 0) return false;
      --pos;
    }
  }
}

inline Pattern board_pattern(const Board& b, int dimension) {
  std::vector<std::pair<Cell, Symbol>> e;
  for (std::size_t i = 0; i < b.cells.size(); ++i) e.push_back({b.cell(i), b.cells[i]});
  return Pattern(dimension, std::move(e));
}

inline void check_window(const SftSpec& spec, const RectWindow& window, int margin) {
  if (margin < 0) throw invalid_input("margin must be >= 0");
  if (window.dimension != spec.dimension()) throw invalid_input("window dimension does not match spec");
  if (window.width < 1 || window.height < 1) throw invalid_input("window extents must be >= 1");
  if (window.dimension == 1 && window.height != 1) throw invalid_input("1D window must have height 1");
  if (window.inflated(margin).cells() > (1LL << 30)) throw invalid_input("window too large");
}

}  // namespace detail

/// Exact number of patterns on `window` that extend to the window inflated by
/// `margin` without containing a forbidden pattern.
inline Count count_patterns(const SftSpec& spec, const RectWindow& window, int margin = 0,
                            SearchBudget budget = {}) {
  detail::check_window(spec, window, margin);
  if (margin == 0) return detail::frontier_count(spec, window.width, window.height, budget);
  if (spec.dimension() == 1) return detail::count_1d_with_margin(spec, window.width, margin, budget);
  detail::NodeCounter nodes(budget, "2D margin count");
  Count total = 0;
  detail::backtrack_enumerate(spec, window, nodes, [&](const detail::Board& b) {
    if (detail::extends(spec, b, margin, nodes)) ++total;
    return true;
  });
  return total;
}

/// The patterns counted by count_patterns, in lexicographic row-major order.
inline std::vector<Pattern> enumerate_patterns(const SftSpec& spec, const RectWindow& window,
                                               int margin = 0, SearchBudget budget = {}) {
  detail::check_window(spec, window, margin);
  detail::NodeCounter nodes(budget, "enumeration");
  std::vector<Pattern> out;
  detail::backtrack_enumerate(spec, window, nodes, [&](const detail::Board& b) {
    if (detail::extends(spec, b, margin, nodes)) out.push_back(detail::board_pattern(b, spec.dimension()));
    return true;
  });
  return out;
}

/// Streaming variant of enumerate_patterns for large languages.
inline void for_each_pattern(const SftSpec& spec, const RectWindow& window, int margin,
                             const std::function<bool(const Pattern&)>& visit, SearchBudget budget = {}) {
  detail::check_window(spec, window, margin);
  detail::NodeCounter nodes(budget, "enumeration");
  detail::backtrack_enumerate(spec, window, nodes, [&](const detail::Board& b) {
    if (!detail::extends(spec, b, margin, nodes)) return true;
    return visit(detail::board_pattern(b, spec.dimension()));
  });
}

/// N_{k,r}: count on the rectangle [0,k) x [0,r).
inline Count directional_counts(const SftSpec& spec, int k, int r, int margin = 0, SearchBudget budget = {}) {
  if (spec.dimension() != 2) throw invalid_input("directional counts need a 2D spec");
  return count_patterns(spec, RectWindow::rect(k, r), margin, budget);
}

/// Number of length-n words of the width-k trace along `dir`. Along e2 the strip
/// is k cells wide and read upwards; along e1 it is k cells tall and read rightwards.
inline Count trace_patterns(const SftSpec& spec, Direction dir, int k, int n, int margin = 0,
                            SearchBudget budget = {}) {
  if (spec.dimension() != 2) throw invalid_input("traces need a 2D spec");
  if (k < 1 || n < 1) throw invalid_input("trace width and length must be >= 1");
  auto w = dir == Direction::e2 ? RectWindow::rect(k, n) : RectWindow::rect(n, k);
  return count_patterns(spec, w, margin, budget);
}

}  // namespace cae
