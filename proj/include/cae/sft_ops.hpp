#pragma once

// Constructions on SFT specifications: stock specs, products, the diagonal
// shear, and the exhaustive south-determinism probe.

#include "cae/counting.hpp"
#include "cae/symbolic.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cae {

inline SftSpec full_shift(int dimension, int letters) {
  return SftSpec(Alphabet::numbered(letters), dimension, {}, "full-" + std::to_string(letters));
}

inline SftSpec single_letter(int dimension) { return SftSpec(Alphabet({"0"}), dimension, {}, "single"); }

/// Binary words without two adjacent 1s.
inline SftSpec golden_mean() {
  return SftSpec(Alphabet::numbered(2), 1, {Pattern::word({1, 1})}, "golden-mean");
}

/// Every column constant (dx = 0 neighbours agree).
inline SftSpec vertically_constant(int letters) {
  std::vector<Pattern> f;
  for (int a = 0; a < letters; ++a)
    for (int b = 0; b < letters; ++b)
      if (a != b) f.emplace_back(2, std::vector<std::pair<Cell, Symbol>>{{{0, 0}, a}, {{0, 1}, b}});
  return SftSpec(Alphabet::numbered(letters), 2, f, "vertically-constant");
}

inline SftSpec horizontally_constant(int letters) {
  std::vector<Pattern> f;
  for (int a = 0; a < letters; ++a)
    for (int b = 0; b < letters; ++b)
      if (a != b) f.emplace_back(2, std::vector<std::pair<Cell, Symbol>>{{{0, 0}, a}, {{1, 0}, b}});
  return SftSpec(Alphabet::numbered(letters), 2, f, "horizontally-constant");
}

/// Binary 2D spec where each cell is the XOR of its lower-left and lower-right neighbours.
inline SftSpec xor_sft() {
  std::vector<Pattern> f;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      f.emplace_back(2, std::vector<std::pair<Cell, Symbol>>{{{0, 0}, a}, {{2, 0}, c}, {{1, 1}, 1 - (a ^ c)}});
  return SftSpec(Alphabet::numbered(2), 2, f, "xor");
}

namespace detail {

/// Calls `f` with every assignment of `n` cells over `base` letters.
template <typename F>
void for_each_tuple(std::size_t n, int base, F&& f) {
  std::vector<Symbol> t(n, 0);
  while (true) {
    f(t);
    std::size_t i = 0;
    while (i < n && ++t[i] == base) t[i++] = 0;
    if (i == n) return;
  }
}

}  // namespace detail

/// Symbol (a, b) of the product is a * |B| + b.
inline SftSpec product_spec(const SftSpec& a, const SftSpec& b) {
  if (a.dimension() != b.dimension()) throw invalid_input("product of specs with different dimensions");
  const int na = a.alphabet().size(), nb = b.alphabet().size();
  std::vector<std::string> names;
  for (const auto& x : a.alphabet().names())
    for (const auto& y : b.alphabet().names()) names.push_back("(" + x + "," + y + ")");
  std::vector<Pattern> f;
  auto lift = [&](const Pattern& p, bool first) {
    detail::for_each_tuple(p.size(), first ? nb : na, [&](const std::vector<Symbol>& other) {
      std::vector<std::pair<Cell, Symbol>> e;
      for (std::size_t i = 0; i < p.size(); ++i) {
        Symbol s = first ? p.symbols()[i] * nb + other[i] : other[i] * nb + p.symbols()[i];
        e.push_back({p.cells()[i], s});
      }
      f.emplace_back(a.dimension(), e);
    });
  };
  for (const auto& p : a.forbidden()) lift(p, true);
  for (const auto& p : b.forbidden()) lift(p, false);
  return SftSpec(Alphabet(names), a.dimension(), f, a.name() + "x" + b.name());
}

/// Transports every forbidden pattern through (x, y) -> (x, y - sign * x).
/// With sign = +1 rows of the input become NW-to-SE diagonals; sign = -1 undoes it.
inline SftSpec shear_diagonal(const SftSpec& spec, int sign = 1) {
  if (spec.dimension() != 2) throw invalid_input("shear needs a 2D spec");
  if (sign != 1 && sign != -1) throw invalid_input("shear sign must be +1 or -1");
  std::vector<Pattern> f;
  for (const auto& p : spec.forbidden()) {
    std::vector<std::pair<Cell, Symbol>> e;
    for (std::size_t i = 0; i < p.size(); ++i) {
      Cell c = p.cells()[i];
      e.push_back({{c.x, c.y - sign * c.x}, p.symbols()[i]});
    }
    f.emplace_back(2, e);
  }
  return SftSpec(spec.alphabet(), 2, f, spec.name() + (sign > 0 ? "-sheared" : "-unsheared"));
}

inline Pattern shear_pattern(const Pattern& p, int sign = 1) {
  std::vector<std::pair<Cell, Symbol>> e;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Cell c = p.cells()[i];
    e.push_back({{c.x, c.y - sign * c.x}, p.symbols()[i]});
  }
  return Pattern(2, e);
}

struct DeterminismVerdict {
  bool deterministic = true;
  int radius = 0;
  int probe_height = 2;
  long long strips_checked = 0;
  // Witness when not deterministic: a bottom row admitting two centre symbols above it.
  std::vector<Symbol> row;
  Symbol above_first = -1;
  Symbol above_second = -1;
};

/// Checks over all admissible (2w+1) x h strips that the bottom row determines
/// the cell above its centre. A pass certifies the probe size only.
inline DeterminismVerdict check_south_deterministic(const SftSpec& spec, int probe_height = 2,
                                                    int probe_width = 1, SearchBudget budget = {}) {
  if (spec.dimension() != 2) throw invalid_input("south-determinism needs a 2D spec");
  if (probe_height < 2 || probe_width < 0) throw invalid_input("probe must be at least (2w+1) x 2");
  const int w = 2 * probe_width + 1;
  DeterminismVerdict v;
  v.radius = probe_width;
  v.probe_height = probe_height;
  std::map<std::vector<Symbol>, Symbol> above;
  for_each_pattern(
      spec, RectWindow::rect(w, probe_height), 0,
      [&](const Pattern& p) {
        ++v.strips_checked;
        std::vector<Symbol> row(p.symbols().begin(), p.symbols().begin() + w);
        Symbol top = p.symbols()[static_cast<std::size_t>(w + probe_width)];
        auto [it, fresh] = above.emplace(row, top);
        if (!fresh && it->second != top) {
          v.deterministic = false;
          v.row = row;
          v.above_first = std::min(it->second, top);
          v.above_second = std::max(it->second, top);
          return false;
        }
        return true;
      },
      budget);
  return v;
}

}  // namespace cae
