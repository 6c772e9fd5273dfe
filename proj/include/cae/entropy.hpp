#pragma once

// Entropy series from exact counts, directional count grids, the counting
// bound for simulations and the blow-up fixtures it is tested on.

#include "cae/counting.hpp"
#include "cae/error.hpp"
#include "cae/numeric.hpp"
#include "cae/robinson.hpp"
#include "cae/symbolic.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cae {

struct EntropySample {
  int size = 0;         // r, or the r of an N_{k,r} sample
  long long cells = 0;  // normaliser
  Count count;
  double bits = 0;  // log2(count) / cells
};

struct EntropyReport {
  std::string spec;
  std::string direction;  // "isotropic", "e1" or "e2"
  int k = 0;              // strip width for directional reports
  std::vector<EntropySample> samples;
  double raw_last = 0;
  double fit = 0;  // intercept h of bits ~ h + c / r
  std::string fit_method = "least-squares in 1/r";
};

namespace detail {

inline double fit_inverse_r(const std::vector<EntropySample>& s) {
  if (s.size() < 2) return s.empty() ? 0.0 : s.back().bits;
  double n = static_cast<double>(s.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& e : s) {
    double x = 1.0 / e.size;
    sx += x;
    sy += e.bits;
    sxx += x * x;
    sxy += x * e.bits;
  }
  double den = n * sxx - sx * sx;
  if (den == 0) return sy / n;
  double slope = (n * sxy - sx * sy) / den;
  return (sy - slope * sx) / n;
}

inline void finish(EntropyReport& r) {
  r.raw_last = r.samples.empty() ? 0.0 : r.samples.back().bits;
  r.fit = fit_inverse_r(r.samples);
}

}  // namespace detail

/// log2 K / |B_r| on the windows [0, r)^d for r = 1..r_max.
inline EntropyReport entropy_series(const SftSpec& spec, int r_max, int margin = 0, SearchBudget budget = {}) {
  if (r_max < 1) throw invalid_input("r_max must be >= 1");
  EntropyReport rep{spec.name(), "isotropic", 0, {}, 0, 0, {}};
  rep.fit_method = "least-squares in 1/r";
  for (int r = 1; r <= r_max; ++r) {
    RectWindow w = spec.dimension() == 1 ? RectWindow::line(r) : RectWindow::rect(r, r);
    Count c = count_patterns(spec, w, margin, budget);
    long long cells = spec.dimension() == 1 ? r : static_cast<long long>(r) * r;
    rep.samples.push_back({r, cells, c, log2_count(c) / static_cast<double>(cells)});
  }
  detail::finish(rep);
  return rep;
}

/// Exact N_{k,r}: k x r rectangles (k wide, r tall) for e2; r wide, k tall for e1.
class CountGrid {
 public:
  void set(int k, int r, Count c) { cells_[{k, r}] = std::move(c); }
  bool has(int k, int r) const { return cells_.count({k, r}) != 0; }
  const Count& at(int k, int r) const {
    auto it = cells_.find({k, r});
    if (it == cells_.end()) throw invalid_input("count grid has no cell (" + std::to_string(k) + ", " + std::to_string(r) + ")");
    return it->second;
  }
  const std::map<std::pair<int, int>, Count>& cells() const { return cells_; }

 private:
  std::map<std::pair<int, int>, Count> cells_;
};

inline CountGrid count_grid(const SftSpec& spec, int k_max, int r_max, int margin = 0, Direction dir = Direction::e2,
                            SearchBudget budget = {}) {
  if (spec.dimension() != 2) throw invalid_input("count grids need a 2D spec");
  CountGrid g;
  for (int k = 1; k <= k_max; ++k)
    for (int r = 1; r <= r_max; ++r)
      g.set(k, r, dir == Direction::e2 ? directional_counts(spec, k, r, margin, budget)
                                       : directional_counts(spec, r, k, margin, budget));
  return g;
}

/// One report per k = 1..k_max with samples log2 N_{k,r} / r.
inline std::vector<EntropyReport> directional_entropy_series(const SftSpec& spec, int k_max, int r_max, int margin = 0,
                                                             Direction dir = Direction::e2, SearchBudget budget = {}) {
  auto g = count_grid(spec, k_max, r_max, margin, dir, budget);
  std::vector<EntropyReport> out;
  for (int k = 1; k <= k_max; ++k) {
    EntropyReport rep{spec.name(), dir == Direction::e2 ? "e2" : "e1", k, {}, 0, 0, {}};
    rep.fit_method = "least-squares in 1/r";
    for (int r = 1; r <= r_max; ++r) rep.samples.push_back({r, r, g.at(k, r), log2_count(g.at(k, r)) / r});
    detail::finish(rep);
    out.push_back(std::move(rep));
  }
  return out;
}

struct SimulationCell {
  int k = 0, r = 0;  // k', r'
  Count lhs;         // N_{k'B, r'T}(X)
  Count rhs;         // B T N_{k'+1+2l, r'+1}(Y)
  bool pass = false;
};

struct SimulationReport {
  int B = 1, T = 1, l = 0;
  std::vector<SimulationCell> cells;

  bool passed() const {
    for (const auto& c : cells)
      if (!c.pass) return false;
    return true;
  }
  std::optional<SimulationCell> first_failure() const {
    for (const auto& c : cells)
      if (!c.pass) return c;
    return std::nullopt;
  }
};

/// Checks N_{k'B, r'T}(X) <= B T N_{k'+1+2l, r'+1}(Y) for k' <= k_max, r' <= r_max.
inline SimulationReport verify_simulation_bound(const CountGrid& x, const CountGrid& y, int B, int T, int l, int k_max,
                                                int r_max) {
  if (B < 1 || T < 1 || l < 0 || k_max < 1 || r_max < 1) throw invalid_input("bad simulation parameters");
  SimulationReport rep{B, T, l, {}};
  for (int k = 1; k <= k_max; ++k)
    for (int r = 1; r <= r_max; ++r) {
      SimulationCell c{k, r, x.at(k * B, r * T), Count(B) * T * y.at(k + 1 + 2 * l, r + 1), false};
      c.pass = c.lhs <= c.rhs;
      rep.cells.push_back(std::move(c));
    }
  return rep;
}

/// Grids sized for verify_simulation_bound(k_max, r_max).
inline std::pair<CountGrid, CountGrid> simulation_grids(const SftSpec& x, const SftSpec& y, int B, int T, int l,
                                                        int k_max, int r_max, SearchBudget budget = {}) {
  CountGrid gx, gy;
  for (int k = 1; k <= k_max; ++k)
    for (int r = 1; r <= r_max; ++r) {
      gx.set(k * B, r * T, directional_counts(x, k * B, r * T, 0, budget));
      if (!gy.has(k + 1 + 2 * l, r + 1))
        gy.set(k + 1 + 2 * l, r + 1, directional_counts(y, k + 1 + 2 * l, r + 1, 0, budget));
    }
  return {gx, gy};
}

/// Every letter a of a nearest-neighbour spec Y becomes a B x T block of
/// letters (a, i, j); Y's dominoes are enforced across block boundaries on
/// every row or column of the boundary.
inline SftSpec blow_up_spec(const SftSpec& y, int B, int T) {
  if (y.dimension() != 2) throw invalid_input("blow-up needs a 2D spec");
  if (B < 1 || T < 1) throw invalid_input("block sizes must be >= 1");
  const int q = y.alphabet().size();
  std::vector<bool> bad_cell(static_cast<std::size_t>(q), false);
  std::set<std::pair<Symbol, Symbol>> bad_h, bad_v;
  for (const auto& f : y.forbidden()) {
    const auto& c = f.cells();
    if (c.size() == 1) {
      bad_cell[static_cast<std::size_t>(f.symbols()[0])] = true;
    } else if (c.size() == 2 && c[1] - c[0] == Cell{1, 0}) {
      bad_h.insert({f.symbols()[0], f.symbols()[1]});
    } else if (c.size() == 2 && c[1] - c[0] == Cell{0, 1}) {
      bad_v.insert({f.symbols()[0], f.symbols()[1]});
    } else {
      throw invalid_input("blow-up needs cells and nearest-neighbour dominoes only");
    }
  }
  auto sym = [&](Symbol a, int i, int j) { return static_cast<Symbol>((a * B + i) * T + j); };
  std::vector<std::string> names;
  for (Symbol a = 0; a < q; ++a)
    for (int i = 0; i < B; ++i)
      for (int j = 0; j < T; ++j) names.push_back(y.alphabet().name(a) + "@" + std::to_string(i) + "," + std::to_string(j));
  std::vector<Pattern> forbidden;
  const int n = q * B * T;
  for (Symbol s = 0; s < n; ++s) {
    Symbol a = s / (B * T);
    int i = (s / T) % B, j = s % T;
    if (bad_cell[static_cast<std::size_t>(a)]) forbidden.emplace_back(2, std::vector<std::pair<Cell, Symbol>>{{{0, 0}, s}});
    for (Symbol t = 0; t < n; ++t) {
      Symbol b = t / (B * T);
      int ti = (t / T) % B, tj = t % T;
      bool h_ok = i < B - 1 ? t == sym(a, i + 1, j) : ti == 0 && tj == j && !bad_h.count({a, b});
      bool v_ok = j < T - 1 ? t == sym(a, i, j + 1) : tj == 0 && ti == i && !bad_v.count({a, b});
      if (!h_ok) forbidden.emplace_back(2, std::vector<std::pair<Cell, Symbol>>{{{0, 0}, s}, {{1, 0}, t}});
      if (!v_ok) forbidden.emplace_back(2, std::vector<std::pair<Cell, Symbol>>{{{0, 0}, s}, {{0, 1}, t}});
    }
  }
  return SftSpec(Alphabet(names), 2, std::move(forbidden),
                 y.name() + "-blowup-" + std::to_string(B) + "x" + std::to_string(T));
}

struct HomogeneityCounts {
  Count base;      // distinct k x r windows of the canonical Robinson tiling
  Count composed;  // with one payload bit per cross level on layers 2 and 3
};

/// Counts over the k x r windows at origins [1, span]^2 of the canonical tiling.
/// Column x and row y carry the payload of level ctz(x) and ctz(y); levels are
/// shared because every column and row of one level meet in crosses.
inline HomogeneityCounts homogeneity_counts(int k, int r, int span = 64) {
  if (k < 1 || r < 1 || k + r > 30) throw invalid_input("homogeneity window must satisfy 1 <= k, r and k + r <= 30");
  auto t = canonical_robinson_tiling(span + k, span + r);
  std::map<std::vector<Symbol>, std::set<std::uint32_t>> seen;
  for (int y0 = 1; y0 <= span; ++y0)
    for (int x0 = 1; x0 <= span; ++x0) {
      std::vector<Symbol> w;
      for (int y = y0; y < y0 + r; ++y)
        for (int x = x0; x < x0 + k; ++x) w.push_back(t.at(x, y));
      std::vector<int> levels;
      for (int x = x0; x < x0 + k; ++x) levels.push_back(__builtin_ctz(static_cast<unsigned>(x)));
      for (int y = y0; y < y0 + r; ++y) levels.push_back(__builtin_ctz(static_cast<unsigned>(y)));
      std::vector<int> distinct = levels;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      auto& bucket = seen[w];
      for (std::uint32_t f = 0; f < (1u << distinct.size()); ++f) {
        std::uint32_t code = 0;
        for (std::size_t i = 0; i < levels.size(); ++i) {
          auto pos = std::lower_bound(distinct.begin(), distinct.end(), levels[i]) - distinct.begin();
          code |= ((f >> pos) & 1u) << i;
        }
        bucket.insert(code);
      }
    }
  HomogeneityCounts out{Count(seen.size()), 0};
  for (const auto& [w, codes] : seen) out.composed += codes.size();
  return out;
}

}  // namespace cae
