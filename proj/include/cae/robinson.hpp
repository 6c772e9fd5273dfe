#pragma once

// Robinson's aperiodic tileset in Wang form, a finite-window tiler, the
// cross/2-net verifier and the three-layer homogeneity composition.
//
// The tiles are read off the canonical hierarchical tiling on the positive
// quadrant. Cell (x, y) sits on level l(x) = ctz(x) + 1 horizontally and l(y)
// vertically; it is a cross when l(x) == l(y). Any other cell carries the
// principal line of its higher-level coordinate, with the arrow pointing away
// from the nearest cross on that line. Level-n squares have their corners on
// the level-n crosses around each level-(n+1) cross; their sides are recorded
// together with the side facing the interior. An edge label records the two
// cells' line kinds and arrows, the principal arrow crossing it, the square
// side crossing it and the parity of the cell on its lower-left side.

#include "cae/counting.hpp"
#include "cae/sft_ops.hpp"
#include "cae/symbolic.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cae {

struct WangTileset {
  std::string version;
  std::vector<std::string> edge_labels;
  std::vector<std::array<int, 4>> tiles;  // N, E, S, W label ids
  std::vector<bool> cross;                // indexed by tile id
  SftSpec spec;                           // mismatching dominoes forbidden

  std::vector<Symbol> cross_tiles() const {
    std::vector<Symbol> out;
    for (std::size_t i = 0; i < cross.size(); ++i)
      if (cross[i]) out.push_back(static_cast<Symbol>(i));
    return out;
  }
};

/// Forbids every horizontal and vertical domino whose shared edge labels differ.
inline SftSpec wang_spec(const std::vector<std::array<int, 4>>& tiles, const std::string& name) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < tiles.size(); ++i) names.push_back("t" + std::to_string(i));
  std::vector<Pattern> f;
  for (std::size_t a = 0; a < tiles.size(); ++a)
    for (std::size_t b = 0; b < tiles.size(); ++b) {
      Symbol sa = static_cast<Symbol>(a), sb = static_cast<Symbol>(b);
      if (tiles[a][1] != tiles[b][3]) f.emplace_back(2, std::vector<std::pair<Cell, Symbol>>{{{0, 0}, sa}, {{1, 0}, sb}});
      if (tiles[a][0] != tiles[b][2]) f.emplace_back(2, std::vector<std::pair<Cell, Symbol>>{{{0, 0}, sa}, {{0, 1}, sb}});
    }
  return SftSpec(Alphabet(names), 2, f, name);
}

namespace detail {

inline int robinson_level(long long v) { return __builtin_ctzll(static_cast<unsigned long long>(v)) + 1; }

struct LineInfo {
  int kind;  // 0 cross, 1 horizontal line, 2 vertical line
  int dir;   // 1 towards +axis, 2 towards -axis, 0 for crosses
};

inline LineInfo robinson_line(long long x, long long y) {
  int lx = robinson_level(x), ly = robinson_level(y);
  if (lx == ly) return {0, 0};
  bool horizontal = lx < ly;
  long long p = 1LL << (horizontal ? ly : lx);
  long long along = horizontal ? x : y;
  long long r = ((along - p / 2) % p + p) % p;  // distance past the previous cross
  return {horizontal ? 1 : 2, r < p - r ? 1 : 2};
}

/// Square side along the line at `across` crossing the edge between `along` and `along + 1`:
/// 0 none, 1 interior on the + side, 2 interior on the - side.
inline int robinson_side(long long along, long long across) {
  int n = robinson_level(across);
  long long h = 1LL << (n - 1), period = 1LL << (n + 1), c0 = 1LL << n;
  int inside = (((across + h - c0) % period + period) % period == 0) ? 1 : 2;
  long long base = along - ((along - c0) % period + period) % period;
  for (long long c : {base, base + period})
    if (c - h <= along && along + 1 <= c + h) return inside;
  return 0;
}

inline std::string robinson_edge(LineInfo a, LineInfo b, bool horizontal, int side, long long px,
                                 long long py) {
  int across_kind = horizontal ? 2 : 1;
  int arrow = 0;
  if (a.kind != across_kind) {
    arrow = a.kind == 0 ? 1 : a.dir;
  } else if (b.kind != across_kind) {
    arrow = b.kind == 0 ? 2 : b.dir;
  }
  std::string s;
  s += horizontal ? 'h' : 'v';
  s += std::to_string(a.kind) + std::to_string(a.dir) + std::to_string(b.kind) + std::to_string(b.dir);
  s += ":p" + std::to_string(arrow) + ":s" + std::to_string(side);
  s += ":" + std::to_string(px & 1) + std::to_string(py & 1);
  return s;
}

inline WangTileset build_robinson_tileset() {
  constexpr long long n = 128;  // the tile set is already complete at this size
  auto east = [](long long x, long long y) {
    return robinson_edge(robinson_line(x, y), robinson_line(x + 1, y), true, robinson_side(x, y), x, y);
  };
  auto north = [](long long x, long long y) {
    return robinson_edge(robinson_line(x, y), robinson_line(x, y + 1), false, robinson_side(y, x), x, y);
  };
  std::set<std::array<std::string, 4>> raw;
  for (long long y = 1; y <= n; ++y)
    for (long long x = 1; x <= n; ++x) raw.insert({north(x, y), east(x, y), north(x, y - 1), east(x - 1, y)});

  WangTileset ts;
  ts.version = "robinson-parity-v1";
  std::map<std::string, int> label_id;
  for (const auto& t : raw)
    for (const auto& l : t) label_id.emplace(l, 0);
  for (auto& [l, id] : label_id) {
    id = static_cast<int>(ts.edge_labels.size());
    ts.edge_labels.push_back(l);
  }
  for (const auto& t : raw) {
    ts.tiles.push_back({label_id[t[0]], label_id[t[1]], label_id[t[2]], label_id[t[3]]});
    // The east label starts with this cell's line kind and arrow; "00" is a cross.
    ts.cross.push_back(t[1].compare(1, 2, "00") == 0);
  }
  ts.spec = wang_spec(ts.tiles, "robinson");
  return ts;
}

}  // namespace detail

/// The parity-marked Robinson tileset; tile ids are frozen by sorted edge labels.
inline const WangTileset& robinson_tileset() {
  static const WangTileset ts = detail::build_robinson_tileset();
  return ts;
}

/// A tiling of a rectangle; tiles are stored row-major from the bottom row.
struct Tiling {
  RectWindow window;
  std::vector<Symbol> tiles;
  std::string version;

  Symbol at(int x, int y) const {
    return tiles[static_cast<std::size_t>(y - window.origin.y) * static_cast<std::size_t>(window.width) +
                 static_cast<std::size_t>(x - window.origin.x)];
  }
  Pattern pattern() const {
    std::vector<std::pair<Cell, Symbol>> e;
    for (int y = 0; y < window.height; ++y)
      for (int x = 0; x < window.width; ++x)
        e.push_back({{window.origin.x + x, window.origin.y + y}, tiles[static_cast<std::size_t>(y * window.width + x)]});
    return Pattern(2, e);
  }
};

/// The window [x0, x0 + width) x [y0, y0 + height) of the canonical hierarchical
/// tiling the tile set is read from; coordinates must be positive.
inline Tiling canonical_robinson_tiling(int width, int height, int x0 = 1, int y0 = 1) {
  if (width < 1 || height < 1 || x0 < 1 || y0 < 1) throw invalid_input("canonical window must be nonempty with positive origin");
  const auto& ts = robinson_tileset();
  std::map<std::string, int> label_id;
  for (std::size_t i = 0; i < ts.edge_labels.size(); ++i) label_id[ts.edge_labels[i]] = static_cast<int>(i);
  std::map<std::array<int, 4>, Symbol> tile_id;
  for (std::size_t i = 0; i < ts.tiles.size(); ++i) tile_id[ts.tiles[i]] = static_cast<Symbol>(i);
  auto east = [](long long x, long long y) {
    return detail::robinson_edge(detail::robinson_line(x, y), detail::robinson_line(x + 1, y), true,
                                 detail::robinson_side(x, y), x, y);
  };
  auto north = [](long long x, long long y) {
    return detail::robinson_edge(detail::robinson_line(x, y), detail::robinson_line(x, y + 1), false,
                                 detail::robinson_side(y, x), x, y);
  };
  Tiling t{RectWindow::rect(width, height, {x0, y0}), {}, ts.version};
  for (long long y = y0; y < y0 + height; ++y)
    for (long long x = x0; x < x0 + width; ++x) {
      std::array<int, 4> key{label_id.at(north(x, y)), label_id.at(east(x, y)), label_id.at(north(x, y - 1)),
                             label_id.at(east(x - 1, y))};
      auto it = tile_id.find(key);
      if (it == tile_id.end()) throw invalid_input("canonical cell outside the frozen tile set");
      t.tiles.push_back(it->second);
    }
  return t;
}

struct TilerOptions {
  SearchBudget budget{};
  std::map<Cell, Symbol> seeds;      // cells fixed before the search, window-relative
  std::vector<Symbol> value_order;  // empty: ascending symbol id
};

namespace detail {

/// Domains of all cells as one flat bit array, `words` 64-bit words per cell.
class DomainGrid {
 public:
  DomainGrid(std::size_t cells, int symbols)
      : words_((static_cast<std::size_t>(symbols) + 63) / 64), bits_(cells * words_, 0) {
    for (std::size_t c = 0; c < cells; ++c)
      for (int s = 0; s < symbols; ++s) set(c, s);
  }
  std::size_t words() const { return words_; }
  std::uint64_t* row(std::size_t c) { return bits_.data() + c * words_; }
  const std::uint64_t* row(std::size_t c) const { return bits_.data() + c * words_; }
  bool has(std::size_t c, int s) const { return (row(c)[s / 64] >> (s % 64)) & 1U; }
  void set(std::size_t c, int s) { row(c)[s / 64] |= std::uint64_t{1} << (s % 64); }
  void only(std::size_t c, int s) {
    std::fill(row(c), row(c) + words_, 0);
    set(c, s);
  }
  int size(std::size_t c) const {
    int n = 0;
    for (std::size_t w = 0; w < words_; ++w) n += __builtin_popcountll(row(c)[w]);
    return n;
  }
  int first(std::size_t c) const {
    for (std::size_t w = 0; w < words_; ++w)
      if (row(c)[w]) return static_cast<int>(w * 64) + __builtin_ctzll(row(c)[w]);
    return -1;
  }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Nearest-neighbour compatibility of a spec whose forbidden patterns are single
/// cells or horizontal/vertical dominoes.
struct Adjacency {
  int symbols = 0;
  std::size_t words = 0;
  std::vector<bool> banned;
  std::vector<std::vector<std::uint64_t>> dir;  // 0 right, 1 up, 2 left, 3 down: [a * words + w]

  explicit Adjacency(const SftSpec& spec)
      : symbols(spec.alphabet().size()),
        words((static_cast<std::size_t>(spec.alphabet().size()) + 63) / 64),
        banned(static_cast<std::size_t>(spec.alphabet().size()), false),
        dir(4, std::vector<std::uint64_t>(static_cast<std::size_t>(symbols) * words, ~std::uint64_t{0})) {
    if (spec.dimension() != 2) throw invalid_input("tiling needs a 2D spec");
    if (spec.index().has_empty_pattern()) std::fill(banned.begin(), banned.end(), true);
    // Mask the unused high bits so popcounts stay exact.
    for (auto& d : dir)
      for (int a = 0; a < symbols; ++a)
        for (int s = symbols; s < static_cast<int>(words * 64); ++s)
          d[static_cast<std::size_t>(a) * words + static_cast<std::size_t>(s / 64)] &= ~(std::uint64_t{1} << (s % 64));
    for (const auto& p : spec.forbidden()) {
      if (p.size() == 1) {
        banned[static_cast<std::size_t>(p.symbols()[0])] = true;
        continue;
      }
      if (p.size() != 2) throw invalid_input("tiler supports nearest-neighbour specs only");
      Cell d = p.cells()[1] - p.cells()[0];
      Symbol a = p.symbols()[0], b = p.symbols()[1];
      int k;
      if (d == Cell{1, 0}) {
        k = 0;
      } else if (d == Cell{0, 1}) {
        k = 1;
      } else {
        throw invalid_input("tiler supports nearest-neighbour specs only");
      }
      clear(k, a, b);
      clear(k + 2, b, a);
    }
  }

  void clear(int k, Symbol a, Symbol b) {
    dir[static_cast<std::size_t>(k)][static_cast<std::size_t>(a) * words + static_cast<std::size_t>(b / 64)] &=
        ~(std::uint64_t{1} << (b % 64));
  }
  const std::uint64_t* mask(int k, Symbol a) const {
    return dir[static_cast<std::size_t>(k)].data() + static_cast<std::size_t>(a) * words;
  }
};

/// Arc consistency over the whole grid; false when some domain empties.
inline bool propagate(DomainGrid& g, const Adjacency& adj, int width, int height, std::vector<std::size_t> queue) {
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<char> queued(n, 0);
  for (auto c : queue) queued[c] = 1;
  std::vector<std::uint64_t> support(4 * adj.words);
  const int dx[4] = {1, 0, -1, 0}, dy[4] = {0, 1, 0, -1};
  std::size_t head = 0;
  while (head < queue.size()) {
    std::size_t c = queue[head++];
    queued[c] = 0;
    std::fill(support.begin(), support.end(), 0);
    const std::uint64_t* row = g.row(c);
    for (std::size_t w = 0; w < adj.words; ++w) {
      std::uint64_t bits = row[w];
      while (bits) {
        int s = static_cast<int>(w * 64) + __builtin_ctzll(bits);
        bits &= bits - 1;
        for (int k = 0; k < 4; ++k) {
          const std::uint64_t* m = adj.mask(k, s);
          for (std::size_t v = 0; v < adj.words; ++v) support[k * adj.words + v] |= m[v];
        }
      }
    }
    int x = static_cast<int>(c % static_cast<std::size_t>(width)), y = static_cast<int>(c / static_cast<std::size_t>(width));
    for (int k = 0; k < 4; ++k) {
      int nx = x + dx[k], ny = y + dy[k];
      if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
      std::size_t nc = static_cast<std::size_t>(ny) * static_cast<std::size_t>(width) + static_cast<std::size_t>(nx);
      std::uint64_t* nrow = g.row(nc);
      bool changed = false, empty = true;
      for (std::size_t v = 0; v < adj.words; ++v) {
        std::uint64_t nv = nrow[v] & support[k * adj.words + v];
        changed |= nv != nrow[v];
        nrow[v] = nv;
        empty &= nv == 0;
      }
      if (empty) return false;
      if (changed && !queued[nc]) {
        queued[nc] = 1;
        queue.push_back(nc);
      }
    }
    if (head > 4 * n) {  // compact the queue
      queue.erase(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(head));
      head = 0;
    }
  }
  return true;
}

}  // namespace detail

/// Backtracking search for one locally admissible filling of a width x height
/// rectangle. Arc consistency after every choice; the branching cell is the
/// first one with the fewest candidates, tried in value order. nullopt means
/// the search space was exhausted.
inline std::optional<Tiling> tile_rectangle(const SftSpec& spec, int width, int height,
                                            const TilerOptions& opt = {}) {
  if (width < 1 || height < 1) throw invalid_input("tiling extents must be >= 1");
  detail::Adjacency adj(spec);
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<Symbol> order = opt.value_order;
  if (order.empty())
    for (Symbol s = 0; s < adj.symbols; ++s) order.push_back(s);
  if (static_cast<int>(order.size()) != adj.symbols) throw invalid_input("value order must list every symbol once");

  detail::DomainGrid start(n, adj.symbols);
  for (std::size_t c = 0; c < n; ++c)
    for (Symbol s = 0; s < adj.symbols; ++s)
      if (adj.banned[static_cast<std::size_t>(s)]) start.row(c)[s / 64] &= ~(std::uint64_t{1} << (s % 64));
  for (const auto& [cell, s] : opt.seeds) {
    if (cell.x < 0 || cell.y < 0 || cell.x >= width || cell.y >= height) throw invalid_input("seed outside the window");
    if (s < 0 || s >= adj.symbols) throw invalid_input("seed symbol outside the alphabet");
    std::size_t c = static_cast<std::size_t>(cell.y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(cell.x);
    bool ok = start.has(c, s);
    start.only(c, s);
    if (!ok) return std::nullopt;
  }
  std::vector<std::size_t> all(n);
  for (std::size_t c = 0; c < n; ++c) all[c] = c;
  if (!detail::propagate(start, adj, width, height, all)) return std::nullopt;

  struct Frame {
    detail::DomainGrid grid;
    std::size_t cell;
    std::size_t next;  // index into `order`
  };
  detail::NodeCounter nodes(opt.budget, "tiling search");
  std::vector<Frame> stack;
  auto pick = [&](const detail::DomainGrid& g) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    int best_size = adj.symbols + 1;
    for (std::size_t c = 0; c < n; ++c) {
      int sz = g.size(c);
      if (sz > 1 && sz < best_size) {
        best = c;
        best_size = sz;
      }
    }
    return best;
  };
  auto finish = [&](const detail::DomainGrid& g) {
    Tiling t{RectWindow::rect(width, height), {}, spec.name()};
    for (std::size_t c = 0; c < n; ++c) t.tiles.push_back(g.first(c));
    return t;
  };
  auto c0 = pick(start);
  if (!c0) return finish(start);
  stack.push_back({start, *c0, 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    bool descended = false;
    while (f.next < order.size()) {
      Symbol s = order[f.next++];
      if (!f.grid.has(f.cell, s)) continue;
      nodes.tick("depth " + std::to_string(stack.size()) + " of " + std::to_string(n) + " cells");
      detail::DomainGrid g = f.grid;
      g.only(f.cell, s);
      if (!detail::propagate(g, adj, width, height, {f.cell})) continue;
      auto c = pick(g);
      if (!c) return finish(g);
      stack.push_back({std::move(g), *c, 0});
      descended = true;
      break;
    }
    if (!descended) stack.pop_back();
  }
  return std::nullopt;
}

struct CrossLevelReport {
  int level = 0;
  int period = 0;
  int border = 0;                  // width of the border zone for this level
  int offset_x = 0, offset_y = 0;  // residues in window-relative coordinates
  int coset_cells = 0;             // interior cells of the coset
  int crosses = 0;                 // of which crosses
  bool truncated = false;          // fewer than two interior rows or columns of the coset
  std::vector<Cell> missing;       // interior coset cells that are not crosses
  std::vector<Cell> stray;         // interior crosses on this level's rows or columns but off the coset
  std::vector<Cell> border_defects;

  bool consistent() const { return stray.empty() && (truncated || missing.empty()); }
};

struct CrossNetReport {
  std::vector<CrossLevelReport> levels;
  int deeper_crosses = 0;  // crosses not assigned to any checked level

  bool consistent() const {
    return std::all_of(levels.begin(), levels.end(), [](const auto& l) { return l.consistent(); });
  }
};

/// Peels the crosses of `tiling` level by level: level n must fill one coset of
/// period 2^(n+1) in both directions inside the holes left by the lower levels.
/// Cells closer than 2^(n-1) to the window border only feed `border_defects`.
inline CrossNetReport verify_cross_net(const Tiling& tiling, const std::vector<bool>& is_cross, int max_level) {
  CrossNetReport rep;
  const int w = tiling.window.width, h = tiling.window.height;
  if (w < 2 || h < 2 || max_level < 0) return rep;
  std::vector<char> remaining(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    Symbol s = tiling.tiles[i];
    remaining[i] = s >= 0 && static_cast<std::size_t>(s) < is_cross.size() && is_cross[static_cast<std::size_t>(s)];
  }
  auto at = [&](int x, int y) -> char& {
    return remaining[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)];
  };
  auto cell = [&](int x, int y) { return Cell{x + tiling.window.origin.x, y + tiling.window.origin.y}; };
  int hole_x = 0, hole_y = 0;  // residues modulo 2^level of columns and rows not yet covered
  for (int n = 0; n <= max_level; ++n) {
    const int p = 1 << (n + 1), q = p / 2;
    CrossLevelReport L;
    L.level = n;
    L.period = p;
    L.border = q / 2;
    auto interior = [&](int x, int y) {
      return x >= L.border && y >= L.border && x < w - L.border && y < h - L.border;
    };
    int best_hits = -1, best_cells = 0;
    for (int a : {hole_x % q, hole_x % q + q})
      for (int b : {hole_y % q, hole_y % q + q}) {
        int cells = 0, hits = 0;
        for (int y = b; y < h; y += p)
          for (int x = a; x < w; x += p)
            if (interior(x, y)) {
              ++cells;
              hits += at(x, y);
            }
        // Most crosses wins; among equals, a coset without gaps.
        bool full = hits == cells;
        bool best_full = best_hits == best_cells;
        if (best_hits < 0 || hits > best_hits || (hits == best_hits && full && !best_full)) {
          best_hits = hits;
          best_cells = cells;
          L.offset_x = a;
          L.offset_y = b;
        }
      }
    L.coset_cells = best_cells;
    L.crosses = best_hits;
    int cols = 0, rows = 0;
    for (int x = L.offset_x; x < w; x += p) cols += x >= L.border && x < w - L.border;
    for (int y = L.offset_y; y < h; y += p) rows += y >= L.border && y < h - L.border;
    L.truncated = cols < 2 || rows < 2;
    for (int y = L.offset_y; y < h; y += p)
      for (int x = L.offset_x; x < w; x += p) {
        if (!at(x, y)) (interior(x, y) ? L.missing : L.border_defects).push_back(cell(x, y));
        at(x, y) = 0;
      }
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (at(x, y) && (x % p == L.offset_x || y % p == L.offset_y)) {
          (interior(x, y) ? L.stray : L.border_defects).push_back(cell(x, y));
          at(x, y) = 0;
        }
    hole_x = L.offset_x < q ? L.offset_x + q : L.offset_x - q;
    hole_y = L.offset_y < q ? L.offset_y + q : L.offset_y - q;
    rep.levels.push_back(std::move(L));
  }
  for (char c : remaining) rep.deeper_crosses += c;
  return rep;
}

inline CrossNetReport verify_cross_net(const Tiling& tiling, int max_level) {
  return verify_cross_net(tiling, robinson_tileset().cross, max_level);
}

/// Three layers over `base`: layer 2 constant along columns, layer 3 constant
/// along rows, and on cells whose base symbol is a cross the two payload layers
/// agree. Symbol (b, u, v) is (b * P + u) * P + v for P payload letters.
inline SftSpec compose_homogeneity_layers(const SftSpec& base, const std::vector<Symbol>& cross_symbols,
                                          const Alphabet& payload) {
  if (base.dimension() != 2) throw invalid_input("homogeneity layers need a 2D base");
  const int nb = base.alphabet().size(), np = payload.size();
  auto code = [np](int b, int u, int v) { return static_cast<Symbol>((b * np + u) * np + v); };
  std::vector<std::string> names;
  for (int b = 0; b < nb; ++b)
    for (int u = 0; u < np; ++u)
      for (int v = 0; v < np; ++v)
        names.push_back("(" + base.alphabet().name(b) + "," + payload.name(u) + "," + payload.name(v) + ")");
  std::vector<Pattern> f;
  for (const auto& p : base.forbidden()) {
    detail::for_each_tuple(2 * p.size(), np, [&](const std::vector<Symbol>& t) {
      std::vector<std::pair<Cell, Symbol>> e;
      for (std::size_t i = 0; i < p.size(); ++i) e.push_back({p.cells()[i], code(p.symbols()[i], t[2 * i], t[2 * i + 1])});
      f.emplace_back(2, e);
    });
  }
  for (int b1 = 0; b1 < nb; ++b1)
    for (int b2 = 0; b2 < nb; ++b2)
      for (int u1 = 0; u1 < np; ++u1)
        for (int u2 = 0; u2 < np; ++u2)
          for (int v1 = 0; v1 < np; ++v1)
            for (int v2 = 0; v2 < np; ++v2) {
              if (u1 != u2)
                f.emplace_back(2, std::vector<std::pair<Cell, Symbol>>{{{0, 0}, code(b1, u1, v1)}, {{0, 1}, code(b2, u2, v2)}});
              if (v1 != v2)
                f.emplace_back(2, std::vector<std::pair<Cell, Symbol>>{{{0, 0}, code(b1, u1, v1)}, {{1, 0}, code(b2, u2, v2)}});
            }
  for (Symbol c : cross_symbols) {
    if (c < 0 || c >= nb) throw invalid_input("cross symbol outside the base alphabet");
    for (int u = 0; u < np; ++u)
      for (int v = 0; v < np; ++v)
        if (u != v) f.emplace_back(2, std::vector<std::pair<Cell, Symbol>>{{{0, 0}, code(c, u, v)}});
  }
  return SftSpec(Alphabet(names), 2, f, base.name() + "-homogeneous");
}

}  // namespace cae
