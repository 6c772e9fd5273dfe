#pragma once

// Alphabets, finite patterns and SFT specifications.
//
// Coordinates: 1D patterns live on the x axis (y == 0). In 2D, y grows
// upwards, so "the row above" of row y is row y + 1.

#include "cae/error.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <tuple>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace cae {

using Symbol = int;

class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw invalid_spec("alphabet is empty");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (!index_.emplace(symbols_[i], static_cast<Symbol>(i)).second) {
        throw invalid_spec("duplicate symbol '" + symbols_[i] + "' in alphabet");
      }
    }
  }

  /// Symbols "0", "1", ..., "n-1".
  static Alphabet numbered(int n) {
    std::vector<std::string> s;
    for (int i = 0; i < n; ++i) s.push_back(std::to_string(i));
    return Alphabet(std::move(s));
  }

  int size() const noexcept { return static_cast<int>(symbols_.size()); }
  bool empty() const noexcept { return symbols_.empty(); }
  const std::string& name(Symbol s) const { return symbols_.at(static_cast<std::size_t>(s)); }
  const std::vector<std::string>& names() const noexcept { return symbols_; }

  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  Symbol index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw invalid_input("symbol '" + name + "' not in alphabet");
    return it->second;
  }

  bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Symbol> index_;
};

struct Cell {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
  Cell operator+(Cell o) const { return {x + o.x, y + o.y}; }
  Cell operator-(Cell o) const { return {x - o.x, y - o.y}; }
};

/// Row-major order with rows bottom to top; the order every scan uses.
inline bool row_major_less(Cell a, Cell b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

struct RectWindow {
  int dimension = 1;
  Cell origin{};
  int width = 1;
  int height = 1;  // always 1 in 1D

  static RectWindow line(int length, int start = 0) {
    if (length < 1) throw invalid_input("window extent must be >= 1");
    return {1, {start, 0}, length, 1};
  }
  static RectWindow rect(int width, int height, Cell origin = {}) {
    if (width < 1 || height < 1) throw invalid_input("window extents must be >= 1");
    return {2, origin, width, height};
  }

  long long cells() const { return static_cast<long long>(width) * height; }

  RectWindow inflated(int margin) const {
    RectWindow w = *this;
    w.origin.x -= margin;
    w.width += 2 * margin;
    if (dimension == 2) {
      w.origin.y -= margin;
      w.height += 2 * margin;
    }
    return w;
  }

  bool contains(Cell c) const {
    return c.x >= origin.x && c.x < origin.x + width && c.y >= origin.y &&
           c.y < origin.y + height;
  }
};

/// A finite pattern. Cells are kept sorted row-major with one symbol each.
class Pattern {
 public:
  Pattern() = default;

  Pattern(int dimension, std::vector<std::pair<Cell, Symbol>> entries) : dimension_(dimension) {
    if (dimension != 1 && dimension != 2) throw invalid_spec("dimension must be 1 or 2");
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return row_major_less(a.first, b.first); });
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (dimension == 1 && entries[i].first.y != 0) {
        throw invalid_spec("1D pattern has a cell off the x axis");
      }
      if (i > 0 && entries[i].first == entries[i - 1].first) {
        throw invalid_spec("pattern assigns two symbols to one cell");
      }
      cells_.push_back(entries[i].first);
      symbols_.push_back(entries[i].second);
    }
  }

  /// A word placed on cells 0..n-1 of the x axis.
  static Pattern word(const std::vector<Symbol>& letters) {
    std::vector<std::pair<Cell, Symbol>> e;
    for (std::size_t i = 0; i < letters.size(); ++i) e.push_back({{static_cast<int>(i), 0}, letters[i]});
    return Pattern(1, std::move(e));
  }

  /// rows[0] is the bottom row.
  static Pattern grid(const std::vector<std::vector<Symbol>>& rows) {
    std::vector<std::pair<Cell, Symbol>> e;
    for (std::size_t y = 0; y < rows.size(); ++y)
      for (std::size_t x = 0; x < rows[y].size(); ++x)
        e.push_back({{static_cast<int>(x), static_cast<int>(y)}, rows[y][x]});
    return Pattern(2, std::move(e));
  }

  int dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

  Symbol at(Cell c) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), c, row_major_less);
    if (it == cells_.end() || *it != c) throw invalid_input("cell outside pattern support");
    return symbols_[static_cast<std::size_t>(it - cells_.begin())];
  }

  /// Translate so the minimum x and minimum y are both 0.
  Pattern normalized() const {
    if (cells_.empty()) return *this;
    int mx = cells_[0].x, my = cells_[0].y;
    for (auto c : cells_) {
      mx = std::min(mx, c.x);
      my = std::min(my, c.y);
    }
    std::vector<std::pair<Cell, Symbol>> e;
    for (std::size_t i = 0; i < cells_.size(); ++i) e.push_back({cells_[i] - Cell{mx, my}, symbols_[i]});
    return Pattern(dimension_, std::move(e));
  }

  Pattern mapped(const std::vector<Symbol>& image) const {
    Pattern p = *this;
    for (auto& s : p.symbols_) s = image.at(static_cast<std::size_t>(s));
    return p;
  }

  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.dimension_ == b.dimension_ && a.cells_ == b.cells_ && a.symbols_ == b.symbols_;
  }
  friend bool operator<(const Pattern& a, const Pattern& b) {
    return std::tie(a.cells_, a.symbols_) < std::tie(b.cells_, b.symbols_);
  }

 private:
  int dimension_ = 1;
  std::vector<Cell> cells_;
  std::vector<Symbol> symbols_;
};

inline std::string pattern_text(const Pattern& p, const Alphabet& a) {
  // Words render as concatenated names; rectangles render row by row, top first.
  if (p.empty()) return "";
  int x0 = p.cells()[0].x, x1 = x0, y0 = p.cells()[0].y, y1 = y0;
  for (auto c : p.cells()) {
    x0 = std::min(x0, c.x);
    x1 = std::max(x1, c.x);
    y0 = std::min(y0, c.y);
    y1 = std::max(y1, c.y);
  }
  bool sep = false;
  for (auto& n : a.names()) sep = sep || n.size() != 1;
  std::string out;
  for (int y = y1; y >= y0; --y) {
    if (y != y1) out += '\n';
    for (int x = x0; x <= x1; ++x) {
      if (sep && x != x0) out += ' ';
      auto it = std::lower_bound(p.cells().begin(), p.cells().end(), Cell{x, y}, row_major_less);
      if (it != p.cells().end() && *it == Cell{x, y}) {
        out += a.name(p.symbols()[static_cast<std::size_t>(it - p.cells().begin())]);
      } else {
        out += '.';
      }
    }
  }
  return out;
}

/// Splits a word into alphabet symbols; single-character names need no separator,
/// otherwise symbols are space separated.
inline std::vector<Symbol> parse_word(const std::string& text, const Alphabet& a) {
  std::vector<Symbol> out;
  bool single = true;
  for (auto& n : a.names()) single = single && n.size() == 1;
  if (single && text.find(' ') == std::string::npos) {
    for (char ch : text) out.push_back(a.index(std::string(1, ch)));
    return out;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) out.push_back(a.index(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

/// Forbidden patterns grouped by support shape; lookups are one hash probe per shape.
class ForbiddenIndex {
 public:
  struct Shape {
    std::vector<Cell> cells;         // normalized, row-major
    std::vector<Cell> from_last;     // cells relative to the row-major last cell
    int height = 1;
    int width = 1;
    std::unordered_set<std::uint64_t> keys;
  };

  ForbiddenIndex() = default;

  ForbiddenIndex(int alphabet_size, const std::vector<Pattern>& forbidden) : base_(alphabet_size) {
    std::map<std::vector<Cell>, std::size_t> by_support;
    for (const auto& p : forbidden) {
      if (p.empty()) {
        has_empty_ = true;
        continue;
      }
      if (!fits(p.size())) throw invalid_spec("forbidden pattern too large to index");
      auto [it, fresh] = by_support.try_emplace(p.cells(), shapes_.size());
      if (fresh) {
        Shape s;
        s.cells = p.cells();
        Cell last = s.cells.back();
        int minx = last.x, maxx = last.x;
        for (auto c : s.cells) {
          s.from_last.push_back(c - last);
          minx = std::min(minx, c.x);
          maxx = std::max(maxx, c.x);
        }
        s.height = last.y - s.cells.front().y + 1;
        s.width = maxx - minx + 1;
        shapes_.push_back(std::move(s));
      }
      shapes_[it->second].keys.insert(encode(p.symbols()));
    }
    for (const auto& s : shapes_) {
      max_height_ = std::max(max_height_, s.height);
      max_width_ = std::max(max_width_, s.width);
    }
  }

  const std::vector<Shape>& shapes() const noexcept { return shapes_; }
  bool has_empty_pattern() const noexcept { return has_empty_; }
  int max_height() const noexcept { return max_height_; }
  int max_width() const noexcept { return max_width_; }

  std::uint64_t encode(const std::vector<Symbol>& symbols) const {
    std::uint64_t k = 0;
    for (auto s : symbols) k = k * static_cast<std::uint64_t>(base_) + static_cast<std::uint64_t>(s);
    return k;
  }

  /// True when `lookup(cell)` (returning -1 for unknown) completes a forbidden
  /// occurrence whose row-major last cell is `at`.
  template <typename Lookup>
  bool completes_forbidden(Cell at, Lookup&& lookup) const {
    for (const auto& s : shapes_) {
      std::uint64_t k = 0;
      bool complete = true;
      for (auto d : s.from_last) {
        int v = lookup(at + d);
        if (v < 0) {
          complete = false;
          break;
        }
        k = k * static_cast<std::uint64_t>(base_) + static_cast<std::uint64_t>(v);
      }
      if (complete && s.keys.count(k)) return true;
    }
    return false;
  }

  /// True when some forbidden occurrence containing `at` is fully assigned.
  template <typename Lookup>
  bool touches_forbidden(Cell at, Lookup&& lookup) const {
    for (const auto& s : shapes_) {
      for (auto anchor_cell : s.cells) {
        Cell origin = at - anchor_cell;
        std::uint64_t k = 0;
        bool complete = true;
        for (auto c : s.cells) {
          int v = lookup(origin + c);
          if (v < 0) {
            complete = false;
            break;
          }
          k = k * static_cast<std::uint64_t>(base_) + static_cast<std::uint64_t>(v);
        }
        if (complete && s.keys.count(k)) return true;
      }
    }
    return false;
  }

 private:
  bool fits(std::size_t cells) const {
    long double cap = 1;
    for (std::size_t i = 0; i < cells; ++i) cap *= base_;
    return cap < 9.2e18L;
  }

  int base_ = 1;
  bool has_empty_ = false;
  int max_height_ = 1;
  int max_width_ = 1;
  std::vector<Shape> shapes_;
};

/// A subshift of finite type: alphabet, dimension and forbidden patterns.
/// Forbidden patterns are stored translated to the origin and match at every translate.
class SftSpec {
 public:
  SftSpec() = default;

  SftSpec(Alphabet alphabet, int dimension, std::vector<Pattern> forbidden, std::string name = {})
      : alphabet_(std::move(alphabet)), dimension_(dimension), name_(std::move(name)) {
    if (alphabet_.empty()) throw invalid_spec("alphabet is empty");
    if (dimension_ != 1 && dimension_ != 2) throw invalid_spec("dimension must be 1 or 2");
    for (auto& p : forbidden) {
      if (p.dimension() != dimension_) throw invalid_spec("forbidden pattern dimension mismatch");
      for (auto s : p.symbols())
        if (s < 0 || s >= alphabet_.size()) throw invalid_spec("forbidden pattern symbol outside alphabet");
      forbidden_.push_back(p.normalized());
    }
    std::sort(forbidden_.begin(), forbidden_.end());
    forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()), forbidden_.end());
    index_ = ForbiddenIndex(alphabet_.size(), forbidden_);
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int dimension() const noexcept { return dimension_; }
  const std::vector<Pattern>& forbidden() const noexcept { return forbidden_; }
  const ForbiddenIndex& index() const noexcept { return index_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  /// True when no forbidden pattern occurs inside `p` (margin-0 admissibility).
  bool admits(const Pattern& p) const {
    if (index_.has_empty_pattern()) return false;
    auto lookup = [&](Cell c) -> int {
      auto it = std::lower_bound(p.cells().begin(), p.cells().end(), c, row_major_less);
      if (it == p.cells().end() || *it != c) return -1;
      return p.symbols()[static_cast<std::size_t>(it - p.cells().begin())];
    };
    for (auto c : p.cells())
      if (index_.completes_forbidden(c, lookup)) return false;
    return true;
  }

 private:
  Alphabet alphabet_;
  int dimension_ = 1;
  std::vector<Pattern> forbidden_;
  ForbiddenIndex index_;
  std::string name_;
};

/// Per-cell symbol map between two alphabets.
class LetterProjection {
 public:
  LetterProjection(Alphabet source, Alphabet target, std::vector<Symbol> image)
      : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
    if (static_cast<int>(image_.size()) != source_.size())
      throw invalid_spec("letter projection is not total on its source alphabet");
    for (auto s : image_)
      if (s < 0 || s >= target_.size()) throw invalid_spec("letter projection image outside target");
  }

  static LetterProjection from_names(const Alphabet& source, const Alphabet& target,
                                     const std::map<std::string, std::string>& m) {
    std::vector<Symbol> img;
    for (const auto& n : source.names()) {
      auto it = m.find(n);
      if (it == m.end()) throw invalid_spec("letter projection misses symbol '" + n + "'");
      img.push_back(target.index(it->second));
    }
    return LetterProjection(source, target, std::move(img));
  }

  static LetterProjection identity(const Alphabet& a) {
    std::vector<Symbol> img;
    for (int i = 0; i < a.size(); ++i) img.push_back(i);
    return LetterProjection(a, a, std::move(img));
  }

  const Alphabet& source() const noexcept { return source_; }
  const Alphabet& target() const noexcept { return target_; }
  Symbol operator()(Symbol s) const {
    if (s < 0 || s >= source_.size()) throw invalid_input("symbol outside projection source");
    return image_[static_cast<std::size_t>(s)];
  }
  const std::vector<Symbol>& image() const noexcept { return image_; }

 private:
  Alphabet source_;
  Alphabet target_;
  std::vector<Symbol> image_;
};

inline Pattern apply_projection(const LetterProjection& proj, const Pattern& p) {
  for (auto s : p.symbols())
    if (s < 0 || s >= proj.source().size()) throw invalid_input("symbol outside projection source");
  return p.mapped(proj.image());
}

}  // namespace cae
