#pragma once

// 1-nets, Toeplitz windows of D_alpha, letter frequencies, the ~ relation
// and the density decoder.
//
// Sequence indices are 1-based (alpha_1, alpha_2, ...) as are net levels;
// window cells are 0-based integers.

#include "cae/error.hpp"
#include "cae/numeric.hpp"
#include "cae/symbolic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cae {

/// A finite prefix alpha_1..alpha_n, optionally continued by a constant tail.
struct SymbolSequence {
  Alphabet alphabet;
  std::vector<Symbol> prefix;
  std::optional<Symbol> tail;

  SymbolSequence() = default;
  SymbolSequence(Alphabet a, std::vector<Symbol> p, std::optional<Symbol> t = std::nullopt)
      : alphabet(std::move(a)), prefix(std::move(p)), tail(t) {
    for (auto s : prefix)
      if (s < 0 || s >= alphabet.size()) throw invalid_input("sequence symbol outside alphabet");
    if (tail && (*tail < 0 || *tail >= alphabet.size())) throw invalid_input("tail symbol outside alphabet");
  }

  /// Letters known: the prefix length, or unbounded with a tail.
  bool known(std::size_t j) const { return tail.has_value() || (j >= 1 && j <= prefix.size()); }

  Symbol at(std::size_t j) const {
    if (j >= 1 && j <= prefix.size()) return prefix[j - 1];
    if (j >= 1 && tail) return *tail;
    throw invalid_input("sequence index " + std::to_string(j) + " beyond the known prefix");
  }
};

/// Levels 2^j Z + k_j for j = 1..depth, pairwise disjoint.
class OneNet {
 public:
  OneNet() = default;
  explicit OneNet(std::vector<long long> offsets) : offsets_(std::move(offsets)) {
    if (offsets_.size() > 60) throw invalid_input("net depth above 60");
    for (std::size_t j = 0; j < offsets_.size(); ++j) {
      long long m = 1LL << (j + 1);
      offsets_[j] = ((offsets_[j] % m) + m) % m;
      for (std::size_t i = 0; i < j; ++i) {
        long long mi = 1LL << (i + 1);
        if (offsets_[j] % mi == offsets_[i]) {
          throw invalid_input("net levels " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " intersect");
        }
      }
    }
  }

  std::size_t depth() const noexcept { return offsets_.size(); }
  const std::vector<long long>& offsets() const noexcept { return offsets_; }

  /// Level j (1-based) containing cell i among the first `max_level` levels, or 0.
  int level_of(long long i, std::size_t max_level) const {
    for (std::size_t j = 0; j < std::min(max_level, offsets_.size()); ++j) {
      long long m = 1LL << (j + 1);
      if (((i % m) + m) % m == offsets_[j]) return static_cast<int>(j + 1);
    }
    return 0;
  }

  /// The residue modulo 2^depth left uncovered by all levels.
  long long hole() const {
    long long r = 0;
    for (std::size_t j = 0; j < offsets_.size(); ++j) {
      long long half = 1LL << j;
      r = offsets_[j] == r ? r + half : r;
    }
    return r;
  }

 private:
  std::vector<long long> offsets_;
};

/// Level j takes one of the two residue classes mod 2^j inside the cells the
/// earlier levels left; choice 0 takes the smaller residue.
inline OneNet build_one_net(const std::vector<int>& choices) {
  if (choices.empty()) throw invalid_input("net needs at least one choice");
  std::vector<long long> k;
  long long rest = 0;
  for (std::size_t j = 0; j < choices.size(); ++j) {
    if (choices[j] != 0 && choices[j] != 1) throw invalid_input("net choices are bits");
    long long half = 1LL << j;
    k.push_back(rest + choices[j] * half);
    rest += (1 - choices[j]) * half;
  }
  return OneNet(k);
}

struct ToeplitzWindow {
  OneNet net;
  SymbolSequence alpha;
  long long start = 0;
  int levels = 0;  // n: levels 1..n are written, the rest of the window is uncovered
  Symbol uncovered = 0;
  std::vector<Symbol> letters;
};

/// The word on cells [start, start + length) of the configuration of D_alpha over
/// `net`; cells on no level <= n get `uncovered`. `length` must be 2^n.
inline ToeplitzWindow generate_toeplitz_window(const SymbolSequence& alpha, const OneNet& net, long long length,
                                               Symbol uncovered, long long start = 0) {
  if (length < 1 || (length & (length - 1)) != 0) throw invalid_input("window length must be a power of two");
  int n = __builtin_ctzll(static_cast<unsigned long long>(length));
  if (net.depth() < static_cast<std::size_t>(n)) throw invalid_input("net shallower than the window needs");
  if (!alpha.known(static_cast<std::size_t>(n)) && n > 0) throw invalid_input("alpha prefix shorter than net depth");
  if (uncovered < 0 || uncovered >= alpha.alphabet.size()) throw invalid_input("uncovered symbol outside alphabet");
  ToeplitzWindow w{net, alpha, start, n, uncovered, {}};
  w.letters.reserve(static_cast<std::size_t>(length));
  for (long long i = start; i < start + length; ++i) {
    int j = net.level_of(i, static_cast<std::size_t>(n));
    w.letters.push_back(j ? alpha.at(static_cast<std::size_t>(j)) : uncovered);
  }
  return w;
}

/// Rows of the vertically constant 2D configuration D*_alpha; rows[0] is the bottom row.
inline Pattern build_d_star_window(const SymbolSequence& alpha, const OneNet& net, long long width, int height,
                                   Symbol uncovered) {
  if (height < 1) throw invalid_input("height must be >= 1");
  auto w = generate_toeplitz_window(alpha, net, width, uncovered);
  return Pattern::grid(std::vector<std::vector<Symbol>>(static_cast<std::size_t>(height), w.letters));
}

inline Rational letter_frequency(const std::vector<Symbol>& word, Symbol a) {
  if (word.empty()) throw invalid_input("frequency of an empty word");
  long long n = 0;
  for (auto s : word) n += s == a;
  return make_rational(n, static_cast<long long>(word.size()));
}

/// Sum of 2^-j over j <= n with alpha_j == a.
inline Rational frequency_target(const SymbolSequence& alpha, Symbol a, int n) {
  Rational sum = 0;
  for (int j = 1; j <= n; ++j)
    if (alpha.at(static_cast<std::size_t>(j)) == a) sum += Rational(Count(1), pow_count(2, static_cast<unsigned>(j)));
  return sum;
}

enum class Tri { no, yes, undetermined };

inline const char* to_string(Tri t) {
  return t == Tri::yes ? "true" : t == Tri::no ? "false" : "undetermined";
}

/// alpha ~ beta: equal, or some i with equal letters before i, beta constant
/// alpha_i after i and alpha constant beta_i after i.
inline Tri tilde_equiv(const SymbolSequence& a, const SymbolSequence& b) {
  if (!(a.alphabet == b.alphabet)) throw invalid_input("sequences over different alphabets");
  const bool tails = a.tail && b.tail;
  // Past `horizon` both sequences are constant (with tails) or unknown.
  std::size_t horizon = std::max(a.prefix.size(), b.prefix.size()) + 1;
  if (!tails) horizon = std::min(a.prefix.size(), b.prefix.size());
  auto witnesses = [&](std::size_t i) {
    for (std::size_t j = 1; j < i; ++j)
      if (a.at(j) != b.at(j)) return false;
    for (std::size_t j = i + 1; j <= horizon; ++j)
      if (b.at(j) != a.at(i) || a.at(j) != b.at(i)) return false;
    return true;
  };
  std::size_t first_diff = 0;
  for (std::size_t j = 1; j <= horizon && !first_diff; ++j)
    if (a.at(j) != b.at(j)) first_diff = j;
  if (first_diff == 0) return tails ? Tri::yes : Tri::undetermined;
  // Any witness i satisfies i <= first_diff.
  for (std::size_t i = 1; i <= first_diff; ++i)
    if (witnesses(i)) return tails ? Tri::yes : Tri::undetermined;
  return Tri::no;
}

/// Density decoder: repeatedly remove the even or the odd positions when they
/// carry a single letter, emitting that letter. Even positions are tried first.
/// nullopt when neither class is monochromatic.
inline std::optional<std::vector<Symbol>> decode_density_prefix(const std::vector<Symbol>& u) {
  if (u.empty() || (u.size() & (u.size() - 1)) != 0) throw invalid_input("decoder input length must be a power of two");
  std::vector<Symbol> cur = u, out;
  while (cur.size() > 1) {
    auto mono = [&](std::size_t parity) {
      for (std::size_t i = parity + 2; i < cur.size(); i += 2)
        if (cur[i] != cur[parity]) return false;
      return true;
    };
    std::size_t keep;
    if (mono(0)) {
      out.push_back(cur[0]);
      keep = 1;
    } else if (mono(1)) {
      out.push_back(cur[1]);
      keep = 0;
    } else {
      return std::nullopt;
    }
    std::vector<Symbol> next;
    for (std::size_t i = keep; i < cur.size(); i += 2) next.push_back(cur[i]);
    cur.swap(next);
  }
  return out;
}

}  // namespace cae
