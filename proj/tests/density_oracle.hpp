#pragma once

// Brute-force view of density windows: every (alpha', net, uncovered) triple
// that produces a given word, found by trying all nets of the right depth.

#include "cae/symbolic.hpp"

#include <optional>
#include <set>
#include <vector>

namespace oracle {

// All offset vectors of depth n with pairwise disjoint levels, by exhaustive search.
inline std::vector<std::vector<long long>> all_nets(int n) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> k;
  auto rec = [&](auto&& self, int j) -> void {
    if (j > n) {
      out.push_back(k);
      return;
    }
    long long m = 1LL << j;
    for (long long r = 0; r < m; ++r) {
      bool ok = true;
      for (int i = 1; i < j && ok; ++i) ok = r % (1LL << i) != k[static_cast<std::size_t>(i - 1)];
      if (!ok) continue;
      k.push_back(r);
      self(self, j + 1);
      k.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

// alpha' prefixes of length n such that some net and uncovered letter yield u.
// Levels that miss the window leave alpha'_j free; those are expanded over the alphabet.
inline std::set<std::vector<cae::Symbol>> consistent_alphas(const std::vector<cae::Symbol>& u, int alphabet) {
  int n = 0;
  while ((std::size_t{1} << n) < u.size()) ++n;
  std::set<std::vector<cae::Symbol>> out;
  for (const auto& net : all_nets(n)) {
    std::vector<std::optional<cae::Symbol>> a(static_cast<std::size_t>(n));
    std::optional<cae::Symbol> hole;
    bool ok = true;
    for (long long i = 0; i < static_cast<long long>(u.size()) && ok; ++i) {
      int level = 0;
      for (int j = 1; j <= n && !level; ++j)
        if (i % (1LL << j) == net[static_cast<std::size_t>(j - 1)]) level = j;
      auto& slot = level ? a[static_cast<std::size_t>(level - 1)] : hole;
      if (slot && *slot != u[static_cast<std::size_t>(i)]) ok = false;
      slot = u[static_cast<std::size_t>(i)];
    }
    if (!ok) continue;
    std::vector<cae::Symbol> cur(static_cast<std::size_t>(n));
    auto fill = [&](auto&& self, std::size_t j) -> void {
      if (j == cur.size()) {
        out.insert(cur);
        return;
      }
      if (a[j]) {
        cur[j] = *a[j];
        self(self, j + 1);
      } else {
        for (cae::Symbol s = 0; s < alphabet; ++s) {
          cur[j] = s;
          self(self, j + 1);
        }
      }
    };
    fill(fill, 0);
  }
  return out;
}

// v is the length-n prefix of some beta ~ alpha', for an alpha' that agrees
// with `alpha` on 1..n.
inline bool within_allowance(const std::vector<cae::Symbol>& alpha, const std::vector<cae::Symbol>& v) {
  if (alpha.size() != v.size()) return false;
  if (alpha == v) return true;
  std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < i && ok; ++j) ok = v[j] == alpha[j];
    for (std::size_t j = i + 1; j < n && ok; ++j) ok = v[j] == alpha[i] && alpha[j] == v[i];
    if (ok) return true;
  }
  return false;
}

}  // namespace oracle
