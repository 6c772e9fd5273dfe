#pragma once

// Finite stand-ins for right-computable (Pi_1) numbers and increasing limits
// of them (Sigma_2 numbers).

#include "cae/error.hpp"
#include "cae/numeric.hpp"

#include <string>
#include <vector>

namespace cae {

/// A nonincreasing table q_1 >= q_2 >= ... >= q_m >= 0.
struct Pi1Stream {
  std::vector<Rational> approximants;
  std::string provenance;

  Pi1Stream() = default;
  explicit Pi1Stream(std::vector<Rational> q, std::string note = {})
      : approximants(std::move(q)), provenance(std::move(note)) {
    if (approximants.empty()) throw invalid_input("empty Pi1 stream");
    for (std::size_t i = 0; i < approximants.size(); ++i) {
      if (approximants[i] < 0) throw invalid_input("Pi1 approximant below zero");
      if (i && approximants[i] > approximants[i - 1]) throw invalid_input("Pi1 stream increases at entry " + std::to_string(i + 1));
    }
  }

  const Rational& last() const { return approximants.back(); }

  /// q_{m-1} - q_m, the slack still visible in the table; 0 for a single entry.
  Rational bracket() const {
    return approximants.size() < 2 ? Rational(0) : Rational(approximants[approximants.size() - 2] - last());
  }
};

/// Pi1 streams whose last approximants do not decrease by more than `slack`.
struct Sigma2Stream {
  std::vector<Pi1Stream> streams;
  Rational slack = 0;

  Sigma2Stream() = default;
  explicit Sigma2Stream(std::vector<Pi1Stream> s, Rational sl = 0) : streams(std::move(s)), slack(std::move(sl)) {
    if (streams.empty()) throw invalid_input("empty Sigma2 table");
    for (std::size_t k = 1; k < streams.size(); ++k)
      if (streams[k].last() < streams[k - 1].last() - slack)
        throw invalid_input("Sigma2 table decreases at stream " + std::to_string(k + 1));
  }
};

struct SupEstimate {
  Rational value;
  Rational error_bar;
  std::size_t argmax = 0;  // 0-based stream attaining the value
};

/// sup_k of the per-stream limits, bracketed by each stream's last approximant;
/// the error bar is the widest remaining bracket.
inline SupEstimate sigma2_sup(const Sigma2Stream& s) {
  if (s.streams.empty()) throw invalid_input("empty Sigma2 table");
  SupEstimate e{s.streams[0].last(), 0, 0};
  for (std::size_t k = 0; k < s.streams.size(); ++k) {
    if (s.streams[k].last() > e.value) {
      e.value = s.streams[k].last();
      e.argmax = k;
    }
    if (s.streams[k].bracket() > e.error_bar) e.error_bar = s.streams[k].bracket();
  }
  return e;
}

}  // namespace cae
