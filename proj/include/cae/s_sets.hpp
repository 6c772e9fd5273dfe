#pragma once

// Membership checkers for the slice sequence sets S and S' and the
// classification of slice stacks. Words are over
// {*, 0', 1', 2', 3', 0, 1, #}; positions are 1-based.

#include "cae/error.hpp"
#include "cae/machine.hpp"
#include "cae/numeric.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace cae {

namespace slice {
inline constexpr Symbol star = 0;
inline constexpr Symbol sharp = 7;
inline bool is_digit(Symbol s) { return s >= 1 && s <= 4; }
inline int digit(Symbol s) { return s - 1; }
inline bool is_bit(Symbol s) { return s == 5 || s == 6; }
}  // namespace slice

inline const Alphabet& slice_alphabet() {
  static const Alphabet a({"*", "0'", "1'", "2'", "3'", "0", "1", "#"});
  return a;
}

/// "*0'1'0110###"; primes follow digits, and "♯" is read as "#". Spaces are ignored.
inline std::vector<Symbol> parse_slice_word(const std::string& text) {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (c == ' ') {
      ++i;
    } else if (c == '*') {
      out.push_back(slice::star);
      ++i;
    } else if (c == '#') {
      out.push_back(slice::sharp);
      ++i;
    } else if (text.compare(i, 3, "♯") == 0) {
      out.push_back(slice::sharp);
      i += 3;
    } else if (c >= '0' && c <= '3' && i + 1 < text.size() && text[i + 1] == '\'') {
      out.push_back(static_cast<Symbol>(1 + (c - '0')));
      i += 2;
    } else if (c == '0' || c == '1') {
      out.push_back(static_cast<Symbol>(5 + (c - '0')));
      ++i;
    } else {
      throw invalid_input("bad slice letter at offset " + std::to_string(i) + " in '" + text + "'");
    }
  }
  return out;
}

inline std::string slice_text(const std::vector<Symbol>& z) {
  std::string s;
  for (auto x : z) s += slice_alphabet().name(x);
  return s;
}

/// The shape of a prefix as far as it is visible.
struct SliceParse {
  enum class Kind { stars, sharps, counter, other } kind = Kind::other;
  int k = 0;                 // star count of a counter word
  std::vector<int> digits;   // visible counter digits, most significant first
  std::vector<Symbol> payload;  // visible letters from position 2k + 1
};

inline SliceParse parse_slice(const std::vector<Symbol>& z) {
  SliceParse p;
  if (!z.empty() && z[0] == slice::sharp) {
    p.kind = SliceParse::Kind::sharps;
    return p;
  }
  std::size_t k = 0;
  while (k < z.size() && z[k] == slice::star) ++k;
  if (k == z.size()) {
    p.kind = SliceParse::Kind::stars;
    return p;
  }
  if (k == 0) return p;
  p.kind = SliceParse::Kind::counter;
  p.k = static_cast<int>(k);
  for (std::size_t i = k; i < std::min(z.size(), 2 * k); ++i) p.digits.push_back(slice::is_digit(z[i]) ? slice::digit(z[i]) : -1);
  if (z.size() > 2 * k) p.payload.assign(z.begin() + static_cast<std::ptrdiff_t>(2 * k), z.end());
  return p;
}

struct SVerdict {
  bool accepted = true;
  long long position = 0;  // first position at which the rejection is visible
  std::string reason;
  std::vector<int> clauses;  // S' only: clauses still consistent (1, 2, 3)
};

/// Membership of a prefix in S. family[k - 1] decides S_k on decoded payloads;
/// loop_budget bounds the density wrapper.
inline SVerdict s_membership_check(const std::vector<Symbol>& z, const std::vector<DensityMachine>& family,
                                   long long loop_budget) {
  for (auto s : z)
    if (s < 0 || s > slice::sharp) throw invalid_input("slice letter outside the alphabet");
  auto reject = [](long long pos, std::string why) { return SVerdict{false, pos, std::move(why), {}}; };
  if (z.empty()) return {};
  if (z[0] == slice::sharp) {
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i] != slice::sharp) return reject(static_cast<long long>(i + 1), "non-# after a leading #");
    return {};
  }
  auto p = parse_slice(z);
  if (p.kind == SliceParse::Kind::stars) return {};
  if (p.kind == SliceParse::Kind::other) return reject(1, "word starts with neither * nor #");
  std::size_t k = static_cast<std::size_t>(p.k);
  for (std::size_t j = 0; j < p.digits.size(); ++j)
    if (p.digits[j] < 0) return reject(static_cast<long long>(k + j + 1), "counter slot holds a non-digit");
  for (std::size_t j = 0; j < p.payload.size(); ++j)
    if (!slice::is_bit(p.payload[j])) return reject(static_cast<long long>(2 * k + j + 1), "payload letter is not binary");
  if (p.payload.empty()) return {};
  if (k > family.size())
    throw BudgetError("no machine for S_" + std::to_string(k) + " in a family of " + std::to_string(family.size()),
                      "star count " + std::to_string(k));
  std::vector<Symbol> bits;
  for (auto s : p.payload) bits.push_back(s - 5);
  auto run = density_machine_run(family[k - 1], bits, Alphabet::numbered(2), loop_budget);
  if (run.outcome == WrapperOutcome::still_running) return {};
  long long pos = static_cast<long long>(2 * k) + (1LL << run.loop);
  return reject(pos, run.outcome == WrapperOutcome::halted ? "payload rejected by the S_" + std::to_string(k) + " machine"
                                                           : "payload is not a density window");
}

namespace detail {

constexpr long long never = -1;  // clause still consistent

inline long long first_not(const std::vector<Symbol>& z, Symbol s) {
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] != s) return static_cast<long long>(i + 1);
  return never;
}

inline long long earliest(long long a, long long b) {
  if (a == never) return b;
  if (b == never) return a;
  return std::min(a, b);
}

inline long long s1_failure(const SliceParse& a, const SliceParse& b) {
  using K = SliceParse::Kind;
  if (a.kind == K::stars && b.kind == K::stars) return never;
  if (a.kind == K::sharps || b.kind == K::sharps || a.kind == K::other || b.kind == K::other) return 1;
  if (a.kind != K::counter || b.kind != K::counter || a.k != b.k)
    return std::min(a.kind == K::counter ? a.k : b.k, b.kind == K::counter ? b.k : a.k) + 1;
  long long k = a.k;
  std::size_t seen = a.digits.size();
  std::size_t j = 0;
  while (j < seen && a.digits[j] == b.digits[j]) ++j;
  if (j == seen) return seen == static_cast<std::size_t>(k) ? 2 * k : never;
  if (b.digits[j] != a.digits[j] + 1) return k + static_cast<long long>(j) + 1;
  for (std::size_t q = j + 1; q < seen; ++q)
    if (a.digits[q] != 3 || b.digits[q] != 0) return k + static_cast<long long>(q) + 1;
  for (std::size_t q = 0; q < a.payload.size(); ++q)
    if (a.payload[q] != b.payload[q]) return 2 * k + static_cast<long long>(q) + 1;
  return never;
}

inline long long s2_failure(const SliceParse& a, const std::vector<Symbol>& zb) {
  using K = SliceParse::Kind;
  long long f = first_not(zb, slice::sharp);
  if (a.kind == K::sharps || a.kind == K::other) return 1;
  if (a.kind == K::counter)
    for (std::size_t j = 0; j < a.digits.size(); ++j)
      if (a.digits[j] != 3) f = earliest(f, a.k + static_cast<long long>(j) + 1);
  return f;
}

inline long long s3_failure(const std::vector<Symbol>& za, const SliceParse& b) {
  using K = SliceParse::Kind;
  long long f = first_not(za, slice::star);
  if (b.kind == K::sharps || b.kind == K::other) return 1;
  if (b.kind == K::counter)
    for (std::size_t j = 0; j < b.digits.size(); ++j)
      if (b.digits[j] != 0) f = earliest(f, b.k + static_cast<long long>(j) + 1);
  return f;
}

}  // namespace detail

/// Membership of a pair of equal-length prefixes in S' = S1 u S2 u S3.
inline SVerdict s_prime_check(const std::vector<Symbol>& z, const std::vector<Symbol>& zp,
                              const std::vector<DensityMachine>& family, long long loop_budget) {
  if (z.size() != zp.size()) throw invalid_input("S' pair prefixes differ in length");
  auto m1 = s_membership_check(z, family, loop_budget);
  auto m2 = s_membership_check(zp, family, loop_budget);
  auto a = parse_slice(z), b = parse_slice(zp);
  long long f[3] = {detail::s1_failure(a, b), detail::s2_failure(a, zp), detail::s3_failure(z, b)};
  SVerdict v;
  long long clause_end = 0;
  for (int i = 0; i < 3; ++i) {
    if (f[i] == detail::never) {
      v.clauses.push_back(i + 1);
      clause_end = detail::never;
    } else if (clause_end != detail::never) {
      clause_end = std::max(clause_end, f[i]);
    }
  }
  long long pos = detail::never;
  std::string why;
  auto consider = [&](const SVerdict& m, const char* which) {
    if (!m.accepted && (pos == detail::never || m.position < pos)) {
      pos = m.position;
      why = std::string(which) + ": " + m.reason;
    }
  };
  consider(m1, "lower word");
  consider(m2, "upper word");
  if (clause_end != detail::never && (pos == detail::never || clause_end < pos)) {
    pos = clause_end;
    why = "no clause of S' fits the pair";
  }
  if (pos != detail::never) {
    v.accepted = false;
    v.position = pos;
    v.reason = why;
  }
  return v;
}

struct StackVerdict {
  enum class Form { a, b, c, violation } form = Form::a;
  std::size_t m = 0;  // form B: first counter slice; violation: upper slice of the failing pair (0-based)
  int k = 0;
  SVerdict detail;
};

inline const char* to_string(StackVerdict::Form f) {
  switch (f) {
    case StackVerdict::Form::a: return "form A";
    case StackVerdict::Form::b: return "form B";
    case StackVerdict::Form::c: return "form C";
    default: return "violation";
  }
}

inline StackVerdict verify_slice_stack(const std::vector<std::vector<Symbol>>& stack,
                                       const std::vector<DensityMachine>& family, long long loop_budget) {
  if (stack.empty()) throw invalid_input("empty slice stack");
  for (const auto& z : stack)
    if (z.size() != stack[0].size()) throw invalid_input("slice prefixes differ in length");
  StackVerdict out;
  for (std::size_t i = 0; i < stack.size(); ++i) {
    auto m = s_membership_check(stack[i], family, loop_budget);
    if (!m.accepted) {
      out.form = StackVerdict::Form::violation;
      out.m = i;
      out.detail = m;
      return out;
    }
    // S' has no clause for a # slice under a # slice, yet forms B and C stack
    // them; such pairs are admitted here.
    bool sharp_pair = i + 1 < stack.size() && parse_slice(stack[i]).kind == SliceParse::Kind::sharps &&
                      parse_slice(stack[i + 1]).kind == SliceParse::Kind::sharps;
    if (i + 1 < stack.size() && !sharp_pair) {
      auto v = s_prime_check(stack[i], stack[i + 1], family, loop_budget);
      if (!v.accepted) {
        out.form = StackVerdict::Form::violation;
        out.m = i + 1;
        out.detail = v;
        return out;
      }
    }
  }
  bool all_stars = true, all_sharps = true;
  for (const auto& z : stack) {
    auto p = parse_slice(z);
    all_stars = all_stars && p.kind == SliceParse::Kind::stars;
    all_sharps = all_sharps && p.kind == SliceParse::Kind::sharps;
  }
  if (all_stars) return out;
  if (all_sharps) {
    out.form = StackVerdict::Form::c;
    return out;
  }
  out.form = StackVerdict::Form::b;
  for (std::size_t i = 0; i < stack.size(); ++i) {
    auto p = parse_slice(stack[i]);
    if (p.kind == SliceParse::Kind::counter) {
      out.m = i;
      out.k = p.k;
      break;
    }
  }
  return out;
}

}  // namespace cae
