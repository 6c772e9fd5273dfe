#include "cae/ca.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cae;

namespace {

using LocalFn = std::function<Symbol(Symbol, Symbol, Symbol)>;

// Cell value at time t, position i, computed straight from the initial word.
Symbol cell_at(const LocalFn& f, const std::vector<Symbol>& init, int t, int i) {
  if (t == 0) return init[static_cast<std::size_t>(i)];
  return f(cell_at(f, init, t - 1, i - 1), cell_at(f, init, t - 1, i), cell_at(f, init, t - 1, i + 1));
}

long long column_oracle(const LocalFn& f, int k, int steps) {
  int width = k + 2 * steps;
  std::set<std::vector<Symbol>> blocks;
  for (int code = 0; code < (1 << width); ++code) {
    std::vector<Symbol> init(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) init[static_cast<std::size_t>(i)] = (code >> (width - 1 - i)) & 1;
    std::vector<Symbol> block;
    for (int t = 0; t <= steps; ++t)
      for (int j = 0; j < k; ++j) block.push_back(cell_at(f, init, t, steps + j));
    blocks.insert(block);
  }
  return static_cast<long long>(blocks.size());
}

std::vector<Symbol> bits(const std::string& s) { return parse_word(s, Alphabet::numbered(2)); }

}  // namespace

TEST(Rule, TotalityAndAbsorption) {
  Alphabet a({"0", "1", "⊥"});
  EXPECT_THROW(CaRule(Alphabet::numbered(2), 1, {0, 1}), Error);
  EXPECT_THROW(CaRule::from_function(a, 1, [](const std::vector<Symbol>&) { return 0; }), Error);
  auto ok = CaRule::from_function(a, 1, [](const std::vector<Symbol>& n) {
    for (auto s : n)
      if (s == 2) return 2;
    return n[1];
  });
  EXPECT_EQ(ok.bottom(), std::optional<Symbol>(2));
}

TEST(Step, Examples) {
  auto x = xor_rule();
  EXPECT_EQ(step(x, bits("0110")).cells, bits("11"));
  auto id = identity_rule(Alphabet::numbered(2));
  EXPECT_EQ(step(id, bits("01101")).cells, bits("110"));
  Alphabet abc({"a", "b", "c"});
  auto sh = shift_rule(abc);
  auto r = step(sh, parse_word("abc", abc), Boundary::periodic);
  EXPECT_EQ(r.cells, parse_word("bca", abc));
  EXPECT_EQ(r.mode, Boundary::periodic);
  EXPECT_THROW(step(x, bits("01")), Error);
  EXPECT_THROW(step(x, {0, 3, 1}), Error);
}

TEST(Step, CommutesWithShiftOnPeriodicRows) {
  std::mt19937 rng(21);
  auto x = xor_rule();
  auto sh = shift_rule(Alphabet::numbered(2));
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Symbol> row(3 + rng() % 12);
    for (auto& s : row) s = static_cast<Symbol>(rng() & 1);
    EXPECT_EQ(step(x, step(sh, row, Boundary::periodic).cells, Boundary::periodic).cells,
              step(sh, step(x, row, Boundary::periodic).cells, Boundary::periodic).cells);
  }
}

TEST(SpaceTime, PascalCone) {
  std::vector<Symbol> init(8, 0);
  init[4] = 1;
  auto b = space_time(xor_rule(), init, 4, Boundary::periodic);
  ASSERT_EQ(b.rows.size(), 5u);
  EXPECT_EQ(b.rows[1], bits("00010100"));
  EXPECT_EQ(b.rows[2], bits("00100010"));
  EXPECT_EQ(b.rows[3], bits("01010101"));
  EXPECT_EQ(b.rows[4], bits("00000000"));
  auto id = space_time(identity_rule(Alphabet::numbered(2)), bits("0110"), 3, Boundary::periodic);
  for (const auto& row : id.rows) EXPECT_EQ(row, bits("0110"));
  EXPECT_THROW(space_time(xor_rule(), bits("0110"), 2), Error);
}

TEST(SpaceTime, BottomConeWidens) {
  auto rule = ca_from_sft(xor_sft());
  Symbol bot = *rule.bottom();
  std::vector<Symbol> init(15, 0);
  init[7] = bot;
  auto b = space_time(rule, init, 3, Boundary::periodic);
  for (int t = 0; t <= 3; ++t)
    for (int i = 0; i < 15; ++i)
      EXPECT_EQ(b.rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] == bot, std::abs(i - 7) <= t);
}

TEST(FromSft, Examples) {
  auto rule = ca_from_sft(xor_sft());
  EXPECT_EQ(rule.alphabet().size(), 3);
  for (Symbol a = 0; a < 2; ++a)
    for (Symbol b = 0; b < 2; ++b)
      for (Symbol c = 0; c < 2; ++c) EXPECT_EQ(rule.apply({a, b, c}), a ^ c);
  auto single = ca_from_sft(single_letter(2));
  EXPECT_EQ(single.apply({0, 0, 0}), 0);
  try {
    ca_from_sft(full_shift(2, 2));
    FAIL() << "full shift accepted";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("admits both 0 and 1"), std::string::npos);
  }
}

TEST(FromSft, ReproducesAdmissibleStrips) {
  auto spec = xor_sft();
  auto rule = ca_from_sft(spec);
  for (int w = 3; w <= 6; ++w)
    for (const auto& key : oracle::language(spec, w, 2, 0)) {
      std::vector<Symbol> bottom(key.begin(), key.begin() + w);
      auto next = step(rule, bottom).cells;
      for (int i = 1; i + 1 < w; ++i) EXPECT_EQ(next[static_cast<std::size_t>(i - 1)], key[static_cast<std::size_t>(w + i)]);
    }
}

TEST(ColumnCount, Examples) {
  auto two = Alphabet::numbered(2);
  EXPECT_EQ(ca_column_count(shift_rule(two), 1, 3), Count(16));
  EXPECT_EQ(ca_column_count(identity_rule(two), 1, 3), Count(2));
  EXPECT_EQ(ca_column_count(xor_rule(), 1, 2), Count(column_oracle([](Symbol a, Symbol, Symbol c) { return a ^ c; }, 1, 2)));
  EXPECT_THROW(ca_column_count(xor_rule(), 1, 8, SearchBudget{100}), BudgetError);
}

TEST(ColumnCount, MatchesOracleAndIsMonotone) {
  std::vector<LocalFn> fns = {[](Symbol a, Symbol, Symbol c) { return a ^ c; },
                              [](Symbol a, Symbol b, Symbol c) { return (a + b + c) >= 2 ? 1 : 0; },
                              [](Symbol a, Symbol b, Symbol c) { return a ^ (b | c); }};
  for (const auto& f : fns) {
    auto rule = CaRule::from_function(Alphabet::numbered(2), 1,
                                      [&](const std::vector<Symbol>& n) { return f(n[0], n[1], n[2]); });
    for (int k = 1; k <= 3; ++k) {
      Count prev = 0;
      for (int t = 0; t <= 3; ++t) {
        Count c = ca_column_count(rule, k, t);
        EXPECT_EQ(c, Count(column_oracle(f, k, t)));
        EXPECT_GE(c, prev);
        prev = c;
      }
    }
    for (int t1 = 1; t1 <= 2; ++t1)
      for (int t2 = 1; t2 <= 2; ++t2)
        EXPECT_LE(ca_column_count(rule, 1, t1 + t2), ca_column_count(rule, 1, t1) * ca_column_count(rule, 1, t2));
  }
}

TEST(Split, Examples) {
  auto one_word = SftSpec(Alphabet::numbered(2), 1,
                          {Pattern::word(bits("00")), Pattern::word(bits("11")), Pattern::word(bits("01"))});
  EXPECT_EQ(count_patterns(split_construction(one_word, {0, 1}).spec, RectWindow::line(2)), Count(2));
  auto flat = split_construction(golden_mean(), {0, 0});
  EXPECT_EQ(flat.spec.alphabet().size(), 2);
  for (int n = 1; n <= 8; ++n)
    EXPECT_EQ(count_patterns(flat.spec, RectWindow::line(n)), count_patterns(golden_mean(), RectWindow::line(n)));
  auto full = split_construction(full_shift(1, 2), {0, 1});
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(count_patterns(full.spec, RectWindow::line(n)), pow_count(3, n));
  EXPECT_THROW(split_construction(golden_mean(), {0, 2}), Error);
  EXPECT_THROW(split_construction(golden_mean(), {0}), Error);
}

TEST(Split, IdentityExamples) {
  auto f = split_count_identity(full_shift(1, 2), {0, 1}, RectWindow::line(2));
  EXPECT_EQ(f.left, Count(9));
  EXPECT_EQ(f.right, Count(9));
  auto zero = split_count_identity(single_letter(1), {0}, RectWindow::line(5));
  EXPECT_EQ(zero.left, Count(1));
  EXPECT_TRUE(zero.holds());
  auto g = split_count_identity(golden_mean(), {0, 1}, RectWindow::line(3));
  EXPECT_EQ(g.left, Count(11));
  EXPECT_EQ(g.right, Count(11));
}

TEST(Split, IdentityAgainstBruteForce) {
  std::mt19937 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    int q = 2 + static_cast<int>(rng() % 2);
    auto spec = oracle::random_spec(rng, 1, q, 1 + static_cast<int>(rng() % 3));
    std::vector<int> pi(static_cast<std::size_t>(q));
    for (auto& v : pi) v = static_cast<int>(rng() & 1);
    for (int n = 1; n <= 7; ++n) {
      auto id = split_count_identity(spec, pi, RectWindow::line(n));
      EXPECT_TRUE(id.holds());
      long long sum = 0;
      for (const auto& w : oracle::language(spec, n, 1, 0)) {
        int occ = 0;
        for (auto s : w) occ += pi[static_cast<std::size_t>(s)];
        sum += 1LL << occ;
      }
      EXPECT_EQ(id.right, Count(sum));
      if (n <= 5) EXPECT_EQ(id.left, Count(oracle::count(split_construction(spec, pi).spec, n, 1, 0)));
    }
  }
}

TEST(Split, RuleCarriesBits) {
  auto rule = split_rule(xor_rule(), {0, 1});
  // Letters: (0,0) (1,0) (1,1).
  EXPECT_EQ(rule.alphabet().size(), 3);
  // base 1 0 1 -> 0: bit forced 0.
  EXPECT_EQ(rule.apply({1, 0, 2}), 0);
  // base 1 1 0 -> 1, bit taken from the right neighbour (bit 0).
  EXPECT_EQ(rule.apply({2, 1, 0}), 1);
  // base 0 0 1 -> 1, right neighbour has bit 1.
  EXPECT_EQ(rule.apply({0, 0, 2}), 2);
  auto bot = split_rule(ca_from_sft(xor_sft()), {0, 1, 0});
  ASSERT_TRUE(bot.bottom().has_value());
}
