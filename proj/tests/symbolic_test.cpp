#include "cae/numeric.hpp"
#include "cae/symbolic.hpp"

#include <gtest/gtest.h>

using namespace cae;

TEST(Alphabet, Basics) {
  Alphabet a({"a", "b", "c"});
  EXPECT_EQ(a.size(), 3);
  EXPECT_EQ(a.index("b"), 1);
  EXPECT_EQ(a.name(2), "c");
  EXPECT_TRUE(a.contains("a"));
  EXPECT_FALSE(a.contains("d"));
  EXPECT_EQ(Alphabet::numbered(2), Alphabet({"0", "1"}));
}

TEST(Alphabet, Errors) {
  EXPECT_THROW(Alphabet(std::vector<std::string>{}), Error);
  EXPECT_THROW(Alphabet({"a", "a"}), Error);
  try {
    Alphabet({"x"}).index("y");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
  }
  try {
    Alphabet(std::vector<std::string>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_spec);
  }
}

TEST(Pattern, Construction) {
  auto p = Pattern::grid({{0, 1}, {1, 0}});
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p.at({1, 0}), 1);
  EXPECT_EQ(p.at({0, 1}), 1);
  EXPECT_EQ(p.at({1, 1}), 0);
  EXPECT_THROW(p.at({2, 2}), Error);
  EXPECT_THROW(Pattern(1, {{{0, 1}, 0}}), Error);
  EXPECT_THROW(Pattern(2, {{{0, 0}, 0}, {{0, 0}, 1}}), Error);
  EXPECT_THROW(Pattern(3, {}), Error);
}

TEST(Pattern, NormalizedAndText) {
  Pattern p(2, {{{3, 5}, 1}, {{4, 6}, 0}});
  auto n = p.normalized();
  EXPECT_EQ(n.cells(), (std::vector<Cell>{{0, 0}, {1, 1}}));
  Alphabet a({"a", "b"});
  EXPECT_EQ(pattern_text(n, a), ".a\nb.");
  EXPECT_EQ(pattern_text(Pattern::word({0, 1, 1}), a), "abb");
  Alphabet m({"*", "0'", "#"});
  EXPECT_EQ(pattern_text(Pattern::word({0, 1, 2}), m), "* 0' #");
}

TEST(Pattern, ParseWord) {
  Alphabet a({"a", "b"});
  EXPECT_EQ(parse_word("abba", a), (std::vector<Symbol>{0, 1, 1, 0}));
  EXPECT_EQ(parse_word("a b", a), (std::vector<Symbol>{0, 1}));
  Alphabet m({"*", "0'", "#"});
  EXPECT_EQ(parse_word("* 0' #  #", m), (std::vector<Symbol>{0, 1, 2, 2}));
  EXPECT_THROW(parse_word("abc", a), Error);
}

TEST(Spec, ForbiddenNormalizedAndDeduplicated) {
  SftSpec s(Alphabet::numbered(2), 1, {Pattern(1, {{{5, 0}, 1}, {{6, 0}, 1}}), Pattern::word({1, 1})});
  ASSERT_EQ(s.forbidden().size(), 1u);
  EXPECT_EQ(s.forbidden()[0], Pattern::word({1, 1}));
  EXPECT_FALSE(s.admits(Pattern(1, {{{-3, 0}, 1}, {{-2, 0}, 1}})));
  EXPECT_TRUE(s.admits(Pattern::word({1, 0, 1})));
}

TEST(Spec, Validation) {
  EXPECT_THROW(SftSpec(Alphabet::numbered(2), 1, {Pattern::word({2})}), Error);
  EXPECT_THROW(SftSpec(Alphabet::numbered(2), 2, {Pattern::word({1})}), Error);
  EXPECT_THROW(SftSpec(Alphabet::numbered(2), 4, {}), Error);
  EXPECT_THROW(SftSpec(Alphabet(), 1, {}), Error);
}

TEST(Spec, TwoDimensionalMatchAnyTranslate) {
  // Forbid a diagonal pair of ones.
  SftSpec s(Alphabet::numbered(2), 2, {Pattern(2, {{{0, 0}, 1}, {{1, 1}, 1}})});
  EXPECT_FALSE(s.admits(Pattern::grid({{0, 0, 0}, {0, 1, 0}, {0, 0, 1}})));
  EXPECT_TRUE(s.admits(Pattern::grid({{0, 0, 1}, {0, 1, 0}, {0, 0, 0}})));
}

TEST(Projection, Examples) {
  Alphabet ab({"a", "b"}), bin({"0", "1"});
  auto id = LetterProjection::identity(ab);
  auto w = Pattern::word({0, 1, 1});
  EXPECT_EQ(apply_projection(id, w), w);
  auto c = LetterProjection::from_names(ab, bin, {{"a", "0"}, {"b", "0"}});
  EXPECT_EQ(pattern_text(apply_projection(c, Pattern::word({0, 1})), bin), "00");
  EXPECT_THROW(apply_projection(c, Pattern::word({2})), Error);
  EXPECT_THROW(LetterProjection::from_names(ab, bin, {{"a", "0"}}), Error);
  EXPECT_THROW(LetterProjection(ab, bin, {0, 2}), Error);
}

TEST(Numeric, Helpers) {
  EXPECT_EQ(to_string(pow_count(2, 100)), "1267650600228229401496703205376");
  EXPECT_DOUBLE_EQ(log2_count(Count(1024)), 10.0);
  EXPECT_NEAR(log2_count(pow_count(3, 2000)), 2000 * std::log2(3.0), 1e-9);
  EXPECT_EQ(to_string(make_rational(6, 8)), "3/4");
  EXPECT_EQ(parse_rational("3/4"), make_rational(3, 4));
  EXPECT_EQ(parse_rational("0.625"), make_rational(5, 8));
  EXPECT_EQ(parse_rational("2"), make_rational(2, 1));
  EXPECT_THROW(parse_rational("x"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}
