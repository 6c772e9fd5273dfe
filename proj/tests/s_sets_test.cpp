#include "cae/s_sets.hpp"
#include "slice_fixtures.hpp"

#include <gtest/gtest.h>

using namespace cae;

namespace {

std::vector<Symbol> w(const std::string& s) { return parse_slice_word(s); }

}  // namespace

TEST(SliceWords, Parse) {
  EXPECT_EQ(w("*0'1'01#"), (std::vector<Symbol>{0, 1, 2, 5, 6, 7}));
  EXPECT_EQ(w("♯♯"), w("##"));
  EXPECT_EQ(slice_text(w("*3'1")), "*3'1");
  EXPECT_THROW(w("*4'"), Error);
  EXPECT_THROW(w("x"), Error);
}

TEST(SliceWords, FixtureTable) {
  for (const auto& c : fixtures::slice_cases()) EXPECT_EQ(fixtures::run_slice_case(c), c.expected) << c.name;
}

TEST(Membership, Branches) {
  auto fam = fixtures::slice_family();
  EXPECT_TRUE(s_membership_check(w("****"), fam, 8).accepted);
  auto r = s_membership_check(w("0'1'"), fam, 8);
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.position, 1);
  EXPECT_TRUE(s_membership_check(w("**0'"), fam, 8).accepted);
  EXPECT_TRUE(s_membership_check(w("**0'3'"), fam, 8).accepted);
}

TEST(Membership, PayloadMachineRejects) {
  auto fam = fixtures::slice_family();
  // 10111010 decodes to 101..., above 1/2: the comparison halts in loop 3.
  auto r = s_membership_check(w("**0'0'10111010"), fam, 8);
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.position, 4 + 8);
  EXPECT_TRUE(s_membership_check(w("*0'10111010"), fam, 8).accepted);
  auto bad = s_membership_check(w("*0'0110"), fam, 8);
  EXPECT_FALSE(bad.accepted);
  EXPECT_EQ(bad.position, 2 + 4);
}

TEST(Membership, FamilyTooShort) {
  auto fam = fixtures::slice_family();
  EXPECT_THROW(s_membership_check(w("***0'0'0'0"), fam, 8), BudgetError);
  EXPECT_TRUE(s_membership_check(w("***0'0'0'"), fam, 8).accepted);
}

TEST(SPrime, Clauses) {
  auto fam = fixtures::slice_family();
  auto same = s_prime_check(w("*2'1011"), w("*2'1011"), fam, 8);
  EXPECT_FALSE(same.accepted);
  EXPECT_EQ(same.position, 2);
  auto inc = s_prime_check(w("**0'3'0000"), w("**1'0'0000"), fam, 8);
  EXPECT_TRUE(inc.accepted);
  EXPECT_EQ(inc.clauses, (std::vector<int>{1}));
  auto carry_bad = s_prime_check(w("**0'3'0000"), w("**1'1'0000"), fam, 8);
  EXPECT_FALSE(carry_bad.accepted);
  EXPECT_EQ(carry_bad.position, 4);
  auto payload = s_prime_check(w("*0'1011"), w("*1'1001"), fam, 8);
  EXPECT_FALSE(payload.accepted);
  EXPECT_EQ(payload.position, 5);
  auto top = s_prime_check(w("*3'1011"), w("######"), fam, 8);
  EXPECT_TRUE(top.accepted);
  EXPECT_EQ(top.clauses, (std::vector<int>{2}));
  auto start = s_prime_check(w("******"), w("**0'0'00"), fam, 8);
  EXPECT_TRUE(start.accepted);
  EXPECT_EQ(start.clauses, (std::vector<int>{3}));
  auto start_bad = s_prime_check(w("******"), w("**0'1'00"), fam, 8);
  EXPECT_FALSE(start_bad.accepted);
  EXPECT_EQ(start_bad.position, 4);
  EXPECT_THROW(s_prime_check(w("**"), w("*"), fam, 8), Error);
}

// Every pair over a tiny alphabet of words, checked against a direct reading
// of the three clause definitions on complete words (k = 1, payload length 2).
TEST(SPrime, ExhaustiveAgainstDefinition) {
  auto fam = fixtures::slice_family();
  std::vector<std::string> words = {"****", "####"};
  for (int d = 0; d < 4; ++d)
    for (const char* y : {"00", "01", "10", "11"}) words.push_back("*" + std::to_string(d) + "'" + y);
  for (const auto& a : words)
    for (const auto& b : words) {
      auto za = w(a), zb = w(b);
      auto pa = parse_slice(za), pb = parse_slice(zb);
      bool s1 = pa.kind == SliceParse::Kind::counter && pb.kind == SliceParse::Kind::counter &&
                pb.digits[0] == pa.digits[0] + 1 && pa.payload == pb.payload;
      bool s2 = pa.kind == SliceParse::Kind::counter && pa.digits[0] == 3 && pb.kind == SliceParse::Kind::sharps;
      bool s3 = pa.kind == SliceParse::Kind::stars &&
                (pb.kind == SliceParse::Kind::stars || (pb.kind == SliceParse::Kind::counter && pb.digits[0] == 0));
      // "****" also stands for longer star blocks, so S1 and S2 stay open for it.
      bool open = pa.kind == SliceParse::Kind::stars && (pb.kind == SliceParse::Kind::stars || pb.kind == SliceParse::Kind::sharps);
      EXPECT_EQ(s_prime_check(za, zb, fam, 8).accepted, s1 || s2 || s3 || open) << a << " / " << b;
    }
}

TEST(Stacks, RampAndErrors) {
  auto fam = fixtures::slice_family();
  auto v = verify_slice_stack({w("*2'11"), w("*3'11"), w("####")}, fam, 8);
  EXPECT_EQ(v.form, StackVerdict::Form::b);
  EXPECT_EQ(v.m, 0u);
  EXPECT_EQ(v.k, 1);
  auto bad = verify_slice_stack({w("****"), w("#01#")}, fam, 8);
  EXPECT_EQ(bad.form, StackVerdict::Form::violation);
  EXPECT_EQ(bad.m, 1u);
  EXPECT_THROW(verify_slice_stack({}, fam, 8), Error);
  EXPECT_THROW(verify_slice_stack({w("**"), w("***")}, fam, 8), Error);
}
