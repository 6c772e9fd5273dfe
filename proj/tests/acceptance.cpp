// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "cae/ca.hpp"
#include "cae/counting.hpp"
#include "cae/entropy.hpp"
#include "cae/macrotile.hpp"
#include "cae/robinson.hpp"
#include "cae/s_sets.hpp"
#include "cae/sft_ops.hpp"
#include "cae/streams.hpp"
#include "cae/toeplitz.hpp"

#include "density_oracle.hpp"
#include "macrotile_fixtures.hpp"
#include "oracle.hpp"
#include "slice_fixtures.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <random>
#include <sstream>
#include <string>

using namespace cae;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double s = seconds_since(t0);
  std::printf("%s %2d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, name, s, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string str(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

SftSpec hard_squares() {
  return SftSpec(Alphabet::numbered(2), 2,
                 {Pattern(2, {{{0, 0}, 1}, {{1, 0}, 1}}), Pattern(2, {{{0, 0}, 1}, {{0, 1}, 1}})}, "hard-squares");
}

std::vector<int> random_choices(std::mt19937_64& rng, int n) {
  std::vector<int> c(static_cast<std::size_t>(n));
  for (auto& b : c) b = static_cast<int>(rng() & 1);
  return c;
}

}  // namespace

int main() {
  criterion(1, "full shift entropy exactly 1 bit for r <= 20 in under 1 s", [] {
    Outcome o;
    auto t0 = Clock::now();
    auto rep = entropy_series(full_shift(1, 2), 20);
    double s = seconds_since(t0);
    if (rep.samples.size() != 20) o.fail("expected 20 samples");
    for (const auto& x : rep.samples)
      if (x.bits != 1.0) o.fail("r=" + std::to_string(x.size) + " gives " + str(x.bits));
    if (s >= 1.0) o.fail("took " + str(s) + " s");
    return o;
  });

  criterion(2, "golden mean counts F(r+2) for r <= 24, estimate within 0.02 of 0.6942", [] {
    Outcome o;
    auto t0 = Clock::now();
    auto rep = entropy_series(golden_mean(), 24);
    Count a = 1, b = 2;  // F(2), F(3)
    for (int r = 1; r <= 24; ++r) {
      Count want = b;  // F(r+2)
      const Count& got = rep.samples[static_cast<std::size_t>(r - 1)].count;
      if (got != want) o.fail("r=" + std::to_string(r) + ": " + to_string(got) + " != " + to_string(want));
      if (r <= 12 && got != Count(oracle::count(golden_mean(), r, 1, 0)))
        o.fail("r=" + std::to_string(r) + " disagrees with brute force");
      Count c = a + b;
      a = b;
      b = c;
    }
    if (std::abs(rep.raw_last - 0.6942) > 0.02) o.fail("estimate " + str(rep.raw_last));
    double s = seconds_since(t0);
    if (s >= 10.0) o.fail("took " + str(s) + " s");
    if (o.pass) o.detail = "r=24 estimate " + str(rep.raw_last);
    return o;
  });

  criterion(3, "Toeplitz letter frequencies within 2^-9 of the target on 100 windows of 2^10", [] {
    Outcome o;
    auto t0 = Clock::now();
    std::mt19937_64 rng(3003);
    const int n = 10;
    for (int trial = 0; trial < 100; ++trial) {
      int q = 2 + static_cast<int>(rng() % 3);
      Alphabet al = Alphabet::numbered(q);
      std::vector<Symbol> p(n);
      for (auto& s : p) s = static_cast<Symbol>(rng() % static_cast<unsigned>(q));
      SymbolSequence alpha(al, p);
      auto w = generate_toeplitz_window(alpha, build_one_net(random_choices(rng, n)), 1LL << n,
                                        static_cast<Symbol>(rng() % static_cast<unsigned>(q)),
                                        static_cast<long long>(rng() % 100000));
      for (Symbol s = 0; s < q; ++s) {
        Rational err = letter_frequency(w.letters, s) - frequency_target(alpha, s, n);
        if (err < 0) err = -err;
        if (err > make_rational(2, 1LL << n)) o.fail("trial " + std::to_string(trial) + " letter " + std::to_string(s));
      }
    }
    double s = seconds_since(t0);
    if (s >= 5.0) o.fail("took " + str(s) + " s");
    return o;
  });

  criterion(4, "decoder round trip on 200 fixtures against the net-enumeration oracle", [] {
    Outcome o;
    std::mt19937_64 rng(4004);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
      int n = 1 + static_cast<int>(rng() % 10);
      int q = 2 + static_cast<int>(rng() % 2);
      Alphabet al = Alphabet::numbered(q);
      std::vector<Symbol> p(static_cast<std::size_t>(n));
      for (auto& s : p) s = static_cast<Symbol>(rng() % static_cast<unsigned>(q));
      auto net = build_one_net(random_choices(rng, n));
      long long start = static_cast<long long>(rng() % 1024);
      for (Symbol c = 0; c < q; ++c) {
        auto w = generate_toeplitz_window(SymbolSequence(al, p), net, 1LL << n, c, start);
        auto v = decode_density_prefix(w.letters);
        std::string tag = "trial " + std::to_string(trial) + " uncovered " + std::to_string(c);
        if (!v) {
          o.fail(tag + ": decoder gave up");
          continue;
        }
        if (!oracle::within_allowance(p, *v)) o.fail(tag + ": outside the allowance of the generating prefix");
        auto consistent = oracle::consistent_alphas(w.letters, q);
        if (!consistent.count(p)) o.fail(tag + ": oracle misses the generating prefix");
        ++checked;
      }
    }
    if (o.pass) o.detail = std::to_string(checked) + " windows";
    return o;
  });

  criterion(5, "Robinson 33x33 tiling, cross levels 1-3 with periods 4/8/16, mutation detected", [] {
    Outcome o;
    const auto& ts = robinson_tileset();
    auto t0 = Clock::now();
    auto t = tile_rectangle(ts.spec, 33, 33);
    double s = seconds_since(t0);
    if (!t) {
      o.fail("no tiling found");
      return o;
    }
    if (s >= 60.0) o.fail("took " + str(s) + " s");
    if (!ts.spec.admits(t->pattern())) o.fail("tiling contains a forbidden domino");
    auto rep = verify_cross_net(*t, 3);
    for (int lv = 1; lv <= 3; ++lv) {
      const auto& L = rep.levels[static_cast<std::size_t>(lv)];
      if (L.period != (2 << lv)) o.fail("level " + std::to_string(lv) + " period " + std::to_string(L.period));
      if (!L.consistent() || L.truncated) o.fail("level " + std::to_string(lv) + " inconsistent");
    }
    Symbol plain = 0;
    while (ts.cross[static_cast<std::size_t>(plain)]) ++plain;
    const auto& L2 = rep.levels[2];
    int x = L2.offset_x, y = L2.offset_y;
    while (x < L2.border) x += L2.period;
    while (y < L2.border) y += L2.period;
    Tiling m = *t;
    m.tiles[static_cast<std::size_t>(y * 33 + x)] = plain;
    if (verify_cross_net(m, 3).consistent()) o.fail("mutation at (" + std::to_string(x) + "," + std::to_string(y) + ") missed");
    return o;
  });

  criterion(6, "split identity exact on full shift, golden mean and 5 random specs, lengths <= 12", [] {
    Outcome o;
    auto t0 = Clock::now();
    std::vector<std::pair<SftSpec, std::vector<int>>> cases{{full_shift(1, 2), {0, 1}}, {golden_mean(), {0, 1}}};
    std::mt19937 rng(6006);
    for (int i = 0; i < 5; ++i) {
      int q = 2 + static_cast<int>(rng() % 2);
      auto spec = oracle::random_spec(rng, 1, q, 1 + static_cast<int>(rng() % 3));
      std::vector<int> pi(static_cast<std::size_t>(q));
      for (auto& v : pi) v = static_cast<int>(rng() & 1);
      cases.push_back({spec, pi});
    }
    int windows = 0;
    for (std::size_t c = 0; c < cases.size(); ++c)
      for (int len = 1; len <= 12; ++len) {
        auto id = split_count_identity(cases[c].first, cases[c].second, RectWindow::line(len));
        if (!id.holds())
          o.fail("case " + std::to_string(c) + " length " + std::to_string(len) + ": " + to_string(id.left) +
                 " != " + to_string(id.right));
        ++windows;
      }
    double s = seconds_since(t0);
    if (s >= 30.0) o.fail("took " + str(s) + " s");
    if (o.pass) o.detail = std::to_string(windows) + " windows";
    return o;
  });

  criterion(7, "simulation bound on B x T blow-ups (B, T <= 3, l in {0,1}, k', r' <= 8); negative fails at (1,1)", [] {
    Outcome o;
    const int K = 8;
    SftSpec y = hard_squares();
    std::vector<std::future<std::string>> jobs;
    for (int B = 1; B <= 3; ++B)
      for (int T = 1; T <= 3; ++T)
        jobs.push_back(std::async(std::launch::async, [&y, B, T] {
          SftSpec x = blow_up_spec(y, B, T);
          CountGrid gx;
          for (int k = 1; k <= K; ++k)
            for (int r = 1; r <= K; ++r) gx.set(k * B, r * T, directional_counts(x, k * B, r * T));
          std::string bad;
          for (int l : {0, 1}) {
            CountGrid gy;
            for (int k = 1; k <= K; ++k)
              for (int r = 1; r <= K; ++r)
                if (!gy.has(k + 1 + 2 * l, r + 1)) gy.set(k + 1 + 2 * l, r + 1, directional_counts(y, k + 1 + 2 * l, r + 1));
            auto rep = verify_simulation_bound(gx, gy, B, T, l, K, K);
            if (!rep.passed() || rep.cells.size() != static_cast<std::size_t>(K * K))
              bad += " B=" + std::to_string(B) + ",T=" + std::to_string(T) + ",l=" + std::to_string(l);
          }
          return bad;
        }));
    for (auto& j : jobs)
      if (auto bad = j.get(); !bad.empty()) o.fail("bound violated at" + bad);
    auto [fx, fy] = simulation_grids(full_shift(2, 2), single_letter(2), 1, 1, 0, 2, 2);
    auto neg = verify_simulation_bound(fx, fy, 1, 1, 0, 2, 2);
    auto f = neg.first_failure();
    if (!f || f->k != 1 || f->r != 1) o.fail("negative fixture does not fail at (1,1)");
    return o;
  });

  criterion(8, "macrotile n=1 fixture within T(1), mail <= 2B, 9 mutations rejected in their phase, halting machine in phase 5", [] {
    Outcome o;
    auto quiet = never_halts({"0", "1"});
    auto feas = feasibility(5, 1, quiet);
    if (!feas.found) {
      o.fail("no feasible c2");
      return o;
    }
    ScheduleParams p{5, feas.c2, {}};
    auto f = consistent_fixture(1, p);
    auto run = run_schedule(f.grid, f.neighbors, quiet, f.grid.T());
    if (run.outcome != ScheduleOutcome::completed || run.traces.size() != 7)
      o.fail(std::string("fixture ") + to_string(run.outcome));
    if (run.total_steps > f.grid.T()) o.fail("total steps above T(1)");
    if (!run.traces.empty() && (run.traces[0].lmail_steps > 2 * f.grid.B || run.traces[0].rmail_steps > 2 * f.grid.B))
      o.fail("phase 1 above 2B");
    for (const auto& m : fixtures::mutation_suite()) {
      auto r = fixtures::run_mutation(m, p, quiet);
      const PhaseTrace* t = r.rejection();
      if (!t || t->phase != m.expected_phase)
        o.fail(m.field + " rejected in phase " + (t ? std::to_string(t->phase) : std::string("none")));
    }
    auto h = run_schedule(f.grid, f.neighbors, halt_at_step(1, {"0", "1"}), f.grid.T());
    if (!h.rejection() || h.rejection()->phase != 5) o.fail("halting machine not rejected in phase 5");
    if (o.pass)
      o.detail = "c2=" + std::to_string(feas.c2) + ", " + std::to_string(run.total_steps) + "/" +
                 std::to_string(f.grid.T()) + " steps, mail " + std::to_string(run.traces[0].lmail_steps) + "+" +
                 std::to_string(run.traces[0].rmail_steps);
    return o;
  });

  criterion(9, "schedule (5,2) passes all checks for n <= 4; (2,2) fails oddness at every level", [] {
    Outcome o;
    auto good = validate_schedule({5, 2, {}}, 4);
    for (const auto& l : good.levels)
      if (!l.ok()) o.fail("(5,2) fails at n=" + std::to_string(l.n));
    auto even = validate_schedule({2, 2, {}}, 4);
    for (const auto& l : even.levels)
      if (l.odd) o.fail("(2,2) odd at n=" + std::to_string(l.n));
    return o;
  });

  criterion(10, "slice checker table and Sigma2 sup 7/8 +- 1/4", [] {
    Outcome o;
    for (const auto& c : fixtures::slice_cases()) {
      std::string got = fixtures::run_slice_case(c);
      if (got != c.expected) o.fail(c.name + ": got '" + got + "', want '" + c.expected + "'");
    }
    Sigma2Stream s({Pi1Stream({Rational(1), make_rational(3, 4), make_rational(1, 2)}),
                    Pi1Stream({Rational(1), make_rational(15, 16), make_rational(7, 8)}),
                    Pi1Stream({Rational(1), make_rational(7, 8)})});
    auto e = sigma2_sup(s);
    if (e.value != make_rational(7, 8)) o.fail("sup " + to_string(e.value));
    if (e.error_bar != make_rational(1, 4)) o.fail("error bar " + to_string(e.error_bar));
    return o;
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
