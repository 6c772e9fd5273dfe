#pragma once

// One row of a level-n macrotile run by a single agent through the seven
// workperiods: mail, level check, coordinate check, check transmission,
// machine steps, self-similarity and state update.

#include "cae/error.hpp"
#include "cae/machine.hpp"
#include "cae/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cae {

// ---------------------------------------------------------------- schedule

struct ScheduleParams {
  long long c1 = 5;
  long long c2 = 2;
  // |A(n)| for n = 1, 2, ...; levels past the end use n * B(n) * T(n).
  std::vector<Count> alphabet_sizes;

  Count B(int n) const { return Count(c1) * pow_count(Count(3), static_cast<unsigned>(n)); }
  Count T(int n) const { return Count(c2) * B(n); }
  Count alphabet_size(int n) const {
    if (n >= 1 && static_cast<std::size_t>(n) <= alphabet_sizes.size()) return alphabet_sizes[n - 1];
    return Count(n) * B(n) * T(n);
  }
};

struct ScheduleLevel {
  int n = 0;
  Count B, T;
  double log2_alphabet = 0;
  bool representable = false;
  bool closed_form = false;
  bool odd = false;
  bool large = false;  // B(n) >= n^2
  bool increasing = false;
  bool t_above_one = false;
  bool ok() const { return representable && closed_form && odd && large && increasing && t_above_one; }
};

struct ScheduleReport {
  ScheduleParams params;
  std::vector<ScheduleLevel> levels;
  bool passed() const {
    return std::all_of(levels.begin(), levels.end(), [](const ScheduleLevel& l) { return l.ok(); });
  }
};

namespace detail {

// B(n) rebuilt from 1^n by n triplings of the binary string of c1.
inline std::string triple_binary(const std::string& bits) {
  std::string out;
  int carry = 0;
  int prev = 0;
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    int b = *it - '0';
    int s = b + prev + carry;  // x + 2x, bit i of 2x is bit i-1 of x
    out.push_back(static_cast<char>('0' + (s & 1)));
    carry = s >> 1;
    prev = b;
  }
  int s = prev + carry;
  while (s) {
    out.push_back(static_cast<char>('0' + (s & 1)));
    s >>= 1;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline std::string to_binary(Count v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 2)));
    v /= 2;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

inline Count from_binary(const std::string& s) {
  Count v = 0;
  for (char ch : s) v = v * 2 + (ch - '0');
  return v;
}

}  // namespace detail

inline ScheduleReport validate_schedule(const ScheduleParams& p, int n_max) {
  if (n_max < 1) throw invalid_input("n_max must be at least 1");
  if (p.c1 < 1 || p.c2 < 1) throw invalid_input("c1 and c2 must be positive");
  ScheduleReport rep{p, {}};
  for (int n = 1; n <= n_max; ++n) {
    ScheduleLevel l;
    l.n = n;
    l.B = p.B(n);
    l.T = p.T(n);
    l.log2_alphabet = log2_count(p.alphabet_size(n));
    l.representable = l.log2_alphabet <= to_double(Rational(l.B));
    std::string bits = detail::to_binary(Count(p.c1));
    for (int i = 0; i < n; ++i) bits = detail::triple_binary(bits);
    l.closed_form = detail::from_binary(bits) == l.B && l.T == Count(p.c2) * l.B;
    l.odd = l.B % 2 == 1;
    l.large = l.B >= Count(n) * n;
    l.increasing = n == 1 || l.B > p.B(n - 1);
    l.t_above_one = l.T > 1;
    rep.levels.push_back(l);
  }
  return rep;
}

// ---------------------------------------------------------------- grid

inline constexpr char info_pad = '#';  // the padding letter of Info
inline constexpr char field_blank = '.';  // empty mail/work/prog slot

struct Agent {
  long long pos = 0;
  std::string state = "idle";
};

struct MacrotileGrid {
  int n = 1;
  ScheduleParams params;
  long long B = 0;
  std::vector<std::string> level;  // unary
  std::vector<long long> addr;
  std::vector<long long> age;
  std::string info;  // over {0,1,/,#}
  std::string lmail, rmail, work;
  std::string prog;  // one program bit per cell
  std::vector<std::string> check;
  Agent agent;

  long long T() const { return static_cast<long long>(params.T(n)); }
};

inline MacrotileGrid init_grid(int n, const ScheduleParams& params, const std::string& info_word,
                               const std::vector<std::string>& check_row, const std::string& prog_text) {
  if (n < 1) throw invalid_input("macrotile level must be at least 1");
  Count bc = params.B(n);
  if (bc > 100000) throw invalid_input("B(n) too large to simulate");
  long long B = static_cast<long long>(bc);
  if (static_cast<long long>(info_word.size()) > B) throw invalid_input("info word longer than B");
  if (static_cast<long long>(check_row.size()) != B) throw invalid_input("check row must have length B");
  if (static_cast<long long>(prog_text.size()) > B) throw invalid_input("program text longer than B");
  for (char ch : info_word)
    if (ch != '0' && ch != '1' && ch != '/' && ch != info_pad) throw invalid_input("info letter outside {0,1,/,#}");
  for (char ch : prog_text)
    if (ch != '0' && ch != '1') throw invalid_input("program text must be over bits");
  MacrotileGrid g;
  g.n = n;
  g.params = params;
  g.B = B;
  g.level.assign(B, std::string(n, '1'));
  g.addr.resize(B);
  for (long long i = 0; i < B; ++i) g.addr[i] = i;
  g.age.assign(B, 0);
  g.info = info_word + std::string(B - info_word.size(), info_pad);
  g.lmail.assign(B, field_blank);
  g.rmail.assign(B, field_blank);
  g.work.assign(B, field_blank);
  g.prog = prog_text + std::string(B - prog_text.size(), field_blank);
  g.check = check_row;
  return g;
}

// Info = Level'/Addr'/Age'/Prog'/Check' then # padding.
struct InfoLayout {
  std::string level, addr, age, prog, check;
  long long prog_at = 0, check_at = 0, length = 0;
};

inline std::optional<InfoLayout> parse_info(const std::string& info, std::string* why = nullptr) {
  auto fail = [&](const std::string& m) -> std::optional<InfoLayout> {
    if (why) *why = m;
    return std::nullopt;
  };
  std::size_t end = info.find(info_pad);
  std::string body = info.substr(0, end == std::string::npos ? info.size() : end);
  if (end != std::string::npos && info.find_first_not_of(info_pad, end) != std::string::npos)
    return fail("letter after # padding at " + std::to_string(info.find_first_not_of(info_pad, end)));
  std::vector<std::string> parts{""};
  std::vector<long long> starts{0};
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '/') {
      parts.emplace_back();
      starts.push_back(static_cast<long long>(i) + 1);
    } else {
      parts.back().push_back(body[i]);
    }
  }
  if (parts.size() != 5) return fail("expected 5 fields, found " + std::to_string(parts.size()));
  if (parts[0].empty() || parts[0].find('0') != std::string::npos) return fail("Level' is not unary");
  for (int f = 1; f < 5; ++f)
    if (parts[f].empty()) return fail("empty field " + std::to_string(f));
  InfoLayout l{parts[0], parts[1], parts[2], parts[3], parts[4], starts[3], starts[4],
               static_cast<long long>(body.size())};
  if (l.check.size() != 1) return fail("Check' must be one letter");
  return l;
}

inline std::string render_info(const InfoLayout& l, long long B) {
  std::string s = l.level + "/" + l.addr + "/" + l.age + "/" + l.prog + "/" + l.check;
  if (static_cast<long long>(s.size()) > B) return {};
  return s + std::string(B - s.size(), info_pad);
}

/// Prefix through the third '/': the coordinates a caravan carries.
inline std::string info_header(const std::string& info) {
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    pos = info.find('/', pos);
    if (pos == std::string::npos) {
      std::size_t end = info.find(info_pad);
      return info.substr(0, end);
    }
    ++pos;
  }
  return info.substr(0, pos);
}

// ---------------------------------------------------------------- phases

struct PhaseTrace {
  int phase = 0;
  long long steps = 0;
  bool ok = true;
  std::string reason;
  long long cell = -1;
  // phase 1 only
  long long lmail_steps = 0, rmail_steps = 0;
};

struct Neighbors {
  std::string left, right;  // Info rows of the macro-neighbours
};

inline long long mail_budget(long long B) {
  long long lg = 0;
  while ((1LL << lg) < B) ++lg;
  return 2 * B + 4 * lg;
}

struct CaravanRun {
  bool ok = true;
  long long steps = 0;
  std::string row;
  std::string reason;
};

namespace detail {

struct Emission {
  long long tick, pos, dest;
  char letter;
};

inline CaravanRun run_caravan(const std::vector<Emission>& plan, int dir, long long B) {
  struct Moving {
    long long pos, dest;
    char letter;
  };
  CaravanRun r;
  r.row.assign(B, field_blank);
  std::vector<Moving> moving;
  std::size_t next = 0;
  std::size_t parked = 0;
  long long cap = mail_budget(B);
  for (long long tick = 1; parked < plan.size(); ++tick) {
    if (tick > cap) {
      r.ok = false;
      r.steps = cap;
      r.reason = "mail incomplete after " + std::to_string(cap) + " steps";
      return r;
    }
    while (next < plan.size() && plan[next].tick == tick) {
      moving.push_back({plan[next].pos, plan[next].dest, plan[next].letter});
      ++next;
    }
    for (auto& m : moving) m.pos += dir;
    std::vector<Moving> still;
    for (const auto& m : moving) {
      if (m.pos == m.dest) {
        if (r.row[m.dest] != field_blank) {
          r.ok = false;
          r.steps = tick;
          r.reason = "collision at cell " + std::to_string(m.dest);
          return r;
        }
        r.row[m.dest] = m.letter;
        ++parked;
      } else {
        still.push_back(m);
      }
    }
    for (std::size_t i = 0; i < still.size(); ++i)
      for (std::size_t j = i + 1; j < still.size(); ++j)
        if (still[i].pos == still[j].pos) {
          r.ok = false;
          r.steps = tick;
          r.reason = "collision in transit";
          return r;
        }
    moving = std::move(still);
    r.steps = tick;
  }
  return r;
}

}  // namespace detail

/// Left neighbour's header travelling right into Lmail. Its agent walks to the
/// last header cell, then emits one letter per tick walking back.
inline CaravanRun send_lmail(const std::string& header, long long B) {
  long long L = static_cast<long long>(header.size());
  if (L > B) return {false, 0, std::string(B, field_blank), "header longer than B"};
  std::vector<detail::Emission> plan;
  for (long long j = L - 1; j >= 0; --j) plan.push_back({2 * L - 1 - j, j - B, j, header[j]});
  return detail::run_caravan(plan, +1, B);
}

/// Right neighbour's header travelling left into Rmail; emitted front to back.
inline CaravanRun send_rmail(const std::string& header, long long B) {
  long long L = static_cast<long long>(header.size());
  if (L > B) return {false, 0, std::string(B, field_blank), "header longer than B"};
  std::vector<detail::Emission> plan;
  for (long long j = 0; j < L; ++j) plan.push_back({j + 1, B + j, j, header[j]});
  return detail::run_caravan(plan, -1, B);
}

namespace detail {

inline std::string mail_word(const std::string& row) {
  std::string s;
  for (char ch : row) {
    if (ch == field_blank) break;
    s.push_back(ch);
  }
  return s;
}

struct Header {
  std::string level, addr, age;
};

inline std::optional<Header> parse_header(const std::string& h) {
  std::vector<std::string> parts{""};
  for (char ch : h) {
    if (ch == '/') parts.emplace_back();
    else if (ch == '0' || ch == '1') parts.back().push_back(ch);
    else return std::nullopt;
  }
  if (parts.size() != 4 || !parts[3].empty()) return std::nullopt;
  for (int i = 0; i < 3; ++i)
    if (parts[i].empty()) return std::nullopt;
  if (parts[0].find('0') != std::string::npos) return std::nullopt;
  return Header{parts[0], parts[1], parts[2]};
}

inline void advance_age(MacrotileGrid& g, long long steps) {
  for (auto& a : g.age) a += steps;
}

inline PhaseTrace reject(PhaseTrace t, long long cell, const std::string& why) {
  t.ok = false;
  t.cell = cell;
  t.reason = why;
  return t;
}

inline PhaseTrace phase_mail(MacrotileGrid& g, const Neighbors& nb) {
  PhaseTrace t{1};
  CaravanRun l = send_lmail(info_header(nb.left), g.B);
  CaravanRun r = send_rmail(info_header(nb.right), g.B);
  t.lmail_steps = l.steps;
  t.rmail_steps = r.steps;
  t.steps = l.steps + r.steps;
  g.lmail = l.row;
  g.rmail = r.row;
  if (!l.ok) return reject(t, 0, "Lmail: " + l.reason);
  if (!r.ok) return reject(t, 0, "Rmail: " + r.reason);
  return t;
}

inline PhaseTrace phase_level(MacrotileGrid& g) {
  PhaseTrace t{2};
  const std::string unary(g.n, '1');
  for (long long i = 0; i < g.B; ++i) {
    t.steps = i + 1;
    if (g.level[i] != unary) return reject(t, i, "Level is not 1^" + std::to_string(g.n));
    if (g.addr[i] != i) return reject(t, i, "Addr is " + std::to_string(g.addr[i]));
    if (g.age[i] != g.age[0]) return reject(t, i, "Age differs from cell 0");
    char want = i <= g.n ? '1' : i == g.n + 1 ? '/' : 0;
    if (want && g.info[i] != want) return reject(t, i, std::string("Info.Level' expects '") + want + "'");
  }
  std::string why;
  if (!parse_info(g.info, &why)) return reject(t, g.B - 1, "malformed Info: " + why);
  t.steps = 2 * (g.B - 1);
  return t;
}

// Work ends as written; only the cells this phase wrote are cleared again.
inline PhaseTrace phase_coordinates(MacrotileGrid& g) {
  PhaseTrace t{3};
  auto own = parse_info(g.info);
  if (!own) return reject(t, 0, "malformed Info");
  auto lh = parse_header(mail_word(g.lmail));
  auto rh = parse_header(mail_word(g.rmail));

  std::string b = to_binary(Count(g.params.c1));
  for (int i = 0; i <= g.n; ++i) {
    t.steps += 2 * static_cast<long long>(b.size());
    b = triple_binary(b);
  }
  Count Bn = from_binary(b);
  Count Tn = Bn * g.params.c2;
  std::string tb = to_binary(Tn);
  t.steps += 2 * static_cast<long long>(b.size() * to_binary(Count(g.params.c2)).size());
  // B(n+1) then T(n+1), one at a time in the same Work cells
  long long written = static_cast<long long>(std::max(b.size(), tb.size()));
  if (written > g.B) return reject(t, g.B - 1, "Work too short for T(n+1)");
  std::copy(b.begin(), b.end(), g.work.begin());
  std::fill(g.work.begin(), g.work.begin() + written, field_blank);
  std::copy(tb.begin(), tb.end(), g.work.begin());
  t.steps += 4 * static_cast<long long>(b.size() + tb.size());

  long long hdr = static_cast<long long>(info_header(g.info).size());
  t.steps += 2 * (hdr + static_cast<long long>(mail_word(g.lmail).size() + mail_word(g.rmail).size()));
  std::fill(g.work.begin(), g.work.begin() + written, field_blank);

  long long addr_at = static_cast<long long>(own->level.size()) + 1;
  long long age_at = addr_at + static_cast<long long>(own->addr.size()) + 1;
  Count a = from_binary(own->addr), age = from_binary(own->age);
  if (a >= Bn) return reject(t, addr_at, "Info.Addr' not below B(n+1)");
  if (age >= Tn) return reject(t, age_at, "Info.Age' not below T(n+1)");
  if (!lh) return reject(t, 0, "Lmail is not a Level'/Addr'/Age'/ header");
  if (!rh) return reject(t, 0, "Rmail is not a Level'/Addr'/Age'/ header");
  if (lh->level != own->level) return reject(t, 0, "Lmail.Level' differs");
  if (rh->level != own->level) return reject(t, 0, "Rmail.Level' differs");
  if ((from_binary(lh->addr) + 1) % Bn != a) return reject(t, addr_at, "Info.Addr' != Lmail.Addr' + 1");
  if (from_binary(lh->age) != age) return reject(t, age_at, "Info.Age' != Lmail.Age'");
  if ((a + 1) % Bn != from_binary(rh->addr)) return reject(t, addr_at, "Rmail.Addr' != Info.Addr' + 1");
  if (from_binary(rh->age) != age) return reject(t, age_at, "Info.Age' != Rmail.Age'");
  return t;
}

inline PhaseTrace phase_check(MacrotileGrid& g) {
  PhaseTrace t{4};
  auto own = parse_info(g.info);
  if (!own) return reject(t, 0, "malformed Info");
  t.steps = 2 * own->check_at;
  if (own->check != g.check[0]) return reject(t, own->check_at, "Info.Check' differs from Check at Addr 0");
  return t;
}

inline PhaseTrace phase_machine(MacrotileGrid& g, const DensityMachine& m) {
  PhaseTrace t{5};
  for (long long i = 0; i < g.B; ++i) {
    t.steps = i + 1;
    if (g.work[i] != field_blank) return reject(t, i, "Work not blank");
  }
  t.steps = 2 * (g.B - 1);
  MachineRun run = run_machine(m, g.check, g.n);
  t.steps += run.steps;
  if (run.halted) return reject(t, 0, "machine halted after " + std::to_string(run.steps) + " steps");
  return t;
}

inline PhaseTrace phase_prog(MacrotileGrid& g) {
  PhaseTrace t{6};
  auto own = parse_info(g.info);
  if (!own) return reject(t, 0, "malformed Info");
  long long p0 = own->prog_at;
  long long len = static_cast<long long>(own->prog.size());
  for (long long j = 0; j <= len && j < g.B; ++j) {
    t.steps += 2 * p0;
    char want = j < len ? own->prog[j] : field_blank;
    if (g.prog[j] != want) return reject(t, p0 + j, "Info.Prog' differs from Prog at letter " + std::to_string(j));
  }
  return t;
}

inline PhaseTrace phase_update(MacrotileGrid& g) {
  PhaseTrace t{7};
  auto own = parse_info(g.info);
  if (!own) return reject(t, 0, "malformed Info");
  auto lh = parse_header(mail_word(g.lmail));
  auto rh = parse_header(mail_word(g.rmail));
  if (!lh || !rh) return reject(t, 0, "mail missing");
  t.steps = 4 * own->length + 2 * (g.B - 1);
  if (own->prog.size() % 4) return reject(t, own->prog_at, "Prog' is not a list of 4-bit entries");
  std::string key{lh->age.back(), own->check[0], rh->age.back()};
  std::optional<char> out;
  for (std::size_t e = 0; e < own->prog.size(); e += 4)
    if (own->prog.compare(e, 3, key) == 0) {
      out = own->prog[e + 3];
      break;
    }
  if (!out) return reject(t, own->prog_at, "no Prog' entry for " + key);
  Count Tn = g.params.T(g.n + 1);
  InfoLayout next = *own;
  next.check = std::string(1, *out);
  next.age = to_binary((from_binary(own->age) + 1) % Tn);
  std::string row = render_info(next, g.B);
  if (row.empty()) return reject(t, g.B - 1, "updated Info longer than B");
  g.info = row;
  std::fill(g.lmail.begin(), g.lmail.end(), field_blank);
  std::fill(g.rmail.begin(), g.rmail.end(), field_blank);
  std::fill(g.work.begin(), g.work.end(), field_blank);
  return t;
}

}  // namespace detail

inline PhaseTrace run_phase(MacrotileGrid& g, int phase, const Neighbors& nb, const DensityMachine& m) {
  PhaseTrace t;
  switch (phase) {
    case 1: t = detail::phase_mail(g, nb); break;
    case 2: t = detail::phase_level(g); break;
    case 3: t = detail::phase_coordinates(g); break;
    case 4: t = detail::phase_check(g); break;
    case 5: t = detail::phase_machine(g, m); break;
    case 6: t = detail::phase_prog(g); break;
    case 7: t = detail::phase_update(g); break;
    default: throw invalid_input("phase id must be 1..7");
  }
  detail::advance_age(g, t.steps);
  return t;
}

// ---------------------------------------------------------------- schedule run

enum class ScheduleOutcome { completed, rejected, infeasible };

inline const char* to_string(ScheduleOutcome o) {
  return o == ScheduleOutcome::completed ? "completed" : o == ScheduleOutcome::rejected ? "rejected" : "infeasible";
}

struct ScheduleRun {
  MacrotileGrid grid;
  std::vector<PhaseTrace> traces;
  ScheduleOutcome outcome = ScheduleOutcome::completed;
  long long total_steps = 0;
  long long limit = 0;

  const PhaseTrace* rejection() const {
    for (const auto& t : traces)
      if (!t.ok) return &t;
    return nullptr;
  }
};

// Called after each phase with the phase id; used to inject faults mid-run.
using PhaseHook = std::function<void(MacrotileGrid&, int)>;

/// Phases 1..7 in order, stopping at the first reject. The step cap is
/// min(budget, T(n)); going past it is reported as infeasible.
inline ScheduleRun run_schedule(MacrotileGrid grid, const Neighbors& nb, const DensityMachine& m, long long budget,
                                const PhaseHook& after = {}) {
  ScheduleRun r{std::move(grid), {}, ScheduleOutcome::completed, 0, 0};
  r.limit = std::min(budget, r.grid.T());
  for (int p = 1; p <= 7; ++p) {
    PhaseTrace t = run_phase(r.grid, p, nb, m);
    r.total_steps += t.steps;
    r.traces.push_back(t);
    if (!t.ok) {
      r.outcome = ScheduleOutcome::rejected;
      return r;
    }
    if (r.total_steps > r.limit) {
      r.outcome = ScheduleOutcome::infeasible;
      return r;
    }
    if (after) after(r.grid, p);
  }
  return r;
}

struct MacrotileFixture {
  MacrotileGrid grid;
  Neighbors neighbors;
};

inline std::vector<std::string> toeplitz_check_row(long long B) {
  long long len = 1;
  int depth = 0;
  while (len < B) len <<= 1, ++depth;
  Alphabet bits({"0", "1"});
  SymbolSequence alpha(bits, {1, 0, 1}, Symbol(1));
  ToeplitzWindow w = generate_toeplitz_window(alpha, build_one_net(std::vector<int>(depth, 0)), len, 0);
  std::vector<std::string> row;
  for (long long i = 0; i < B; ++i) row.push_back(bits.name(w.letters[i]));
  return row;
}

/// One entry (0,c,0 -> c) with c the letter under Addr 0.
inline std::string fixture_program(const std::string& c) { return "0" + c + "0" + c; }

/// A self-consistent level-n tile at Addr' 1, Age' 0, between Addr' 0 and 2.
inline MacrotileFixture consistent_fixture(int n, const ScheduleParams& params) {
  long long B = static_cast<long long>(params.B(n));
  auto check = toeplitz_check_row(B);
  std::string prog = fixture_program(check[0]);
  std::string lvl(n + 1, '1');
  std::string tail = "/0/" + prog + "/" + check[0];
  MacrotileFixture f{init_grid(n, params, lvl + "/1" + tail, check, prog), {}};
  f.neighbors.left = lvl + "/0" + tail;
  f.neighbors.right = lvl + "/10" + tail;
  return f;
}

struct FeasibilityReport {
  long long c1 = 0;
  long long c2 = 0;
  long long steps = 0;
  long long T = 0;
  bool found = false;
};

/// Smallest c2 for which the level-n consistent fixture completes within T(n).
inline FeasibilityReport feasibility(long long c1, int n, const DensityMachine& m, long long c2_max = 64) {
  FeasibilityReport rep{c1};
  for (long long c2 = 1; c2 <= c2_max; ++c2) {
    ScheduleParams p{c1, c2, {}};
    auto f = consistent_fixture(n, p);
    ScheduleRun run = run_schedule(f.grid, f.neighbors, m, f.grid.T());
    rep.c2 = c2;
    rep.steps = run.total_steps;
    rep.T = f.grid.T();
    if (run.outcome == ScheduleOutcome::completed) {
      rep.found = true;
      return rep;
    }
  }
  return rep;
}

}  // namespace cae
