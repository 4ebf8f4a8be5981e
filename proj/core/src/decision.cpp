#include "cohsys/decision.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

namespace cohsys {

namespace {

constexpr std::array<Target, 4> kTargets = {Target::GL, Target::U, Target::US, Target::B};
// U first: every promotion reads U (or U^s) at the same degree.
constexpr std::array<Target, 4> kClosureOrder = {Target::U, Target::US, Target::B, Target::GL};

std::size_t slot(Target t) { return static_cast<std::size_t>(t); }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

/// Everything a direct rule may look at.
struct Cell {
  const CurveContext& ctx;
  Integer g;
  Integer n;
  Integer d;
  Integer beta;
};

struct Emission {
  Target target;
  Status status;
  std::string text;
};

class Emitter {
 public:
  explicit Emitter(std::vector<Emission>& out) : out_(out) {}
  void operator()(Target t, Status s, std::string text) { out_.push_back({t, s, std::move(text)}); }
  void all(Status s, const std::string& text) {
    for (Target t : kTargets) (*this)(t, s, text);
  }

 private:
  std::vector<Emission>& out_;
};

using DirectFn = std::function<void(const Cell&, Emitter&)>;

struct RuleEntry {
  RuleInfo info;
  DirectFn fire;  // empty for closure rules
};

std::string type_str(const Integer& n, const Integer& d) {
  std::ostringstream os;
  os << '(' << n << ',' << d << ',' << (n + 1) << ')';
  return os.str();
}

std::string fact(Target t, const Integer& n, const Integer& d, Status s = Status::Nonempty) {
  return std::string(to_string(t)) + type_str(n, d) + ' ' + std::string(to_string(s));
}

std::string describe(const Cell& c) {
  std::ostringstream os;
  os << "g=" << c.g << " n=" << c.n << " d=" << c.d << " β=" << c.beta;
  return os.str();
}

bool in_set(const Integer& d, std::initializer_list<Integer> values) {
  return std::find(values.begin(), values.end(), d) != values.end();
}

/// Possible exception degrees for g = 4, 5 and n >= 5.
std::vector<Integer> g45_exceptions(const Integer& g, const Integer& n) {
  if (g == Integer(4)) return {2 * n + 2, 2 * n + 3, 3 * n + 2, 3 * n + 3};
  if (n == Integer(5)) return {Integer(12), Integer(13), Integer(17), Integer(18)};
  return {2 * n + 2, 2 * n + 3, 2 * n + 4, 3 * n + 2, 3 * n + 3, 3 * n + 4};
}

RuleHypotheses hyp(std::int64_t min_g, std::optional<std::int64_t> max_g,
                   std::optional<std::int64_t> petri_from) {
  return RuleHypotheses{min_g, max_g, petri_from};
}

const std::vector<RuleEntry>& table() {
  static const std::vector<RuleEntry> entries = [] {
    std::vector<RuleEntry> t;
    const auto petri = std::optional<std::int64_t>(0);
    const auto none = std::optional<std::int64_t>();

    t.push_back({{std::string(rules::kRank1), "§1",
                  "n = 1: G(α;1,d,n+1) is the classical G^n_d, non-empty iff β ≥ 0",
                  hyp(0, none, 3), false, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.n != Integer(1)) return;
                   if (c.beta.sign() >= 0) {
                     emit.all(Status::Nonempty,
                              "§1: rank one, coincides with the classical variety of linear "
                              "systems (β ≥ 0)");
                   } else {
                     emit.all(Status::Empty,
                              "§1: rank one, classical linear systems with β < 0 do not exist");
                   }
                 }});

    t.push_back({{std::string(rules::kEmptyBeta), "Prop. 6.1",
                  "Petri curve, β < 0: G(α) = empty for all α > 0", hyp(2, none, petri),
                  false, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.beta.sign() < 0) {
                     emit.all(Status::Empty, "Prop. 6.1: Petri curve and β < 0, so G(α) = "
                                             "empty for all α > 0");
                   }
                 }});

    t.push_back({{std::string(rules::kGL), "Thm. 3.1(1)", "G_L non-empty iff β ≥ 0",
                  hyp(2, none, petri), false, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.beta.sign() >= 0) {
                     emit(Target::GL, Status::Nonempty,
                          "Thm. 3.1(1): G(α) ≠ empty if and only if β ≥ 0");
                   } else {
                     emit(Target::GL, Status::Empty,
                          "Thm. 3.1(1): G(α) ≠ empty if and only if β ≥ 0 (β < 0)");
                   }
                 }});

    t.push_back({{std::string(rules::kG0), "§8",
                  "genus 0: no stable bundles of rank ≥ 2; U^s ≠ empty iff n | d, d ≥ n",
                  hyp(0, 0, none), false, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.n < Integer(2)) return;
                   const std::string stable = "§8 (genus 0): there exist no stable bundles of rank ≥ 2";
                   emit(Target::U, Status::Empty, stable);
                   emit(Target::B, Status::Empty, stable);
                   if (c.d < c.n) {
                     emit(Target::US, Status::Empty,
                          "§8 (genus 0): β ≥ 0 is equivalent to d ≥ n (here d < n)");
                   } else if (!floor_mod(c.d, c.n).is_zero()) {
                     emit(Target::US, Status::Empty,
                          "§8 (genus 0): d is not divisible by n, there exist no semistable bundles");
                   } else {
                     emit(Target::US, Status::Nonempty,
                          "§8 (genus 0): d is divisible by n and d ≥ n, U^s ≠ empty");
                   }
                 }});

    t.push_back({{std::string(rules::kG1), "Thm. 8.1",
                  "genus 1: U^s iff d ≥ n+1; U iff d ≥ n+1 and gcd(n,d) = 1", hyp(1, 1, none),
                  false, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.n < Integer(2)) return;
                   const bool big = c.d >= c.n + 1;
                   const bool coprime = gcd(c.n, c.d) == Integer(1);
                   emit(Target::US, big ? Status::Nonempty : Status::Empty,
                        big ? "Thm. 8.1: U^s(n,d,n+1) ≠ empty since d ≥ n+1"
                            : "Thm. 8.1: U^s(n,d,n+1) = empty since d < n+1");
                   if (big && coprime) {
                     emit(Target::U, Status::Nonempty, "Thm. 8.1: d ≥ n+1 and gcd(n,d) = 1");
                   } else {
                     emit(Target::U, Status::Empty,
                          big ? "Thm. 8.1: gcd(n,d) ≠ 1" : "Thm. 8.1: d < n+1");
                   }
                   if (!coprime) {
                     emit(Target::B, Status::Empty,
                          "Thm. 8.1: on an elliptic curve stable bundles exist iff gcd(n,d) = 1");
                   } else if (!big) {
                     emit(Target::B, Status::Empty,
                          "Thm. 8.1: a stable bundle of degree d > 0 on an elliptic curve has "
                          "h^0 = d < n+1 (Riemann-Roch)");
                   }
                 }});

    t.push_back({{std::string(rules::kG2), "Thm. 8.2",
                  "genus 2: U^s iff d ≥ n+2; U iff d ≥ n+2 and d ≠ 2n (no Petri hypothesis)",
                  hyp(2, 2, none), false, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.n < Integer(2)) return;
                   const bool big = c.d >= c.n + 2;
                   emit(Target::US, big ? Status::Nonempty : Status::Empty,
                        big ? "Thm. 8.2: d ≥ n+2" : "Thm. 8.2: d < n+2");
                   if (!big) {
                     emit(Target::U, Status::Empty, "Thm. 8.2: d < n+2");
                   } else if (c.d == 2 * c.n) {
                     emit(Target::U, Status::Empty, "Thm. 8.2: d ≠ 2n");
                     emit(Target::B, Status::Empty,
                          "Thm. 8.2: a bundle of rank n, degree 2n with h^0 ≥ n+1 on a genus 2 "
                          "curve is not stable");
                   } else {
                     emit(Target::U, Status::Nonempty, "Thm. 8.2: d ≥ n+2, d ≠ 2n");
                   }
                 }});

    t.push_back({{std::string(rules::kWindow), "Prop. 6.4",
                  "g+n-[g/(n+1)] ≤ d ≤ g+n, (g,n) ≠ (2,2): U ≠ empty", hyp(3, none, petri),
                  false, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.g == Integer(2) && c.n == Integer(2)) return;
                   if (c.d >= min_degree_generated(c.ctx, c.n) && c.d <= c.g + c.n) {
                     emit(Target::U, Status::Nonempty, "Prop. 6.4: g+n-[g/(n+1)] ≤ d ≤ g+n");
                   }
                 }});

    t.push_back({{std::string(rules::kBigG), "Prop. 6.5", "g ≥ n^2-1 and β ≥ 0: U ≠ empty",
                  hyp(2, none, petri), false, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.beta.sign() >= 0 && c.g >= c.n * c.n - 1) {
                     emit(Target::U, Status::Nonempty, "Prop. 6.5: g ≥ n^2-1 and β ≥ 0");
                   }
                 }});

    t.push_back({{std::string(rules::kD1), "Prop. 6.6",
                  "U^s ≠ empty at d = us_existence_degree; U ≠ empty for d ≥ d1",
                  hyp(2, none, petri), false, false},
                 [](const Cell& c, Emitter& emit) {
                   const Integer d0 = us_existence_degree(c.ctx, c.n);
                   const Integer d1 = u_existence_degree(c.ctx, c.n);
                   if (c.d == d0) {
                     emit(Target::US, Status::Nonempty,
                          "Prop. 6.6: U^s(n,d_0,n+1) ≠ empty with d_0 = " + d0.str());
                   }
                   if (c.d >= d1) {
                     emit(Target::U, Status::Nonempty, "Prop. 6.6: d ≥ d_1 = " + d1.str());
                   }
                 }});

    t.push_back({{std::string(rules::kExt), "Props. 6.8-6.10",
                  "n ≥ 3, g+n < d < g+n+g/(n-1), d/n < 2g/(2n-1)+2: no destabilizing extension, "
                  "U ≠ empty",
                  hyp(2, none, petri), true, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.n < Integer(3)) return;
                   const Integer& g = c.g;
                   const Integer& n = c.n;
                   const Integer& d = c.d;
                   const bool above = d > g + n;
                   const bool below = (d - g - n) * (n - 1) < g;
                   const bool slope = d * (2 * n - 1) < 2 * g * n + 2 * n * (2 * n - 1);
                   if (above && below && slope) {
                     emit(Target::U, Status::Nonempty,
                          "Props. 6.8-6.10: d > g+n, d < g+n+g/(n-1) and d/n < 2g/(2n-1)+2");
                   }
                 }});

    t.push_back({{std::string(rules::kN234), "Thms. 7.1-7.3",
                  "g ≥ 3, n in {2,3,4}: U(n,d,n+1) ≠ empty iff β ≥ 0", hyp(3, none, petri),
                  true, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.beta.sign() < 0 || c.n < Integer(2) || c.n > Integer(4)) return;
                   const std::string thm = c.n == Integer(2)   ? "Thm. 7.1"
                                           : c.n == Integer(3) ? "Thm. 7.2"
                                                               : "Thm. 7.3";
                   emit(Target::U, Status::Nonempty,
                        thm + ": U" + type_str(c.n, c.d) + " ≠ empty if and only if β ≥ 0");
                 }});

    t.push_back({{std::string(rules::kP73), "Prop. 7.3", "g = 3, n = 4, d in {8,9,12}: U ≠ empty",
                  hyp(3, 3, petri), true, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.n == Integer(4) && in_set(c.d, {8, 9, 12})) {
                     emit(Target::U, Status::Nonempty, "Prop. 7.3: g = 3, d = 8, 9 or 12");
                   }
                 }});

    t.push_back({{std::string(rules::kP74), "Prop. 7.4", "g = 6, n = 4, d in {12,16}: U ≠ empty",
                  hyp(6, 6, petri), true, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.n == Integer(4) && in_set(c.d, {12, 16})) {
                     emit(Target::U, Status::Nonempty, "Prop. 7.4: g = 6, d = 12 or 16");
                   }
                 }});

    t.push_back({{std::string(rules::kP75), "Prop. 7.5",
                  "g in {3,4}, n = 4, d in {10,14}: U ≠ empty", hyp(3, 4, petri), true, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.n == Integer(4) && in_set(c.d, {10, 14})) {
                     emit(Target::U, Status::Nonempty, "Prop. 7.5: g = 3 or 4, d = 10 or 14");
                   }
                 }});

    t.push_back({{std::string(rules::kG3Hi), "Thm. 8.3",
                  "g = 3, n ≥ 5, β ≥ 0: U ≠ empty except possibly d = 2n+2",
                  hyp(3, 3, petri), false, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.n < Integer(5) || c.beta.sign() < 0) return;
                   if (c.d == 2 * c.n + 2) {
                     emit(Target::U, Status::Open,
                          "Thm. 8.3: except possibly when n ≥ 5, d = 2n+2");
                   } else {
                     emit(Target::U, Status::Nonempty, "Thm. 8.3: genus 3, β ≥ 0, d ≠ 2n+2");
                   }
                 }});

    t.push_back({{std::string(rules::kG45Hi), "Remark 8.5",
                  "g in {4,5}, n ≥ 5, β ≥ 0: U ≠ empty outside the listed exceptions",
                  hyp(4, 5, petri), false, false},
                 [](const Cell& c, Emitter& emit) {
                   if (c.n < Integer(5) || c.beta.sign() < 0) return;
                   const auto ex = g45_exceptions(c.g, c.n);
                   if (std::find(ex.begin(), ex.end(), c.d) != ex.end()) {
                     emit(Target::U, Status::Open,
                          "Remark 8.5: possible exception for g = " + c.g.str() + ", n = " +
                              c.n.str() + ", d = " + c.d.str());
                   } else {
                     emit(Target::U, Status::Nonempty,
                          "Remark 8.5: g = " + c.g.str() + ", n ≥ 5, β ≥ 0, d outside the "
                          "exception list");
                   }
                 }});

    t.push_back({{std::string(rules::kSpecial), "Remark 7.5",
                  "G(α;3,7,5) = empty for all α > 0 when g ≥ 3 (type with k ≠ n+1)",
                  hyp(3, none, petri), false, false},
                 {}});

    t.push_back({{std::string(rules::kPromote), "§6",
                  "U is contained in U^s, U^s in G_L, and U ≠ empty implies B ≠ empty",
                  hyp(0, none, none), false, true},
                 {}});
    t.push_back({{std::string(rules::kMod), "Prop. 6.7",
                  "U(n,na,n+1) ≠ empty implies U(n,d,n+1) ≠ empty for d > na, d = +-1 mod n",
                  hyp(0, none, none), false, true},
                 {}});
    t.push_back({{std::string(rules::kTensor), "Remark 2.2",
                  "tensoring by an effective line bundle of degree 1: d -> d+n",
                  hyp(0, none, none), false, true},
                 {}});
    t.push_back({{std::string(rules::kInterval), "Remark 2.3",
                  "non-empty on [a,b] with b-a ≥ n-1 implies non-empty for all d ≥ a",
                  hyp(0, none, none), false, true},
                 {}});
    return t;
  }();
  return entries;
}

bool hypotheses_hold(const RuleHypotheses& h, const CurveContext& ctx) {
  const Integer& g = ctx.genus;
  if (g < Integer(h.min_genus)) return false;
  if (h.max_genus && g > Integer(*h.max_genus)) return false;
  if (h.petri_from_genus && g >= Integer(*h.petri_from_genus) && !ctx.petri) return false;
  return true;
}

const RuleInfo& info_of(std::string_view id) {
  for (const auto& e : table()) {
    if (e.info.id == id) return e.info;
  }
  throw std::logic_error("unknown rule " + std::string(id));
}

Citation closure_step(std::string_view id, std::string text, std::vector<std::string> premises) {
  return Citation{std::string(id), std::move(text), std::move(premises)};
}

std::vector<Citation> chain_with(Citation head, const std::vector<Citation>& tail) {
  std::vector<Citation> out;
  out.reserve(tail.size() + 1);
  out.push_back(std::move(head));
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

/// Per-cell scratch state while the column is built.
struct Work {
  std::array<std::vector<Citation>, 4> nonempty;
  std::array<std::vector<Citation>, 4> empty;
  std::array<std::vector<Citation>, 4> exceptions;
  std::array<std::vector<std::string>, 4> disabled_hits;
};

}  // namespace

std::string_view to_string(Target t) {
  switch (t) {
    case Target::GL: return "GL";
    case Target::U: return "U";
    case Target::US: return "US";
    case Target::B: return "B";
  }
  return "?";
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Nonempty: return "NONEMPTY";
    case Status::Empty: return "EMPTY";
    case Status::Open: return "OPEN";
  }
  return "?";
}

std::string_view to_string(Mode m) { return m == Mode::Full ? "full" : "no-blanket"; }

std::string_view to_string(ButlerVerdict v) {
  switch (v) {
    case ButlerVerdict::Holds: return "holds";
    case ButlerVerdict::Fails: return "fails";
    case ButlerVerdict::Open: return "open";
  }
  return "?";
}

Target parse_target(std::string_view text) {
  const std::string s = lower(text);
  if (s == "gl") return Target::GL;
  if (s == "u") return Target::U;
  if (s == "us") return Target::US;
  if (s == "b") return Target::B;
  throw DomainError("unknown target '" + std::string(text) + "' (expected gl, u, us or b)");
}

Mode parse_mode(std::string_view text) {
  const std::string s = lower(text);
  if (s == "full") return Mode::Full;
  if (s == "no-blanket" || s == "no_blanket") return Mode::NoBlanket;
  throw DomainError("unknown mode '" + std::string(text) + "' (expected full or no-blanket)");
}

ConsistencyError::ConsistencyError(const std::string& what, std::vector<Citation> nonempty_chain,
                                   std::vector<Citation> empty_chain)
    : std::runtime_error(what), nonempty_(std::move(nonempty_chain)), empty_(std::move(empty_chain)) {}

const std::vector<RuleInfo>& rule_inventory() {
  static const std::vector<RuleInfo> infos = [] {
    std::vector<RuleInfo> out;
    for (const auto& e : table()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

RuleSet RuleSet::full() {
  std::set<std::string, std::less<>> ids;
  for (const auto& r : rule_inventory()) ids.insert(r.id);
  return RuleSet(Mode::Full, std::move(ids));
}

RuleSet RuleSet::no_blanket() {
  std::set<std::string, std::less<>> ids;
  for (const auto& r : rule_inventory()) {
    if (!r.blanket) ids.insert(r.id);
  }
  return RuleSet(Mode::NoBlanket, std::move(ids));
}

RuleSet RuleSet::of(Mode mode) { return mode == Mode::Full ? full() : no_blanket(); }

bool RuleSet::enabled(std::string_view id) const { return enabled_.find(id) != enabled_.end(); }

RuleSet RuleSet::without(std::string_view id) const {
  auto ids = enabled_;
  if (auto it = ids.find(id); it != ids.end()) ids.erase(it);
  return RuleSet(mode_, std::move(ids));
}

const Verdict& DecisionColumn::at(const Integer& d, Target t) const {
  if (d < first_ || d > last_) {
    throw DomainError("degree " + d.str() + " outside evaluated column [" + first_.str() + ", " +
                      last_.str() + "]");
  }
  return cells_[static_cast<std::size_t>((d - first_).to_i64())][slot(t)];
}

DecisionColumn evaluate_column(const CurveContext& ctx, const Integer& n, const Integer& d_from,
                               const Integer& d_to, const RuleSet& rules) {
  if (n < Integer(1)) throw DomainError("rank n must be ≥ 1, got " + n.str());
  if (d_to < d_from) throw DomainError("empty degree range");

  DecisionColumn col;
  col.first_ = std::min(d_from, min_degree_generated(ctx, n));
  col.last_ = d_to;
  const std::size_t count = static_cast<std::size_t>((col.last_ - col.first_).to_i64()) + 1;
  col.cells_.resize(count);

  const std::int64_t step = n.to_i64();
  const bool mod_on = rules.enabled(rules::kMod);
  const bool tensor_on = rules.enabled(rules::kTensor);
  const bool interval_on = rules.enabled(rules::kInterval);
  const bool promote_on = rules.enabled(rules::kPromote);

  // Consecutive NONEMPTY run ending at each index, and the first window of
  // n consecutive NONEMPTY degrees, per target.
  std::array<std::vector<std::int64_t>, 4> run;
  for (auto& r : run) r.assign(count, 0);
  std::array<std::optional<std::int64_t>, 4> window_start;

  auto nonempty_at = [&](std::int64_t idx, Target t) {
    return idx >= 0 && col.cells_[static_cast<std::size_t>(idx)][slot(t)].status == Status::Nonempty;
  };
  auto degree_at = [&](std::int64_t idx) { return col.first_ + Integer(static_cast<long>(idx)); };

  std::vector<Emission> emissions;
  for (std::size_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::int64_t>(i);
    const Integer d = degree_at(idx);
    const Cell cell{ctx, ctx.genus, n, d, beta_np1(ctx, n, d)};
    const std::string premise = describe(cell);

    Work w;
    for (const auto& entry : table()) {
      if (!entry.fire || !hypotheses_hold(entry.info.hypotheses, ctx)) continue;
      emissions.clear();
      Emitter emit(emissions);
      entry.fire(cell, emit);
      const bool on = rules.enabled(entry.info.id);
      for (auto& e : emissions) {
        const std::size_t s = slot(e.target);
        if (!on) {
          if (e.status == Status::Nonempty) w.disabled_hits[s].push_back(entry.info.id);
          continue;
        }
        Citation c{entry.info.id, std::move(e.text), {premise}};
        switch (e.status) {
          case Status::Nonempty: w.nonempty[s].push_back(std::move(c)); break;
          case Status::Empty: w.empty[s].push_back(std::move(c)); break;
          case Status::Open: w.exceptions[s].push_back(std::move(c)); break;
        }
      }
    }

    auto& out = col.cells_[i];
    for (Target t : kClosureOrder) {
      const std::size_t s = slot(t);
      std::vector<Citation> proof = w.nonempty[s];

      if (proof.empty() && promote_on) {
        std::optional<Target> from;
        if ((t == Target::US || t == Target::B) && out[slot(Target::U)].status == Status::Nonempty) {
          from = Target::U;
        } else if (t == Target::GL && out[slot(Target::US)].status == Status::Nonempty) {
          from = Target::US;
        }
        if (from) {
          proof = chain_with(closure_step(rules::kPromote,
                                          t == Target::GL ? "§6: U^s(n,d,n+1) is an open subset of G_L"
                                          : t == Target::US ? "§6: U(n,d,n+1) is contained in U^s(n,d,n+1)"
                                                            : "§6: (E,V) in U(n,d,n+1) gives E in B(n,d,n+1)",
                                          {fact(*from, n, d)}),
                             out[slot(*from)].provenance);
        }
      }

      if (proof.empty() && mod_on && t == Target::U && step >= 2) {
        const Integer r = floor_mod(d, n);
        if (r == Integer(1) || r == n - 1) {
          // Nearest multiple na < d with U(n,na,n+1) non-empty.
          Integer m = floor_div(d - 1, n) * n;
          for (std::int64_t j = (m - col.first_).to_i64(); j >= 0; j -= step) {
            if (nonempty_at(j, Target::U)) {
              const Integer na = degree_at(j);
              proof = chain_with(
                  closure_step(rules::kMod,
                               "Prop. 6.7: U(n,na,n+1) ≠ empty with na = " + na.str() +
                                   ", and d = " + d.str() + " > na with d = +-1 mod n",
                               {fact(Target::U, n, na)}),
                  col.cells_[static_cast<std::size_t>(j)][s].provenance);
              break;
            }
          }
        }
      }

      if (proof.empty() && tensor_on && nonempty_at(idx - step, t)) {
        const Integer prev = d - n;
        proof = chain_with(closure_step(rules::kTensor,
                                        "Remark 2.2: tensor by an effective line bundle of "
                                        "degree 1, d = " + prev.str() + " -> " + d.str(),
                                        {fact(t, n, prev)}),
                           col.cells_[static_cast<std::size_t>(idx - step)][s].provenance);
      }

      if (proof.empty() && interval_on && window_start[s]) {
        const std::int64_t a = *window_start[s];
        const std::int64_t b = a + step - 1;
        if (b < idx) {
          const std::int64_t via = a + (idx - a) % step;
          proof = chain_with(
              closure_step(rules::kInterval,
                           "Remark 2.3: non-empty for all d in [" + degree_at(a).str() + ", " +
                               degree_at(b).str() + "] with b-a ≥ n-1",
                           {std::string(to_string(t)) + " NONEMPTY on [" + degree_at(a).str() +
                            ", " + degree_at(b).str() + "]"}),
              col.cells_[static_cast<std::size_t>(via)][s].provenance);
        }
      }

      Verdict v;
      if (!proof.empty() && !w.empty[s].empty()) {
        std::ostringstream os;
        os << "rule conflict at g=" << ctx.genus << " " << to_string(t) << type_str(n, d)
           << ": NONEMPTY via " << proof.front().rule_id << ", EMPTY via "
           << w.empty[s].front().rule_id;
        throw ConsistencyError(os.str(), std::move(proof), w.empty[s]);
      }
      if (!proof.empty()) {
        v.status = Status::Nonempty;
        v.provenance = std::move(proof);
      } else if (!w.empty[s].empty()) {
        v.status = Status::Empty;
        v.provenance = w.empty[s];
      } else {
        v.status = Status::Open;
        v.provenance = w.exceptions[s];
        if (!w.exceptions[s].empty()) {
          v.note = "possible exception: " + w.exceptions[s].front().text;
        } else if (!w.disabled_hits[s].empty()) {
          v.note = "would follow from " + w.disabled_hits[s].front() + " (disabled in " +
                   std::string(to_string(rules.mode())) + " mode)";
        } else if (cell.beta.sign() < 0) {
          v.note = "no emptiness rule applies under the given genus/Petri hypotheses";
        } else {
          v.note = "no rule in the table reaches this case";
        }
      }
      out[s] = std::move(v);

      run[s][i] = out[s].status == Status::Nonempty ? (i > 0 ? run[s][i - 1] : 0) + 1 : 0;
      if (!window_start[s] && run[s][i] >= step) window_start[s] = idx - step + 1;
    }
  }
  return col;
}

Verdict decide(const CurveContext& ctx, const Integer& n, const Integer& d, Target target,
               const RuleSet& rules) {
  return evaluate_column(ctx, n, d, d, rules).at(d, target);
}

std::optional<Verdict> side_fact(const CurveContext& ctx, const CSType& type) {
  const RuleInfo& info = info_of(rules::kSpecial);
  if (type.k == type.n + 1) return std::nullopt;
  if (hypotheses_hold(info.hypotheses, ctx) && type == CSType(Integer(3), Integer(7), Integer(5))) {
    std::ostringstream premise;
    premise << "g=" << ctx.genus << " type=" << type;
    return Verdict{Status::Empty,
                   {Citation{info.id, "Remark 7.5: G(α;3,7,5) = empty for all α > 0 and g ≥ 3",
                             {premise.str()}}},
                   ""};
  }
  return std::nullopt;
}

std::vector<SweepCell> sweep(const SweepRequest& req) {
  struct Job {
    Integer g;
    Integer n;
  };
  std::vector<Job> jobs;
  for (Integer g = req.genus.lo; g <= req.genus.hi; ++g) {
    for (Integer n = req.rank.lo; n <= req.rank.hi; ++n) jobs.push_back({g, n});
  }
  if (jobs.empty() || req.degree.hi < req.degree.lo) return {};

  const RuleSet rules = RuleSet::of(req.mode);
  std::vector<std::vector<SweepCell>> parts(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        const CurveContext ctx(jobs[j].g, req.petri);
        const auto col = evaluate_column(ctx, jobs[j].n, req.degree.lo, req.degree.hi, rules);
        for (Integer d = req.degree.lo; d <= req.degree.hi; ++d) {
          Integer b = beta_np1(ctx, jobs[j].n, d);
          if (req.nonneg_beta_only && b.sign() < 0) continue;
          parts[j].push_back({jobs[j].g, jobs[j].n, d, std::move(b), col.at(d, req.target)});
        }
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };

  const std::size_t threads =
      std::min<std::size_t>(jobs.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<SweepCell> out;
  for (auto& p : parts) {
    std::move(p.begin(), p.end(), std::back_inserter(out));
  }
  return out;
}

ButlerStatus butler_status(const CurveContext& ctx, const Integer& n, const Integer& d,
                           const RuleSet& rules) {
  const CSType span = dual_span_type(n, d);
  Verdict basis = decide(ctx, n, d, Target::U, rules);
  std::ostringstream note;
  ButlerVerdict verdict = ButlerVerdict::Open;
  switch (basis.status) {
    case Status::Nonempty:
      verdict = ButlerVerdict::Holds;
      note << "Prop. 9.5: U" << span << " ≠ empty, so some generated (L,V) of type (1," << d
           << "," << (n + 1) << ") has M_{V,L} stable";
      break;
    case Status::Empty:
      verdict = ButlerVerdict::Fails;
      note << "Prop. 9.5: U" << span << " = empty, so no generated (L,V) of type (1," << d << ","
           << (n + 1) << ") has M_{V,L} stable";
      break;
    case Status::Open:
      note << "Prop. 9.5: stability of M_{V,L} is equivalent to U" << span
           << " ≠ empty, which is open here";
      break;
  }
  if (ctx.genus == Integer(2) && d == 2 * n) {
    note << "; Remark 9.6: the conjecture fails for g=2, d=2n";
  }
  return {verdict, note.str(), std::move(basis)};
}

BnReport bn_report(const CurveContext& ctx, const Integer& n, const Integer& d,
                   const RuleSet& rules) {
  BnReport r;
  const Integer& g = ctx.genus;
  r.beta = beta_np1(ctx, n, d);
  r.alpha_l = alpha_l(ctx, n, d);
  r.b_verdict = decide(ctx, n, d, Target::B, rules);

  const bool generic = g >= Integer(2) && ctx.petri;
  r.window = generic && !(g == Integer(2) && n == Integer(2)) &&
             d >= min_degree_generated(ctx, n) && d <= g + n;
  if (r.window) {
    r.irreducible = true;
    r.dimension = r.beta;
    r.singular_locus = "B(" + n.str() + "," + d.str() + "," + (n + 2).str() + ")";
    r.notes.push_back("Cor. 9.2(1): B" + type_str(n, d) + " is irreducible of dimension β = " +
                      r.beta.str() + " and smooth outside " + *r.singular_locus);
    r.notes.push_back("Cor. 9.2(2): G_L" + type_str(n, d) + " is a desingularisation of the closure of B" +
                      type_str(n, d));
    if (d < g + n || !floor_mod(g, n).is_zero()) {
      r.projective = true;
      r.notes.push_back("Cor. 9.2(3): B" + type_str(n, d) +
                        " is projective and G_L is a desingularisation of it (d < g+n, or d = g+n "
                        "and n does not divide g)");
    }
  }
  if (generic && r.alpha_l.sign() > 0) {
    r.notes.push_back("Thm. 5.5: α_l = " + r.alpha_l.str() +
                      " > 0, G_{L-1} is non-empty, irreducible and birational to G_L");
  }
  if (g == Integer(2) && n == Integer(2) && d == Integer(4)) {
    r.notes.push_back("Remark 9.3: B(2,4,3) = empty although G_L(2,4,3) ≠ empty");
  }
  return r;
}

}  // namespace cohsys
