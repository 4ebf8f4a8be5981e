#pragma once

// Existence and emptiness of G_L(n,d,n+1), U(n,d,n+1), U^s(n,d,n+1) and
// B(n,d,n+1), decided by a fixed table of citable rules closed under
// tensoring, interval filling and elementary transformations.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cohsys/invariants.hpp"

namespace cohsys {

enum class Target { GL, U, US, B };
enum class Status { Nonempty, Empty, Open };
enum class Mode { Full, NoBlanket };

std::string_view to_string(Target t);
std::string_view to_string(Status s);
std::string_view to_string(Mode m);
/// Accepts gl, u, us, b (case-insensitive). Throws DomainError.
Target parse_target(std::string_view text);
/// Accepts full, no-blanket, no_blanket. Throws DomainError.
Mode parse_mode(std::string_view text);

/// One step of a derivation: the rule that fired, its citation, and the
/// facts it consumed.
struct Citation {
  std::string rule_id;
  std::string text;
  std::vector<std::string> premises;

  friend bool operator==(const Citation&, const Citation&) = default;
};

struct Verdict {
  Status status = Status::Open;
  /// For NONEMPTY/EMPTY the first entry is the step concluding the query;
  /// closure steps are followed by the derivation of their premise.
  std::vector<Citation> provenance;
  std::string note;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Raised when the rule table derives both NONEMPTY and EMPTY for one cell.
class ConsistencyError : public std::runtime_error {
 public:
  ConsistencyError(const std::string& what, std::vector<Citation> nonempty_chain,
                   std::vector<Citation> empty_chain);

  const std::vector<Citation>& nonempty_chain() const { return nonempty_; }
  const std::vector<Citation>& empty_chain() const { return empty_; }

 private:
  std::vector<Citation> nonempty_;
  std::vector<Citation> empty_;
};

/// Rule identifiers.
namespace rules {
inline constexpr std::string_view kEmptyBeta = "R-EMPTY-BETA";
inline constexpr std::string_view kGL = "R-GL";
inline constexpr std::string_view kRank1 = "R-RANK1";
inline constexpr std::string_view kG0 = "R-G0";
inline constexpr std::string_view kG1 = "R-G1";
inline constexpr std::string_view kG2 = "R-G2";
inline constexpr std::string_view kWindow = "R-WINDOW";
inline constexpr std::string_view kBigG = "R-BIGG";
inline constexpr std::string_view kD1 = "R-D1";
inline constexpr std::string_view kExt = "R-EXT";
inline constexpr std::string_view kN234 = "R-N234";
inline constexpr std::string_view kP73 = "R-P73";
inline constexpr std::string_view kP74 = "R-P74";
inline constexpr std::string_view kP75 = "R-P75";
inline constexpr std::string_view kG3Hi = "R-G3HI";
inline constexpr std::string_view kG45Hi = "R-G45HI";
inline constexpr std::string_view kSpecial = "R-SPECIAL";
inline constexpr std::string_view kPromote = "R-PROMOTE";
inline constexpr std::string_view kMod = "R-MOD";
inline constexpr std::string_view kTensor = "R-TENSOR";
inline constexpr std::string_view kInterval = "R-INTERVAL";
}  // namespace rules

/// Hypotheses a rule needs before it may fire.
struct RuleHypotheses {
  std::int64_t min_genus = 0;
  std::optional<std::int64_t> max_genus;
  /// Petri is required once the genus reaches this value (never if empty).
  std::optional<std::int64_t> petri_from_genus;
};

struct RuleInfo {
  std::string id;
  std::string anchor;  // citation prefix shared by the rule texts
  std::string summary;
  RuleHypotheses hypotheses;
  bool blanket = false;  // disabled in no-blanket mode
  bool closure = false;
};

/// The rule inventory, in evaluation order.
const std::vector<RuleInfo>& rule_inventory();

/// The set of enabled rules.
class RuleSet {
 public:
  static RuleSet full();
  static RuleSet no_blanket();
  static RuleSet of(Mode mode);

  Mode mode() const { return mode_; }
  bool enabled(std::string_view id) const;
  const std::set<std::string, std::less<>>& ids() const { return enabled_; }

  /// Copy with one rule switched off; the mode label is kept.
  RuleSet without(std::string_view id) const;

 private:
  RuleSet(Mode mode, std::set<std::string, std::less<>> ids)
      : mode_(mode), enabled_(std::move(ids)) {}

  Mode mode_;
  std::set<std::string, std::less<>> enabled_;
};

/// Verdicts for every target over a contiguous degree range of one (g,n).
class DecisionColumn {
 public:
  const Verdict& at(const Integer& d, Target t) const;
  const Integer& first_degree() const { return first_; }
  const Integer& last_degree() const { return last_; }

 private:
  friend DecisionColumn evaluate_column(const CurveContext&, const Integer&, const Integer&,
                                        const Integer&, const RuleSet&);
  Integer first_;
  Integer last_;
  std::vector<std::array<Verdict, 4>> cells_;
};

/// Evaluates all cells d in [d_from, d_to] (extended downward to the first
/// degree with beta >= 0 so that closure rules see their base cases).
DecisionColumn evaluate_column(const CurveContext& ctx, const Integer& n, const Integer& d_from,
                               const Integer& d_to, const RuleSet& rules);

Verdict decide(const CurveContext& ctx, const Integer& n, const Integer& d, Target target,
               const RuleSet& rules);

/// Facts stored for types with k != n+1.
std::optional<Verdict> side_fact(const CurveContext& ctx, const CSType& type);

struct IntRange {
  Integer lo;
  Integer hi;
};

struct SweepRequest {
  IntRange genus;
  IntRange rank;
  IntRange degree;
  Target target = Target::U;
  Mode mode = Mode::Full;
  bool petri = true;
  /// Drop cells with beta < 0.
  bool nonneg_beta_only = false;
};

struct SweepCell {
  Integer genus;
  Integer rank;
  Integer degree;
  Integer beta;
  Verdict verdict;
};

/// Cells ordered by (g, n, d). Columns are evaluated concurrently.
std::vector<SweepCell> sweep(const SweepRequest& req);

enum class ButlerVerdict { Holds, Fails, Open };
std::string_view to_string(ButlerVerdict v);

struct ButlerStatus {
  ButlerVerdict verdict;
  std::string note;
  Verdict basis;  // the U(n,d,n+1) verdict it was read from
};

/// Stability of the dual span M_{V,L} for a generated (1,d,n+1) system,
/// read off from non-emptiness of U(n,d,n+1).
ButlerStatus butler_status(const CurveContext& ctx, const Integer& n, const Integer& d,
                           const RuleSet& rules);

struct BnReport {
  Integer beta;
  Integer alpha_l;
  Verdict b_verdict;
  bool window = false;  // g+n-[g/(n+1)] <= d <= g+n with the usual guards
  std::optional<bool> irreducible;
  std::optional<Integer> dimension;
  std::optional<std::string> singular_locus;
  std::optional<bool> projective;
  std::vector<std::string> notes;
};

BnReport bn_report(const CurveContext& ctx, const Integer& n, const Integer& d,
                   const RuleSet& rules);

}  // namespace cohsys
