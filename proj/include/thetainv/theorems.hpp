#pragma once

// Registry of per-n statements about membership in B (the support of 1/g),
// each checked against the quadratic-form oracles in quadarith.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thetainv/f2series.hpp"

namespace thetainv {

enum class StatementId {
    T1_1,
    T1_2,
    T1_4,
    L2_1_IDENTITY,
    L2_1_SUFFICIENCY,
    L2_2,
    T2_3,
    L3_1,
    L3_3,
    L3_5,
    T3_6,
    L3_7_IDENTITY,
    T3_8,
    L3_9,
    C3_10,
    T3_11,
    GAUSS_24H,
    GAUSS_12H,
};

const std::vector<StatementId>& all_statements();
std::string_view to_string(StatementId id);
std::optional<StatementId> parse_statement(std::string_view name);

enum class Status { holds, vacuous, violated };

std::string_view to_string(Status s);

// Named intermediate quantities behind a verdict (counts, parities, class numbers).
using Witness = std::vector<std::pair<std::string, std::int64_t>>;

struct Verdict {
    Status status = Status::holds;
    Witness witness;

    // Throws std::out_of_range if the witness has no such entry.
    std::int64_t value(std::string_view name) const;
};

// Bitmaps consulted by the verifiers. Immutable once built.
struct SeriesContext {
    BitSeries inv_theta;         // 1/g
    BitSeries inv_theta_seventh; // 1/g^7

    // Both bitmaps with `limit` coefficients.
    static SeriesContext build(std::size_t limit);
};

// Which bitmaps a statement reads.
bool uses_inv_theta(StatementId id);
bool uses_inv_theta_seventh(StatementId id);

// Congruence and side conditions of the statement. Hypotheses of
// one-directional statements are not part of applicability.
bool applicable(StatementId id, std::uint64_t n);

// Throws std::invalid_argument if n is not applicable and std::out_of_range if
// a required bitmap does not reach n.
Verdict verify(StatementId id, std::uint64_t n, const SeriesContext& ctx);

struct Violation {
    std::uint64_t n;
    Witness witness;
};

struct TheoremReport {
    static constexpr std::size_t kMaxRecordedViolations = 16;

    StatementId id = StatementId::T1_1;
    std::uint64_t lo = 0;  // inclusive
    std::uint64_t hi = 0;  // inclusive
    std::uint64_t holds = 0;
    std::uint64_t vacuous = 0;
    std::uint64_t violated = 0;
    std::uint64_t inapplicable = 0;
    std::vector<Violation> violations;
    std::uint64_t unrecorded_violations = 0;

    std::uint64_t applicable_count() const { return holds + vacuous + violated; }
    std::optional<std::uint64_t> first_violation() const;
};

// One report per id over every n in [lo, hi]. Work is split across `threads`
// workers by n; the merged result does not depend on the split.
std::vector<TheoremReport> run_suite(const std::vector<StatementId>& ids, std::uint64_t lo, std::uint64_t hi,
                                     const SeriesContext& ctx, unsigned threads = 1);

// Coefficient count a context needs so that verify() can run on every n <= hi.
std::size_t required_length(const std::vector<StatementId>& ids, std::uint64_t hi);

// statement_id,n_lo,n_hi,holds,vacuous,violated,first_violation_n
void write_reports_csv(std::ostream& out, const std::vector<TheoremReport>& reports);

}  // namespace thetainv
