#include "thetainv/theorems.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "thetainv/quadarith.hpp"

namespace thetainv {

namespace {

struct Entry {
    StatementId id;
    std::string_view name;
};

constexpr std::array kNames = {
    Entry{StatementId::T1_1, "T1_1"},
    Entry{StatementId::T1_2, "T1_2"},
    Entry{StatementId::T1_4, "T1_4"},
    Entry{StatementId::L2_1_IDENTITY, "L2_1_IDENTITY"},
    Entry{StatementId::L2_1_SUFFICIENCY, "L2_1_SUFFICIENCY"},
    Entry{StatementId::L2_2, "L2_2"},
    Entry{StatementId::T2_3, "T2_3"},
    Entry{StatementId::L3_1, "L3_1"},
    Entry{StatementId::L3_3, "L3_3"},
    Entry{StatementId::L3_5, "L3_5"},
    Entry{StatementId::T3_6, "T3_6"},
    Entry{StatementId::L3_7_IDENTITY, "L3_7_IDENTITY"},
    Entry{StatementId::T3_8, "T3_8"},
    Entry{StatementId::L3_9, "L3_9"},
    Entry{StatementId::C3_10, "C3_10"},
    Entry{StatementId::T3_11, "T3_11"},
    Entry{StatementId::GAUSS_24H, "GAUSS_24H"},
    Entry{StatementId::GAUSS_12H, "GAUSS_12H"},
};

const DiagonalForm kThreeSquares{1, 1, 1};
const DiagonalForm kOneTwo{1, 2};
const DiagonalForm kOneFour{1, 4};
const DiagonalForm kOneTwoEight{1, 2, 8};
const DiagonalForm kOneTwoFour{1, 2, 4};

std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

Verdict make(bool ok, Witness w) { return Verdict{ok ? Status::holds : Status::violated, std::move(w)}; }

Verdict vacuous(Witness w) { return Verdict{Status::vacuous, std::move(w)}; }

class Checker {
public:
    Checker(std::uint64_t n, const SeriesContext& ctx) : n_(n), ctx_(ctx) {}

    bool in_B() const { return ctx_.inv_theta.coefficient(n_); }

    Verdict run(StatementId id) const
    {
        const std::uint64_t n = n_;
        switch (id) {
        case StatementId::T1_1: {
            const bool member = in_B();
            const bool half_square = is_square(n / 2);
            return make(member == half_square, {{"in_B", member}, {"half_is_square", half_square}});
        }
        case StatementId::T1_2: {
            const auto c = count_square_tuples(n, kOneFour);
            const bool member = in_B();
            return make(member == (c % 2 == 1), {{"count_1_4", as_int(c)}, {"in_B", member}});
        }
        case StatementId::T1_4: {
            const auto c = count_square_tuples(n, kOneTwoEight);
            const bool member = in_B();
            return make(member == (c % 2 == 1), {{"count_1_2_8", as_int(c)}, {"in_B", member}});
        }
        case StatementId::L2_1_IDENTITY: {
            const auto r1 = count_square_tuples(n, kThreeSquares);
            const auto r2 = count_square_tuples(n, kOneTwo);
            const auto c = count_square_tuples(n, kOneTwoEight);
            return make(r1 + r2 == 2 * c, {{"R1", as_int(r1)}, {"R2", as_int(r2)}, {"count_1_2_8", as_int(c)}});
        }
        case StatementId::L2_1_SUFFICIENCY: {
            const auto r1 = count_square_tuples(n, kThreeSquares);
            const auto r2 = count_square_tuples(n, kOneTwo);
            Witness w{{"R1", as_int(r1)}, {"R2", as_int(r2)}};
            if (r1 % 4 != 0 || r2 % 4 != 0) return vacuous(std::move(w));
            const bool member = in_B();
            w.emplace_back("in_B", member);
            return make(!member, std::move(w));
        }
        case StatementId::L2_2: {
            const auto m = factorize(n).distinct_primes();
            Witness w{{"distinct_primes", as_int(m)}};
            if (m < 3) return vacuous(std::move(w));
            // n = 3 (mod 8) forces every root odd, so each tuple has 8 sign patterns.
            const auto signed_count = count_signed_representations(n, kThreeSquares, true);
            const auto tuples = signed_count / 8;
            w.emplace_back("primitive_signed", as_int(signed_count));
            w.emplace_back("primitive_tuples", as_int(tuples));
            return make(signed_count % 8 == 0 && tuples % 4 == 0, std::move(w));
        }
        case StatementId::T2_3:
        case StatementId::T3_11: {
            const auto odd = odd_exponent_prime_count(factorize(n));
            Witness w{{"odd_exponent_primes", as_int(odd)}};
            if (odd < 3) return vacuous(std::move(w));
            const bool member = in_B();
            w.emplace_back("in_B", member);
            return make(!member, std::move(w));
        }
        case StatementId::L3_1: {
            const auto u = ideal_count(n, IdealCountKind::minus_two);
            const auto v = ideal_count(n, IdealCountKind::gaussian);
            const std::uint64_t a = isqrt(n);
            const bool exceptional = a * a == n && (a % 8 == 3 || a % 8 == 5);
            Witness w{{"U", as_int(u)}, {"V", as_int(v)}, {"exceptional", exceptional}};
            if (exceptional) return make((u * v) % 4 == 3, std::move(w));
            return make(u % 4 == v % 4, std::move(w));
        }
        case StatementId::L3_3: {
            const auto u = ideal_count(n, IdealCountKind::minus_two);
            const auto v = ideal_count(n, IdealCountKind::gaussian);
            const auto u1 = count_square_tuples(n, kOneTwo);
            const auto v1 = count_square_tuples(n, kOneFour);
            const std::uint64_t sq = is_square(n) ? 1 : 0;
            return make(u == 2 * u1 - sq && v == 2 * v1 - sq, {{"U", as_int(u)},
                                                               {"V", as_int(v)},
                                                               {"U1", as_int(u1)},
                                                               {"V1", as_int(v1)},
                                                               {"is_square", as_int(sq)}});
        }
        case StatementId::L3_5: {
            const bool c = ctx_.inv_theta_seventh.coefficient(n);
            const bool sq = is_square(n);
            return make(c == sq, {{"coeff_inv_g7", c}, {"is_square", sq}});
        }
        case StatementId::T3_6: {
            const auto c = count_square_tuples(n, kOneTwoFour);
            const bool member = in_B();
            return make(member == (c % 2 == 1), {{"count_1_2_4", as_int(c)}, {"in_B", member}});
        }
        case StatementId::L3_7_IDENTITY: {
            const auto r3 = count_square_tuples(2 * n, kThreeSquares);
            const auto c = count_square_tuples(n, kOneTwoFour);
            return make(r3 == 6 * c, {{"R3", as_int(r3)}, {"count_1_2_4", as_int(c)}});
        }
        case StatementId::T3_8: {
            const auto r3 = count_square_tuples(2 * n, kThreeSquares);
            const bool member = in_B();
            return make(member == (r3 % 4 == 2), {{"R3", as_int(r3)}, {"in_B", member}});
        }
        case StatementId::L3_9: {
            const auto m = factorize(n).distinct_primes();
            Witness w{{"distinct_primes", as_int(m)}};
            if (m < 3) return vacuous(std::move(w));
            // The three squares summing to 2n are nonzero and distinct: 8 sign patterns per tuple.
            const auto signed_count = count_signed_representations(2 * n, kThreeSquares, true);
            const auto tuples = signed_count / 8;
            w.emplace_back("primitive_signed_2n", as_int(signed_count));
            w.emplace_back("primitive_tuples_2n", as_int(tuples));
            return make(signed_count % 8 == 0 && tuples % 4 == 0, std::move(w));
        }
        case StatementId::C3_10: {
            const auto odd = odd_exponent_prime_count(factorize(n));
            Witness w{{"odd_exponent_primes", as_int(odd)}};
            if (odd < 3) return vacuous(std::move(w));
            const auto r3 = count_square_tuples(2 * n, kThreeSquares);
            w.emplace_back("R3", as_int(r3));
            return make(r3 % 4 == 0, std::move(w));
        }
        case StatementId::GAUSS_24H: {
            const auto r = count_signed_representations(n, kThreeSquares, true);
            const auto h = class_number(-as_int(n));
            return make(r == 24 * h, {{"primitive_signed", as_int(r)}, {"class_number", as_int(h)}});
        }
        case StatementId::GAUSS_12H: {
            const auto r = count_signed_representations(2 * n, kThreeSquares, true);
            const auto h = class_number(-8 * as_int(n));
            return make(r == 12 * h, {{"primitive_signed_2n", as_int(r)}, {"class_number", as_int(h)}});
        }
        }
        throw std::invalid_argument("unknown statement");
    }

private:
    std::uint64_t n_;
    const SeriesContext& ctx_;
};

void require_bitmaps(StatementId id, std::uint64_t n, const SeriesContext& ctx)
{
    if (uses_inv_theta(id) && n >= ctx.inv_theta.length())
        throw std::out_of_range(std::string(to_string(id)) + ": 1/g bitmap needs " + std::to_string(n + 1) +
                                " coefficients, has " + std::to_string(ctx.inv_theta.length()));
    if (uses_inv_theta_seventh(id) && n >= ctx.inv_theta_seventh.length())
        throw std::out_of_range(std::string(to_string(id)) + ": 1/g^7 bitmap needs " + std::to_string(n + 1) +
                                " coefficients, has " + std::to_string(ctx.inv_theta_seventh.length()));
}

void record(TheoremReport& r, std::uint64_t n, Verdict v)
{
    switch (v.status) {
    case Status::holds:
        ++r.holds;
        break;
    case Status::vacuous:
        ++r.vacuous;
        break;
    case Status::violated:
        ++r.violated;
        if (r.violations.size() < TheoremReport::kMaxRecordedViolations)
            r.violations.push_back({n, std::move(v.witness)});
        else
            ++r.unrecorded_violations;
        break;
    }
}

void merge_into(TheoremReport& into, TheoremReport&& part)
{
    into.holds += part.holds;
    into.vacuous += part.vacuous;
    into.violated += part.violated;
    into.inapplicable += part.inapplicable;
    for (auto& v : part.violations) {
        if (into.violations.size() < TheoremReport::kMaxRecordedViolations)
            into.violations.push_back(std::move(v));
        else
            ++into.unrecorded_violations;
    }
    into.unrecorded_violations += part.unrecorded_violations;
}

}  // namespace

const std::vector<StatementId>& all_statements()
{
    static const std::vector<StatementId> ids = [] {
        std::vector<StatementId> v;
        for (const auto& e : kNames) v.push_back(e.id);
        return v;
    }();
    return ids;
}

std::string_view to_string(StatementId id)
{
    for (const auto& e : kNames)
        if (e.id == id) return e.name;
    return "?";
}

std::optional<StatementId> parse_statement(std::string_view name)
{
    for (const auto& e : kNames)
        if (e.name == name) return e.id;
    return std::nullopt;
}

std::string_view to_string(Status s)
{
    switch (s) {
    case Status::holds:
        return "HOLDS";
    case Status::vacuous:
        return "VACUOUS";
    case Status::violated:
        return "VIOLATED";
    }
    return "?";
}

std::int64_t Verdict::value(std::string_view name) const
{
    for (const auto& [k, v] : witness)
        if (k == name) return v;
    throw std::out_of_range("witness has no entry " + std::string(name));
}

SeriesContext SeriesContext::build(std::size_t limit)
{
    return SeriesContext{invert_newton(SparseExponents::squares(limit), limit), inverse_seventh_power(limit)};
}

bool uses_inv_theta(StatementId id)
{
    switch (id) {
    case StatementId::T1_1:
    case StatementId::T1_2:
    case StatementId::T1_4:
    case StatementId::L2_1_SUFFICIENCY:
    case StatementId::T2_3:
    case StatementId::T3_6:
    case StatementId::T3_8:
    case StatementId::T3_11:
        return true;
    default:
        return false;
    }
}

bool uses_inv_theta_seventh(StatementId id) { return id == StatementId::L3_5; }

bool applicable(StatementId id, std::uint64_t n)
{
    switch (id) {
    case StatementId::T1_1:
        return n % 2 == 0;
    case StatementId::T1_2:
        return n % 4 == 1;
    case StatementId::T1_4:
    case StatementId::L2_1_IDENTITY:
    case StatementId::L2_1_SUFFICIENCY:
    case StatementId::L2_2:
    case StatementId::T2_3:
        return n % 8 == 3;
    case StatementId::GAUSS_24H:
        return n % 8 == 3 && n != 3;  // D = -3 has six units
    case StatementId::L3_1:
        return n % 8 == 1;
    case StatementId::L3_3:
        return n % 2 == 1;
    case StatementId::L3_5:
        return n % 16 == 1;
    case StatementId::T3_6:
    case StatementId::T3_8:
    case StatementId::T3_11:
        return n % 16 == 7;
    case StatementId::L3_7_IDENTITY:
    case StatementId::L3_9:
    case StatementId::C3_10:
    case StatementId::GAUSS_12H:
        return n % 8 == 7;
    }
    return false;
}

Verdict verify(StatementId id, std::uint64_t n, const SeriesContext& ctx)
{
    if (!applicable(id, n))
        throw std::invalid_argument(std::string(to_string(id)) + " does not apply to n = " + std::to_string(n));
    require_bitmaps(id, n, ctx);
    return Checker(n, ctx).run(id);
}

std::optional<std::uint64_t> TheoremReport::first_violation() const
{
    if (violations.empty()) return std::nullopt;
    return violations.front().n;
}

std::size_t required_length(const std::vector<StatementId>& ids, std::uint64_t hi)
{
    for (auto id : ids)
        if (uses_inv_theta(id) || uses_inv_theta_seventh(id)) return hi + 1;
    return 0;
}

std::vector<TheoremReport> run_suite(const std::vector<StatementId>& ids, std::uint64_t lo, std::uint64_t hi,
                                     const SeriesContext& ctx, unsigned threads)
{
    if (lo > hi) throw std::invalid_argument("run_suite: empty range");
    for (auto id : ids) require_bitmaps(id, hi, ctx);

    auto blank = [&] {
        std::vector<TheoremReport> r;
        for (auto id : ids) {
            TheoremReport rep;
            rep.id = id;
            rep.lo = lo;
            rep.hi = hi;
            r.push_back(std::move(rep));
        }
        return r;
    };
    auto scan = [&](std::uint64_t from, std::uint64_t to, std::vector<TheoremReport>& out) {
        for (std::uint64_t n = from; n <= to; ++n) {
            for (std::size_t i = 0; i < ids.size(); ++i) {
                if (!applicable(ids[i], n)) {
                    ++out[i].inapplicable;
                    continue;
                }
                record(out[i], n, Checker(n, ctx).run(ids[i]));
            }
        }
    };

    std::vector<TheoremReport> result = blank();
    const std::uint64_t span = hi - lo + 1;
    threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, span));
    if (threads == 1 || ids.empty()) {
        scan(lo, hi, result);
        return result;
    }

    // Interleaved blocks balance the cost, which grows with n.
    constexpr std::uint64_t kBlock = 256;
    const std::uint64_t blocks = (span + kBlock - 1) / kBlock;
    std::vector<std::vector<TheoremReport>> parts(blocks);
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            for (std::uint64_t b = t; b < blocks; b += threads) {
                parts[b] = blank();
                const std::uint64_t from = lo + b * kBlock;
                scan(from, std::min(hi, from + kBlock - 1), parts[b]);
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& part : parts)
        for (std::size_t i = 0; i < ids.size(); ++i) merge_into(result[i], std::move(part[i]));
    return result;
}

void write_reports_csv(std::ostream& out, const std::vector<TheoremReport>& reports)
{
    out << "statement_id,n_lo,n_hi,holds,vacuous,violated,first_violation_n\n";
    for (const auto& r : reports) {
        out << to_string(r.id) << ',' << r.lo << ',' << r.hi << ',' << r.holds << ',' << r.vacuous << ','
            << r.violated << ',';
        if (auto f = r.first_violation()) out << *f;
        out << '\n';
    }
}

}  // namespace thetainv
