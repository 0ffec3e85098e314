#include "thetainv/census.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

namespace thetainv {

namespace {

using i128 = __int128;

void require_length(const BitSeries& b, std::uint64_t needed, const char* what)
{
    if (b.length() < needed)
        throw std::out_of_range(std::string(what) + ": bitmap needs " + std::to_string(needed) +
                                " coefficients, has " + std::to_string(b.length()));
}

std::uint64_t class_mask(unsigned modulus, unsigned residue)
{
    std::uint64_t m = 0;
    for (unsigned i = residue; i < 64; i += modulus) m |= std::uint64_t{1} << i;
    return m;
}

// sign(v) * v^2 without overflow for |v| < 2^62.
i128 signed_square(std::int64_t v) { return v < 0 ? -(i128)v * v : (i128)v * v; }

// Compares d/(2 sqrt(x)) against num/den, i.e. d*den against 2*num*sqrt(x).
int compare_to_rational(std::uint64_t x, std::uint64_t beta, std::int64_t num, std::int64_t den)
{
    if (den <= 0) throw std::invalid_argument("alpha bound denominator must be positive");
    const std::int64_t d = 2 * static_cast<std::int64_t>(beta) - static_cast<std::int64_t>(x);
    const i128 lhs = signed_square(d) * den * den;
    const i128 rhs = signed_square(num) * 4 * static_cast<i128>(x);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace

BitSeries build_B(std::size_t limit) { return invert_newton(SparseExponents::squares(limit), limit); }

BitSeries build_Bstar(std::size_t limit)
{
    return invert_newton(SparseExponents::generalized_pentagonal(limit), limit);
}

std::uint64_t count_in_class(const BitSeries& b, std::uint64_t lo, std::uint64_t hi, unsigned modulus,
                             unsigned residue)
{
    if (modulus == 0 || 64 % modulus != 0 || residue >= modulus)
        throw std::invalid_argument("count_in_class: modulus must divide 64");
    require_length(b, hi, "count_in_class");
    if (lo >= hi) return 0;
    const auto words = b.words();
    const std::uint64_t mask = class_mask(modulus, residue);
    std::uint64_t c = 0;
    const std::size_t first = lo / 64, last = (hi - 1) / 64;
    for (std::size_t i = first; i <= last; ++i) {
        std::uint64_t w = words[i] & mask;
        if (i == first) w &= ~std::uint64_t{0} << (lo % 64);
        if (i == last && hi % 64 != 0) w &= (std::uint64_t{1} << (hi % 64)) - 1;
        c += std::popcount(w);
    }
    return c;
}

double CensusTable::excess(std::size_t j) const
{
    return static_cast<double>(counts.at(j)) - static_cast<double>(x) / 2.0;
}

CensusTable interval_counts(const BitSeries& b, std::uint64_t x, std::size_t intervals, unsigned threads)
{
    CensusTable t;
    t.x = x;
    t.width = 16 * x;
    if (intervals == 0) return t;
    require_length(b, t.width * intervals, "interval_counts");
    t.counts.assign(intervals, 0);

    threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, intervals));
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t j = w; j < intervals; j += threads)
                t.counts[j] = count_in_class(b, t.lo(j), t.hi(j), t.modulus, t.residue);
        });
    }
    for (auto& w : workers) w.join();
    for (auto c : t.counts) t.total += c;
    return t;
}

bool alpha_below(std::uint64_t x, std::uint64_t beta, std::int64_t num, std::int64_t den)
{
    return compare_to_rational(x, beta, num, den) < 0;
}

bool alpha_above(std::uint64_t x, std::uint64_t beta, std::int64_t num, std::int64_t den)
{
    return compare_to_rational(x, beta, num, den) > 0;
}

int compare_alpha(const AlphaRow& a, const AlphaRow& b)
{
    // d_a / sqrt(x_a) vs d_b / sqrt(x_b), squared with signs kept.
    const std::int64_t da = 2 * static_cast<std::int64_t>(a.beta) - static_cast<std::int64_t>(a.x);
    const std::int64_t db = 2 * static_cast<std::int64_t>(b.beta) - static_cast<std::int64_t>(b.x);
    const i128 lhs = signed_square(da) * static_cast<i128>(b.x);
    const i128 rhs = signed_square(db) * static_cast<i128>(a.x);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

AlphaSweep alpha_sweep(const BitSeries& b, std::uint64_t max_x, std::uint64_t step)
{
    if (step == 0) throw std::invalid_argument("alpha_sweep: step must be positive");
    AlphaSweep s;
    if (max_x < step) return s;
    require_length(b, 16 * max_x, "alpha_sweep");
    std::uint64_t beta = 0, covered = 0;
    for (std::uint64_t x = step; x <= max_x; x += step) {
        // n <= 16x with n = 15 (mod 16) is the same as n < 16x.
        beta += count_in_class(b, covered, 16 * x, 16, 15);
        covered = 16 * x;
        const double alpha =
            (static_cast<double>(beta) - static_cast<double>(x) / 2.0) / std::sqrt(static_cast<double>(x));
        s.rows.push_back({x, beta, alpha});
        const std::size_t i = s.rows.size() - 1;
        if (compare_alpha(s.rows[i], s.rows[s.argmin]) < 0) s.argmin = i;
        if (compare_alpha(s.rows[i], s.rows[s.argmax]) > 0) s.argmax = i;
    }
    return s;
}

std::array<std::uint64_t, 16> residue_class_counts(const BitSeries& b, std::uint64_t limit)
{
    require_length(b, limit, "residue_class_counts");
    std::array<std::uint64_t, 16> counts{};
    for (unsigned r = 0; r < 16; ++r) counts[r] = count_in_class(b, 0, limit, 16, r);
    return counts;
}

double non15_density(const BitSeries& b, std::uint64_t N)
{
    if (N == 0) throw std::invalid_argument("non15_density: N must be positive");
    require_length(b, N + 1, "non15_density");
    std::uint64_t members = 0;
    for (unsigned r = 0; r < 16; ++r)
        if (r != 15) members += count_in_class(b, 0, N + 1, 16, r);
    return static_cast<double>(members) / static_cast<double>(N);
}

void write_interval_csv(std::ostream& out, const CensusTable& t)
{
    out << "interval_index,lo,hi,count,count_minus_half_x\n";
    for (std::size_t j = 0; j < t.counts.size(); ++j) {
        const std::int64_t excess2 = 2 * static_cast<std::int64_t>(t.counts[j]) - static_cast<std::int64_t>(t.x);
        out << j << ',' << t.lo(j) << ',' << t.hi(j) << ',' << t.counts[j] << ',';
        // x/2 is a half-integer for odd x.
        if (excess2 % 2 == 0)
            out << excess2 / 2;
        else
            out << (excess2 < 0 ? "-" : "") << (excess2 < 0 ? -excess2 : excess2) / 2 << ".5";
        out << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const AlphaSweep& s)
{
    out << "x,beta,alpha\n";
    char buf[64];
    for (const auto& r : s.rows) {
        std::snprintf(buf, sizeof buf, "%.6f", r.alpha);
        out << r.x << ',' << r.beta << ',' << buf << '\n';
    }
}

}  // namespace thetainv
