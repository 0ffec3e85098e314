#pragma once

// Scans over B and B*: residue-class counts, the 15 (mod 16) interval table,
// and the beta/alpha sweep.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "thetainv/f2series.hpp"

namespace thetainv {

BitSeries build_B(std::size_t limit);
BitSeries build_Bstar(std::size_t limit);

// Members of b with n = residue (mod modulus) in [lo, hi). modulus must divide 64.
std::uint64_t count_in_class(const BitSeries& b, std::uint64_t lo, std::uint64_t hi, unsigned modulus,
                             unsigned residue);

struct CensusTable {
    unsigned modulus = 16;
    unsigned residue = 15;
    std::uint64_t x = 0;
    std::uint64_t width = 0;  // 16x
    std::vector<std::uint64_t> counts;  // interval j covers [j*width, (j+1)*width)
    std::uint64_t total = 0;

    std::uint64_t lo(std::size_t j) const { return j * width; }
    std::uint64_t hi(std::size_t j) const { return (j + 1) * width; }
    // count - x/2, exact when x is even.
    double excess(std::size_t j) const;
};

// Throws std::out_of_range if b is shorter than 16 * x * intervals.
CensusTable interval_counts(const BitSeries& b, std::uint64_t x, std::size_t intervals, unsigned threads = 1);

struct AlphaRow {
    std::uint64_t x;
    std::uint64_t beta;
    double alpha;  // (beta - x/2) / sqrt(x)
};

struct AlphaSweep {
    std::vector<AlphaRow> rows;
    std::size_t argmin = 0;  // row indices, compared exactly
    std::size_t argmax = 0;
};

// beta(x) = #{n <= 16x : n = 15 (mod 16), n in B} for x = step, 2*step, ..., max_x.
AlphaSweep alpha_sweep(const BitSeries& b, std::uint64_t max_x, std::uint64_t step);

// Exact comparisons of alpha = (beta - x/2)/sqrt(x) against a rational num/den (den > 0).
bool alpha_below(std::uint64_t x, std::uint64_t beta, std::int64_t num, std::int64_t den);
bool alpha_above(std::uint64_t x, std::uint64_t beta, std::int64_t num, std::int64_t den);

// Exact three-way comparison of the alpha values of two rows.
int compare_alpha(const AlphaRow& a, const AlphaRow& b);

// Membership counts for n < limit by residue mod 16.
std::array<std::uint64_t, 16> residue_class_counts(const BitSeries& b, std::uint64_t limit);

// #{n <= N : n in B, n != 15 (mod 16)} / N. Needs N + 1 coefficients.
double non15_density(const BitSeries& b, std::uint64_t N);

void write_interval_csv(std::ostream& out, const CensusTable& t);
void write_sweep_csv(std::ostream& out, const AlphaSweep& s);

}  // namespace thetainv
