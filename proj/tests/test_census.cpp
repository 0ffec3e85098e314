#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "thetainv/census.hpp"

using namespace thetainv;

namespace {

using Support = std::vector<std::uint64_t>;

// Sequential long-division bitmap, independent of the Newton path.
const BitSeries& oracle_B(std::size_t limit)
{
    static std::size_t built = 0;
    static BitSeries b;
    if (built != limit) {
        const auto p = oracle::inverse(oracle::squares_poly(limit), limit);
        b = BitSeries(limit);
        for (std::size_t i = 0; i < limit; ++i)
            if (p[i]) b.set(i);
        built = limit;
    }
    return b;
}

std::uint64_t brute_count(const BitSeries& b, std::uint64_t lo, std::uint64_t hi, unsigned m, unsigned r)
{
    std::uint64_t c = 0;
    for (std::uint64_t n = lo; n < hi; ++n) c += n % m == r && b.coefficient(n);
    return c;
}

}  // namespace

TEST_CASE("build_B")
{
    CHECK(build_B(14).support() == Support{0, 1, 2, 3, 5, 7, 8, 9, 13});
    Support tail;
    for (auto n : build_B(25).support())
        if (n >= 14) tail.push_back(n);
    CHECK(tail == Support{17, 18, 23});
    CHECK(build_B(1).support() == Support{0});
    CHECK(build_B(1 << 16) == oracle_B(1 << 16));
}

TEST_CASE("build_Bstar matches partition parity")
{
    CHECK(build_Bstar(13).support() == Support{0, 1, 3, 4, 5, 6, 7, 12});
    CHECK(build_Bstar(1).support() == Support{0});
    CHECK(oracle::partitions_direct(8) == 22);
    CHECK_FALSE(build_Bstar(9).coefficient(8));

    const auto p = oracle::partitions(10001);
    for (std::size_t n = 0; n <= 60; ++n) REQUIRE(p[n] == oracle::partitions_direct(n));
    const auto b = build_Bstar(10001);
    for (std::size_t n = 0; n <= 10000; ++n) REQUIRE(b.coefficient(n) == (p[n] % 2 == 1));
}

TEST_CASE("count_in_class against brute force")
{
    const auto& b = oracle_B(5000);
    for (unsigned m : {1u, 2u, 4u, 8u, 16u, 32u, 64u})
        for (unsigned r = 0; r < m; r += 3)
            for (auto [lo, hi] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
                     {0, 5000}, {0, 1}, {63, 65}, {100, 4000}, {777, 778}, {10, 10}, {64, 128}})
                REQUIRE(count_in_class(b, lo, hi, m, r) == brute_count(b, lo, hi, m, r));
    CHECK_THROWS_AS(count_in_class(b, 0, 10, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(count_in_class(b, 0, 5001, 16, 15), std::out_of_range);
}

TEST_CASE("interval_counts: small cases")
{
    const auto b = build_B(16);
    const auto t = interval_counts(b, 1, 1);
    REQUIRE(t.counts.size() == 1);
    CHECK(t.counts[0] == 0);
    CHECK(interval_counts(b, 1, 0).counts.empty());
    CHECK_THROWS_AS(interval_counts(b, 1, 2), std::out_of_range);

    const auto& big = oracle_B(1 << 14);
    const auto t2 = interval_counts(big, 64, 16, 3);
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < 16; ++j) {
        REQUIRE(t2.counts[j] == brute_count(big, 1024 * j, 1024 * (j + 1), 16, 15));
        total += t2.counts[j];
    }
    CHECK(t2.total == total);
}

TEST_CASE("alpha_sweep: small cases")
{
    const auto b = build_B(16);
    const auto s = alpha_sweep(b, 1, 1);
    REQUIRE(s.rows.size() == 1);
    CHECK(s.rows[0].beta == 0);
    CHECK(s.rows[0].alpha == doctest::Approx(-0.5));
    CHECK_THROWS_AS(alpha_sweep(b, 2, 1), std::out_of_range);
    CHECK_THROWS_AS(alpha_sweep(b, 1, 0), std::invalid_argument);
}

TEST_CASE("alpha_sweep: beta is monotone and equals interval prefix sums")
{
    const auto& b = oracle_B(1 << 16);
    const auto s = alpha_sweep(b, 4096, 16);
    for (std::size_t i = 1; i < s.rows.size(); ++i) REQUIRE(s.rows[i].beta >= s.rows[i - 1].beta);

    for (std::uint64_t x : {16u, 64u, 256u}) {
        const std::size_t k = 4096 / x;
        const auto t = interval_counts(b, x, k);
        std::uint64_t prefix = 0;
        for (std::size_t j = 0; j < k; ++j) {
            prefix += t.counts[j];
            // beta((j+1)x), recomputed directly.
            REQUIRE(prefix == brute_count(b, 0, 16 * x * (j + 1) + 1, 16, 15));
            const std::uint64_t row = (j + 1) * x / 16 - 1;
            REQUIRE(s.rows[row].x == (j + 1) * x);
            REQUIRE(s.rows[row].beta == prefix);
        }
    }

    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        REQUIRE(compare_alpha(s.rows[i], s.rows[s.argmin]) >= 0);
        REQUIRE(compare_alpha(s.rows[i], s.rows[s.argmax]) <= 0);
    }
}

TEST_CASE("exact alpha bound comparisons")
{
    // x = 100, beta = 39: alpha = -11/10 exactly.
    CHECK_FALSE(alpha_above(100, 39, -11, 10));
    CHECK_FALSE(alpha_below(100, 39, -11, 10));
    CHECK(alpha_above(100, 40, -11, 10));
    // x = 2500, beta = 1279: alpha = 29/50 = 0.58 exactly.
    CHECK_FALSE(alpha_below(2500, 1279, 58, 100));
    CHECK(alpha_below(2500, 1278, 58, 100));
    // x = 2: alpha = (beta - 1)/sqrt 2, irrational boundary cases.
    CHECK(alpha_below(2, 1, 1, 1000000));
    CHECK(alpha_above(2, 1, -1, 1000000));
    CHECK(alpha_below(2, 2, 708, 1000));  // 1/sqrt2 = 0.7071...
    CHECK(alpha_above(2, 2, 707, 1000));

    const AlphaRow a{100, 39, 0}, b{400, 178, 0};  // -1.1 and -1.1
    CHECK(compare_alpha(a, b) == 0);
    CHECK(compare_alpha(AlphaRow{100, 50, 0}, AlphaRow{4, 3, 0}) < 0);
}

TEST_CASE("residue_class_counts")
{
    const auto b = build_B(14);
    const auto c = residue_class_counts(b, 14);
    // {0,1,2,3,5,7,8,9,13}, one member in each of these classes mod 16.
    const std::array<std::uint64_t, 16> expect{1, 1, 1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0};
    CHECK(c == expect);

    const auto c1 = residue_class_counts(b, 1);
    CHECK(c1[0] == 1);
    for (int r = 1; r < 16; ++r) CHECK(c1[r] == 0);

    const auto& big = oracle_B(1 << 14);
    const auto cb = residue_class_counts(big, 1 << 14);
    std::uint64_t sum = 0;
    for (auto v : cb) sum += v;
    CHECK(sum == big.popcount());
}

TEST_CASE("whole-bitmap scans at 2^23")
{
    const auto b = build_B((1u << 23) + 1);

    // Even members are exactly twice the squares, up to 2^20.
    for (std::uint64_t n = 0; n <= (1u << 20); n += 2) {
        std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n / 2)));
        REQUIRE(b.coefficient(n) == (r * r == n / 2));
    }

    // Interval table at x = 2^16. The last interval is x/2 - 7; this was
    // confirmed with the sequential recurrence over all 2^23 + 1 coefficients.
    const auto t = interval_counts(b, 1 << 16, 8);
    const std::int64_t excess[] = {13, 94, -231, 207, -120, 14, -270, -7};
    for (std::size_t j = 0; j < 8; ++j) CHECK(static_cast<std::int64_t>(t.counts[j]) - 32768 == excess[j]);

    // Golden counts for the non-15 density trend.
    auto non15 = [&](std::uint64_t N) {
        std::uint64_t m = 0;
        for (unsigned r = 0; r < 15; ++r) m += count_in_class(b, 0, N + 1, 16, r);
        return m;
    };
    CHECK(non15(1u << 20) == 124694);
    CHECK(non15(1u << 23) == 872769);
    CHECK(non15_density(b, 1u << 23) < non15_density(b, 1u << 20));
}

TEST_CASE("CSV output")
{
    CensusTable t;
    t.x = 3;
    t.width = 48;
    t.counts = {1, 2};
    std::ostringstream out;
    write_interval_csv(out, t);
    CHECK(out.str() == "interval_index,lo,hi,count,count_minus_half_x\n0,0,48,1,-0.5\n1,48,96,2,0.5\n");

    AlphaSweep s;
    s.rows = {{1, 0, -0.5}, {1024, 518, 0.1875}};
    std::ostringstream out2;
    write_sweep_csv(out2, s);
    CHECK(out2.str() == "x,beta,alpha\n1,0,-0.500000\n1024,518,0.187500\n");
}
