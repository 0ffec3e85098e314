#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "thetainv/quadarith.hpp"

using namespace thetainv;

TEST_CASE("DiagonalForm validation")
{
    CHECK_THROWS_AS(DiagonalForm(std::vector<std::uint64_t>{}), std::invalid_argument);
    CHECK_THROWS_AS(DiagonalForm({1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(DiagonalForm({1, 1, 1, 1}), std::invalid_argument);
    CHECK(DiagonalForm::parse("1,2,8").arity() == 3);
    CHECK_THROWS_AS(DiagonalForm::parse("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(DiagonalForm::parse("1,-2"), std::invalid_argument);
}

TEST_CASE("is_square and isqrt")
{
    CHECK(is_square(9));
    CHECK_FALSE(is_square(8));
    CHECK(is_square(0));
    CHECK(isqrt(0xFFFFFFFFFFFFFFFFull) == 0xFFFFFFFFull);
    CHECK(is_square(0xFFFFFFFE00000001ull));
    CHECK_FALSE(is_square(0xFFFFFFFE00000002ull));
    for (std::uint64_t r = 1; r < 100000; r += 7) {
        CHECK(isqrt(r * r) == r);
        CHECK(isqrt(r * r - 1) == r - 1);
    }
}

TEST_CASE("count_square_tuples")
{
    CHECK(count_square_tuples(17, {1, 4}) == 1);
    CHECK(count_square_tuples(11, {1, 1, 1}) == 3);
    CHECK(count_square_tuples(7, {1, 2, 4}) == 1);
    for (const DiagonalForm& f : {DiagonalForm{1}, DiagonalForm{3, 5}, DiagonalForm{1, 2, 8}})
        CHECK(count_square_tuples(0, f) == 1);

    const std::vector<std::vector<std::int64_t>> forms = {{1}, {2}, {1, 2}, {1, 4}, {3, 1}, {1, 1, 1},
                                                          {1, 2, 8}, {1, 2, 4}, {5, 3, 1}};
    for (const auto& a : forms) {
        DiagonalForm f(std::vector<std::uint64_t>(a.begin(), a.end()));
        for (std::int64_t n = 0; n <= 600; ++n)
            REQUIRE(count_square_tuples(n, f) == oracle::square_tuples(n, a));
    }
}

TEST_CASE("count_signed_representations")
{
    const DiagonalForm three{1, 1, 1};
    CHECK(count_signed_representations(11, three, true) == 24);
    CHECK(count_signed_representations(14, three, true) == 48);
    CHECK(count_signed_representations(0, three, false) == 1);
    CHECK(count_signed_representations(0, three, true) == 0);
    CHECK(count_signed_representations(25, DiagonalForm{1, 1}, false) == 12);
    CHECK(count_signed_representations(25, DiagonalForm{1, 1}, true) == 8);

    for (std::int64_t n = 0; n <= 400; ++n) {
        REQUIRE(count_signed_representations(n, three, false) == oracle::three_squares_signed(n, false));
        REQUIRE(count_signed_representations(n, three, true) == oracle::three_squares_signed(n, true));
    }
}

TEST_CASE("signed counts split over square divisors into primitive counts")
{
    const DiagonalForm three{1, 1, 1};
    for (std::uint64_t n = 1; n <= 5000; ++n) {
        std::uint64_t sum = 0;
        for (std::uint64_t a = 1; a * a <= n; ++a)
            if (n % (a * a) == 0) sum += count_signed_representations(n / (a * a), three, true);
        REQUIRE(count_signed_representations(n, three, false) == sum);
    }
}

TEST_CASE("jacobi")
{
    CHECK(jacobi(-2, 3) == 1);
    CHECK(jacobi(2, 15) == 1);
    for (std::int64_t a : {-7, 0, 1, 5, 1000003}) CHECK(jacobi(a, 1) == 1);
    CHECK(jacobi(3, 9) == 0);
    CHECK_THROWS_AS(jacobi(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(jacobi(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(jacobi(3, -5), std::invalid_argument);

    for (std::int64_t n = 1; n < 400; n += 2)
        for (std::int64_t a = -60; a <= 60; ++a) REQUIRE(jacobi(a, n) == oracle::jacobi_by_factoring(a, n));
}

TEST_CASE("jacobi is multiplicative in both arguments")
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::int64_t> odd(0, 50000), arg(-1000000, 1000000);
    for (int i = 0; i < 5000; ++i) {
        const std::int64_t m = 2 * odd(rng) + 1, n = 2 * odd(rng) + 1, a = arg(rng), b = arg(rng);
        REQUIRE(jacobi(a, m * n) == jacobi(a, m) * jacobi(a, n));
        REQUIRE(jacobi(a * b, m) == jacobi(a, m) * jacobi(b, m));
    }
}

TEST_CASE("factorize")
{
    CHECK(factorize(12).factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
    CHECK(factorize(195).factors == std::vector<PrimePower>{{3, 1}, {5, 1}, {13, 1}});
    CHECK(factorize(1).factors.empty());
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
    CHECK_THROWS_AS(factorize(std::uint64_t{1} << 63), std::invalid_argument);

    // Beyond trial division: products of primes above 2^20.
    const std::uint64_t p = 1048583, q = 2147483659ull;
    CHECK(factorize(p * q).factors == std::vector<PrimePower>{{p, 1}, {q, 1}});
    CHECK(factorize(p * p * 3).factors == std::vector<PrimePower>{{3, 1}, {p, 2}});
    const std::uint64_t big = 4611686018427387847ull;  // prime below 2^62
    CHECK(is_prime(big));
    CHECK(factorize(big).factors == std::vector<PrimePower>{{big, 1}});

    std::mt19937_64 rng(37);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t n = 1 + rng() % ((std::uint64_t{1} << 62) - 1);
        const auto f = factorize(n);
        std::uint64_t prod = 1;
        for (std::size_t j = 0; j < f.factors.size(); ++j) {
            REQUIRE(is_prime(f.factors[j].prime));
            REQUIRE(f.factors[j].exponent >= 1);
            if (j) REQUIRE(f.factors[j - 1].prime < f.factors[j].prime);
            for (unsigned e = 0; e < f.factors[j].exponent; ++e) prod *= f.factors[j].prime;
        }
        REQUIRE(prod == n);
    }
}

TEST_CASE("odd_exponent_prime_count")
{
    CHECK(odd_exponent_prime_count(factorize(195)) == 3);
    CHECK(odd_exponent_prime_count(factorize(12)) == 1);
    for (std::uint64_t r = 1; r < 300; ++r) CHECK(odd_exponent_prime_count(factorize(r * r)) == 0);
}

TEST_CASE("ideal_count")
{
    CHECK(ideal_count(9, IdealCountKind::minus_two) == 3);
    CHECK(ideal_count(1, IdealCountKind::minus_two) == 1);
    CHECK(ideal_count(1, IdealCountKind::gaussian) == 1);
    CHECK(ideal_count(17, IdealCountKind::gaussian) == 2);
    CHECK(ideal_count(17, IdealCountKind::minus_two) == 2);
    CHECK_THROWS_AS(ideal_count(10, IdealCountKind::gaussian), std::invalid_argument);

    // Against the divisor sums directly.
    for (std::int64_t n = 1; n < 3000; n += 2) {
        std::int64_t u = 0, v = 0;
        for (std::int64_t d = 1; d <= n; d += 2)
            if (n % d == 0) {
                u += oracle::jacobi_by_factoring(-2, d);
                v += oracle::jacobi_by_factoring(-1, d);
            }
        REQUIRE(ideal_count(n, IdealCountKind::minus_two) == static_cast<std::uint64_t>(u));
        REQUIRE(ideal_count(n, IdealCountKind::gaussian) == static_cast<std::uint64_t>(v));
    }
}

TEST_CASE("ideal counts equal twice the two-square counts, less one on squares")
{
    for (std::uint64_t n = 1; n <= 10000; n += 2) {
        const std::uint64_t sq = is_square(n) ? 1 : 0;
        REQUIRE(ideal_count(n, IdealCountKind::gaussian) == 2 * count_square_tuples(n, {1, 4}) - sq);
        REQUIRE(ideal_count(n, IdealCountKind::minus_two) == 2 * count_square_tuples(n, {1, 2}) - sq);
    }
}

TEST_CASE("class_number")
{
    CHECK(class_number(-3) == 1);
    CHECK(class_number(-4) == 1);
    CHECK(class_number(-23) == 3);
    CHECK(class_number(-56) == 4);
    CHECK(class_number(-12) == 1);  // non-maximal order of Q(sqrt -3)
    CHECK(class_number(-27) == 1);
    CHECK(class_number(-99) == 2);
    CHECK_THROWS_AS(class_number(0), std::invalid_argument);
    CHECK_THROWS_AS(class_number(5), std::invalid_argument);
    CHECK_THROWS_AS(class_number(-2), std::invalid_argument);
    CHECK_THROWS_AS(class_number(-5), std::invalid_argument);

    for (std::int64_t D = -7; D >= -3000; --D)
        if (oracle::is_fundamental(D)) REQUIRE(class_number(D) == static_cast<std::uint64_t>(oracle::class_number_formula(D)));
}

TEST_CASE("Gauss: primitive three-square counts are 24 h(-n) and 12 h(-8n)")
{
    const DiagonalForm three{1, 1, 1};
    // n = 3 is the unit exception: 8 representations, h(-3) = 1.
    CHECK(count_signed_representations(3, three, true) == 8);
    for (std::uint64_t n = 11; n <= 10000; n += 8)
        REQUIRE(count_signed_representations(n, three, true) == 24 * class_number(-static_cast<std::int64_t>(n)));
    for (std::uint64_t n = 7; n <= 10000; n += 8)
        REQUIRE(count_signed_representations(2 * n, three, true) ==
                12 * class_number(-8 * static_cast<std::int64_t>(n)));
}

TEST_CASE("genus theory: 2^(m-1) divides h(-n)")
{
    int tested = 0;
    for (std::uint64_t n = 3; n <= 10000; n += 8) {
        const auto f = factorize(n);
        const bool squarefree = std::all_of(f.factors.begin(), f.factors.end(),
                                            [](const PrimePower& pp) { return pp.exponent == 1; });
        const auto m = f.distinct_primes();
        if (!squarefree || m < 3) continue;
        ++tested;
        REQUIRE(class_number(-static_cast<std::int64_t>(n)) % (std::uint64_t{1} << (m - 1)) == 0);
    }
    CHECK(tested > 50);
}
