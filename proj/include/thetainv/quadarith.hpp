#pragma once

// Exact integer oracles: representation counts of diagonal quadratic forms,
// Jacobi symbols, factorization, ideal counts in Z[i] and Z[sqrt(-2)], and
// class numbers of negative discriminants.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace thetainv {

// a_1 x_1^2 + ... + a_k x_k^2 with k in {1,2,3} and every a_i >= 1.
class DiagonalForm {
public:
    DiagonalForm(std::initializer_list<std::uint64_t> coefficients);
    explicit DiagonalForm(std::vector<std::uint64_t> coefficients);

    // Parses "1,2,8".
    static DiagonalForm parse(const std::string& text);

    std::span<const std::uint64_t> coefficients() const { return coefficients_; }
    std::size_t arity() const { return coefficients_.size(); }

private:
    std::vector<std::uint64_t> coefficients_;
};

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::uint64_t value = 1;
    std::vector<PrimePower> factors;  // increasing primes

    std::size_t distinct_primes() const { return factors.size(); }
};

enum class IdealCountKind {
    gaussian,   // Z[i]: character d -> (-1/d)
    minus_two,  // Z[sqrt(-2)]: character d -> (-2/d)
};

std::uint64_t isqrt(std::uint64_t n);
bool is_square(std::uint64_t n);

// Ordered tuples (s_1..s_k) of nonnegative square values with sum a_i s_i = n.
std::uint64_t count_square_tuples(std::uint64_t n, const DiagonalForm& f);

// Integer tuples (x_1..x_k), signs and order distinguished, with
// sum a_i x_i^2 = n. With primitive set, only tuples of gcd 1 count.
std::uint64_t count_signed_representations(std::uint64_t n, const DiagonalForm& f, bool primitive);

// Jacobi symbol (a/n) for odd n >= 1. Throws std::invalid_argument otherwise.
int jacobi(std::int64_t a, std::int64_t n);

bool is_prime(std::uint64_t n);

// Throws std::invalid_argument for n = 0 or n >= 2^63.
Factorization factorize(std::uint64_t n);

std::size_t odd_exponent_prime_count(const Factorization& f);

// Number of ideals of norm n (n odd) in Z[i] or Z[sqrt(-2)].
std::uint64_t ideal_count(std::uint64_t n, IdealCountKind kind);

// Reduced primitive positive-definite forms of discriminant D < 0, D = 0,1 mod 4.
std::uint64_t class_number(std::int64_t discriminant);

}  // namespace thetainv
