#pragma once

// Truncated formal power series over GF(2), bit-packed into 64-bit words.
//
// Bit i of word w is the coefficient of x^(64w + i). Every operation takes an
// explicit coefficient limit; storage never grows implicitly, and reading a
// coefficient at or beyond the length is an error.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetainv {

class not_invertible : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class BitSeries {
public:
    BitSeries() = default;

    // All-zero series with coefficients for x^0 .. x^(length-1).
    explicit BitSeries(std::size_t length);

    // Adopts a packed word array. Throws std::invalid_argument if the word
    // count does not match the length or a bit beyond the length is set.
    static BitSeries from_words(std::size_t length, std::vector<std::uint64_t> words);

    std::size_t length() const { return length_; }
    std::span<const std::uint64_t> words() const { return words_; }

    // Throws std::out_of_range for n >= length().
    bool coefficient(std::size_t n) const;

    void set(std::size_t n, bool value = true);

    std::size_t popcount() const;

    // Exponents with coefficient 1, ascending.
    std::vector<std::uint64_t> support() const;

    // FNV-1a over the length and the packed words.
    std::uint64_t checksum() const;

    bool is_one() const;

    friend bool operator==(const BitSeries&, const BitSeries&) = default;

private:
    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

struct SparseExponents {
    std::vector<std::uint64_t> exponents;
    std::uint64_t limit = 0;

    // Validates strictly increasing entries below limit.
    static SparseExponents from_list(std::vector<std::uint64_t> exponents, std::uint64_t limit);

    // 0, 1, 4, 9, ... below limit.
    static SparseExponents squares(std::uint64_t limit);

    // Generalized pentagonal numbers k(3k-1)/2, k in Z: 0, 1, 2, 5, 7, 12, 15, ...
    static SparseExponents generalized_pentagonal(std::uint64_t limit);

    bool contains(std::uint64_t n) const;
};

inline std::size_t word_count(std::size_t length) { return (length + 63) / 64; }

BitSeries from_exponents(const SparseExponents& e, std::size_t limit);

// Frobenius: coefficient n of s moves to 2n.
BitSeries square(const BitSeries& s, std::size_t limit);

// s * sum_{k in e} x^k, as XOR of shifted copies of s.
BitSeries mul_sparse(const BitSeries& s, const SparseExponents& e, std::size_t limit);

// Carryless product. Iterates over the set bits of the sparser factor.
BitSeries mul_dense(const BitSeries& a, const BitSeries& b, std::size_t limit);

// Reciprocal by precision doubling h <- g * h^2.
BitSeries invert_newton(const SparseExponents& e, std::size_t limit);

// Reciprocal by the sequential recurrence b_n = sum_{k in e, 0<k<=n} b_(n-k).
// Kept as an independent check on invert_newton.
BitSeries invert_recurrence(const SparseExponents& e, std::size_t limit);

// 1/g^7 for the squares theta series g, built as g * (1/g)^8.
BitSeries inverse_seventh_power(std::size_t limit);

inline bool coefficient(const BitSeries& s, std::size_t n) { return s.coefficient(n); }

// .f2s persistence: "F2S1", u64 LE coefficient count, ceil(count/64) u64 LE words.
void write_f2s(std::ostream& out, const BitSeries& s);
BitSeries read_f2s(std::istream& in);
void save_f2s(const std::string& path, const BitSeries& s);
BitSeries load_f2s(const std::string& path);

class f2s_format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace thetainv
