#include "thetainv/f2series.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>

namespace thetainv {

namespace {

using Words = std::vector<std::uint64_t>;

std::uint64_t tail_mask(std::size_t length)
{
    const unsigned r = length % 64;
    return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

void clear_tail(Words& w, std::size_t length)
{
    if (!w.empty()) w.back() &= tail_mask(length);
}

// dst ^= src * x^shift, over the first dst.size() words.
void xor_shifted(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::size_t shift)
{
    const std::size_t q = shift / 64;
    const unsigned r = shift % 64;
    if (q >= dst.size()) return;
    const std::size_t n = std::min(src.size(), dst.size() - q);
    std::uint64_t* d = dst.data() + q;
    const std::uint64_t* s = src.data();
    if (r == 0) {
        for (std::size_t i = 0; i < n; ++i) d[i] ^= s[i];
        return;
    }
    d[0] ^= s[0] << r;
    for (std::size_t i = 1; i < n; ++i) d[i] ^= (s[i] << r) | (s[i - 1] >> (64 - r));
    if (q + n < dst.size()) d[n] ^= s[n - 1] >> (64 - r);
}

// Interleave zeros: bit i of v goes to bit 2i.
std::uint64_t spread32(std::uint32_t v)
{
    std::uint64_t x = v;
    x = (x | (x << 16)) & 0x0000FFFF0000FFFFull;
    x = (x | (x << 8)) & 0x00FF00FF00FF00FFull;
    x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0Full;
    x = (x | (x << 2)) & 0x3333333333333333ull;
    x = (x | (x << 1)) & 0x5555555555555555ull;
    return x;
}

// Source words restricted to the first `limit` coefficients.
std::span<const std::uint64_t> clipped(const BitSeries& s, std::size_t limit)
{
    return s.words().first(std::min(s.words().size(), word_count(limit)));
}

}  // namespace

BitSeries::BitSeries(std::size_t length) : length_(length), words_(word_count(length), 0) {}

BitSeries BitSeries::from_words(std::size_t length, std::vector<std::uint64_t> words)
{
    if (words.size() != word_count(length))
        throw std::invalid_argument("word count does not match series length");
    if (!words.empty() && (words.back() & ~tail_mask(length)) != 0)
        throw std::invalid_argument("bits set beyond series length");
    BitSeries s;
    s.length_ = length;
    s.words_ = std::move(words);
    return s;
}

bool BitSeries::coefficient(std::size_t n) const
{
    if (n >= length_)
        throw std::out_of_range("coefficient " + std::to_string(n) + " requested from series of length " +
                                std::to_string(length_));
    return (words_[n / 64] >> (n % 64)) & 1;
}

void BitSeries::set(std::size_t n, bool value)
{
    if (n >= length_) throw std::out_of_range("set beyond series length");
    const std::uint64_t bit = std::uint64_t{1} << (n % 64);
    if (value)
        words_[n / 64] |= bit;
    else
        words_[n / 64] &= ~bit;
}

std::size_t BitSeries::popcount() const
{
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

std::vector<std::uint64_t> BitSeries::support() const
{
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        for (std::uint64_t w = words_[i]; w != 0; w &= w - 1) out.push_back(64 * i + std::countr_zero(w));
    }
    return out;
}

std::uint64_t BitSeries::checksum() const
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(length_);
    for (auto w : words_) mix(w);
    return h;
}

bool BitSeries::is_one() const
{
    if (length_ == 0 || words_[0] != 1) return false;
    return std::all_of(words_.begin() + 1, words_.end(), [](std::uint64_t w) { return w == 0; });
}

SparseExponents SparseExponents::from_list(std::vector<std::uint64_t> exponents, std::uint64_t limit)
{
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] >= limit) throw std::invalid_argument("exponent not below limit");
        if (i > 0 && exponents[i] <= exponents[i - 1])
            throw std::invalid_argument("exponents must be strictly increasing");
    }
    return SparseExponents{std::move(exponents), limit};
}

SparseExponents SparseExponents::squares(std::uint64_t limit)
{
    SparseExponents e{{}, limit};
    for (std::uint64_t k = 0; k * k < limit; ++k) e.exponents.push_back(k * k);
    return e;
}

SparseExponents SparseExponents::generalized_pentagonal(std::uint64_t limit)
{
    SparseExponents e{{}, limit};
    if (limit == 0) return e;
    e.exponents.push_back(0);
    for (std::uint64_t k = 1;; ++k) {
        const std::uint64_t lo = k * (3 * k - 1) / 2;
        const std::uint64_t hi = k * (3 * k + 1) / 2;
        if (lo >= limit) break;
        e.exponents.push_back(lo);
        if (hi < limit) e.exponents.push_back(hi);
    }
    return e;
}

bool SparseExponents::contains(std::uint64_t n) const
{
    return std::binary_search(exponents.begin(), exponents.end(), n);
}

BitSeries from_exponents(const SparseExponents& e, std::size_t limit)
{
    if (limit == 0) throw std::invalid_argument("from_exponents: limit must be at least 1");
    BitSeries s(limit);
    for (auto k : e.exponents) {
        if (k >= limit) break;
        s.set(k);
    }
    return s;
}

BitSeries square(const BitSeries& s, std::size_t limit)
{
    Words out(word_count(limit), 0);
    const auto src = clipped(s, (limit + 1) / 2);
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (2 * i < out.size()) out[2 * i] = spread32(static_cast<std::uint32_t>(src[i]));
        if (2 * i + 1 < out.size()) out[2 * i + 1] = spread32(static_cast<std::uint32_t>(src[i] >> 32));
    }
    // The source may carry bits at or beyond ceil(limit/2) in its last word.
    clear_tail(out, limit);
    return BitSeries::from_words(limit, std::move(out));
}

BitSeries mul_sparse(const BitSeries& s, const SparseExponents& e, std::size_t limit)
{
    Words out(word_count(limit), 0);
    const auto src = clipped(s, limit);
    if (!src.empty()) {
        for (auto k : e.exponents) {
            if (k >= limit) break;
            xor_shifted(out, src, k);
        }
    }
    clear_tail(out, limit);
    return BitSeries::from_words(limit, std::move(out));
}

BitSeries mul_dense(const BitSeries& a, const BitSeries& b, std::size_t limit)
{
    const auto wa = clipped(a, limit);
    const auto wb = clipped(b, limit);
    auto ones = [](std::span<const std::uint64_t> w) {
        std::size_t c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    };
    const bool a_sparser = ones(wa) <= ones(wb);
    const auto sparse = a_sparser ? wa : wb;
    const auto dense = a_sparser ? wb : wa;

    Words out(word_count(limit), 0);
    if (!dense.empty()) {
        for (std::size_t i = 0; i < sparse.size(); ++i) {
            for (std::uint64_t w = sparse[i]; w != 0; w &= w - 1) {
                const std::size_t k = 64 * i + std::countr_zero(w);
                if (k >= limit) break;
                xor_shifted(out, dense, k);
            }
        }
    }
    clear_tail(out, limit);
    return BitSeries::from_words(limit, std::move(out));
}

BitSeries invert_newton(const SparseExponents& e, std::size_t limit)
{
    if (limit == 0) throw std::invalid_argument("invert_newton: limit must be at least 1");
    if (e.exponents.empty() || e.exponents.front() != 0)
        throw not_invertible("series has zero constant term");

    BitSeries h(1);
    h.set(0);
    std::size_t precision = 1;
    while (precision < limit) {
        const std::size_t next = std::min(2 * precision, limit);
        h = mul_sparse(square(h, next), e, next);
        precision = next;
    }
    return h;
}

BitSeries invert_recurrence(const SparseExponents& e, std::size_t limit)
{
    if (limit == 0) throw std::invalid_argument("invert_recurrence: limit must be at least 1");
    if (e.exponents.empty() || e.exponents.front() != 0)
        throw not_invertible("series has zero constant term");

    std::vector<std::uint8_t> b(limit, 0);
    b[0] = 1;
    for (std::size_t n = 1; n < limit; ++n) {
        std::uint8_t acc = 0;
        for (std::size_t i = 1; i < e.exponents.size() && e.exponents[i] <= n; ++i) acc ^= b[n - e.exponents[i]];
        b[n] = acc;
    }
    BitSeries s(limit);
    for (std::size_t n = 0; n < limit; ++n)
        if (b[n]) s.set(n);
    return s;
}

BitSeries inverse_seventh_power(std::size_t limit)
{
    if (limit == 0) throw std::invalid_argument("inverse_seventh_power: limit must be at least 1");
    const auto g = SparseExponents::squares(limit);
    BitSeries h = invert_newton(g, limit);
    for (int i = 0; i < 3; ++i) h = square(h, limit);
    return mul_sparse(h, g, limit);
}

void write_f2s(std::ostream& out, const BitSeries& s)
{
    auto put_u64 = [&out](std::uint64_t v) {
        char buf[8];
        for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
        out.write(buf, 8);
    };
    out.write("F2S1", 4);
    put_u64(s.length());
    for (auto w : s.words()) put_u64(w);
    if (!out) throw std::runtime_error("write failed");
}

BitSeries read_f2s(std::istream& in)
{
    auto get_u64 = [&in]() {
        unsigned char buf[8];
        if (!in.read(reinterpret_cast<char*>(buf), 8)) throw f2s_format_error("truncated .f2s stream");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
        return v;
    };
    char magic[4];
    if (!in.read(magic, 4) || std::string(magic, 4) != "F2S1") throw f2s_format_error("bad .f2s magic");
    const std::uint64_t count = get_u64();
    if (count > (std::uint64_t{1} << 40)) throw f2s_format_error(".f2s coefficient count too large");
    Words words(word_count(count));
    for (auto& w : words) w = get_u64();
    if (!words.empty() && (words.back() & ~tail_mask(count)) != 0)
        throw f2s_format_error(".f2s has nonzero bits beyond coefficient count");
    return BitSeries::from_words(count, std::move(words));
}

void save_f2s(const std::string& path, const BitSeries& s)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_f2s(out, s);
}

BitSeries load_f2s(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_f2s(in);
}

}  // namespace thetainv
