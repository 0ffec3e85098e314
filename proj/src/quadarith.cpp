#include "thetainv/quadarith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace thetainv {

namespace {

constexpr std::uint64_t kTrialBound = std::uint64_t{1} << 20;

std::vector<std::uint64_t> validated(std::vector<std::uint64_t> c)
{
    if (c.empty() || c.size() > 3) throw std::invalid_argument("diagonal form needs 1 to 3 coefficients");
    for (auto a : c)
        if (a == 0) throw std::invalid_argument("diagonal form coefficients must be positive");
    return c;
}

// Visits every tuple of nonnegative roots (r_1..r_k) with sum a_i r_i^2 = n.
template <typename Visit>
void for_each_root_tuple(std::uint64_t n, std::span<const std::uint64_t> a, Visit&& visit)
{
    switch (a.size()) {
    case 1:
        if (n % a[0] == 0 && is_square(n / a[0])) visit(isqrt(n / a[0]), 0, 0);
        break;
    case 2:
        for (std::uint64_t y = 0; a[1] * y * y <= n; ++y) {
            const std::uint64_t rest = n - a[1] * y * y;
            if (rest % a[0] != 0) continue;
            const std::uint64_t q = rest / a[0];
            const std::uint64_t x = isqrt(q);
            if (x * x == q) visit(x, y, 0);
        }
        break;
    case 3:
        for (std::uint64_t z = 0; a[2] * z * z <= n; ++z) {
            const std::uint64_t nz = n - a[2] * z * z;
            for (std::uint64_t y = 0; a[1] * y * y <= nz; ++y) {
                const std::uint64_t rest = nz - a[1] * y * y;
                if (rest % a[0] != 0) continue;
                const std::uint64_t q = rest / a[0];
                const std::uint64_t x = isqrt(q);
                if (x * x == q) visit(x, y, z);
            }
        }
        break;
    default:
        break;
    }
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    for (; e != 0; e >>= 1) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
    }
    return r;
}

// Floyd cycle finding on x -> x^2 + 1 from the given start. Returns n on failure.
std::uint64_t pollard_rho(std::uint64_t n, std::uint64_t start)
{
    auto f = [n](std::uint64_t x) { return (mulmod(x, x, n) + 1) % n; };
    std::uint64_t x = start % n, y = x, d = 1;
    while (d == 1) {
        x = f(x);
        y = f(f(y));
        d = std::gcd(x > y ? x - y : y - x, n);
    }
    return d;
}

void split_large(std::uint64_t n, std::vector<std::uint64_t>& primes)
{
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    for (std::uint64_t seed = 1;; ++seed) {
        const std::uint64_t d = pollard_rho(n, seed);
        if (d != n) {
            split_large(d, primes);
            split_large(n / d, primes);
            return;
        }
    }
}

}  // namespace

DiagonalForm::DiagonalForm(std::initializer_list<std::uint64_t> coefficients)
    : coefficients_(validated(std::vector<std::uint64_t>(coefficients)))
{
}

DiagonalForm::DiagonalForm(std::vector<std::uint64_t> coefficients) : coefficients_(validated(std::move(coefficients))) {}

DiagonalForm DiagonalForm::parse(const std::string& text)
{
    std::vector<std::uint64_t> c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad form coefficient '" + item + "'");
        c.push_back(std::stoull(item));
    }
    return DiagonalForm(std::move(c));
}

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (r > 0xFFFFFFFFull || r * r > n)) --r;
    while (r < 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(std::uint64_t n)
{
    const std::uint64_t r = isqrt(n);
    return r * r == n;
}

std::uint64_t count_square_tuples(std::uint64_t n, const DiagonalForm& f)
{
    std::uint64_t count = 0;
    for_each_root_tuple(n, f.coefficients(), [&count](std::uint64_t, std::uint64_t, std::uint64_t) { ++count; });
    return count;
}

std::uint64_t count_signed_representations(std::uint64_t n, const DiagonalForm& f, bool primitive)
{
    const std::size_t k = f.arity();
    std::uint64_t count = 0;
    for_each_root_tuple(n, f.coefficients(), [&](std::uint64_t x, std::uint64_t y, std::uint64_t z) {
        if (primitive && std::gcd(std::gcd(x, y), z) != 1) return;
        unsigned nonzero = (x != 0) + (k > 1 && y != 0) + (k > 2 && z != 0);
        count += std::uint64_t{1} << nonzero;
    });
    return count;
}

int jacobi(std::int64_t a, std::int64_t n)
{
    if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: lower argument must be odd and positive");
    auto m = static_cast<std::uint64_t>(n);
    std::uint64_t r = static_cast<std::uint64_t>(((a % n) + n) % n);
    int t = 1;
    while (r != 0) {
        while (r % 2 == 0) {
            r /= 2;
            const std::uint64_t m8 = m % 8;
            if (m8 == 3 || m8 == 5) t = -t;
        }
        std::swap(r, m);
        if (r % 4 == 3 && m % 4 == 3) t = -t;
        r %= m;
    }
    return m == 1 ? t : 0;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : kBases) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (auto a : kBases) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Factorization factorize(std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    if (n >= (std::uint64_t{1} << 63)) throw std::invalid_argument("factorize: n must be below 2^63");

    Factorization f;
    f.value = n;
    auto take = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.factors.push_back({p, e});
    };
    take(2);
    for (std::uint64_t p = 3; p < kTrialBound && p * p <= n; p += 2) take(p);
    if (n == 1) return f;
    if (n < kTrialBound * kTrialBound) {
        f.factors.push_back({n, 1});
        return f;
    }

    std::vector<std::uint64_t> primes;
    split_large(n, primes);
    std::sort(primes.begin(), primes.end());
    for (auto p : primes) {
        if (!f.factors.empty() && f.factors.back().prime == p)
            ++f.factors.back().exponent;
        else
            f.factors.push_back({p, 1});
    }
    return f;
}

std::size_t odd_exponent_prime_count(const Factorization& f)
{
    std::size_t c = 0;
    for (const auto& pp : f.factors) c += pp.exponent % 2;
    return c;
}

std::uint64_t ideal_count(std::uint64_t n, IdealCountKind kind)
{
    if (n % 2 == 0) throw std::invalid_argument("ideal_count: n must be odd");
    const std::int64_t d = kind == IdealCountKind::gaussian ? -1 : -2;
    std::uint64_t total = 1;
    for (const auto& [p, c] : factorize(n).factors) {
        const int chi = jacobi(d, static_cast<std::int64_t>(p));
        if (chi == 1)
            total *= c + 1;
        else if (chi == -1)
            total *= (c % 2 == 0) ? 1 : 0;
    }
    return total;
}

std::uint64_t class_number(std::int64_t discriminant)
{
    const std::int64_t D = discriminant;
    const std::int64_t r = ((D % 4) + 4) % 4;
    if (D >= 0 || (r != 0 && r != 1))
        throw std::invalid_argument("class_number: discriminant must be negative and 0 or 1 mod 4");

    const auto absd = static_cast<std::uint64_t>(-D);
    std::uint64_t h = 0;
    for (std::uint64_t a = 1; 3 * a * a <= absd; ++a) {
        // b runs over (-a, a] with b = D (mod 2).
        for (std::int64_t b = -static_cast<std::int64_t>(a) + 1; b <= static_cast<std::int64_t>(a); ++b) {
            if (((b - D) % 2) != 0) continue;
            const auto num = static_cast<std::uint64_t>(b * b - D);
            if (num % (4 * a) != 0) continue;
            const std::uint64_t c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (std::gcd(std::gcd(a, static_cast<std::uint64_t>(b < 0 ? -b : b)), c) != 1) continue;
            ++h;
        }
    }
    return h;
}

}  // namespace thetainv
