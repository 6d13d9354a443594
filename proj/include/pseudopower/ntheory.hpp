// Integer-arithmetic kernels: sieving, factoring, modular exponentiation,
// multiplicative orders, largest prime factors, prime counts in progressions.
//
// Everything here is a pure function; results are safe to share across
// threads once constructed.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pseudopower {

struct Factorization {
    std::uint64_t value = 1;
    // (prime, exponent) pairs, primes strictly increasing
    std::vector<std::pair<std::uint64_t, unsigned>> factors;
};

// Primes in [2, x], ascending.  x < 2 is an error: the empty sieve is almost
// always a caller bug (x truncated to 0/1), so we refuse it loudly.
inline std::vector<std::uint64_t> sieve_primes(std::uint64_t x) {
    if (x < 2)
        throw std::invalid_argument("sieve_primes: empty range, need x >= 2 (got " +
                                    std::to_string(x) + ")");
    std::vector<bool> composite(x + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t n = 2; n <= x; ++n) {
        if (composite[n]) continue;
        primes.push_back(n);
        for (std::uint64_t m = n * n; m <= x; m += n) composite[m] = true;
    }
    return primes;
}

// Deterministic trial division up to sqrt(m).  All values factored by this
// artifact are at most the sieve limit x, so nothing cleverer is needed.
inline Factorization factorize(std::uint64_t m) {
    if (m == 0) throw std::domain_error("factorize: m must be positive");
    Factorization f;
    f.value = m;
    for (std::uint64_t d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
        if (m % d != 0) continue;
        unsigned e = 0;
        while (m % d == 0) { m /= d; ++e; }
        f.factors.emplace_back(d, e);
    }
    if (m > 1) f.factors.emplace_back(m, 1);
    return f;
}

namespace detail {
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % mod);
}
}  // namespace detail

// base^exponent mod modulus by square-and-multiply; negative base reduced
// into [0, modulus) first.
inline std::uint64_t mod_pow(std::int64_t base, std::uint64_t exponent, std::uint64_t modulus) {
    if (modulus < 2) throw std::domain_error("mod_pow: modulus must be >= 2");
    std::int64_t m = static_cast<std::int64_t>(modulus);
    std::uint64_t b = static_cast<std::uint64_t>(((base % m) + m) % m);
    std::uint64_t result = 1;
    while (exponent > 0) {
        if (exponent & 1) result = detail::mul_mod(result, b, modulus);
        b = detail::mul_mod(b, b, modulus);
        exponent >>= 1;
    }
    return result;
}

// Least k >= 1 with g^k == 1 (mod p), via dividing prime factors out of p-1.
// Convention: order is 1 when p | g.
inline std::uint64_t multiplicative_order(std::int64_t g, std::uint64_t p,
                                          const Factorization& pm1) {
    if (pm1.value != p - 1)
        throw std::invalid_argument("multiplicative_order: factorization is of " +
                                    std::to_string(pm1.value) + ", not p-1 = " +
                                    std::to_string(p - 1));
    {
        std::uint64_t check = 1;
        for (auto [q, e] : pm1.factors)
            for (unsigned i = 0; i < e; ++i) check *= q;
        if (check != p - 1)
            throw std::invalid_argument("multiplicative_order: inconsistent factorization");
    }
    std::int64_t sp = static_cast<std::int64_t>(p);
    std::uint64_t r = static_cast<std::uint64_t>(((g % sp) + sp) % sp);
    if (r == 0) return 1;  // p | g
    std::uint64_t ord = p - 1;
    for (auto [q, e] : pm1.factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (ord % q == 0 && mod_pow(static_cast<std::int64_t>(r), ord / q, p) == 1)
                ord /= q;
            else
                break;
        }
    }
    return ord;
}

// P(m), with P(1) = 0.
inline std::uint64_t largest_prime_factor(std::uint64_t m) {
    if (m == 0) throw std::domain_error("largest_prime_factor: m must be positive");
    if (m == 1) return 0;
    Factorization f = factorize(m);
    return f.factors.back().first;
}

// pi(x, y): primes p <= x with P(p-1) <= y.  Exact, by factoring every p-1.
inline std::uint64_t count_smooth_shifted_primes(std::uint64_t x, double y) {
    std::uint64_t count = 0;
    for (std::uint64_t p : sieve_primes(x))
        if (static_cast<double>(largest_prime_factor(p - 1)) <= y) ++count;
    return count;
}

// pi(x; k, b): primes p <= x with p == b (mod k).
inline std::uint64_t count_primes_in_progression(std::uint64_t x, std::uint64_t k,
                                                 std::int64_t b) {
    if (k < 1) throw std::domain_error("count_primes_in_progression: k must be >= 1");
    std::int64_t sk = static_cast<std::int64_t>(k);
    std::uint64_t r = static_cast<std::uint64_t>(((b % sk) + sk) % sk);
    std::uint64_t count = 0;
    for (std::uint64_t p : sieve_primes(x))
        if (p % k == r) ++count;
    return count;
}

}  // namespace pseudopower
