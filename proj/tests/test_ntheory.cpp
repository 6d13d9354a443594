#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <random>

#include "pseudopower/ntheory.hpp"

using namespace pseudopower;

namespace {

// trial-division oracle, independent of the sieve
bool is_prime_oracle(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("sieve_primes basics") {
    CHECK(sieve_primes(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(sieve_primes(2) == std::vector<std::uint64_t>{2});
    CHECK(sieve_primes(100).size() == 25);
    CHECK_THROWS_AS(sieve_primes(1), std::invalid_argument);
    CHECK_THROWS_AS(sieve_primes(0), std::invalid_argument);
}

TEST_CASE("sieve matches trial division") {
    auto primes = sieve_primes(500);
    std::size_t idx = 0;
    for (std::uint64_t n = 2; n <= 500; ++n) {
        bool in_sieve = idx < primes.size() && primes[idx] == n;
        CHECK(in_sieve == is_prime_oracle(n));
        if (in_sieve) ++idx;
    }
    CHECK(idx == primes.size());
}

TEST_CASE("factorize examples") {
    auto f = factorize(12);
    CHECK(f.factors == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 1}});
    CHECK(factorize(1).factors.empty());
    auto g = factorize(30031);  // 2*3*5*7*11*13 + 1
    CHECK(g.factors == std::vector<std::pair<std::uint64_t, unsigned>>{{59, 1}, {509, 1}});
    CHECK_THROWS_AS(factorize(0), std::domain_error);
}

TEST_CASE("factorize invariants on random inputs") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<std::uint64_t> dist(1, 1000000);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t m = dist(rng);
        auto f = factorize(m);
        std::uint64_t product = 1, prev = 0;
        for (auto [q, e] : f.factors) {
            CHECK(q > prev);
            CHECK(is_prime_oracle(q));
            for (unsigned j = 0; j < e; ++j) product *= q;
            prev = q;
        }
        CHECK(product == m);
    }
}

TEST_CASE("mod_pow") {
    CHECK(mod_pow(2, 10, 1000) == 24);
    CHECK(mod_pow(5, 0, 7) == 1);
    CHECK(mod_pow(-2, 3, 7) == 6);  // (-8) mod 7
    CHECK_THROWS_AS(mod_pow(2, 3, 1), std::domain_error);
}

TEST_CASE("multiplicative_order examples") {
    CHECK(multiplicative_order(2, 7, factorize(6)) == 3);
    CHECK(multiplicative_order(2, 3, factorize(2)) == 2);
    CHECK(multiplicative_order(6, 3, factorize(2)) == 1);  // 3 | 6
    CHECK_THROWS_AS(multiplicative_order(2, 7, factorize(8)), std::invalid_argument);
}

TEST_CASE("multiplicative_order is the least exponent") {
    for (std::uint64_t p : sieve_primes(200)) {
        auto pm1 = factorize(p - 1);
        for (std::int64_t g = 2; g <= 10; ++g) {
            std::uint64_t l = multiplicative_order(g, p, pm1);
            if (g % static_cast<std::int64_t>(p) == 0) {
                CHECK(l == 1);
                continue;
            }
            CHECK((p - 1) % l == 0);
            CHECK(mod_pow(g, l, p) == 1);
            // minimality: dropping any prime factor of l breaks the identity
            for (auto [q, e] : factorize(l).factors)
                CHECK(mod_pow(g, l / q, p) != 1);
        }
    }
}

TEST_CASE("largest_prime_factor") {
    CHECK(largest_prime_factor(1) == 0);  // P(1) = 0
    CHECK(largest_prime_factor(12) == 3);
    CHECK(largest_prime_factor(30030) == 13);
    CHECK_THROWS_AS(largest_prime_factor(0), std::domain_error);
}

TEST_CASE("count_smooth_shifted_primes") {
    CHECK(count_smooth_shifted_primes(10, 2) == 3);  // p = 2, 3, 5
    for (std::uint64_t x : {10ull, 100ull, 1000ull})
        CHECK(count_smooth_shifted_primes(x, static_cast<double>(x)) ==
              sieve_primes(x).size());

    // brute-force oracle at (100, 10)
    std::uint64_t expected = 0;
    for (std::uint64_t p : sieve_primes(100)) {
        std::uint64_t m = p - 1, largest = 0;
        for (std::uint64_t d = 2; d <= m; ++d)
            while (m % d == 0) { largest = d; m /= d; }
        if (largest <= 10) ++expected;
    }
    CHECK(count_smooth_shifted_primes(100, 10) == expected);
}

TEST_CASE("count_primes_in_progression") {
    CHECK(count_primes_in_progression(20, 4, 1) == 3);  // 5, 13, 17
    for (std::uint64_t x : {10ull, 50ull, 1000ull})
        CHECK(count_primes_in_progression(x, 1, 0) == sieve_primes(x).size());

    // direct enumeration oracle at (50, 3, 1)
    std::uint64_t expected = 0;
    for (std::uint64_t n = 2; n <= 50; ++n)
        if (is_prime_oracle(n) && n % 3 == 1) ++expected;
    CHECK(count_primes_in_progression(50, 3, 1) == expected);

    CHECK(count_primes_in_progression(100, 10, -3) ==
          count_primes_in_progression(100, 10, 7));
}

TEST_CASE("weighted progression sums match the double-loop oracle") {
    const std::uint64_t x = 10000;
    auto primes = sieve_primes(x);
    double via_api = 0, oracle = 0;
    for (std::uint64_t q : primes) {
        via_api += static_cast<double>(count_primes_in_progression(x, q, 1)) *
                   std::log(static_cast<double>(q));
        std::uint64_t n = 0;
        for (std::uint64_t p : primes)
            if (p % q == 1) ++n;
        oracle += static_cast<double>(n) * std::log(static_cast<double>(q));
    }
    CHECK(via_api == Catch::Approx(oracle).epsilon(0));  // identical arithmetic path
}

TEST_CASE("smooth/non-smooth split partitions pi(x)") {
    for (std::uint64_t x : {100ull, 1000ull, 5000ull}) {
        double root = std::sqrt(static_cast<double>(x));
        std::uint64_t smooth = count_smooth_shifted_primes(x, root);
        std::uint64_t rough = 0;
        for (std::uint64_t p : sieve_primes(x))
            if (static_cast<double>(largest_prime_factor(p - 1)) > root) ++rough;
        CHECK(smooth + rough == sieve_primes(x).size());
    }
}
