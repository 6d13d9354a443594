#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "pseudopower/stats.hpp"

using namespace pseudopower;

namespace {

bool is_prime_oracle(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t largest_factor_oracle(std::uint64_t m) {
    std::uint64_t largest = 0;
    for (std::uint64_t d = 2; d <= m; ++d)
        while (m % d == 0) { largest = d; m /= d; }
    return largest;
}

// double-loop oracle for the Goldfeld split
GoldfeldSums goldfeld_oracle(std::uint64_t x) {
    GoldfeldSums g;
    for (std::uint64_t q = 2; q <= x; ++q) {
        if (!is_prime_oracle(q)) continue;
        std::uint64_t count = 0;
        for (std::uint64_t p = 2; p <= x; ++p)
            if (is_prime_oracle(p) && p % q == 1) ++count;
        double term = static_cast<double>(count) * std::log(static_cast<double>(q));
        if (q * q <= x)
            g.below_sqrt += term;
        else
            g.above_sqrt += term;
    }
    g.total = g.below_sqrt + g.above_sqrt;
    g.ratio = g.above_sqrt / static_cast<double>(x);
    g.total_ratio = g.total / static_cast<double>(x);
    return g;
}

}  // namespace

TEST_CASE("smooth_ratio examples") {
    // at x = 10 every p - 1 has largest prime factor <= sqrt(10): 0, 2, 2, 3
    CHECK(smooth_ratio(10) == Catch::Approx(1.0).margin(1e-15));
    CHECK_THROWS_AS(smooth_ratio(3), std::domain_error);
}

TEST_CASE("smooth_ratio matches a full-factorization oracle") {
    for (std::uint64_t x : {100, 1000}) {
        std::uint64_t smooth = 0, total = 0;
        for (std::uint64_t p = 2; p <= x; ++p) {
            if (!is_prime_oracle(p)) continue;
            ++total;
            std::uint64_t lf = largest_factor_oracle(p - 1);
            if (static_cast<unsigned __int128>(lf) * lf <= x) ++smooth;
        }
        CHECK(smooth_ratio(x) ==
              Catch::Approx(static_cast<double>(smooth) / total).margin(1e-15));
    }
}

TEST_CASE("dickman reference constant") {
    auto rep = stats_report(100);
    CHECK(rep.dickman_ref == Catch::Approx(1.0 - std::log(2.0)).margin(1e-15));
    CHECK(rep.dickman_ref == Catch::Approx(0.30685).margin(1e-5));
}

TEST_CASE("goldfeld_ratio examples") {
    CHECK(goldfeld_ratio(9) == 0.0);  // pi(9;5,1) = pi(9;7,1) = 0
    CHECK_THROWS_AS(goldfeld_sums(8), std::domain_error);
}

TEST_CASE("goldfeld sums match the double-loop oracle") {
    for (std::uint64_t x : {100, 1000}) {
        auto got = goldfeld_sums(x);
        auto want = goldfeld_oracle(x);
        CHECK(got.below_sqrt == Catch::Approx(want.below_sqrt).margin(1e-9));
        CHECK(got.above_sqrt == Catch::Approx(want.above_sqrt).margin(1e-9));
        CHECK(got.total == Catch::Approx(want.total).margin(1e-9));
    }
}

TEST_CASE("goldfeld partial sums add up exactly") {
    auto g = goldfeld_sums(5000);
    CHECK(g.total == g.below_sqrt + g.above_sqrt);
}

TEST_CASE("total-sum ratio sits in the loose asymptotic band") {
    auto g = goldfeld_sums(100000);
    CHECK(g.total_ratio > 0.8);
    CHECK(g.total_ratio < 1.2);
}

TEST_CASE("order_statistics") {
    auto ctx = build_context(2, 5);
    auto s = order_statistics(ctx);
    CHECK(s.geo_mean_order == Catch::Approx(2.0).margin(1e-12));  // (1*2*4)^{1/3}

    for (std::int64_t g : {2, 3, -2, 10}) {
        auto c = build_context(g, 1000);
        auto stats = order_statistics(c);
        CHECK(stats.partition_p0 + stats.partition_p1 + stats.partition_p2 ==
              c.records.size());
        CHECK(stats.geo_mean_order ==
              Catch::Approx(std::exp(c.log_R / c.records.size())).epsilon(1e-12));
        CHECK(stats.geo_mean_order <= static_cast<double>(c.x));
        // strict-threshold exception count vs direct sweep
        std::uint64_t exceptions = 0;
        for (const auto& rec : c.records)
            if (static_cast<unsigned __int128>(rec.order) * rec.order < c.x) ++exceptions;
        CHECK(stats.small_order_exceptions == exceptions);
    }
}
