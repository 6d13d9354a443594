// Desk-scale empirical counterparts of the analytic quantities: the
// smooth-shifted-prime ratio, the Goldfeld progression sum, and order
// statistics of l_g(p).  Comparisons against the limiting constants are
// informational: the underlying statements are asymptotic.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "context.hpp"
#include "ntheory.hpp"

namespace pseudopower {

struct GoldfeldSums {
    double below_sqrt = 0;  // sum over q <= sqrt(x) of pi(x; q, 1) log q
    double above_sqrt = 0;  // sum over sqrt(x) < q <= x
    double total = 0;
    double ratio = 0;        // above_sqrt / x
    double total_ratio = 0;  // total / x
};

struct OrderStats {
    double geo_mean_order = 0;            // R_g(x)^{1/pi(x)}
    std::uint64_t small_order_exceptions = 0;  // p with l_g(p) < sqrt(x)
    std::uint64_t partition_p0 = 0;       // l <= sqrt(x)
    std::uint64_t partition_p1 = 0;       // l > sqrt(x) and P(p-1) > sqrt(x)
    std::uint64_t partition_p2 = 0;       // the rest
};

struct StatsReport {
    std::uint64_t x = 0;
    double smooth_ratio = 0;  // pi(x, sqrt(x)) / pi(x)
    double dickman_ref = 0;   // 1 - log 2
    GoldfeldSums goldfeld;
    bool has_orders = false;
    OrderStats orders;
};

namespace detail {

// integer comparisons against sqrt(x), exact: v < sqrt(x) <=> v^2 < x
inline bool below_sqrt_strict(std::uint64_t v, std::uint64_t x) {
    return static_cast<unsigned __int128>(v) * v < x;
}
inline bool at_most_sqrt(std::uint64_t v, std::uint64_t x) {
    return static_cast<unsigned __int128>(v) * v <= x;
}

}  // namespace detail

inline double smooth_ratio(std::uint64_t x) {
    if (x < 4) throw std::domain_error("smooth_ratio: need x >= 4");
    std::vector<std::uint64_t> primes = sieve_primes(x);
    std::uint64_t smooth = 0;
    for (std::uint64_t p : primes)
        if (detail::at_most_sqrt(largest_prime_factor(p - 1), x)) ++smooth;
    return static_cast<double>(smooth) / static_cast<double>(primes.size());
}

// Sum over primes q of pi(x; q, 1) log q, split at sqrt(x) (strictly above /
// at most).  Computed by factoring p - 1: q | p - 1 exactly when p == 1 (mod q).
inline GoldfeldSums goldfeld_sums(std::uint64_t x) {
    if (x < 9) throw std::domain_error("goldfeld_sums: need x >= 9");
    GoldfeldSums g;
    for (std::uint64_t p : sieve_primes(x)) {
        for (auto [q, e] : factorize(p - 1).factors) {
            double lq = std::log(static_cast<double>(q));
            if (detail::at_most_sqrt(q, x))
                g.below_sqrt += lq;
            else
                g.above_sqrt += lq;
        }
    }
    g.total = g.below_sqrt + g.above_sqrt;
    g.ratio = g.above_sqrt / static_cast<double>(x);
    g.total_ratio = g.total / static_cast<double>(x);
    return g;
}

inline double goldfeld_ratio(std::uint64_t x) { return goldfeld_sums(x).ratio; }

inline OrderStats order_statistics(const PseudopowerContext& ctx) {
    OrderStats s;
    s.geo_mean_order = std::exp(ctx.log_R / static_cast<double>(ctx.records.size()));
    for (const auto& rec : ctx.records) {
        if (detail::below_sqrt_strict(rec.order, ctx.x)) ++s.small_order_exceptions;
        if (detail::at_most_sqrt(rec.order, ctx.x))
            ++s.partition_p0;
        else if (!detail::at_most_sqrt(rec.largest_pm1_prime, ctx.x))
            ++s.partition_p1;
        else
            ++s.partition_p2;
    }
    return s;
}

inline StatsReport stats_report(std::uint64_t x) {
    StatsReport r;
    r.x = x;
    r.smooth_ratio = smooth_ratio(x);
    r.dickman_ref = 1.0 - std::log(2.0);
    r.goldfeld = goldfeld_sums(x);
    return r;
}

inline StatsReport stats_report(std::uint64_t x, const PseudopowerContext& ctx) {
    StatsReport r = stats_report(x);
    r.has_orders = true;
    r.orders = order_statistics(ctx);
    return r;
}

}  // namespace pseudopower
