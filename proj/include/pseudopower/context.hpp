// Per-prime subgroup data for a base g and threshold x, the primorial M_x,
// exact counting and enumeration of the residue set W_g(x), the least
// pseudopower search, and window counts with discrepancies.

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ntheory.hpp"
#include "parallel.hpp"

namespace pseudopower {

// Raised when a requested computation would exceed a configured cap.
struct feasibility_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrimeOrderRecord {
    std::uint64_t p = 0;
    Factorization pm1_factorization;       // of p-1
    std::uint64_t order = 1;               // l_g(p); 1 when p | g
    std::uint64_t largest_pm1_prime = 0;   // P(p-1), 0 for p = 2
    std::uint64_t subgroup_size = 1;       // #U_{g,p}: order, or 2 when p | g
    bool divides_g = false;
};

struct PseudopowerContext {
    std::int64_t g = 0;
    std::uint64_t x = 0;
    std::vector<PrimeOrderRecord> records;  // ascending p
    mpz_class primorial;                    // M_x
    unsigned shared_prime_count = 0;        // k = #{p <= x : p | g}
    double log_R = 0.0;                     // sum of log l_g(p)
    double log_T = 0.0;                     // sum over l_g(p) > p^{2/3}
};

struct FeasibilityCaps {
    double max_output = 1e7;  // enumerated elements
    double max_scan = 2.5e8;  // interval-scan length
};

namespace detail {

inline std::uint64_t reduce_mod(std::int64_t g, std::uint64_t p) {
    std::int64_t sp = static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(((g % sp) + sp) % sp);
}

// l_g(p) > p^{2/3}  <=>  l^3 > p^2, exactly in integers.
inline bool order_above_two_thirds(std::uint64_t l, std::uint64_t p) {
    unsigned __int128 l3 = static_cast<unsigned __int128>(l) * l * l;
    unsigned __int128 p2 = static_cast<unsigned __int128>(p) * p;
    return l3 > p2;
}

}  // namespace detail

inline PseudopowerContext build_context(std::int64_t g, std::uint64_t x,
                                        unsigned threads = 0) {
    if (g > -2 && g < 2)
        throw std::domain_error("build_context: need |g| >= 2, got " + std::to_string(g));
    if (x < 2) throw std::domain_error("build_context: need x >= 2");
    if (threads == 0) threads = default_thread_count();

    PseudopowerContext ctx;
    ctx.g = g;
    ctx.x = x;
    std::vector<std::uint64_t> primes = sieve_primes(x);

    auto make_records = [&](std::size_t begin, std::size_t end) {
        std::vector<PrimeOrderRecord> part;
        part.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
            std::uint64_t p = primes[i];
            PrimeOrderRecord rec;
            rec.p = p;
            rec.pm1_factorization = factorize(p - 1);
            rec.largest_pm1_prime = largest_prime_factor(p - 1);
            rec.divides_g = detail::reduce_mod(g, p) == 0;
            rec.order = multiplicative_order(g, p, rec.pm1_factorization);
            rec.subgroup_size = rec.divides_g ? 2 : rec.order;
            part.push_back(std::move(rec));
        }
        return part;
    };
    for (auto& part : chunked_map<std::vector<PrimeOrderRecord>>(primes.size(), threads,
                                                                 make_records))
        for (auto& rec : part) ctx.records.push_back(std::move(rec));

    ctx.primorial = 1;
    for (const auto& rec : ctx.records) {
        ctx.primorial *= static_cast<unsigned long>(rec.p);
        if (rec.divides_g) ++ctx.shared_prime_count;
        ctx.log_R += std::log(static_cast<double>(rec.order));
        if (detail::order_above_two_thirds(rec.order, rec.p))
            ctx.log_T += std::log(static_cast<double>(rec.order)) -
                         (2.0 / 3.0) * std::log(static_cast<double>(rec.p));
    }
    return ctx;
}

// n mod p lies in U_{g,p}: {0,1} when p | g, else a nonzero residue whose
// order divides l_g(p).
inline bool is_member(const mpz_class& n, const PrimeOrderRecord& rec, std::int64_t g) {
    (void)g;  // the record already encodes everything g-dependent
    std::uint64_t r = mpz_fdiv_ui(n.get_mpz_t(), rec.p);
    if (rec.divides_g) return r <= 1;
    if (r == 0) return false;
    return mod_pow(static_cast<std::int64_t>(r), rec.order, rec.p) == 1;
}

// #W_g(x) = 2^k * prod l_g(p) = prod #U_{g,p}, exact.
inline mpz_class count_W(const PseudopowerContext& ctx) {
    mpz_class w = 1;
    for (const auto& rec : ctx.records) w *= static_cast<unsigned long>(rec.subgroup_size);
    return w;
}

// n = g^k for some integer k >= 0.  For negative g only even exponents give
// positive values, so we step by g^2.
inline bool is_true_power(const mpz_class& n, std::int64_t g) {
    if (n < 1) throw std::domain_error("is_true_power: n must be >= 1");
    if (n == 1) return true;
    mpz_class step(g);
    if (g < 0) step = step * step;
    mpz_class t = 1;
    while (t < n) t *= step;
    return t == n;
}

namespace detail {

// Residues of U_{g,p} as a p-sized lookup table.
inline std::vector<std::uint8_t> membership_table(const PrimeOrderRecord& rec,
                                                  std::int64_t g) {
    std::vector<std::uint8_t> in_u(rec.p, 0);
    if (rec.divides_g) {
        in_u[0] = 1;
        if (rec.p > 1) in_u[1 % rec.p] = 1;
        return in_u;
    }
    std::uint64_t r = 1, base = reduce_mod(g, rec.p);
    do {
        in_u[r] = 1;
        r = mul_mod(r, base, rec.p);
    } while (r != 1);
    return in_u;
}

// Records sorted by subgroup density (most restrictive congruence first).
inline std::vector<std::size_t> density_order(const PseudopowerContext& ctx) {
    std::vector<std::size_t> idx(ctx.records.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& ra = ctx.records[a];
        const auto& rb = ctx.records[b];
        // compare subgroup_size/p without division
        std::uint64_t lhs = ra.subgroup_size * rb.p, rhs = rb.subgroup_size * ra.p;
        if (lhs != rhs) return lhs < rhs;
        return ra.p < rb.p;
    });
    return idx;
}

// Per-prime membership filters in density order.  Small primes get lookup
// tables, large ones fall back to the order-divisibility test.
struct ScanFilter {
    std::uint64_t p;
    std::uint64_t order;
    bool divides_g;
    std::vector<std::uint8_t> table;  // empty above the table cap
};

struct ScanSetup {
    std::vector<ScanFilter> filters;
};

inline constexpr std::uint64_t kMembershipTableCap = 1u << 22;

inline ScanSetup scan_setup(const PseudopowerContext& ctx) {
    ScanSetup s;
    for (std::size_t i : density_order(ctx)) {
        const auto& rec = ctx.records[i];
        ScanFilter f{rec.p, rec.order, rec.divides_g, {}};
        if (rec.p <= kMembershipTableCap) f.table = membership_table(rec, ctx.g);
        s.filters.push_back(std::move(f));
    }
    return s;
}

inline bool filter_member(std::uint64_t r, const ScanFilter& f) {
    if (!f.table.empty()) return f.table[r] != 0;
    if (f.divides_g) return r <= 1;
    if (r == 0) return false;
    return mod_pow(static_cast<std::int64_t>(r), f.order, f.p) == 1;
}

inline bool scan_member(std::uint64_t n, const ScanSetup& s) {
    for (const auto& f : s.filters)
        if (!filter_member(n % f.p, f)) return false;
    return true;
}

// CRT halves for meet-in-the-middle enumeration/counting.  Lifts the
// W-residues of each half of the prime set to contributions mod M; every
// member of W is (a + b) mod M for exactly one pair.
struct CrtHalves {
    std::vector<mpz_class> a, b;  // lifted contributions
};

inline std::vector<mpz_class> half_residues(const PseudopowerContext& ctx,
                                            std::size_t begin, std::size_t end,
                                            mpz_class& modulus_out) {
    std::vector<mpz_class> res{0};
    mpz_class m = 1;
    for (std::size_t i = begin; i < end; ++i) {
        const auto& rec = ctx.records[i];
        std::vector<std::uint64_t> elems;
        if (rec.divides_g) {
            elems = {0, 1 % rec.p};
        } else {
            std::uint64_t r = 1, base = reduce_mod(ctx.g, rec.p);
            do {
                elems.push_back(r);
                r = mul_mod(r, base, rec.p);
            } while (r != 1);
        }
        mpz_class m_next = m * static_cast<unsigned long>(rec.p);
        // CRT: r == old (mod m), r == u (mod p)
        mpz_class m_inv;
        mpz_class p_mpz(static_cast<unsigned long>(rec.p));
        mpz_invert(m_inv.get_mpz_t(), m.get_mpz_t(), p_mpz.get_mpz_t());
        std::vector<mpz_class> next;
        next.reserve(res.size() * elems.size());
        for (const auto& r0 : res)
            for (std::uint64_t u : elems) {
                mpz_class t = ((mpz_class(static_cast<unsigned long>(u)) - r0) * m_inv) % p_mpz;
                if (t < 0) t += p_mpz;
                next.push_back(r0 + t * m);
            }
        res = std::move(next);
        m = std::move(m_next);
    }
    modulus_out = m;
    return res;
}

inline CrtHalves crt_halves(const PseudopowerContext& ctx) {
    // split so the two subgroup-size products are roughly balanced
    double total = 0;
    for (const auto& rec : ctx.records) total += std::log((double)rec.subgroup_size);
    double acc = 0;
    std::size_t split = ctx.records.size();
    for (std::size_t i = 0; i < ctx.records.size(); ++i) {
        acc += std::log((double)ctx.records[i].subgroup_size);
        if (acc >= total / 2) { split = i + 1; break; }
    }
    mpz_class m1, m2;
    std::vector<mpz_class> r1 = half_residues(ctx, 0, split, m1);
    std::vector<mpz_class> r2 = half_residues(ctx, split, ctx.records.size(), m2);
    const mpz_class& M = ctx.primorial;
    mpz_class inv_m2_mod_m1, inv_m1_mod_m2;
    mpz_invert(inv_m2_mod_m1.get_mpz_t(), m2.get_mpz_t(), m1.get_mpz_t());
    mpz_invert(inv_m1_mod_m2.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    mpz_class c1 = (m2 * inv_m2_mod_m1) % M;
    mpz_class c2 = (m1 * inv_m1_mod_m2) % M;
    CrtHalves halves;
    halves.a.reserve(r1.size());
    for (const auto& r : r1) halves.a.push_back((r * c1) % M);
    halves.b.reserve(r2.size());
    for (const auto& r : r2) halves.b.push_back((r * c2) % M);
    return halves;
}

inline double estimated_output(const PseudopowerContext& ctx, const mpz_class& h) {
    mpq_class est(count_W(ctx) * h, ctx.primorial);
    est.canonicalize();
    return est.get_d();
}

}  // namespace detail

// Members of W_g(x) in [0, h), ascending.
inline std::vector<mpz_class> enumerate_W(const PseudopowerContext& ctx, const mpz_class& h,
                                          const FeasibilityCaps& caps = {}) {
    if (h < 1 || h > ctx.primorial)
        throw std::domain_error("enumerate_W: need 1 <= h <= M_x");
    double est = detail::estimated_output(ctx, h);
    if (est > caps.max_output)
        throw feasibility_error("enumerate_W: estimated output " + std::to_string(est) +
                                " elements exceeds cap " + std::to_string(caps.max_output));
    std::vector<mpz_class> out;
    if (mpz_fits_ulong_p(h.get_mpz_t()) &&
        static_cast<double>(h.get_ui()) <= caps.max_scan) {
        detail::ScanSetup s = detail::scan_setup(ctx);
        std::uint64_t hi = h.get_ui();
        for (std::uint64_t n = 0; n < hi; ++n)
            if (detail::scan_member(n, s)) out.emplace_back(static_cast<unsigned long>(n));
        return out;
    }
    double total = mpz_get_d(count_W(ctx).get_mpz_t());
    if (total > caps.max_output)
        throw feasibility_error("enumerate_W: residue set too large for CRT recombination (" +
                                std::to_string(total) + " elements)");
    detail::CrtHalves halves = detail::crt_halves(ctx);
    for (const auto& a : halves.a)
        for (const auto& b : halves.b) {
            mpz_class n = (a + b) % ctx.primorial;
            if (n < h) out.push_back(std::move(n));
        }
    std::sort(out.begin(), out.end());
    return out;
}

struct WindowCount {
    mpz_class h;
    mpz_class count;           // N_g(x, h), exact
    double expected = 0.0;     // #W * h / M_x
    double discrepancy = 0.0;  // E_g(x, h) = count - expected, exact rational -> double
    double bound = 0.0;        // #W * exp(-gamma x), reported for comparison only
    double bound_ratio = 0.0;  // |E| / bound
};

// Exact N_g(x, h) without materializing the set.
inline WindowCount window_count(const PseudopowerContext& ctx, const mpz_class& h,
                                const FeasibilityCaps& caps = {}, unsigned threads = 0,
                                double gamma = 0.11286) {
    if (h < 1 || h > ctx.primorial)
        throw std::domain_error("window_count: need 1 <= h <= M_x");
    if (threads == 0) threads = default_thread_count();
    mpz_class count = 0;
    if (mpz_fits_ulong_p(h.get_mpz_t()) &&
        static_cast<double>(h.get_ui()) <= caps.max_scan) {
        detail::ScanSetup s = detail::scan_setup(ctx);
        std::uint64_t hi = h.get_ui();
        auto counter = [&](std::size_t begin, std::size_t end) {
            std::uint64_t c = 0;
            for (std::uint64_t n = begin; n < end; ++n)
                if (detail::scan_member(n, s)) ++c;
            return c;
        };
        std::uint64_t total = 0;
        for (std::uint64_t c : chunked_map<std::uint64_t>(hi, threads, counter)) total += c;
        count = static_cast<unsigned long>(total);
    } else {
        mpz_class w = count_W(ctx);
        double side = std::sqrt(mpz_get_d(w.get_mpz_t()));
        if (side > caps.max_output)
            throw feasibility_error("window_count: CRT halves of ~" + std::to_string(side) +
                                    " elements exceed cap " + std::to_string(caps.max_output));
        detail::CrtHalves halves = detail::crt_halves(ctx);
        std::sort(halves.b.begin(), halves.b.end());
        const mpz_class& M = ctx.primorial;
        auto count_in = [&](const mpz_class& lo, const mpz_class& hi2) {
            auto l = std::lower_bound(halves.b.begin(), halves.b.end(), lo);
            auto r = std::lower_bound(halves.b.begin(), halves.b.end(), hi2);
            return static_cast<long>(r - l);
        };
        for (const auto& a : halves.a) {
            // b with (a + b) mod M < h  <=>  b in [s, s+h) mod M, s = (-a) mod M
            mpz_class s = (M - a) % M;
            mpz_class e = s + h;
            if (e <= M) {
                count += count_in(s, e);
            } else {
                count += count_in(s, M);
                count += count_in(0, e - M);
            }
        }
    }
    WindowCount wc;
    wc.h = h;
    wc.count = count;
    mpz_class w = count_W(ctx);
    mpq_class expected(w * h, ctx.primorial);
    expected.canonicalize();
    wc.expected = expected.get_d();
    mpq_class disc(count * ctx.primorial - w * h, ctx.primorial);
    disc.canonicalize();
    wc.discrepancy = disc.get_d();
    wc.bound = mpz_get_d(w.get_mpz_t()) * std::exp(-gamma * static_cast<double>(ctx.x));
    wc.bound_ratio = wc.bound > 0 ? std::abs(wc.discrepancy) / wc.bound : 0.0;
    return wc;
}

// Least n >= 1 that is a member of every U_{g,p} but not a true power of g.
// Guaranteed to exist at or below 2 M_x + 1, the default limit.
inline std::optional<mpz_class> least_pseudopower(const PseudopowerContext& ctx,
                                                  std::optional<mpz_class> limit = {}) {
    mpz_class lim = limit ? *limit : 2 * ctx.primorial + 1;
    detail::ScanSetup s = detail::scan_setup(ctx);
    mpz_class power = 1;  // next true power of g to skip
    mpz_class step(ctx.g);
    if (ctx.g < 0) step = step * step;

    if (mpz_fits_ulong_p(lim.get_mpz_t())) {
        std::uint64_t l = lim.get_ui();
        for (std::uint64_t n = 1; n <= l; ++n) {
            while (power < n) power *= step;
            if (power == n) continue;
            if (detail::scan_member(n, s)) return mpz_class(static_cast<unsigned long>(n));
        }
        return std::nullopt;
    }
    for (mpz_class n = 1; n <= lim; ++n) {
        while (power < n) power *= step;
        if (power == n) continue;
        bool ok = true;
        for (const auto& f : s.filters) {
            if (!detail::filter_member(mpz_fdiv_ui(n.get_mpz_t(), f.p), f)) {
                ok = false;
                break;
            }
        }
        if (ok) return n;
    }
    return std::nullopt;
}

}  // namespace pseudopower
