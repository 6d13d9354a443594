// Exponential sums over the residue set W_g(x): the per-prime CRT
// factorization, the direct summation oracle, and empirical comparisons
// against the known subgroup-sum bounds.

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "context.hpp"
#include "ntheory.hpp"

namespace pseudopower {

enum class BoundTag { trivial, hbk, sqrt_bound };

inline const char* to_string(BoundTag t) {
    switch (t) {
        case BoundTag::trivial: return "trivial";
        case BoundTag::hbk: return "hbk";
        default: return "sqrt";
    }
}

struct PerPrimeFactor {
    std::uint64_t p = 0;
    std::uint64_t a_p = 0;
    std::complex<double> value;
    double magnitude = 0.0;
    BoundTag tag = BoundTag::trivial;
    double reference = 0.0;  // 2l, C-free l^{3/8} p^{1/4}, or p^{1/2}
    double ratio = 0.0;      // magnitude / reference
};

struct ExpSumReport {
    std::int64_t a = 0;
    std::complex<double> value;
    double magnitude = 0.0;
    std::vector<PerPrimeFactor> per_prime;
    mpz_class gcd_a_M;
    double theorem2_bound = 0.0;  // #W * d * exp(-gamma x); informational
    double ratio = 0.0;           // magnitude / theorem2_bound
};

namespace detail {

// Kahan-compensated accumulation of complex terms.
struct ComplexAccumulator {
    double re = 0, im = 0, cre = 0, cim = 0;
    void add(double r, double i) {
        double yr = r - cre, yi = i - cim;
        double tr = re + yr, ti = im + yi;
        cre = (tr - re) - yr;
        cim = (ti - im) - yi;
        re = tr;
        im = ti;
    }
    std::complex<double> value() const { return {re, im}; }
};

// e(q) = exp(2 pi i q) for a rational q = num/den, angle computed per term.
inline std::complex<double> unit_root(double num, double den) {
    double angle = 2.0 * std::numbers::pi * (num / den);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace detail

// a_p in [0, p) with a_p (M/p) == a (mod M), i.e. a_p = a (M/p)^{-1} mod p.
inline std::uint64_t crt_component(std::int64_t a, std::uint64_t p, const mpz_class& M) {
    mpz_class p_mpz(static_cast<unsigned long>(p));
    if (!mpz_divisible_p(M.get_mpz_t(), p_mpz.get_mpz_t()))
        throw std::domain_error("crt_component: p = " + std::to_string(p) +
                                " does not divide M");
    mpz_class cofactor = M / p_mpz;
    std::uint64_t cof_mod_p = mpz_fdiv_ui(cofactor.get_mpz_t(), p);
    std::uint64_t inv = mod_pow(static_cast<std::int64_t>(cof_mod_p), p - 2, p);
    std::uint64_t a_red = detail::reduce_mod(a, p);
    return detail::mul_mod(a_red, inv, p);
}

// sum over U_{g,p} of e(a_p n / p), enumerating the subgroup as successive
// powers of g (plus {0,1} when p | g).
inline std::complex<double> subgroup_sum(const PrimeOrderRecord& rec, std::int64_t g,
                                         std::uint64_t a_p) {
    detail::ComplexAccumulator acc;
    auto add_term = [&](std::uint64_t n) {
        std::uint64_t t = detail::mul_mod(a_p % rec.p, n, rec.p);
        std::complex<double> z =
            detail::unit_root(static_cast<double>(t), static_cast<double>(rec.p));
        acc.add(z.real(), z.imag());
    };
    if (rec.divides_g) {
        add_term(0);
        add_term(1 % rec.p);
        return acc.value();
    }
    std::uint64_t r = 1, base = detail::reduce_mod(g, rec.p);
    do {
        add_term(r);
        r = detail::mul_mod(r, base, rec.p);
    } while (r != 1);
    return acc.value();
}

// S_{a,g}(x) as the ordered product of per-prime subgroup sums.
inline ExpSumReport exp_sum_crt(const PseudopowerContext& ctx, std::int64_t a,
                                double gamma = 0.11286) {
    ExpSumReport rep;
    rep.a = a;
    std::complex<double> product{1.0, 0.0};
    for (const auto& rec : ctx.records) {
        PerPrimeFactor f;
        f.p = rec.p;
        f.a_p = crt_component(a, rec.p, ctx.primorial);
        f.value = subgroup_sum(rec, ctx.g, f.a_p);
        f.magnitude = std::abs(f.value);
        bool divides_ag = rec.divides_g || detail::reduce_mod(a, rec.p) == 0;
        double l = static_cast<double>(rec.order);
        double p = static_cast<double>(rec.p);
        if (divides_ag) {
            f.tag = BoundTag::trivial;
            f.reference = 2.0 * l;
        } else if (!detail::order_above_two_thirds(rec.order, rec.p)) {
            f.tag = BoundTag::hbk;  // unknown constant C > 1: ratio only
            f.reference = std::pow(l, 3.0 / 8.0) * std::pow(p, 0.25);
        } else {
            f.tag = BoundTag::sqrt_bound;
            f.reference = std::sqrt(p);
        }
        f.ratio = f.reference > 0 ? f.magnitude / f.reference : 0.0;
        product *= f.value;
        rep.per_prime.push_back(std::move(f));
    }
    rep.value = product;
    rep.magnitude = std::abs(product);
    mpz_class a_abs(static_cast<long>(a < 0 ? -a : a));
    mpz_gcd(rep.gcd_a_M.get_mpz_t(), a_abs.get_mpz_t(), ctx.primorial.get_mpz_t());
    double w = mpz_get_d(count_W(ctx).get_mpz_t());
    rep.theorem2_bound = w * mpz_get_d(rep.gcd_a_M.get_mpz_t()) *
                         std::exp(-gamma * static_cast<double>(ctx.x));
    rep.ratio = rep.theorem2_bound > 0 ? rep.magnitude / rep.theorem2_bound : 0.0;
    return rep;
}

// Literal summation over the enumerated set; oracle for exp_sum_crt.
inline std::complex<double> exp_sum_direct(const PseudopowerContext& ctx, std::int64_t a,
                                           const FeasibilityCaps& caps = {}) {
    std::vector<mpz_class> members = enumerate_W(ctx, ctx.primorial, caps);
    double m = mpz_get_d(ctx.primorial.get_mpz_t());
    mpz_class sa(static_cast<long>(a));
    detail::ComplexAccumulator acc;
    for (const auto& n : members) {
        mpz_class t = (sa * n) % ctx.primorial;
        if (t < 0) t += ctx.primorial;
        std::complex<double> z = detail::unit_root(mpz_get_d(t.get_mpz_t()), m);
        acc.add(z.real(), z.imag());
    }
    return acc.value();
}

struct SqrtBoundRow {
    std::uint64_t p = 0;
    std::uint64_t a_p = 0;
    double magnitude = 0.0;
    double bound = 0.0;  // p^{1/2}
    bool ok = false;
};

// Exhaustive check of the square-root subgroup bound for every p <= cap with
// p not dividing g and every nonzero a_p.  (a_p != 0 encodes p not dividing a.)
inline std::vector<SqrtBoundRow> sqrt_bound_check(const PseudopowerContext& ctx,
                                                  std::uint64_t cap = 200) {
    std::vector<SqrtBoundRow> rows;
    for (const auto& rec : ctx.records) {
        if (rec.p > cap || rec.divides_g) continue;
        double bound = std::sqrt(static_cast<double>(rec.p));
        for (std::uint64_t a_p = 1; a_p < rec.p; ++a_p) {
            SqrtBoundRow row;
            row.p = rec.p;
            row.a_p = a_p;
            row.magnitude = std::abs(subgroup_sum(rec, ctx.g, a_p));
            row.bound = bound;
            // allow a whisker of accumulation error on an exact-arithmetic bound
            row.ok = row.magnitude <= bound + 1e-9;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace pseudopower
