// The piecewise Brun-Titchmarsh-on-average bound function C(u) on
// [1/2, 5/7]: tabulated step values plus four analytic formulas, with
// adaptive quadrature carrying an explicit error bound.
//
// Step convention: each step piece is left-open, so C takes the value of the
// right-endpoint knot.  This is the unique convention under which the
// interval [0.51, 0.56] integrates to exactly 0.107405 as a finite sum of
// value-times-width terms.

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pseudopower {

enum class PieceKind {
    step,          // constant value
    poly,          // 1 + 150 (u - 1/2)^2
    log_adjusted,  // 14/(12 - 13u) - log(4(1-u)/(3u))
    rational1,     // 14/(12 - 13u)
    rational2,     // 8/(3 - u)
};

struct Piece {
    double lo = 0, hi = 0;  // covers (lo, hi]; the first piece also covers lo
    PieceKind kind = PieceKind::step;
    double value = 0;  // step pieces only

    double eval(double u) const {
        switch (kind) {
            case PieceKind::step: return value;
            case PieceKind::poly: return 1.0 + 150.0 * (u - 0.5) * (u - 0.5);
            case PieceKind::log_adjusted:
                return 14.0 / (12.0 - 13.0 * u) - std::log(4.0 * (1.0 - u) / (3.0 * u));
            case PieceKind::rational1: return 14.0 / (12.0 - 13.0 * u);
            case PieceKind::rational2: return 8.0 / (3.0 - u);
        }
        return 0;
    }
};

struct PiecewiseBoundFunction {
    std::vector<Piece> pieces;  // ascending, tiling [domain_lo, domain_hi]

    double domain_lo() const { return pieces.front().lo; }
    double domain_hi() const { return pieces.back().hi; }

    double eval(double u) const {
        if (u < domain_lo() || u > domain_hi())
            throw std::domain_error("C(u): u outside [" + std::to_string(domain_lo()) +
                                    ", " + std::to_string(domain_hi()) + "]");
        if (u == domain_lo()) return pieces.front().eval(u);
        for (const auto& pc : pieces)
            if (u > pc.lo && u <= pc.hi) return pc.eval(u);
        return pieces.back().eval(u);  // unreachable for in-domain u
    }
};

namespace detail {

inline void validate_pieces(const PiecewiseBoundFunction& f) {
    if (f.pieces.empty()) throw std::invalid_argument("C(u): no pieces");
    for (std::size_t i = 0; i < f.pieces.size(); ++i) {
        const auto& pc = f.pieces[i];
        if (!(pc.lo < pc.hi)) throw std::invalid_argument("C(u): empty or inverted piece");
        if (i > 0 && std::abs(pc.lo - f.pieces[i - 1].hi) > 1e-12)
            throw std::invalid_argument("C(u): pieces leave a gap or overlap near u = " +
                                        std::to_string(pc.lo));
    }
    // monotone nondecreasing across the assembled function
    double prev = f.pieces.front().eval(f.domain_lo());
    for (const auto& pc : f.pieces) {
        for (int j = 1; j <= 16; ++j) {
            double u = pc.lo + (pc.hi - pc.lo) * j / 16.0;
            double v = pc.eval(u);
            if (v < prev - 1e-12)
                throw std::invalid_argument("C(u): not monotone nondecreasing near u = " +
                                            std::to_string(u));
            prev = v;
        }
    }
}

}  // namespace detail

// The canonical function: polynomial on [0.5, 0.51), table steps on
// (0.51, 0.56], then the three analytic formulas up to 5/7.
inline PiecewiseBoundFunction build_C() {
    PiecewiseBoundFunction f;
    f.pieces.push_back({0.5, 0.51, PieceKind::poly, 0});
    const std::pair<double, double> knots[] = {
        {0.515, 1.223}, {0.52, 1.632}, {0.525, 1.75}, {0.53, 1.82},
        {0.533, 2.0},   {0.535, 2.09}, {0.54, 2.25},  {0.545, 2.47},
        {0.55, 2.66},   {0.555, 2.76}, {0.56, 2.88},
    };
    double lo = 0.51;
    for (auto [u, v] : knots) {
        f.pieces.push_back({lo, u, PieceKind::step, v});
        lo = u;
    }
    f.pieces.push_back({0.56, 4.0 / 7.0, PieceKind::log_adjusted, 0});
    f.pieces.push_back({4.0 / 7.0, 3.0 / 5.0, PieceKind::rational1, 0});
    f.pieces.push_back({3.0 / 5.0, 5.0 / 7.0, PieceKind::rational2, 0});
    detail::validate_pieces(f);
    return f;
}

enum class Weight { one, inv_u, one_minus_2_over_3u };

inline double weight_eval(Weight w, double u) {
    switch (w) {
        case Weight::one: return 1.0;
        case Weight::inv_u: return 1.0 / u;
        default: return 1.0 - 2.0 / (3.0 * u);
    }
}

struct IntegralResult {
    double value = 0;        // the integral
    double error_bound = 0;  // accumulated quadrature error estimate
};

namespace detail {

// Adaptive Simpson with the standard embedded-rule error estimate.
template <typename F>
void adaptive_simpson(const F& fn, double a, double b, double fa, double fm, double fb,
                      double whole, double tol, int depth, double& value, double& err) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = fn(lm), frm = fn(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        value += left + right + delta / 15.0;
        err += std::abs(delta) / 15.0;
        return;
    }
    adaptive_simpson(fn, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, value, err);
    adaptive_simpson(fn, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, value, err);
}

template <typename F>
IntegralResult integrate_smooth(const F& fn, double a, double b, double tol) {
    IntegralResult r;
    if (b <= a) return r;
    double fa = fn(a), fb = fn(b), fm = fn(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    adaptive_simpson(fn, a, b, fa, fm, fb, whole, tol, 48, r.value, r.error_bound);
    return r;
}

}  // namespace detail

// Integral of C(u) * weight(u) over [lo, hi].  Step pieces are integrated in
// closed form; analytic pieces by adaptive quadrature split at piece
// boundaries so every panel is smooth.
inline IntegralResult integrate_C(const PiecewiseBoundFunction& f, double lo, double hi,
                                  Weight weight = Weight::one, double tol = 1e-9) {
    if (tol <= 0) throw std::domain_error("integrate_C: tol must be positive");
    if (lo < f.domain_lo() - 1e-12 || hi > f.domain_hi() + 1e-12 || lo > hi)
        throw std::domain_error("integrate_C: [lo, hi] outside the domain of C");
    IntegralResult total;
    for (const auto& pc : f.pieces) {
        double a = std::max(lo, pc.lo), b = std::min(hi, pc.hi);
        if (b <= a) continue;
        if (pc.kind == PieceKind::step) {
            // exact antiderivatives of v, v/u, v(1 - 2/(3u))
            switch (weight) {
                case Weight::one: total.value += pc.value * (b - a); break;
                case Weight::inv_u: total.value += pc.value * std::log(b / a); break;
                case Weight::one_minus_2_over_3u:
                    total.value += pc.value * ((b - a) - (2.0 / 3.0) * std::log(b / a));
                    break;
            }
        } else {
            auto fn = [&](double u) { return pc.eval(u) * weight_eval(weight, u); };
            IntegralResult part = detail::integrate_smooth(fn, a, b, tol);
            total.value += part.value;
            total.error_bound += part.error_bound;
        }
    }
    return total;
}

// Override file: one piece per line, ascending, tiling the domain.
//   poly <lo> <hi>
//   knot <u> <value>        (step on (previous boundary, u])
//   logadj <lo> <hi>
//   rational1 <lo> <hi>
//   rational2 <lo> <hi>
// '#' starts a comment.  The first knot after a non-step line starts at that
// line's <hi>.
inline PiecewiseBoundFunction parse_C_definition(std::istream& in) {
    PiecewiseBoundFunction f;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("C(u) definition, line " + std::to_string(lineno) +
                                    ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "knot") {
            double u, v;
            if (!(ls >> u >> v)) fail("expected: knot <u> <value>");
            if (f.pieces.empty()) fail("a knot needs a preceding piece boundary");
            f.pieces.push_back({f.pieces.back().hi, u, PieceKind::step, v});
        } else {
            double lo, hi;
            if (!(ls >> lo >> hi)) fail("expected: " + kind + " <lo> <hi>");
            PieceKind k;
            if (kind == "poly") k = PieceKind::poly;
            else if (kind == "logadj") k = PieceKind::log_adjusted;
            else if (kind == "rational1") k = PieceKind::rational1;
            else if (kind == "rational2") k = PieceKind::rational2;
            else { fail("unknown piece kind '" + kind + "'"); return f; }
            f.pieces.push_back({lo, hi, k, 0});
        }
    }
    detail::validate_pieces(f);
    return f;
}

inline PiecewiseBoundFunction load_C_definition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open C(u) definition file: " + path);
    return parse_C_definition(in);
}

}  // namespace pseudopower
