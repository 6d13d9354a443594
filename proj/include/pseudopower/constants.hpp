// Derivation of every numerical constant from the bound function C(u):
// theta_C, c, eta, tau, gamma and its variants, the q-exponent, and the
// GRH-mode values.
//
// Rounding policy: lower-bound constants are floored (weakening, hence safe);
// the theta bracket carried into dependent integrals is the 5-decimal
// outward rounding of the solved bracket, which is exactly the published
// bracket (0.6759, 0.67591).  c uses the upper theta end (the integral being
// subtracted must be an upper bound), tau uses the lower end.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bound_function.hpp"

namespace pseudopower {

struct NamedIntegral {
    std::string name;
    double lo = 0, hi = 0;
    double value = 0;
    double error_bound = 0;
};

struct ConstantsReport {
    std::vector<NamedIntegral> integrals;
    double theta_lo = 0, theta_hi = 0;  // solved bracket
    double c_lower = 0;
    double eta = 0;
    double tau = 0;
    double gamma = 0;
    double gamma_no_T = 0;
    double gamma_elementary = 0;
    double q_exponent = 0;
    double grh_gamma = 0;
    double pom_c = 0;
};

inline double floor_decimals(double v, int places) {
    double scale = std::pow(10.0, places);
    return std::floor(v * scale) / scale;
}

inline double ceil_decimals(double v, int places) {
    double scale = std::pow(10.0, places);
    return std::ceil(v * scale) / scale;
}

// Bisection bracket of width <= tol around the solution of
// cumulative(theta) = 1/2, where cumulative integrates C from the left
// domain end.  C >= 0 makes the cumulative monotone.
inline std::pair<double, double> solve_theta(const PiecewiseBoundFunction& f,
                                             double tol = 1e-7) {
    if (tol <= 0) throw std::domain_error("solve_theta: tol must be positive");
    double lo = f.domain_lo(), hi = f.domain_hi();
    double itol = std::min(tol, 1e-9);
    if (integrate_C(f, lo, hi, Weight::one, itol).value < 0.5)
        throw std::invalid_argument("solve_theta: total mass of C below 1/2, no solution");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (integrate_C(f, f.domain_lo(), mid, Weight::one, itol).value < 0.5)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

inline ConstantsReport derive_constants(const PiecewiseBoundFunction& f, double tol = 1e-9) {
    ConstantsReport rep;
    auto [tl, th] = solve_theta(f, 1e-7);
    rep.theta_lo = tl;
    rep.theta_hi = th;
    // published-style bracket: 5-decimal outward rounding
    double theta_lo5 = floor_decimals(tl, 5);
    double theta_hi5 = ceil_decimals(th, 5);

    auto record = [&](const std::string& name, double lo, double hi, Weight w) {
        IntegralResult r = integrate_C(f, lo, hi, w, tol);
        rep.integrals.push_back({name, lo, hi, r.value, r.error_bound});
        return r.value;
    };

    const double four7 = 4.0 / 7.0, three5 = 3.0 / 5.0;
    record("C [0.5,0.51]", 0.5, 0.51, Weight::one);
    record("C [0.51,0.56]", 0.51, 0.56, Weight::one);
    record("C [0.56,4/7]", 0.56, four7, Weight::one);
    record("C [4/7,3/5]", four7, three5, Weight::one);
    record("C [3/5,theta_lo]", three5, theta_lo5, Weight::one);
    record("C [3/5,theta_hi]", three5, theta_hi5, Weight::one);

    double ju = 0;
    ju += record("C/u [0.5,0.51]", 0.5, 0.51, Weight::inv_u);
    ju += record("C/u [0.51,0.56]", 0.51, 0.56, Weight::inv_u);
    ju += record("C/u [0.56,4/7]", 0.56, four7, Weight::inv_u);
    ju += record("C/u [4/7,3/5]", four7, three5, Weight::inv_u);
    ju += record("C/u [3/5,theta_hi]", three5, theta_hi5, Weight::inv_u);

    rep.c_lower = 1.0 - ju;
    rep.eta = floor_decimals((1.0 + rep.c_lower) / 2.0, 5);

    double t_exponent =
        record("(1-2/3u)C [2/3,theta_lo]", 2.0 / 3.0, theta_lo5, Weight::one_minus_2_over_3u);
    rep.tau = floor_decimals(t_exponent, 6);

    rep.gamma = floor_decimals(5.0 * rep.eta / 8.0 + 3.0 * rep.tau / 8.0 - 0.25, 5);
    rep.gamma_no_T = floor_decimals(5.0 * rep.eta / 8.0 - 0.25, 5);
    rep.gamma_elementary = 5.0 / 8.0 * 0.5 - 0.25;  // = 1/16
    rep.q_exponent = (1.0 - rep.gamma) + 1e-5;
    rep.grh_gamma = 5.0 / 8.0 * 1.0 + 3.0 / 8.0 * (1.0 / 3.0) - 0.25;  // = 1/2
    rep.pom_c = 1.0 - 4.0 * std::log(5.0 / 4.0);
    return rep;
}

}  // namespace pseudopower
