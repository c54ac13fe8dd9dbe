#include "kdv2/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "kdv2/quadrature.hpp"

namespace kdv2::kernels {

namespace {

// C^inf transition: 0 for x<=0, 1 for x>=1.
double smooth_step_raw(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double smooth_step_raw_deriv(double x) {
    return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0;
}

double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = smooth_step_raw(x);
    const double b = smooth_step_raw(1.0 - x);
    return a / (a + b);
}

double smooth_step_deriv(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double a = smooth_step_raw(x);
    const double b = smooth_step_raw(1.0 - x);
    const double ad = smooth_step_raw_deriv(x);
    const double bd = smooth_step_raw_deriv(1.0 - x); // derivative of b wrt x is -bd
    const double denom = (a + b) * (a + b);
    return (ad * b + a * bd) / denom;
}

} // namespace

double p_poly_inverse(double beta, double lambda, double mu_min) {
    require(mu_min * mu_min * 3.0 >= beta - 1e-12, ErrorCode::InverseOutOfBranch,
            "p_poly_inverse: branch start below the turning point");
    const double lo_val = p_poly(beta, mu_min);
    require(lambda >= lo_val - 1e-12 * (1.0 + std::abs(lambda)),
            ErrorCode::InverseOutOfBranch, "p_poly_inverse: lambda below branch");

    // bracket [lo, hi] with P(hi) >= lambda
    double lo = mu_min;
    double hi = std::max(mu_min + 1.0, std::cbrt(std::abs(lambda)) + std::abs(beta) + 1.0);
    while (p_poly(beta, hi) < lambda) hi *= 2.0;

    double mu = std::clamp(std::cbrt(std::abs(lambda) + 1.0), lo, hi);
    for (int it = 0; it < 100; ++it) {
        const double f = p_poly(beta, mu) - lambda;
        if (std::abs(f) <= 1e-13 * (1.0 + std::abs(lambda))) break;
        if (f > 0.0) hi = mu; else lo = mu;
        const double d = p_poly_deriv(beta, mu);
        double next = (d > 0.0) ? mu - f / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        mu = next;
    }
    return mu;
}

cplx r_poly(double beta, double mu) {
    require(beta > 0.0, ErrorCode::InvalidArgument, "r_poly: beta must be positive");
    const double d = 3.0 * mu * mu - 4.0 * beta;
    if (d <= 0.0) return cplx(0.0, 0.5 * std::sqrt(-d));
    return cplx(0.5 * std::sqrt(d), 0.0);
}

double bump_eta(double t) { return smooth_step(2.0 - std::abs(t)); }

double bump_eta_deriv(double t) {
    const double a = std::abs(t);
    if (a <= 1.0 || a >= 2.0) return 0.0;
    const double sgn = t > 0.0 ? 1.0 : -1.0;
    return -sgn * smooth_step_deriv(2.0 - a);
}

double ramp_psi(double x) { return smooth_step(x + 1.0); }

double kernel_k(double y) { return std::exp(-y) * ramp_psi(y); }

cplx cutoff_K(double beta, double x, double mu) {
    require(beta > 0.0, ErrorCode::InvalidArgument, "cutoff_K: beta must be positive");
    const double mu_lo = std::sqrt(beta);
    require(mu >= mu_lo - 1e-12, ErrorCode::MuBelowBranch, "cutoff_K: mu below sqrt(beta)");
    const cplx R = r_poly(beta, mu);
    if (mu * mu <= 4.0 * beta / 3.0) {
        return std::exp(-R * x); // |K| = 1, oscillatory branch
    }
    const double y = R.real() * x;
    return cplx(kernel_k(y), 0.0);
}

FrequencyTriple::FrequencyTriple(std::array<double, 3> xis, std::array<double, 3> taus)
    : xi(xis), tau(taus) {
    double sx = xi[0] + xi[1] + xi[2];
    double st = tau[0] + tau[1] + tau[2];
    double scale_x = std::max({1.0, std::abs(xi[0]), std::abs(xi[1]), std::abs(xi[2])});
    double scale_t = std::max({1.0, std::abs(tau[0]), std::abs(tau[1]), std::abs(tau[2])});
    require(std::abs(sx) <= 1e-12 * scale_x && std::abs(st) <= 1e-12 * scale_t,
            ErrorCode::NotOnHyperplane, "frequency triple must sum to zero");
}

double resonance(const std::array<DispersionPair, 3>& triple, const FrequencyTriple& ft) {
    double h = 0.0;
    for (int i = 0; i < 3; ++i) h += phase(triple[i], ft.xi[i]);
    return h;
}

double resonance_d2_factor(const DispersionPair& dp, double xi1, double xi2) {
    return -dp.alpha * (2.0 * xi2 * xi2 + 3.0 * xi1 * xi2 + 3.0 * xi1 * xi1) + 2.0 * dp.beta;
}

ResonanceScan resonance_lower_bound_scan(const DispersionPair& dp, double c_star,
                                         double xi_lo, double xi_hi, std::size_t n_axis) {
    require(n_axis >= 2, ErrorCode::InvalidArgument, "scan: need at least 2 grid points");
    const double step = (xi_hi - xi_lo) / double(n_axis - 1);
    ResonanceScan out;
    out.min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_axis; ++i) {
        const double x1 = xi_lo + double(i) * step;
        for (std::size_t j = 0; j < n_axis; ++j) {
            const double x2 = xi_lo + double(j) * step;
            if (x2 == 0.0) continue; // ratio defined through the factored form
            const double x3 = -x1 - x2;
            if (std::abs(x1) + std::abs(x2) + std::abs(x3) < c_star) continue;
            const double denom = jbracket(x1) * jbracket(x1) + jbracket(x2) * jbracket(x2) +
                                 jbracket(x3) * jbracket(x3);
            const double ratio = std::abs(resonance_d2_factor(dp, x1, x2)) / denom;
            if (ratio < out.min_ratio) {
                out.min_ratio = ratio;
                out.argmin_xi1 = x1;
                out.argmin_xi2 = x2;
            }
            ++out.n_points;
        }
    }
    require(out.n_points > 0, ErrorCode::EmptyGrid,
            "scan: no grid point satisfies sum |xi_i| >= c_star");
    return out;
}

double estimate_cstar(const DispersionPair& dp) {
    // Smallest cutoff above which |H|/(|xi2| Sum<xi>^2) and |P'|/Sum<xi>^2
    // stay above 0.05|alpha| on a coarse grid.
    const double floor_c = 0.05 * std::abs(dp.alpha);
    double worst = 0.0;
    const std::size_t n = 241;
    const double lo = -6.0, hi = 6.0, step = (hi - lo) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x1 = lo + double(i) * step;
        for (std::size_t j = 0; j < n; ++j) {
            const double x2 = lo + double(j) * step;
            const double x3 = -x1 - x2;
            const double s = std::abs(x1) + std::abs(x2) + std::abs(x3);
            const double denom = jbracket(x1) * jbracket(x1) + jbracket(x2) * jbracket(x2) +
                                 jbracket(x3) * jbracket(x3);
            const double h_ratio = std::abs(resonance_d2_factor(dp, x1, x2)) / denom;
            // P'(xi1) with (xi3) the fixed slot, Eq.-level quadratic
            const double pprime =
                std::abs(-3.0 * dp.alpha * (2.0 * x1 * x1 + 2.0 * x3 * x1 + x3 * x3) +
                         2.0 * dp.beta) / denom;
            if (h_ratio < floor_c || pprime < floor_c) worst = std::max(worst, s);
        }
    }
    return std::max(4.0, worst * 1.05);
}

ConvolutionRatio convolution_lemma_oracle(double rho1, double rho2, double rho3,
                                          double a, double b, double tol) {
    require(rho2 > 0.5 && rho1 >= rho2, ErrorCode::ExponentContract,
            "convolution oracle: need rho1 >= rho2 > 1/2");
    const double eq_tol = 1e-12;
    if (rho1 > 1.0 + eq_tol) {
        require(rho3 <= rho2 + eq_tol, ErrorCode::ExponentContract,
                "convolution oracle: rho3 must not exceed rho2 when rho1 > 1");
    } else if (std::abs(rho1 - 1.0) <= eq_tol) {
        require(rho3 < rho2, ErrorCode::ExponentContract,
                "convolution oracle: rho3 must be < rho2 when rho1 = 1");
    } else {
        require(rho3 <= rho1 + rho2 - 1.0 + eq_tol, ErrorCode::ExponentContract,
                "convolution oracle: rho3 must not exceed rho1+rho2-1 when rho1 < 1");
    }
    auto f = [&](double x) {
        return std::pow(jbracket(x - a), -rho1) * std::pow(jbracket(-x - b), -rho2);
    };
    ConvolutionRatio out;
    out.lhs = quad::integrate_line(f, tol);
    out.ratio = out.lhs * std::pow(jbracket(a + b), rho3);
    return out;
}

double polynomial_level_set_oracle(const std::vector<double>& coeffs, double rho,
                                   double tol) {
    require(coeffs.size() == 3 || coeffs.size() == 4, ErrorCode::InvalidArgument,
            "level-set oracle: quadratic or cubic coefficients expected");
    const double lead = coeffs.back();
    require(lead != 0.0, ErrorCode::DegenerateLeadingCoefficient,
            "level-set oracle: zero leading coefficient");
    const bool cubic = coeffs.size() == 4;
    require(rho > (cubic ? 1.0 / 3.0 : 0.5), ErrorCode::ExponentContract,
            "level-set oracle: exponent too small for integrability");
    auto poly = [&](double x) {
        double p = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) p = p * x + coeffs[k];
        return p;
    };
    auto f = [&](double x) { return std::pow(jbracket(poly(x)), -rho); };
    const double val = quad::integrate_line(f, tol);
    return val * std::pow(std::abs(lead), cubic ? 1.0 / 3.0 : 0.5);
}

} // namespace kdv2::kernels
