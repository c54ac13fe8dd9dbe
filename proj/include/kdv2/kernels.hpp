#pragma once

#include <array>
#include <vector>

#include "kdv2/errors.hpp"
#include "kdv2/util.hpp"

namespace kdv2::kernels {

/// Coefficients (alpha, beta) of the dispersion symbol alpha*xi^3 - beta*xi.
struct DispersionPair {
    double alpha;
    double beta;

    DispersionPair(double a, double b) : alpha(a), beta(b) {
        require(a != 0.0, ErrorCode::InvalidArgument, "dispersion: alpha must be nonzero");
        require(std::abs(b) <= 1.0 + 1e-12, ErrorCode::InvalidArgument,
                "dispersion: |beta| must be <= 1");
    }
    DispersionPair negated() const { return DispersionPair(-alpha, -beta); }
};

/// phi^{alpha,beta}(xi) = alpha xi^3 - beta xi.
inline double phase(const DispersionPair& dp, double xi) {
    return dp.alpha * xi * xi * xi - dp.beta * xi;
}

/// P_beta(mu) = mu^3 - beta mu and its derivative.
inline double p_poly(double beta, double mu) { return mu * mu * mu - beta * mu; }
inline double p_poly_deriv(double beta, double mu) { return 3.0 * mu * mu - beta; }

/// Inverse of P_beta on the increasing branch [mu_min, inf). Safeguarded
/// Newton with a bisection bracket. Throws InverseOutOfBranch when lambda
/// lies below P_beta(mu_min).
double p_poly_inverse(double beta, double lambda, double mu_min = 4.0);

/// R_beta(mu) = sqrt(3 mu^2 - 4 beta)/2, pure imaginary below the branch
/// point mu^2 = 4 beta / 3.
cplx r_poly(double beta, double mu);

/// Smooth bump: 1 on |t|<=1, 0 on |t|>=2. bump_eta_deriv is its exact
/// derivative (used by manufactured-solution oracles).
double bump_eta(double t);
double bump_eta_deriv(double t);

/// Smooth ramp: 1 for x>=0, 0 for x<=-1.
double ramp_psi(double x);

/// k(y) = e^{-y} psi(y); Schwartz on the line.
double kernel_k(double y);

/// Cutoff kernel K_beta(x,mu): e^{-R x} on the oscillatory branch, damped
/// and psi-truncated on the growing branch. Requires mu >= sqrt(beta).
cplx cutoff_K(double beta, double x, double mu);

/// Frequencies on the convolution hyperplane xi1+xi2+xi3 = tau1+tau2+tau3 = 0.
struct FrequencyTriple {
    std::array<double, 3> xi;
    std::array<double, 3> tau;

    FrequencyTriple(std::array<double, 3> xis, std::array<double, 3> taus);
};

/// Resonance H = sum_i phi^{alpha_i,beta_i}(xi_i).
double resonance(const std::array<DispersionPair, 3>& triple, const FrequencyTriple& ft);

/// H / xi2 for the ((a,b),(-a,-b),(a,b)) triple, evaluated in factored form:
/// -alpha (2 xi2^2 + 3 xi1 xi2 + 3 xi1^2) + 2 beta.
double resonance_d2_factor(const DispersionPair& dp, double xi1, double xi2);

struct ResonanceScan {
    double min_ratio = 0.0;
    std::size_t n_points = 0;
    double argmin_xi1 = 0.0, argmin_xi2 = 0.0;
};

/// Minimum of |H| / (|xi2| sum <xi_i>^2) over an (xi1, xi2) grid restricted
/// to sum |xi_i| >= c_star (xi3 = -xi1-xi2). Throws EmptyGrid when the
/// restriction removes every point.
ResonanceScan resonance_lower_bound_scan(const DispersionPair& dp, double c_star,
                                         double xi_lo, double xi_hi, std::size_t n_axis);

/// Empirical C* = max{4, C1, C2}: smallest cutoff above which both the
/// resonance and the derivative polynomials stay bounded below.
double estimate_cstar(const DispersionPair& dp);

struct ConvolutionRatio {
    double lhs;   // integral value
    double ratio; // lhs * <a+b>^{rho3}
};

/// Quadrature oracle for the convolution bound
/// int dx / (<x-a>^{rho1} <-x-b>^{rho2}) <= C / <a+b>^{rho3}.
ConvolutionRatio convolution_lemma_oracle(double rho1, double rho2, double rho3,
                                          double a, double b, double tol = 1e-9);

/// Quadrature oracle for the polynomial level-set bound: returns
/// int dx <poly(x)>^{-rho} * |lead|^{1/2} (deg 2) or |lead|^{1/3} (deg 3).
/// Coefficients are ascending-degree.
double polynomial_level_set_oracle(const std::vector<double>& coeffs, double rho,
                                   double tol = 1e-9);

} // namespace kdv2::kernels
