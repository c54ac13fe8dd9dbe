#pragma once

#include <functional>

#include "kdv2/grid.hpp"
#include "kdv2/kernels.hpp"

namespace kdv2::spaces {

using kernels::DispersionPair;

/// Unitary-convention spectrum of a 1-D sampled function.
struct Spectrum1D {
    std::vector<cplx> values; // bin k -> fhat(xi_k)
    std::size_t n = 0;
    double sample_step = 1.0; // grid step of the originating samples
    double freq(std::size_t k) const;
    double dfreq() const;
};

Spectrum1D fourier_line(const SampledFunction1D& f);

/// Continuous Fourier transform of samples at one arbitrary frequency,
/// unitary convention (trapezoid in the sample variable).
cplx fourier_at(const SampledFunction1D& f, double omega);

/// H^s(R) norm via the discrete spectrum. The tail heuristic throws
/// GridTooCoarse when the weighted mass near the Nyquist edge exceeds 1%.
double sobolev_norm_line(const SampledFunction1D& f, double s, bool check_tail = true);

/// High-order reflection extension from R+ to R; matches derivatives 0..3.
SampledFunction1D extend_Es(const SampledFunction1D& f, double s);

/// Reflection extension evaluated on a caller-chosen whole-line grid.
SampledFunction1D extend_Es_to_grid(const SampledFunction1D& f, double s,
                                    double x_start, double x_step, std::size_t n);

/// Equivalent-norm surrogate for H^s(R+) through the concrete extension.
double sobolev_norm_halfline(const SampledFunction1D& f, double s);

struct ZeroExtension {
    TimeSignal extended;    // padded to negative t with zeros
    double norm_line;       // ||h*||_{H^{(s+1)/3}(R)}
    double norm_halfline;   // ||h||_{H^{(s+1)/3}(R+)}
};

/// Zero extension of a boundary signal with its norm report.
ZeroExtension zero_extend(const TimeSignal& h, double s);

/// ||M(mu) fhat(P_beta(mu))||_{L^2(dmu)}, with a numeric check of the
/// multiplier growth bound |M| <= C |P'|^{1/2} <mu>^{s+1}.
double multiplier_image_norm(const std::function<cplx(double)>& M, const TimeSignal& f,
                             double beta, double s, double bound_budget = 1e8);

/// Restriction-norm index (s, b, sigma) with its dispersion pair.
struct BourgainIndex {
    double s = 0.0;
    double b = 0.5;
    double sigma = 0.55;
    DispersionPair dp{1.0, 1.0};
};

/// Cached 2-D spectrum of a space-time field (bins match the DFT layout,
/// values carry the unitary normalization).
struct FieldSpectrum {
    std::vector<cplx> values; // [m * nx + k] -> what(xi_k, tau_m)
    std::size_t nx = 0, nt = 0;
    double x_step = 1.0, t_step = 1.0;

    double xi(std::size_t k) const;
    double tau(std::size_t m) const;
    double cell() const; // dxi * dtau
};

FieldSpectrum fourier_field(const SpaceTimeField& w);
SpaceTimeField field_from_spectrum(const FieldSpectrum& s, double x_start, double t_start);

// Restriction norms; overloads on a precomputed spectrum skip the FFT.
double xsb_norm(const SpaceTimeField& w, const BourgainIndex& idx, bool check_tail = true);
double xsb_norm(const FieldSpectrum& sp, const BourgainIndex& idx);
double lambda_norm(const SpaceTimeField& w, const BourgainIndex& idx);
double lambda_norm(const FieldSpectrum& sp, const BourgainIndex& idx);
double xsbsigma_norm(const SpaceTimeField& w, const BourgainIndex& idx);
double xsbsigma_norm(const FieldSpectrum& sp, const BourgainIndex& idx);
double y_norm(const SpaceTimeField& w, const BourgainIndex& idx);
double z_norm(const SpaceTimeField& w, const BourgainIndex& idx);
double z_norm(const FieldSpectrum& sp, const BourgainIndex& idx);

enum class Pairing { gc, d1, d2 };

/// Largest admissible sigma for the bilinear estimates at regularity s.
double sigma0_threshold(double s);

/// Spectrum of d/dx (w1 w2) on a 2x zero-padded grid (alias-free product).
FieldSpectrum product_dx_spectrum(const SpaceTimeField& w1, const SpaceTimeField& w2);

/// max(X_{s,sigma-1}, Z_{s,sigma-1}) of d/dx(w1 w2) over the product of the
/// X_{s,1/2,sigma} norms of the inputs, with spaces selected by the pairing.
double bilinear_ratio(const SpaceTimeField& w1, const SpaceTimeField& w2, Pairing pairing,
                      const DispersionPair& dp, double s, double sigma);

/// Time-localized smoothing ratio following the high-low frequency bound:
/// ||eta(t/T) dx(w1 w2)||_{X_{s2,sigma-1}} /
///   (T^{eps0} (||w1||_{s1} ||w2||_{s2} + ||w1||_{s2} ||w2||_{s1})).
double smoothing_ratio(const SpaceTimeField& w1, const SpaceTimeField& w2, double s1,
                       double s2, double T, double sigma, const DispersionPair& dp);

/// eps0 = 1/16 - rho/12 with rho = -s1 (smoothing gain exponent).
double smoothing_eps0(double s1);

} // namespace kdv2::spaces
