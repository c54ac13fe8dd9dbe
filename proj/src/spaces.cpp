#include "kdv2/spaces.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>

#include "kdv2/fft.hpp"
#include "kdv2/quadrature.hpp"

namespace kdv2::spaces {

namespace {

// (1 + u)^e with fast paths for the exponents the norms actually use.
inline double upow(double one_plus_sq, double e) {
    if (e == 0.0) return 1.0;
    if (e == 0.5) return std::sqrt(one_plus_sq);
    if (e == 1.0) return one_plus_sq;
    if (e == -0.5) return 1.0 / std::sqrt(one_plus_sq);
    if (e == -1.0) return 1.0 / one_plus_sq;
    return std::pow(one_plus_sq, e);
}

void warn_unwindowed() {
    static std::atomic<int> count{0};
    if (count.fetch_add(1) < 3)
        std::cerr << "kdv2: warning: space-time norm of an un-windowed field\n";
}

} // namespace

double Spectrum1D::freq(std::size_t k) const { return fft::bin_freq(k, n, sample_step); }
double Spectrum1D::dfreq() const { return 2.0 * pi / (double(n) * sample_step); }

Spectrum1D fourier_line(const SampledFunction1D& f) {
    Spectrum1D out;
    out.n = f.size();
    out.sample_step = f.grid_step;
    out.values = f.values;
    fft::forward(out.values);
    const double scale = f.grid_step / std::sqrt(2.0 * pi);
    for (std::size_t k = 0; k < out.n; ++k) {
        const double xi = out.freq(k);
        out.values[k] *= scale * std::exp(cplx(0.0, -xi * f.grid_start));
    }
    return out;
}

cplx fourier_at(const SampledFunction1D& f, double omega) {
    // trapezoid weights; endpoint corrections matter for signals that do not
    // vanish at the grid ends
    cplx acc(0.0, 0.0);
    const std::size_t n = f.size();
    for (std::size_t j = 0; j < n; ++j) {
        double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
        acc += w * f.values[j] * std::exp(cplx(0.0, -omega * f.coord(j)));
    }
    return acc * (f.grid_step / std::sqrt(2.0 * pi));
}

double sobolev_norm_line(const SampledFunction1D& f, double s, bool check_tail) {
    const Spectrum1D sp = fourier_line(f);
    const double dxi = sp.dfreq();
    const double xi_nyq = pi / f.grid_step;
    double total = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < sp.n; ++k) {
        const double xi = sp.freq(k);
        const double term = upow(1.0 + xi * xi, s) * std::norm(sp.values[k]) * dxi;
        total += term;
        if (std::abs(xi) >= 0.875 * xi_nyq) tail += term;
    }
    if (check_tail && total > 0.0 && std::sqrt(tail) > 0.01 * std::sqrt(total))
        fail(ErrorCode::GridTooCoarse,
             "sobolev_norm_line: spectral tail mass above 1% of the norm");
    return std::sqrt(total);
}

namespace {
// Reflection weights: sum_j c_j (-1/j)^m = 1 for m = 0..3.
const double hestenes_c[4] = {-10.0, 160.0, -405.0, 256.0};
} // namespace

SampledFunction1D extend_Es(const SampledFunction1D& f, double s) {
    require(s > -0.75 && s <= 3.0, ErrorCode::InvalidArgument,
            "extend_Es: regularity outside (-3/4, 3]");
    require(std::abs(f.grid_start) <= 1e-9, ErrorCode::NegativeDomainInput,
            "extend_Es: input must live on the half line starting at 0");
    const std::size_t n = f.size();
    const double h = f.grid_step;
    SampledFunction1D out;
    out.grid_step = h;
    out.grid_start = -double(n) * h;
    out.axis = f.axis;
    out.values.assign(2 * n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) out.values[n + i] = f.values[i];
    for (std::size_t k = 1; k <= n; ++k) {
        const double x = -double(k) * h;
        // collar cutoff: the reflected part lives on [-1, 0) only, so data
        // vanishing on [0,1) extends by exact zeros
        const double psi = kernels::ramp_psi(x);
        if (psi == 0.0) break;
        cplx v(0.0, 0.0);
        for (int j = 1; j <= 4; ++j)
            v += hestenes_c[j - 1] * cubic_interp(f, double(k) * h / double(j));
        out.values[n - k] = psi * v;
    }
    return out;
}

SampledFunction1D extend_Es_to_grid(const SampledFunction1D& f, double s,
                                    double x_start, double x_step, std::size_t n) {
    require(s > -0.75 && s <= 3.0, ErrorCode::InvalidArgument,
            "extend_Es: regularity outside (-3/4, 3]");
    require(std::abs(f.grid_start) <= 1e-9, ErrorCode::NegativeDomainInput,
            "extend_Es: input must live on the half line starting at 0");
    SampledFunction1D out;
    out.grid_start = x_start;
    out.grid_step = x_step;
    out.axis = f.axis;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x_start + double(i) * x_step;
        if (x >= 0.0) {
            out.values[i] = cubic_interp(f, x);
        } else {
            const double psi = kernels::ramp_psi(x);
            if (psi == 0.0) {
                out.values[i] = 0.0;
                continue;
            }
            cplx v(0.0, 0.0);
            for (int j = 1; j <= 4; ++j)
                v += hestenes_c[j - 1] * cubic_interp(f, -x / double(j));
            out.values[i] = psi * v;
        }
    }
    return out;
}

double sobolev_norm_halfline(const SampledFunction1D& f, double s) {
    return sobolev_norm_line(extend_Es(f, s), s, false);
}

ZeroExtension zero_extend(const TimeSignal& h, double s) {
    require(s > -2.5 && s < 3.5, ErrorCode::InvalidArgument,
            "zero_extend: regularity outside (-5/2, 7/2)");
    require(std::abs(s - 0.5) > 1e-9, ErrorCode::ForbiddenRegularity,
            "zero_extend: s = 1/2 is excluded");
    require(std::abs(h.t_start) <= 1e-9, ErrorCode::InvalidArgument,
            "zero_extend: signal must start at t = 0");
    if (s > 0.5) {
        const double scale = h.sup_norm();
        require(std::abs(h.value_at_zero()) <= 1e-8 * std::max(scale, 1e-300),
                ErrorCode::TraceNotVanishing,
                "zero_extend: h(0) must vanish for 1/2 < s < 7/2");
    }
    ZeroExtension out;
    const std::size_t n = h.size();
    out.extended.t_step = h.t_step;
    out.extended.t_start = -double(n) * h.t_step;
    out.extended.is_zero_extended = true;
    out.extended.values.assign(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out.extended.values[n + i] = h.values[i];

    const double reg = (s + 1.0) / 3.0;
    out.norm_line = sobolev_norm_line(out.extended.as_function(), reg, false);
    out.norm_halfline = sobolev_norm_halfline(h.as_function(), reg);
    return out;
}

double multiplier_image_norm(const std::function<cplx(double)>& M, const TimeSignal& f,
                             double beta, double s, double bound_budget) {
    require(beta > 0.0 && beta <= 1.0, ErrorCode::BetaOutOfRange,
            "multiplier_image_norm: beta in (0,1] expected");
    const SampledFunction1D fs = f.as_function();
    // frequencies beyond the signal Nyquist carry no information
    const double omega_max = pi / f.t_step;
    const double mu_cut = kernels::p_poly_inverse(beta, omega_max, std::sqrt(beta));

    // growth-bound scan; the exact turning points +-sqrt(beta/3) are included
    // because any admissible M must vanish with P' there
    auto check_at = [&](double mu) {
        const double denom =
            std::sqrt(std::abs(kernels::p_poly_deriv(beta, mu))) *
            std::pow(jbracket(mu), s + 1.0);
        const double ratio = std::abs(M(mu)) / std::max(denom, 1e-12);
        require(ratio <= bound_budget, ErrorCode::MultiplierBoundViolated,
                "multiplier_image_norm: |M| exceeds the P'^{1/2}<mu>^{s+1} envelope");
    };
    for (int i = 0; i <= 2000; ++i) check_at(-mu_cut + 2.0 * mu_cut * double(i) / 2000.0);
    check_at(std::sqrt(beta / 3.0));
    check_at(-std::sqrt(beta / 3.0));

    auto integrand = [&](double mu) {
        if (std::abs(mu) > mu_cut) return 0.0;
        const cplx m = M(mu);
        if (m == cplx(0.0, 0.0)) return 0.0;
        const cplx fh = fourier_at(fs, kernels::p_poly(beta, mu));
        return std::norm(m) * std::norm(fh);
    };
    const double val = quad::integrate(integrand, -mu_cut, mu_cut, 1e-10);
    return std::sqrt(std::max(val, 0.0));
}

// ---------------- space-time spectra ----------------

double FieldSpectrum::xi(std::size_t k) const { return fft::bin_freq(k, nx, x_step); }
double FieldSpectrum::tau(std::size_t m) const { return fft::bin_freq(m, nt, t_step); }
double FieldSpectrum::cell() const {
    return (2.0 * pi / (double(nx) * x_step)) * (2.0 * pi / (double(nt) * t_step));
}

FieldSpectrum fourier_field(const SpaceTimeField& w) {
    FieldSpectrum out;
    out.nx = w.nx;
    out.nt = w.nt;
    out.x_step = w.x_step;
    out.t_step = w.t_step;
    out.values = w.values;
    fft::forward2d(out.values, w.nt, w.nx);
    const double scale = w.x_step * w.t_step / (2.0 * pi);
    for (std::size_t m = 0; m < w.nt; ++m) {
        const double tau = out.tau(m);
        const cplx tw_t = std::exp(cplx(0.0, -tau * w.t_start));
        for (std::size_t k = 0; k < w.nx; ++k) {
            const double xi = out.xi(k);
            out.values[m * w.nx + k] *=
                scale * tw_t * std::exp(cplx(0.0, -xi * w.x_start));
        }
    }
    return out;
}

SpaceTimeField field_from_spectrum(const FieldSpectrum& s, double x_start, double t_start) {
    SpaceTimeField out = make_field(s.nx, x_start, s.x_step, s.nt, t_start, s.t_step);
    out.values = s.values;
    for (std::size_t m = 0; m < s.nt; ++m) {
        const double tau = s.tau(m);
        const cplx tw_t = std::exp(cplx(0.0, tau * t_start));
        for (std::size_t k = 0; k < s.nx; ++k) {
            const double xi = s.xi(k);
            out.values[m * s.nx + k] *= tw_t * std::exp(cplx(0.0, xi * x_start));
        }
    }
    fft::inverse2d(out.values, s.nt, s.nx);
    const double scale = 2.0 * pi / (s.x_step * s.t_step);
    for (auto& v : out.values) v *= scale;
    return out;
}

void apply_time_window_impl(SpaceTimeField& w, double T) {
    for (std::size_t m = 0; m < w.nt; ++m) {
        const double e = kernels::bump_eta(w.t(m) / T);
        for (std::size_t k = 0; k < w.nx; ++k) w.values[m * w.nx + k] *= e;
    }
    w.window = TimeWindow{T};
}

namespace {

struct NormAccum {
    double xsb2 = 0.0;
    double lambda2 = 0.0;
    double z2 = 0.0;
    double tail2 = 0.0;
    double total2 = 0.0;
};

// One pass over the spectrum collecting every weighted mass the callers need.
NormAccum accumulate(const FieldSpectrum& sp, const BourgainIndex& idx, bool want_lambda,
                     bool want_z) {
    NormAccum acc;
    const double cell = sp.cell();
    const double xi_nyq = pi / sp.x_step;
    const double tau_nyq = pi / sp.t_step;
    std::vector<double> xiv(sp.nx), xiw(sp.nx), phiv(sp.nx);
    for (std::size_t k = 0; k < sp.nx; ++k) {
        xiv[k] = sp.xi(k);
        xiw[k] = upow(1.0 + xiv[k] * xiv[k], idx.s);
        phiv[k] = kernels::phase(idx.dp, xiv[k]);
    }
    const double z_tau_exp = idx.s / 3.0 + 0.5 - idx.sigma;
    for (std::size_t m = 0; m < sp.nt; ++m) {
        const double tau = sp.tau(m);
        const double lam_bound = std::log(3.0 + std::abs(tau));
        const double tauw = want_z ? upow(1.0 + tau * tau, z_tau_exp) : 0.0;
        const bool tau_tail = std::abs(tau) >= 0.875 * tau_nyq;
        for (std::size_t k = 0; k < sp.nx; ++k) {
            const double a2 = std::norm(sp.values[m * sp.nx + k]);
            if (a2 == 0.0) continue;
            const double L = tau - phiv[k];
            const double oL = 1.0 + L * L;
            const double base = xiw[k] * upow(oL, idx.b) * a2 * cell;
            acc.xsb2 += base;
            acc.total2 += base;
            if (tau_tail || std::abs(xiv[k]) >= 0.875 * xi_nyq) acc.tail2 += base;
            if (want_lambda && std::abs(xiv[k]) <= lam_bound)
                acc.lambda2 += xiw[k] * upow(oL, idx.sigma) * a2 * cell;
            if (want_z) acc.z2 += tauw * upow(oL, idx.sigma - 1.0) * a2 * cell;
        }
    }
    return acc;
}

} // namespace

double xsb_norm(const FieldSpectrum& sp, const BourgainIndex& idx) {
    return std::sqrt(accumulate(sp, idx, false, false).xsb2);
}

double xsb_norm(const SpaceTimeField& w, const BourgainIndex& idx, bool check_tail) {
    if (!w.window) warn_unwindowed();
    NormAccum acc = accumulate(fourier_field(w), idx, false, false);
    if (check_tail && acc.total2 > 0.0 &&
        std::sqrt(acc.tail2) > 0.01 * std::sqrt(acc.total2))
        fail(ErrorCode::GridTooCoarse, "xsb_norm: spectral tail mass above 1%");
    return std::sqrt(acc.xsb2);
}

double lambda_norm(const FieldSpectrum& sp, const BourgainIndex& idx) {
    require(idx.sigma > 0.5, ErrorCode::SigmaTooSmall, "lambda_norm: sigma must exceed 1/2");
    return std::sqrt(accumulate(sp, idx, true, false).lambda2);
}

double lambda_norm(const SpaceTimeField& w, const BourgainIndex& idx) {
    if (!w.window) warn_unwindowed();
    return lambda_norm(fourier_field(w), idx);
}

double xsbsigma_norm(const FieldSpectrum& sp, const BourgainIndex& idx) {
    require(idx.sigma > 0.5, ErrorCode::SigmaTooSmall,
            "xsbsigma_norm: sigma must exceed 1/2");
    NormAccum acc = accumulate(sp, idx, true, false);
    return std::sqrt(acc.xsb2) + std::sqrt(acc.lambda2);
}

double xsbsigma_norm(const SpaceTimeField& w, const BourgainIndex& idx) {
    if (!w.window) warn_unwindowed();
    return xsbsigma_norm(fourier_field(w), idx);
}

double y_norm(const SpaceTimeField& w, const BourgainIndex& idx) {
    double sup_h = 0.0;
    for (std::size_t m = 0; m < w.nt; ++m)
        sup_h = std::max(sup_h, sobolev_norm_line(w.x_slice(m), idx.s, false));
    return xsbsigma_norm(w, idx) + sup_h;
}

double z_norm(const FieldSpectrum& sp, const BourgainIndex& idx) {
    require(idx.sigma > 0.5, ErrorCode::SigmaTooSmall, "z_norm: sigma must exceed 1/2");
    return std::sqrt(accumulate(sp, idx, false, true).z2);
}

double z_norm(const SpaceTimeField& w, const BourgainIndex& idx) {
    if (!w.window) warn_unwindowed();
    return z_norm(fourier_field(w), idx);
}

// ---------------- bilinear machinery ----------------

double sigma0_threshold(double s) {
    if (s <= -9.0 / 16.0) return 7.0 / 12.0 + s / 9.0;
    return std::min(1.0, (2.0 * s + 7.0) / 12.0);
}

namespace {

// Embed a base spectrum into a 2x finer (padded) bin layout.
void pad_spectrum(const FieldSpectrum& in, FieldSpectrum& out) {
    out.nx = 2 * in.nx;
    out.nt = 2 * in.nt;
    out.x_step = in.x_step / 2.0;
    out.t_step = in.t_step / 2.0;
    out.values.assign(out.nx * out.nt, cplx(0.0, 0.0));
    for (std::size_t m = 0; m < in.nt; ++m) {
        const std::size_t mm = (m < in.nt / 2) ? m : m + in.nt;
        for (std::size_t k = 0; k < in.nx; ++k) {
            const std::size_t kk = (k < in.nx / 2) ? k : k + in.nx;
            out.values[mm * out.nx + kk] = in.values[m * in.nx + k];
        }
    }
}

FieldSpectrum product_dx_impl(const SpaceTimeField& w1, const SpaceTimeField& w2,
                              double window_T) {
    w1.check_same_grid(w2);
    FieldSpectrum p1, p2;
    pad_spectrum(fourier_field(w1), p1);
    pad_spectrum(fourier_field(w2), p2);
    SpaceTimeField f1 = field_from_spectrum(p1, w1.x_start, w1.t_start);
    SpaceTimeField f2 = field_from_spectrum(p2, w1.x_start, w1.t_start);
    for (std::size_t i = 0; i < f1.values.size(); ++i) f1.values[i] *= f2.values[i];
    if (window_T > 0.0) {
        for (std::size_t m = 0; m < f1.nt; ++m) {
            const double e = kernels::bump_eta(f1.t(m) / window_T);
            for (std::size_t k = 0; k < f1.nx; ++k) f1.values[m * f1.nx + k] *= e;
        }
    }
    FieldSpectrum prod = fourier_field(f1);
    for (std::size_t m = 0; m < prod.nt; ++m)
        for (std::size_t k = 0; k < prod.nx; ++k)
            prod.values[m * prod.nx + k] *= cplx(0.0, prod.xi(k));
    return prod;
}

} // namespace

FieldSpectrum product_dx_spectrum(const SpaceTimeField& w1, const SpaceTimeField& w2) {
    return product_dx_impl(w1, w2, 0.0);
}

double bilinear_ratio(const SpaceTimeField& w1, const SpaceTimeField& w2, Pairing pairing,
                      const DispersionPair& dp, double s, double sigma) {
    const double s0 = sigma0_threshold(s);
    require(sigma > 0.5 && sigma <= s0 + 1e-12, ErrorCode::SigmaOutOfRange,
            "bilinear_ratio: sigma outside (1/2, sigma0(s)]");
    const DispersionPair dn = dp.negated();
    DispersionPair dp1 = dp, dp2 = dp, tgt = dp;
    switch (pairing) {
        case Pairing::gc: break;
        case Pairing::d1: tgt = dn; break;
        case Pairing::d2: dp2 = dn; break;
    }
    const double n1 = xsbsigma_norm(fourier_field(w1), BourgainIndex{s, 0.5, sigma, dp1});
    const double n2 = xsbsigma_norm(fourier_field(w2), BourgainIndex{s, 0.5, sigma, dp2});
    require(n1 >= 1e-12 && n2 >= 1e-12, ErrorCode::ZeroDenominator,
            "bilinear_ratio: input norm below 1e-12");
    const FieldSpectrum num = product_dx_spectrum(w1, w2);
    const BourgainIndex tgt_idx{s, sigma - 1.0, sigma, tgt};
    const double nx = xsb_norm(num, tgt_idx);
    const double nz = z_norm(num, tgt_idx);
    return std::max(nx, nz) / (n1 * n2);
}

double smoothing_eps0(double s1) { return 1.0 / 16.0 - (-s1) / 12.0; }

double smoothing_ratio(const SpaceTimeField& w1, const SpaceTimeField& w2, double s1,
                       double s2, double T, double sigma, const DispersionPair& dp) {
    require(s1 > -0.75 && s1 < s2 && s2 <= 3.0, ErrorCode::InvalidArgument,
            "smoothing_ratio: need -3/4 < s1 < s2 <= 3");
    require(T > 0.0 && T <= 1.0, ErrorCode::InvalidArgument,
            "smoothing_ratio: need 0 < T <= 1");
    const double eps0 = smoothing_eps0(s1);
    require(eps0 > 0.0, ErrorCode::InvalidArgument, "smoothing_ratio: eps0 <= 0");
    require(sigma > 0.5 && sigma <= 0.5 + eps0 + 1e-12, ErrorCode::SigmaOutOfRange,
            "smoothing_ratio: sigma outside (1/2, 1/2+eps0]");
    const DispersionPair dn = dp.negated();
    const FieldSpectrum sp1 = fourier_field(w1);
    const FieldSpectrum sp2 = fourier_field(w2);
    const double a11 = xsbsigma_norm(sp1, BourgainIndex{s1, 0.5, sigma, dp});
    const double a12 = xsbsigma_norm(sp1, BourgainIndex{s2, 0.5, sigma, dp});
    const double a21 = xsbsigma_norm(sp2, BourgainIndex{s1, 0.5, sigma, dn});
    const double a22 = xsbsigma_norm(sp2, BourgainIndex{s2, 0.5, sigma, dn});
    const double denom = a11 * a22 + a12 * a21;
    require(denom >= 1e-12, ErrorCode::ZeroDenominator,
            "smoothing_ratio: input norms below 1e-12");
    const FieldSpectrum num = product_dx_impl(w1, w2, T);
    const double nval = xsb_norm(num, BourgainIndex{s2, sigma - 1.0, sigma, dp});
    return nval / (std::pow(T, eps0) * denom);
}

} // namespace kdv2::spaces

namespace kdv2 {
void apply_time_window(SpaceTimeField& w, double T) {
    spaces::apply_time_window_impl(w, T);
}
} // namespace kdv2
