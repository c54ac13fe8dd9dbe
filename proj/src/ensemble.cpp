#include "kdv2/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "kdv2/fft.hpp"

namespace kdv2::spaces {

double RatioStats::quantile(double q) const {
    if (ratios.empty()) return 0.0;
    std::vector<double> s = ratios;
    std::sort(s.begin(), s.end());
    const double pos = q * double(s.size() - 1);
    const std::size_t lo = std::size_t(pos);
    const std::size_t hi = std::min(lo + 1, s.size() - 1);
    return s[lo] + (pos - double(lo)) * (s[hi] - s[lo]);
}

namespace {

// Content caps keep both the fields and their pointwise products below the
// padded-grid Nyquist frequencies.
struct Caps {
    double xi_max;  // |xi| content bound for one field
    double tau_max; // |tau| content bound for one field
};

Caps caps_for(const EnsembleConfig& cfg) {
    const double xi_nyq = pi * double(cfg.nx) / cfg.Lx;
    const double tau_nyq = pi * double(cfg.nt) / cfg.Tg;
    return {0.8 * xi_nyq, 0.8 * tau_nyq};
}

SpaceTimeField blank(const EnsembleConfig& cfg) {
    return make_field(cfg.nx, -cfg.Lx / 2.0, cfg.Lx / double(cfg.nx), cfg.nt,
                      -cfg.Tg / 2.0, cfg.Tg / double(cfg.nt));
}

// separable modulated Gaussian g(x) e^{i xi0 x} h(t) e^{i tau0 t}
SpaceTimeField separable_field(Rng& rng, const EnsembleConfig& cfg) {
    SpaceTimeField w = blank(cfg);
    const Caps cap = caps_for(cfg);
    const double sx = rng.uniform(0.5, 4.0);
    const double st = rng.uniform(0.5, 4.0);
    const double xi_cap = std::max(1.0, cap.xi_max - 7.0 / sx);
    const double tau_cap = std::max(1.0, cap.tau_max - 7.0 / st);
    const double xi0 = rng.uniform(-xi_cap, xi_cap);
    const double tau0 = rng.uniform(-tau_cap, tau_cap);
    const double x1 = rng.uniform(-4.0, 4.0);
    const double t1 = rng.uniform(-2.0, 2.0);
    std::vector<cplx> gx(w.nx), gt(w.nt);
    for (std::size_t k = 0; k < w.nx; ++k) {
        const double x = w.x(k);
        gx[k] = std::exp(cplx(-std::pow((x - x1) / sx, 2.0), xi0 * x));
    }
    for (std::size_t m = 0; m < w.nt; ++m) {
        const double t = w.t(m);
        gt[m] = std::exp(cplx(-std::pow((t - t1) / st, 2.0), tau0 * t));
    }
    for (std::size_t m = 0; m < w.nt; ++m)
        for (std::size_t k = 0; k < w.nx; ++k) w.values[m * w.nx + k] = gt[m] * gx[k];
    w.window = TimeWindow{st};
    return w;
}

// Gaussian packet flowed by the group e^{i phi(xi) t}, then time-localized:
// concentrates near tau = phi(xi).
SpaceTimeField free_wave_field(Rng& rng, const EnsembleConfig& cfg,
                               const DispersionPair& dp) {
    SpaceTimeField w = blank(cfg);
    const Caps cap = caps_for(cfg);
    const double st = rng.uniform(0.5, 2.0);
    // |phi(xi)| + temporal spread must stay below the tau cap
    const double phi_budget = std::max(1.0, cap.tau_max - 7.0 / st);
    double xi_free = std::cbrt(phi_budget / std::abs(dp.alpha));
    xi_free = std::min(xi_free, cap.xi_max);
    const double sx = rng.uniform(0.8, 4.0);
    const double xi_cap = std::max(0.5, std::min(xi_free - 7.0 / sx, xi_free * 0.8));
    const double xi0 = rng.uniform(-xi_cap, xi_cap);
    const double x1 = rng.uniform(-4.0, 4.0);

    std::vector<cplx> ghat(w.nx);
    for (std::size_t k = 0; k < w.nx; ++k) {
        const double xi = fft::bin_freq(k, w.nx, w.x_step);
        const double arg = (xi - xi0) * sx / 2.0;
        if (std::abs(xi) > xi_free || arg * arg > 40.0) {
            ghat[k] = 0.0;
        } else {
            ghat[k] = std::exp(cplx(-arg * arg, -xi * x1));
        }
    }
    std::vector<cplx> row(w.nx);
    for (std::size_t m = 0; m < w.nt; ++m) {
        const double t = w.t(m);
        const double env = std::exp(-std::pow(t / st, 2.0));
        for (std::size_t k = 0; k < w.nx; ++k) {
            const double xi = fft::bin_freq(k, w.nx, w.x_step);
            row[k] = ghat[k] * std::exp(cplx(0.0, kernels::phase(dp, xi) * t));
        }
        fft::inverse(row);
        // inverse() includes 1/n; undo to keep O(1) amplitudes
        const double scale = env * double(w.nx);
        for (std::size_t k = 0; k < w.nx; ++k) {
            // samples correspond to x_start-based grid via the DFT phase
            w.values[m * w.nx + k] = row[k] * scale;
        }
    }
    w.window = TimeWindow{st};
    return w;
}

std::uint64_t child_seed(std::uint64_t seed, std::size_t i) {
    return seed + 0x9E3779B97F4A7C15ull * (i + 1);
}

} // namespace

SpaceTimeField random_field(Rng& rng, const EnsembleConfig& cfg,
                            const DispersionPair& slot_dp) {
    const double pick = rng.uniform(0.0, 1.0);
    if (pick < 0.5) return separable_field(rng, cfg);
    return free_wave_field(rng, cfg, slot_dp);
}

RatioStats bilinear_ensemble(Pairing pairing, double s, double sigma,
                             const EnsembleConfig& cfg) {
    const DispersionPair dp(1.0, cfg.beta);
    const DispersionPair dn = dp.negated();
    DispersionPair dp1 = dp, dp2 = dp;
    if (pairing == Pairing::d2) dp2 = dn;
    RatioStats stats;
    stats.ratios.resize(cfg.n_samples);
    for (std::size_t i = 0; i < cfg.n_samples; ++i) {
        Rng rng(child_seed(cfg.seed, i));
        const SpaceTimeField w1 = random_field(rng, cfg, dp1);
        const SpaceTimeField w2 = random_field(rng, cfg, dp2);
        stats.ratios[i] = bilinear_ratio(w1, w2, pairing, dp, s, sigma);
    }
    stats.max_ratio = *std::max_element(stats.ratios.begin(), stats.ratios.end());
    return stats;
}

std::vector<double> localization_max_ratios(const std::vector<double>& Ts, double s,
                                            double b1, double b2,
                                            const EnsembleConfig& cfg) {
    const DispersionPair dp(1.0, cfg.beta);
    std::vector<double> out(Ts.size(), 0.0);
    for (std::size_t i = 0; i < cfg.n_samples; ++i) {
        Rng rng(child_seed(cfg.seed, i));
        const SpaceTimeField w = random_field(rng, cfg, dp);
        const double denom = xsb_norm(w, spaces::BourgainIndex{s, b2, 0.55, dp}, false);
        if (denom < 1e-12) continue;
        for (std::size_t j = 0; j < Ts.size(); ++j) {
            SpaceTimeField wl = w;
            for (std::size_t m = 0; m < wl.nt; ++m) {
                const double e = kernels::bump_eta(wl.t(m) / Ts[j]);
                for (std::size_t k = 0; k < wl.nx; ++k) wl.values[m * wl.nx + k] *= e;
            }
            const double num = xsb_norm(wl, spaces::BourgainIndex{s, b1, 0.55, dp}, false);
            out[j] = std::max(out[j], num / denom);
        }
    }
    return out;
}

RatioStats smoothing_ensemble(double s1, double s2, double T, double sigma,
                              const EnsembleConfig& cfg) {
    const DispersionPair dp(1.0, cfg.beta);
    RatioStats stats;
    stats.ratios.resize(cfg.n_samples);
    for (std::size_t i = 0; i < cfg.n_samples; ++i) {
        Rng rng(child_seed(cfg.seed, i));
        const SpaceTimeField w1 = random_field(rng, cfg, dp);
        const SpaceTimeField w2 = random_field(rng, cfg, dp.negated());
        stats.ratios[i] = smoothing_ratio(w1, w2, s1, s2, T, sigma, dp);
    }
    stats.max_ratio = *std::max_element(stats.ratios.begin(), stats.ratios.end());
    return stats;
}

} // namespace kdv2::spaces
