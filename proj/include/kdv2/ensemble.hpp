#pragma once

#include <cstdint>

#include "kdv2/spaces.hpp"

namespace kdv2::spaces {

/// Monte-Carlo field ensemble for the restriction-norm harness. Draws mix
/// separable modulated Gaussians with free-wave packets concentrated near
/// the characteristic surface tau = phi(xi).
struct EnsembleConfig {
    std::size_t nx = 256, nt = 512;
    double Lx = 32.0;  // x in [-Lx/2, Lx/2)
    double Tg = 16.0;  // t in [-Tg/2, Tg/2)
    double beta = 1.0;
    std::uint64_t seed = 7;
    std::size_t n_samples = 200;
};

struct RatioStats {
    double max_ratio = 0.0;
    std::vector<double> ratios; // per-sample values, in draw order
    double quantile(double q) const;
};

/// Random time-localized field whose spectrum respects the alias caps of
/// the configured grid. slot_dp selects the characteristic surface used by
/// free-wave draws.
SpaceTimeField random_field(Rng& rng, const EnsembleConfig& cfg,
                            const DispersionPair& slot_dp);

/// Empirical bilinear-estimate ratios for one pairing at (s, sigma).
RatioStats bilinear_ensemble(Pairing pairing, double s, double sigma,
                             const EnsembleConfig& cfg);

/// Empirical time-localization ratios ||eta(t/T) w||_{X_{s,b1}} / ||w||_{X_{s,b2}}
/// for each requested T.
std::vector<double> localization_max_ratios(const std::vector<double>& Ts, double s,
                                            double b1, double b2,
                                            const EnsembleConfig& cfg);

/// Empirical smoothing ratios over an ensemble (high-low frequency bound).
RatioStats smoothing_ensemble(double s1, double s2, double T, double sigma,
                              const EnsembleConfig& cfg);

} // namespace kdv2::spaces
