#include <doctest.h>

#include <cmath>

#include "kdv2/ensemble.hpp"
#include "kdv2/fft.hpp"
#include "kdv2/quadrature.hpp"
#include "kdv2/spaces.hpp"

using namespace kdv2;
using namespace kdv2::spaces;
using kernels::DispersionPair;

namespace {

SampledFunction1D gaussian_line(double width = 1.0, std::size_t n = 1024, double L = 40.0) {
    return sample_function(
        [width](double x) { return cplx(std::exp(-x * x / (width * width)), 0.0); },
        -L / 2.0, L / double(n), n);
}

} // namespace

TEST_SUITE_BEGIN("spaces");

TEST_CASE("Parseval: H^0 equals the grid L2 norm") {
    auto f = gaussian_line();
    const double h0 = sobolev_norm_line(f, 0.0);
    const double l2 = f.l2_norm();
    CHECK(h0 == doctest::Approx(l2).epsilon(1e-12));
}

TEST_CASE("Gaussian Sobolev norms against closed forms") {
    auto f = gaussian_line(1.0);
    // ||e^{-x^2}||_{L^2} = (pi/2)^{1/4}
    CHECK(sobolev_norm_line(f, 0.0) ==
          doctest::Approx(std::pow(pi / 2.0, 0.25)).epsilon(1e-10));

    // s=1: direct quadrature with the analytic transform (1/sqrt(2)) e^{-xi^2/4}
    const double oracle2 = quad::integrate(
        [](double xi) {
            const double fh2 = 0.5 * std::exp(-xi * xi / 2.0);
            return (1.0 + xi * xi) * fh2;
        },
        -60.0, 60.0, 1e-12);
    CHECK(sobolev_norm_line(f, 1.0) == doctest::Approx(std::sqrt(oracle2)).epsilon(1e-10));

    CHECK(sobolev_norm_line(sample_function([](double) { return cplx(0, 0); }, -20, 0.04,
                                            1024),
                            0.7) == 0.0);
}

TEST_CASE("Sobolev norm is nondecreasing in s") {
    auto f = sample_function(
        [](double x) { return cplx(std::exp(-x * x) * std::cos(3.0 * x), 0.0); }, -20.0,
        40.0 / 1024.0, 1024);
    double prev = 0.0;
    for (double s : {-0.7, -0.3, 0.0, 0.5, 1.0, 2.0, 3.0}) {
        const double v = sobolev_norm_line(f, s);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("GridTooCoarse triggers on under-resolved data") {
    // white-ish samples put ~uniform mass across the band
    Rng rng(3);
    auto f = sample_function([&rng](double) { return cplx(rng.normal(), 0.0); }, 0.0,
                             0.25, 256, Axis::space);
    f.grid_start = -32.0;
    CHECK_THROWS_AS(sobolev_norm_line(f, 1.0), Error);
}

TEST_CASE("reflection extension: smoothness and exactness") {
    const std::size_t n = 512;
    const double h = 20.0 / double(n);

    SUBCASE("zero stays zero") {
        auto z = sample_function([](double) { return cplx(0, 0); }, 0.0, h, n);
        auto e = extend_Es(z, 1.0);
        CHECK(e.sup_norm() == 0.0);
    }

    SUBCASE("C^3 matching for x e^{-x}") {
        auto f = sample_function([](double x) { return cplx(x * std::exp(-x), 0.0); },
                                 0.0, h, n);
        auto e = extend_Es(f, 2.0);
        const std::size_t n0 = n; // index of x = 0 in the extension
        // one-sided 4-point differences of orders 0..3 across the joint
        for (int order = 0; order <= 3; ++order) {
            auto deriv = [&](bool right) {
                const double sgn = right ? 1.0 : -1.0;
                auto v = [&](int j) {
                    return e.values[n0 + (right ? j : -j)].real();
                };
                switch (order) {
                    case 0: return v(0);
                    case 1:
                        return sgn * (-11.0 * v(0) + 18.0 * v(1) - 9.0 * v(2) +
                                      2.0 * v(3)) / (6.0 * h);
                    case 2:
                        return (2.0 * v(0) - 5.0 * v(1) + 4.0 * v(2) - v(3)) / (h * h);
                    default:
                        return sgn * (-v(0) + 3.0 * v(1) - 3.0 * v(2) + v(3)) /
                               (h * h * h);
                }
            };
            const double jump = std::abs(deriv(true) - deriv(false));
            CHECK(jump <= 60.0 * h); // O(dx) with a generous constant
        }
    }

    SUBCASE("interior-supported data extends by zero, restriction exact") {
        auto f = sample_function(
            [](double x) {
                const double u = x - 3.0;
                return cplx(x > 2.0 && x < 4.0 ? std::exp(-4.0 * u * u) : 0.0, 0.0);
            },
            0.0, h, n);
        auto e = extend_Es(f, 0.5);
        double left = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            left = std::max(left, std::abs(e.values[i]));
            CHECK(e.values[n + i] == f.values[i]); // right half verbatim
        }
        CHECK(left == 0.0); // support clears the collar, so exact zero padding
    }

    SUBCASE("rejects data not on the half line") {
        auto f = gaussian_line();
        CHECK_THROWS_AS(extend_Es(f, 0.0), Error);
        CHECK_THROWS_AS(extend_Es(sample_function([](double) { return cplx(1, 0); },
                                                  0.0, 0.1, 64),
                                  3.5),
                        Error);
    }
}

TEST_CASE("half-line Sobolev norm") {
    const std::size_t n = 512;
    const double h = 24.0 / double(n);

    SUBCASE("interior-supported data at s=0 equals the L2 norm") {
        auto f = sample_function(
            [](double x) {
                const double u = x - 2.0;
                return cplx(std::exp(-8.0 * u * u), 0.0);
            },
            0.0, h, n);
        for (std::size_t i = 0; i < 8; ++i) f.values[i] = 0.0;
        CHECK(sobolev_norm_halfline(f, 0.0) == doctest::Approx(f.l2_norm()).epsilon(1e-8));
    }

    SUBCASE("e^{-x} at s=1 is grid-stable") {
        auto coarse = sample_function([](double x) { return cplx(std::exp(-x), 0.0); },
                                      0.0, h, n);
        auto fine = sample_function([](double x) { return cplx(std::exp(-x), 0.0); },
                                    0.0, h / 2.0, 2 * n);
        const double a = sobolev_norm_halfline(coarse, 1.0);
        const double b = sobolev_norm_halfline(fine, 1.0);
        CHECK(std::abs(a - b) / b <= 0.005);
    }
}

TEST_CASE("zero extension of boundary signals") {
    const std::size_t n = 512;
    const double dt = 8.0 / double(n);

    SUBCASE("zero signal") {
        auto z = sample_signal([](double) { return 0.0; }, 0.0, dt, n);
        auto r = zero_extend(z, 0.0);
        CHECK(r.norm_line == 0.0);
        CHECK(r.extended.is_zero_extended);
    }

    SUBCASE("e^{-t} ratio is finite and grid-stable") {
        auto h1 = sample_signal([](double t) { return std::exp(-t); }, 0.0, dt, n);
        auto h2 = sample_signal([](double t) { return std::exp(-t); }, 0.0, dt / 2.0,
                                2 * n);
        auto r1 = zero_extend(h1, 0.0);
        auto r2 = zero_extend(h2, 0.0);
        const double q1 = r1.norm_line / r1.norm_halfline;
        const double q2 = r2.norm_line / r2.norm_halfline;
        CHECK(std::isfinite(q1));
        CHECK(q1 == doctest::Approx(q2).epsilon(0.05));
    }

    SUBCASE("trace condition for s > 1/2") {
        auto bad = sample_signal([](double t) { return 1.0 + t; }, 0.0, dt, n);
        CHECK_THROWS_AS(zero_extend(bad, 1.0), Error);
        auto ok = sample_signal([](double t) { return t * std::exp(-t); }, 0.0, dt, n);
        CHECK_NOTHROW(zero_extend(ok, 1.0));
    }

    SUBCASE("s = 1/2 refused") {
        auto h = sample_signal([](double t) { return t * std::exp(-t); }, 0.0, dt, n);
        CHECK_THROWS_AS(zero_extend(h, 0.5), Error);
    }
}

TEST_CASE("multiplier image norm") {
    const std::size_t n = 1024;
    const double dt = 16.0 / double(n);

    SUBCASE("zero multiplier") {
        auto f = sample_signal([](double t) { return std::exp(-t * t); }, 0.0, dt, n);
        CHECK(multiplier_image_norm([](double) { return cplx(0, 0); }, f, 1.0, 0.0) ==
              0.0);
    }

    SUBCASE("|P'|^{1/2} image recovers the L2 norm of modulated data") {
        // center frequency well above the fold |xi| <= 2 (beta/3)^{3/2}
        auto f = sample_signal(
            [](double t) {
                const double u = t - 6.0;
                return std::exp(-u * u) * std::cos(12.0 * t);
            },
            0.0, dt, n);
        const double beta = 1.0;
        const double got = multiplier_image_norm(
            [beta](double mu) {
                return cplx(std::sqrt(std::abs(kernels::p_poly_deriv(beta, mu))), 0.0);
            },
            f, beta, 0.0);
        const double want = f.as_function().l2_norm();
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }

    SUBCASE("left-mover first-slot multiplier obeys the growth envelope at s=0") {
        auto f = sample_signal(
            [](double t) { return std::exp(-(t - 3.0) * (t - 3.0)); }, 0.0, dt, n);
        auto M = [](double mu) {
            const cplx R = kernels::r_poly(1.0, mu);
            const cplx denom = R - cplx(0.0, 1.5 * mu);
            return kernels::p_poly_deriv(1.0, mu) * (R - cplx(0.0, 0.5 * mu)) / denom;
        };
        CHECK_NOTHROW(multiplier_image_norm(M, f, 1.0, 0.0));
    }

    SUBCASE("constant multiplier violates the envelope at the turning point") {
        auto f = sample_signal([](double t) { return std::exp(-t * t); }, 0.0, dt, n);
        CHECK_THROWS_AS(
            multiplier_image_norm([](double) { return cplx(1.0, 0.0); }, f, 1.0, 0.0),
            Error);
    }
}

namespace {

SpaceTimeField test_field(std::uint64_t seed = 5) {
    EnsembleConfig cfg;
    cfg.nx = 128;
    cfg.nt = 256;
    cfg.Lx = 32.0;
    cfg.Tg = 16.0;
    Rng rng(seed);
    return random_field(rng, cfg, DispersionPair(1.0, 1.0));
}

} // namespace

TEST_CASE("2-D Parseval and spectrum round trip") {
    auto w = test_field();
    auto sp = fourier_field(w);
    double phys = 0.0;
    for (auto& v : w.values) phys += std::norm(v);
    phys *= w.x_step * w.t_step;
    double spec = 0.0;
    for (auto& v : sp.values) spec += std::norm(v);
    spec *= sp.cell();
    CHECK(phys == doctest::Approx(spec).epsilon(1e-12));

    auto back = field_from_spectrum(sp, w.x_start, w.t_start);
    double err = 0.0;
    for (std::size_t i = 0; i < w.values.size(); ++i)
        err = std::max(err, std::abs(back.values[i] - w.values[i]));
    CHECK(err <= 1e-12 * w.x_slice(w.nt / 2).sup_norm() + 1e-13);
}

TEST_CASE("restriction norms: basic contracts") {
    DispersionPair dp(1.0, 1.0);

    SUBCASE("zero field gives zero for all five norms") {
        auto w = make_field(64, -8.0, 0.25, 64, -8.0, 0.25);
        w.window = TimeWindow{1.0};
        BourgainIndex idx{0.0, 0.5, 0.55, dp};
        CHECK(xsb_norm(w, idx) == 0.0);
        CHECK(lambda_norm(w, idx) == 0.0);
        CHECK(xsbsigma_norm(w, idx) == 0.0);
        CHECK(y_norm(w, idx) == 0.0);
        CHECK(z_norm(w, idx) == 0.0);
    }

    SUBCASE("sigma at or below 1/2 is rejected") {
        auto w = test_field();
        CHECK_THROWS_AS(lambda_norm(w, BourgainIndex{0.0, 0.5, 0.5, dp}), Error);
        CHECK_THROWS_AS(z_norm(w, BourgainIndex{0.0, 0.5, 0.49, dp}), Error);
    }

    SUBCASE("monotone in s and b") {
        auto w = test_field();
        auto sp = fourier_field(w);
        double prev = 0.0;
        for (double s : {-0.5, 0.0, 1.0, 2.0}) {
            const double v = xsb_norm(sp, BourgainIndex{s, 0.3, 0.55, dp});
            CHECK(v >= prev);
            prev = v;
        }
        prev = 0.0;
        for (double b : {-0.4, 0.0, 0.25, 0.5}) {
            const double v = xsb_norm(sp, BourgainIndex{0.0, b, 0.55, dp});
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("x-monochromatic separable field oracle") {
    const std::size_t nx = 128, nt = 256;
    auto w = make_field(nx, -16.0, 32.0 / double(nx), nt, -8.0, 16.0 / double(nt));
    const double xi0 = fft::bin_freq(10, nx, w.x_step); // exactly on a bin
    SampledFunction1D g;
    g.grid_start = w.t_start;
    g.grid_step = w.t_step;
    g.axis = Axis::time;
    g.values.resize(nt);
    for (std::size_t m = 0; m < nt; ++m) {
        const double t = w.t(m);
        g.values[m] = std::exp(-t * t) * kernels::bump_eta(t / 4.0);
        for (std::size_t k = 0; k < nx; ++k)
            w.values[m * nx + k] = g.values[m] * std::exp(cplx(0.0, xi0 * w.x(k)));
    }
    w.window = TimeWindow{4.0};
    for (double s : {-0.5, 0.0, 1.5}) {
        const double got = xsb_norm(w, BourgainIndex{s, 0.0, 0.55, DispersionPair(1, 1)});
        const double want = std::pow(1.0 + xi0 * xi0, s / 2.0) * g.l2_norm() *
                            std::sqrt(32.0); // l2 over x of |e^{i xi0 x}|^2 dx
        CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("modified-norm upper and lower bounds hold termwise") {
    DispersionPair dp(1.0, 0.5);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto w = test_field(seed);
        auto sp = fourier_field(w);
        for (double b : {-0.2, 0.2, 0.5}) {
            const double sigma = 0.6;
            if (b > sigma) continue;
            const double lhs = xsbsigma_norm(sp, BourgainIndex{0.0, b, sigma, dp});
            const double rhs = xsb_norm(sp, BourgainIndex{0.0, sigma, sigma, dp});
            CHECK(lhs <= 2.0 * rhs + 1e-12);
        }
        // lower bound: restrict the Lambda set to |xi| <= 1 by hand
        const BourgainIndex idx{0.0, 0.5, 0.6, dp};
        double l2_restricted = 0.0;
        const double cell = sp.cell();
        for (std::size_t m = 0; m < sp.nt; ++m) {
            const double tau = sp.tau(m);
            for (std::size_t k = 0; k < sp.nx; ++k) {
                const double xi = sp.xi(k);
                if (std::abs(xi) > 1.0) continue;
                const double L = tau - kernels::phase(dp, xi);
                l2_restricted += std::pow(1.0 + L * L, idx.sigma) *
                                 std::norm(sp.values[m * sp.nx + k]) * cell;
            }
        }
        CHECK(lambda_norm(sp, idx) + 1e-12 >= std::sqrt(l2_restricted));
    }
}

TEST_CASE("Z norm coincides with the flat-weight X norm when exponents cancel") {
    // s/3 + 1/2 - sigma = 0 at s = 0.3, sigma = 0.6; then Z carries
    // <tau>^0 <L>^{sigma-1}, i.e. the X_{0, sigma-1} weight.
    DispersionPair dp(1.0, 1.0);
    auto sp = fourier_field(test_field(9));
    const double z = z_norm(sp, BourgainIndex{0.3, 0.5, 0.6, dp});
    const double x = xsb_norm(sp, BourgainIndex{0.0, -0.4, 0.6, dp});
    CHECK(z == doctest::Approx(x).epsilon(1e-12));
}

TEST_CASE("free-wave fields satisfy the linear-flow norm bound empirically") {
    EnsembleConfig cfg;
    cfg.nx = 128;
    cfg.nt = 256;
    DispersionPair dp(1.0, 1.0);
    double max_ratio = 0.0;
    for (std::uint64_t i = 0; i < 8; ++i) {
        Rng rng(100 + i);
        auto w = random_field(rng, cfg, dp);
        const double num = xsbsigma_norm(w, BourgainIndex{0.0, 0.5, 0.55, dp});
        double h0 = 0.0;
        for (std::size_t m = 0; m < w.nt; ++m)
            h0 = std::max(h0, sobolev_norm_line(w.x_slice(m), 0.0, false));
        if (h0 > 1e-12) max_ratio = std::max(max_ratio, num / h0);
    }
    CHECK(max_ratio > 0.0);
    CHECK(std::isfinite(max_ratio));
}

TEST_CASE("bilinear ratio: contracts and invariances") {
    DispersionPair dp(1.0, 1.0);
    EnsembleConfig cfg;
    cfg.nx = 128;
    cfg.nt = 256;
    Rng rng(21);
    auto w1 = random_field(rng, cfg, dp);
    auto w2 = random_field(rng, cfg, dp.negated());

    SUBCASE("zero input raises ZeroDenominator") {
        auto z = make_field(cfg.nx, -16.0, 32.0 / 128.0, cfg.nt, -8.0, 16.0 / 256.0);
        z.window = TimeWindow{1.0};
        CHECK_THROWS_AS(bilinear_ratio(w1, z, Pairing::d2, dp, 0.0, 0.55), Error);
    }

    SUBCASE("sigma gate at s = -0.6 matches the threshold formula") {
        CHECK(sigma0_threshold(-0.6) == doctest::Approx(7.0 / 12.0 - 0.6 / 9.0));
        CHECK_NOTHROW(bilinear_ratio(w1, w2, Pairing::d2, dp, -0.6, 0.51));
        CHECK_THROWS_AS(bilinear_ratio(w1, w2, Pairing::d2, dp, -0.6, 0.53), Error);
    }

    SUBCASE("scaling invariance under (lambda w1, w2/lambda)") {
        const double r0 = bilinear_ratio(w1, w2, Pairing::d2, dp, 0.0, 0.55);
        auto w1s = w1;
        auto w2s = w2;
        for (auto& v : w1s.values) v *= 37.0;
        for (auto& v : w2s.values) v /= 37.0;
        const double r1 = bilinear_ratio(w1s, w2s, Pairing::d2, dp, 0.0, 0.55);
        CHECK(r0 == doctest::Approx(r1).epsilon(1e-12));
        CHECK(std::isfinite(r0));
    }

    SUBCASE("all three pairings produce finite ratios") {
        for (auto p : {Pairing::gc, Pairing::d1, Pairing::d2}) {
            const double r = bilinear_ratio(w1, w2, p, dp, 0.0, 0.55);
            CHECK(std::isfinite(r));
            CHECK(r > 0.0);
        }
    }
}

TEST_CASE("smoothing ratio behaves under time refinement") {
    DispersionPair dp(1.0, 1.0);
    EnsembleConfig cfg;
    cfg.nx = 128;
    cfg.nt = 256;
    Rng rng(33);
    auto w1 = random_field(rng, cfg, dp);
    auto w2 = random_field(rng, cfg, dp.negated());
    const double s1 = -0.25, s2 = 1.0;
    const double eps0 = smoothing_eps0(s1);
    CHECK(eps0 == doctest::Approx(1.0 / 16.0 - 0.25 / 12.0));
    const double sigma = 0.5 + 0.9 * eps0;
    const double r1 = smoothing_ratio(w1, w2, s1, s2, 1.0, sigma, dp);
    const double rhalf = smoothing_ratio(w1, w2, s1, s2, 0.5, sigma, dp);
    CHECK(std::isfinite(r1));
    CHECK(rhalf <= 2.0 * r1);

    CHECK_THROWS_AS(smoothing_ratio(w1, w2, 1.0, 1.0, 1.0, sigma, dp), Error);
}

TEST_CASE("localization ratios follow the T^{b2-b1} trend") {
    EnsembleConfig cfg;
    cfg.nx = 128;
    cfg.nt = 256;
    cfg.n_samples = 12;
    const std::vector<double> Ts{1.0, 0.5, 0.25};
    auto ratios = localization_max_ratios(Ts, 0.0, -0.4, 0.4, cfg);
    REQUIRE(ratios.size() == 3);
    std::vector<double> scaled(3);
    for (int i = 0; i < 3; ++i) scaled[i] = ratios[i] / std::pow(Ts[i], 0.8);
    const double lo = std::min({scaled[0], scaled[1], scaled[2]});
    const double hi = std::max({scaled[0], scaled[1], scaled[2]});
    CHECK(hi <= 2.0 * lo);
}

TEST_SUITE_END();
