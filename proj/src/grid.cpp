#include "kdv2/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace kdv2 {

unsigned thread_budget() {
    static unsigned budget = [] {
        if (const char* env = std::getenv("KDV2_THREADS")) {
            int v = std::atoi(env);
            if (v > 0) return unsigned(v);
        }
        unsigned hc = std::thread::hardware_concurrency();
        return hc ? std::min(hc, 8u) : 1u;
    }();
    return budget;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const unsigned k = std::min<std::size_t>(thread_budget(), n ? n : 1);
    if (k <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> workers;
    const std::size_t chunk = (n + k - 1) / k;
    for (unsigned i = 0; i < k; ++i) {
        const std::size_t b = i * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        workers.emplace_back(fn, b, e);
    }
    for (auto& w : workers) w.join();
}

double SampledFunction1D::l2_norm() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return std::sqrt(s * grid_step);
}

double SampledFunction1D::sup_norm() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

SampledFunction1D sample_function(const std::function<cplx(double)>& f,
                                  double start, double step, std::size_t n, Axis axis) {
    SampledFunction1D out;
    out.grid_start = start;
    out.grid_step = step;
    out.axis = axis;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = f(start + double(i) * step);
    return out;
}

double TimeSignal::sup_norm() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double TimeSignal::value_at_zero() const {
    // nearest sample to t = 0
    const double idx = -t_start / t_step;
    const long k = std::lround(idx);
    if (k < 0 || std::size_t(k) >= values.size()) return 0.0;
    return values[std::size_t(k)];
}

SampledFunction1D TimeSignal::as_function() const {
    SampledFunction1D out;
    out.grid_start = t_start;
    out.grid_step = t_step;
    out.axis = Axis::time;
    out.values.assign(values.begin(), values.end());
    return out;
}

TimeSignal sample_signal(const std::function<double(double)>& h,
                         double start, double step, std::size_t n) {
    TimeSignal out;
    out.t_start = start;
    out.t_step = step;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = h(start + double(i) * step);
    return out;
}

SampledFunction1D SpaceTimeField::x_slice(std::size_t it) const {
    SampledFunction1D out;
    out.grid_start = x_start;
    out.grid_step = x_step;
    out.axis = Axis::space;
    out.values.assign(values.begin() + it * nx, values.begin() + (it + 1) * nx);
    return out;
}

void SpaceTimeField::check_same_grid(const SpaceTimeField& o) const {
    const bool ok = nx == o.nx && nt == o.nt &&
                    std::abs(x_start - o.x_start) < 1e-12 &&
                    std::abs(x_step - o.x_step) < 1e-12 &&
                    std::abs(t_start - o.t_start) < 1e-12 &&
                    std::abs(t_step - o.t_step) < 1e-12;
    require(ok, ErrorCode::GridMismatch, "space-time fields on different grids");
}

SpaceTimeField make_field(std::size_t nx, double x_start, double x_step,
                          std::size_t nt, double t_start, double t_step) {
    SpaceTimeField f;
    f.nx = nx;
    f.nt = nt;
    f.x_start = x_start;
    f.x_step = x_step;
    f.t_start = t_start;
    f.t_step = t_step;
    f.values.assign(nx * nt, cplx(0.0, 0.0));
    return f;
}

cplx periodic_interp(const SampledFunction1D& f, double x) {
    const std::size_t n = f.size();
    const double L = f.length();
    double u = (x - f.grid_start) / L; // in units of the period
    u -= std::floor(u);
    // Dirichlet kernel sum; exact at grid nodes.
    const double j0 = u * double(n);
    const long jr = std::lround(j0);
    if (std::abs(j0 - double(jr)) < 1e-12) {
        return f.values[std::size_t(jr) % n];
    }
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double d = pi * (j0 - double(j)) / double(n);
        // D(d) = sin(n d)/(n tan d) for even n
        const double w = std::sin(double(n) * d) / (double(n) * std::tan(d));
        acc += f.values[j] * w;
    }
    return acc;
}

cplx cubic_interp(const SampledFunction1D& f, double x) {
    const std::size_t n = f.size();
    const double u = (x - f.grid_start) / f.grid_step;
    if (u < 0.0 || u > double(n - 1)) return cplx(0.0, 0.0);
    long i1 = long(std::floor(u));
    i1 = std::clamp<long>(i1, 1, long(n) - 3);
    const double s = u - double(i1);
    const cplx f0 = f.values[i1 - 1], f1 = f.values[i1], f2 = f.values[i1 + 1],
               f3 = f.values[i1 + 2];
    const double c0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double c1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    const double c2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
    const double c3 = (s + 1.0) * s * (s - 1.0) / 6.0;
    return c0 * f0 + c1 * f1 + c2 * f2 + c3 * f3;
}

} // namespace kdv2
