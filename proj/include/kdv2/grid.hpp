#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "kdv2/errors.hpp"
#include "kdv2/util.hpp"

namespace kdv2 {

enum class Axis { space, time };

/// Complex samples of a function on a uniform 1-D grid.
struct SampledFunction1D {
    std::vector<cplx> values;
    double grid_start = 0.0;
    double grid_step = 1.0;
    Axis axis = Axis::space;

    std::size_t size() const { return values.size(); }
    double coord(std::size_t i) const { return grid_start + double(i) * grid_step; }
    double length() const { return double(size()) * grid_step; }

    double l2_norm() const;
    double sup_norm() const;
};

SampledFunction1D sample_function(const std::function<cplx(double)>& f,
                                  double start, double step, std::size_t n,
                                  Axis axis = Axis::space);

/// Real boundary signal h(t) on a uniform t-grid.
struct TimeSignal {
    std::vector<double> values;
    double t_start = 0.0;
    double t_step = 1.0;
    bool is_zero_extended = false;

    std::size_t size() const { return values.size(); }
    double t(std::size_t i) const { return t_start + double(i) * t_step; }
    double sup_norm() const;
    double value_at_zero() const;

    SampledFunction1D as_function() const;
};

TimeSignal sample_signal(const std::function<double(double)>& h,
                         double start, double step, std::size_t n);

/// Record that eta(t/T) has been applied.
struct TimeWindow {
    double T = 1.0;
};

/// u(x,t) on a tensor grid, row-major in t: values[it*nx + ix].
struct SpaceTimeField {
    std::vector<cplx> values;
    std::size_t nx = 0, nt = 0;
    double x_start = 0.0, x_step = 1.0;
    double t_start = 0.0, t_step = 1.0;
    std::optional<TimeWindow> window;

    cplx& at(std::size_t ix, std::size_t it) { return values[it * nx + ix]; }
    const cplx& at(std::size_t ix, std::size_t it) const { return values[it * nx + ix]; }
    double x(std::size_t ix) const { return x_start + double(ix) * x_step; }
    double t(std::size_t it) const { return t_start + double(it) * t_step; }

    SampledFunction1D x_slice(std::size_t it) const;
    void check_same_grid(const SpaceTimeField& o) const;
};

SpaceTimeField make_field(std::size_t nx, double x_start, double x_step,
                          std::size_t nt, double t_start, double t_step);

/// Pointwise eta(t/T); records the window.
void apply_time_window(SpaceTimeField& w, double T);

/// Trigonometric (periodic sinc) interpolation of uniform samples at x.
cplx periodic_interp(const SampledFunction1D& f, double x);

/// Cubic Lagrange interpolation on the sample grid; zero outside.
cplx cubic_interp(const SampledFunction1D& f, double x);

} // namespace kdv2
