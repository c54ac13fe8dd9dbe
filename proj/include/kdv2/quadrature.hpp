#pragma once

#include <functional>
#include <vector>

#include "kdv2/util.hpp"

namespace kdv2::quad {

/// Adaptive Gauss-Kronrod (G7,K15) on [a,b] to absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-9, int max_depth = 48);

/// Integral over the whole real line via the rational map x = t/(1-t^2).
double integrate_line(const std::function<double(double)>& f, double abs_tol = 1e-9);

/// Nodes/weights of an n-point Gauss-Legendre rule on [a,b] (n in {8,12,16}).
void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights);

} // namespace kdv2::quad
