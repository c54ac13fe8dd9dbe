#include "kdv2/quadrature.hpp"

#include <cmath>
#include <cstdlib>

#include "kdv2/errors.hpp"

namespace kdv2::quad {

namespace {

// Kronrod-15 abscissae/weights on [-1,1] plus embedded Gauss-7 weights.
const double xk[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898,  0.0,                0.207784955007898,
     0.405845151377397,  0.586087235467691,  0.741531185599394,
     0.864864423359769,  0.949107912342759,  0.991455371120813};
const double wk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
const double wg[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct Panel {
    double a, b;
    int depth;
};

void gk15(const std::function<double(double)>& f, double a, double b,
          double& result, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double rk = 0.0, rg = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double v = f(c + h * xk[i]);
        rk += wk[i] * v;
        if (i % 2 == 1) rg += wg[i / 2] * v;
    }
    result = rk * h;
    err = std::abs((rk - rg) * h);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    double total = 0.0;
    std::vector<Panel> stack{{a, b, 0}};
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double r, e;
        gk15(f, p.a, p.b, r, e);
        // Per-panel budget scaled by panel fraction of the whole interval.
        const double budget = abs_tol * std::abs(p.b - p.a) / std::abs(b - a);
        if (e <= budget || p.depth >= max_depth) {
            total += r;
        } else {
            const double m = 0.5 * (p.a + p.b);
            stack.push_back({p.a, m, p.depth + 1});
            stack.push_back({m, p.b, p.depth + 1});
        }
    }
    return total;
}

double integrate_line(const std::function<double(double)>& f, double abs_tol) {
    auto g = [&f](double t) {
        const double d = 1.0 - t * t;
        const double x = t / d;
        const double jac = (1.0 + t * t) / (d * d);
        const double v = f(x);
        return std::isfinite(v) ? v * jac : 0.0;
    };
    return integrate(g, -1.0 + 1e-14, 1.0 - 1e-14, abs_tol);
}

namespace {
// Gauss-Legendre nodes on [-1,1].
const double gl8x[8] = {
    -0.960289856497536, -0.796666477413627, -0.525532409916329,
    -0.183434642495650,  0.183434642495650,  0.525532409916329,
     0.796666477413627,  0.960289856497536};
const double gl8w[8] = {
    0.101228536290376, 0.222381034453374, 0.313706645877887,
    0.362683783378362, 0.362683783378362, 0.313706645877887,
    0.222381034453374, 0.101228536290376};
const double gl12x[12] = {
    -0.981560634246719, -0.904117256370475, -0.769902674194305,
    -0.587317954286617, -0.367831498998180, -0.125233408511469,
     0.125233408511469,  0.367831498998180,  0.587317954286617,
     0.769902674194305,  0.904117256370475,  0.981560634246719};
const double gl12w[12] = {
    0.047175336386512, 0.106939325995318, 0.160078328543346,
    0.203167426723066, 0.233492536538355, 0.249147045813403,
    0.249147045813403, 0.233492536538355, 0.203167426723066,
    0.160078328543346, 0.106939325995318, 0.047175336386512};
const double gl16x[16] = {
    -0.989400934991650, -0.944575023073233, -0.865631202387832,
    -0.755404408355003, -0.617876244402644, -0.458016777657227,
    -0.281603550779259, -0.095012509837637,  0.095012509837637,
     0.281603550779259,  0.458016777657227,  0.617876244402644,
     0.755404408355003,  0.865631202387832,  0.944575023073233,
     0.989400934991650};
const double gl16w[16] = {
    0.027152459411754, 0.062253523938648, 0.095158511682493,
    0.124628971255534, 0.149595988816577, 0.169156519395003,
    0.182603415044924, 0.189450610455069, 0.189450610455069,
    0.182603415044924, 0.169156519395003, 0.149595988816577,
    0.124628971255534, 0.095158511682493, 0.062253523938648,
    0.027152459411754};
} // namespace

void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights) {
    const double* x = nullptr;
    const double* w = nullptr;
    switch (n) {
        case 8:  x = gl8x;  w = gl8w;  break;
        case 12: x = gl12x; w = gl12w; break;
        case 16: x = gl16x; w = gl16w; break;
        default:
            fail(ErrorCode::InvalidArgument, "gauss_legendre: order must be 8, 12 or 16");
    }
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = c + h * x[i];
        weights[i] = h * w[i];
    }
}

} // namespace kdv2::quad
