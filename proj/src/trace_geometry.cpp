#include "chdecomp/trace_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace chd {

cplx tau_param(cplx a1, cplx a2, double t) {
    const cplx i1 = 1.0 / (a1 * a1), i2 = 1.0 / (a2 * a2);
    return a1 * a2 + i1 * a2 + a1 * i2 + (i1 - a1) * (i2 - a2) * t;
}

TangentLine::TangentLine(cplx alpha_) : alpha(alpha_ / std::abs(alpha_)) {
    tangency = 2.0 * alpha + 1.0 / (alpha * alpha);
    direction = std::polar(1.0, -std::arg(alpha) / 2.0);
}

double line_offset(cplx tau, cplx alpha) {
    TangentLine l(alpha);
    return ((tau - l.tangency) / l.direction).imag();
}

bool line_contains(cplx tau, cplx alpha) {
    return std::abs(line_offset(tau, alpha)) <= 1e-8 * (1.0 + std::abs(tau));
}

double line_parameter(cplx a1, cplx a2, cplx tau) {
    const cplx slope = (1.0 / (a1 * a1) - a1) * (1.0 / (a2 * a2) - a2);
    return ((tau - tau_param(a1, a2, 0.0)) / slope).real();
}

std::vector<cplx> lines_through(cplx tau) {
    auto roots = cubic_roots(-tau, std::conj(tau), cplx(-1, 0));
    std::vector<cplx> out;
    for (auto r : roots) {
        if (std::abs(std::abs(r) - 1.0) > 1e-6) continue;
        r /= std::abs(r);
        bool dup = false;
        for (auto& o : out)
            if (std::abs(o - r) < 1e-6) { dup = true; break; }
        if (!dup) out.push_back(r);
    }
    return out;
}

cplx kappa(const Parameter& alpha, cplx tau) {
    const cplx c = 1.0 / (alpha.value * alpha.value) - alpha.value;
    return (tau - 3.0) / (c * c * c);
}

double chi_of(cplx alpha) {
    return (alpha / (1.0 / (alpha * alpha) - alpha)).imag();
}

std::pair<double, double> t_plus_minus(cplx a1, cplx a2) {
    const double c1 = chi_of(a1), c2 = chi_of(a2);
    const double disc = std::sqrt((1.0 + 4.0 * c1 * c1) * (1.0 + 4.0 * c2 * c2));
    return {(1.0 + 4.0 * c1 * c2 - disc) / 2.0, (1.0 + 4.0 * c1 * c2 + disc) / 2.0};
}

BoundaryTraces boundary_traces(double a1, double a2) {
    const double s = a1 + a2;
    BoundaryTraces bt;
    bt.A = 2.0 * std::polar(1.0, -s / 2.0) + std::polar(1.0, s);
    bt.B = std::polar(1.0, s) + std::polar(1.0, -2.0 * a1 + a2) + std::polar(1.0, a1 - 2.0 * a2);
    bt.C = 2.0 * std::polar(1.0, s) + std::polar(1.0, -2.0 * s);
    bt.D = -2.0 * std::polar(1.0, -s / 2.0) + std::polar(1.0, s);
    return bt;
}

} // namespace chd
