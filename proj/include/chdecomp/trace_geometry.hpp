#pragma once

#include <vector>

#include "chdecomp/isometry.hpp"

namespace chd {

// Eq. (2): a1 a2 + a1^{-2} a2 + a1 a2^{-2} + (a1^{-2}-a1)(a2^{-2}-a2) t
cplx tau_param(cplx a1, cplx a2, double t);

// The line of traces of isometries with unitary eigenvalue alpha; tangent to the
// deltoid at 2 alpha + alpha^{-2}.
struct TangentLine {
    cplx alpha;
    cplx tangency;
    cplx direction; // e^{-ia/2}, real-spans the line

    explicit TangentLine(cplx alpha_);
};

// tau on ell_alpha within 1e-8 * (1 + |tau|)
bool line_contains(cplx tau, cplx alpha);

// signed offset of tau from ell_alpha (imag part against the direction)
double line_offset(cplx tau, cplx alpha);

// parameter t with tau_param(a1, a2, t) = tau, when tau lies on ell_{a1 a2}
double line_parameter(cplx a1, cplx a2, cplx tau);

// labels of the tangent lines through tau: 3 inside, 2 on the boundary (1 at cusps),
// 1 outside (the unique unitary eigenvalue)
std::vector<cplx> lines_through(cplx tau);

// kappa_alpha(tau) = (tau - 3)/(alpha^{-2} - alpha)^3
cplx kappa(const Parameter& alpha, cplx tau);

// chi = Im(alpha / (alpha^{-2} - alpha))
double chi_of(cplx alpha);

// t_- <= 0 < 1 <= t_+ with tau_param(a1,a2,t_pm) on the deltoid boundary
std::pair<double, double> t_plus_minus(cplx a1, cplx a2);

struct BoundaryTraces {
    cplx A, B, C, D; // values at t_-, 0, 1, t_+
};

// a1, a2 are the parameter angles themselves (the half-angle in A and D depends on
// the angles, not just on the unit values)
BoundaryTraces boundary_traces(double a1, double a2);

} // namespace chd
