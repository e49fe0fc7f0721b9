#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chdecomp/atlas.hpp"
#include "chdecomp/hermitian.hpp"
#include "chdecomp/isometry.hpp"

namespace chd {

// F ~ omega^delta_pow * R_alpha^{centers[n-1]} ... R_alpha^{centers[0]},
// residual = min over cube roots of the Frobenius distance.
struct Decomposition {
    int delta_pow = 0;
    Parameter alpha;
    std::vector<ProjectivePoint> centers;
    double residual = 0.0;
};

enum class DecompStatus { ok, not_decomposable, unknown, search_exhausted };

struct DecompResult {
    DecompStatus status = DecompStatus::not_decomposable;
    std::optional<Decomposition> dec;
    std::string note;

    bool ok() const { return status == DecompStatus::ok; }
};

// rebuild the product of special elliptic factors and certify against F
double certify_residual(const Mat3& F, const Parameter& alpha,
                        const std::vector<ProjectivePoint>& centers, int* delta = nullptr);

// ----- length 2 -------------------------------------------------------------------------

// One way to realize a class as R_{a2}^{p2} R_{a1}^{p1}; delta_pow is the cube-root lift
// of F whose trace the construction matches.
struct L2Witness {
    int delta_pow = 0;
    int s1 = 0, s2 = 0;
    double t = 0.0;
    bool same_center = false;    // t = 1 realized with p1 = p2
    bool change_signs = false;   // apply the in-line orthogonal flip after building
};

// All candidate constructions for F as a product with parameters (a1, a2); empty when the
// class admits no such decomposition. Verified by construction and classification, so an
// endpoint of an E-set only matches when its endpoint class agrees with F's kind.
std::vector<L2Witness> length2_test(const ClassInfo& info, const Parameter& a1,
                                    const Parameter& a2);

// force_s1: when nonzero, keep only witnesses with that first-center signature.
DecompResult decompose2(const Mat3& F, const Parameter& a1, const Parameter& a2,
                        int force_s1 = 0);

// ----- length 3 -------------------------------------------------------------------------

struct SurfaceInstance {
    Parameter alpha;
    cplx tau;
    std::array<int, 3> sig;
    double chi, d1, d2, d3;
    double last_ineq; // sigma1 sigma2 sigma3 (2 Re kappa + 1)

    SurfaceInstance(const Parameter& alpha_, cplx tau_, std::array<int, 3> sig_);
};

// A point of the surface: the equation
//   t1^2 t2 + t1 t2^2 - 2 t1 t2 t + 2 Re(kappa) t1 t2 + d1 t^2 + d2 t + d3 = 0
// with the sign constraints; relax_last allows equality in the last inequality.
std::optional<std::array<double, 3>> surface_solve(const SurfaceInstance& inst, bool relax_last);

// Centers realizing a surface point: Gram reconstruction, trace comes out tau.
std::array<ProjectivePoint, 3> surface_points(const SurfaceInstance& inst,
                                              const std::array<double, 3>& t123);

DecompResult decompose3(const Mat3& F, const Parameter& alpha);

// ----- length 4 and the ladder ----------------------------------------------------------

DecompResult decompose4(const Mat3& F, const Parameter& alpha);

struct LengthResult {
    int n = 0;             // factors in the certificate
    bool exact = true;     // false only in the 2-step / alpha^3 not in ±Omega gap
    Decomposition dec;
};

LengthResult alpha_length(const Mat3& F, const Parameter& alpha);

// Simultaneous change of signs: the in-line orthogonal centers. For regular elliptic
// products the result has the same trace but a distinct class; distinct_class reports it.
std::pair<ProjectivePoint, ProjectivePoint> change_signs(const ProjectivePoint& p1,
                                                         const ProjectivePoint& p2,
                                                         const Parameter& a1,
                                                         const Parameter& a2,
                                                         bool* distinct_class = nullptr);

// Omega-normalized parameter: angle in (0, 2pi/3)
Parameter normalize_parameter(const Parameter& alpha, int* k = nullptr);

} // namespace chd
