#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "chdecomp/hermitian.hpp"
#include "chdecomp/rational.hpp"

namespace chd {

// Unit complex parameter alpha, not a cube root of unity.
struct Parameter {
    double a;    // angle in [0, 2pi)
    cplx value;  // e^{ia}
    std::optional<Rat> exact; // angle in units of pi, when known exactly

    explicit Parameter(double angle);
    explicit Parameter(cplx v);
    static Parameter from_pi_units(const Rat& r) {
        Parameter p(r.to_double() * M_PI);
        p.exact = rat_mod(r, Rat(2));
        return p;
    }

    cplx conj() const { return std::conj(value); }
};

// f(z) = |z|^4 - 8 Re(z^3) + 18 |z|^2 - 27; < 0 inside the deltoid, 0 on it, > 0 outside.
double deltoid_f(cplx z);

enum class IsoKind {
    identity,
    regular_elliptic,
    special_elliptic_neg,
    special_elliptic_pos,
    ellipto_parabolic,
    unipotent_2step,
    unipotent_3step,
    loxodromic,
};

std::string kind_name(IsoKind k, int orient = 0);

// Canonical conjugacy-class descriptor. Angle pairs are stored with
// 0 <= th2 <= th1 < 2pi; (th,0) is the representative of (th,0) ~ (2pi,th).
// orient is the screw/translation direction sign for the parabolic kinds
// (the paper's two 2-step classes; ellipto-parabolic splits the same way).
struct ClassKey {
    IsoKind kind = IsoKind::identity;
    double th1 = 0.0, th2 = 0.0;
    cplx lox_trace{0.0, 0.0};
    int orient = 0;
};

// Full classification record for one SU(2,1) element.
struct ClassInfo {
    ClassKey key;
    cplx trace;                 // of the matrix as given
    int canon_delta = 0;        // k with arg(trace(w^k m)) in [0, 2pi/3)
    double f_value = 0.0;       // deltoid_f at the canonical trace
    std::array<cplx, 3> eig{};  // eigenvalues of the canonical lift
    int neg_index = -1;         // negative-type eigenvalue index (semisimple kinds)
};

struct Isometry {
    Mat3 m;
    ClassInfo info;

    explicit Isometry(const Mat3& mat);
};

bool is_su21(const Mat3& m, double tol = 1e-9);

// Eq. (1): x -> (a^{-2} - a) <x,p>/<p,p> p + a x
Mat3 special_elliptic(const Parameter& alpha, const ProjectivePoint& p);

ClassInfo classify(const Mat3& m);

// Regular: all eigenspaces one-dimensional (not identity, special elliptic, 2-step).
bool is_regular(const ClassInfo& c);
bool is_regular(const Mat3& m);

// Canonical angle pair of an elliptic or ellipto-parabolic isometry.
std::pair<double, double> angle_pair(const Mat3& m);

// Canonical representative of an unordered angle pair mod 2pi.
std::pair<double, double> canonical_pair(double x, double y);

// Distance in the quotient T/~ ((th,0) ~ (2pi,th), vertex identified).
double pair_quotient_distance(std::pair<double, double> a, std::pair<double, double> b);

bool same_class(const ClassKey& a, const ClassKey& b, double tol = 1e-6);

// Rescale M (with M^dag J M = lambda J) to SU(2,1); returns the canonical lift
// (trace argument in [0, 2pi/3)) and the applied cube-root index.
std::pair<Mat3, int> normalize_lift(const Mat3& m);

// C in SU(2,1) with C F1 C^{-1} = delta F2 for some cube root delta; residual <= 1e-8.
Mat3 conjugator(const Mat3& f1, const Mat3& f2);

// min over cube roots delta of ||delta A - B||_F
double omega_distance(const Mat3& a, const Mat3& b, int* best = nullptr);

} // namespace chd
