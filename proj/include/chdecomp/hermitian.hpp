#pragma once

#include <array>
#include <optional>
#include <utility>

#include "chdecomp/errors.hpp"
#include "chdecomp/linalg.hpp"

namespace chd {

// A point is isotropic when |<p,p>| <= iso_tol * (max coordinate)^2.
inline constexpr double iso_tol = 1e-9;

int signature_of(const Vec3& v);

// Point of PV with homogeneous representative and signature tag.
struct ProjectivePoint {
    Vec3 v;
    int sig;

    explicit ProjectivePoint(const Vec3& w) : v(w), sig(signature_of(w)) {}
};

cplx herm(const ProjectivePoint& x, const ProjectivePoint& y);

// <p1,p2><p2,p1> / (<p1,p1><p2,p2>); scale invariant, defined for nonisotropic points.
double tance(const ProjectivePoint& p1, const ProjectivePoint& p2);

enum class LineKind { hyperbolic, spherical, euclidean };

struct ComplexLine {
    ProjectivePoint polar;
    LineKind kind;
};

// Complex line through two projectively distinct points; kind from the polar signature,
// cross-checked against the tance thresholds (Sylvester).
ComplexLine line_through(const ProjectivePoint& p1, const ProjectivePoint& p2);

// The unique point of L orthogonal to p (p on L). Isotropic result is an error.
ProjectivePoint orthogonal_in_line(const ComplexLine& L, const ProjectivePoint& p);

// Whether a 2x2 Gram with diagonal (s1,s2) and tance t embeds in signature ++-.
bool pair_feasible(double t, int s1, int s2);

// Points with prescribed signatures and tance. For t = 1 with equal signs the pair is a
// distinct Euclidean-line pair, never a coincident one.
std::pair<ProjectivePoint, ProjectivePoint> pair_with_tance(double t, int s1, int s2);

// Factor a Hermitian Gram matrix against diag(1,1,-1): returns points p_i with
// <p_i,p_j> = G_ij, or throws Unrealizable when the signature does not embed.
std::array<ProjectivePoint, 3> points_from_gram(const Mat3& G);

// Triple with tance(p1,p2)=t1, tance(p2,p3)=t2 and Re(triple ratio) = t.
// The imaginary part of the triple ratio is the free phase (default 0).
std::array<ProjectivePoint, 3> triple_from_gram(double t1, double t2, double t,
                                                std::array<int, 3> s, double im = 0.0);

// Assemble the normalized Gram matrix for triple_from_gram without factoring it.
Mat3 gram_of_triple(double t1, double t2, double t, std::array<int, 3> s, double im);

} // namespace chd
