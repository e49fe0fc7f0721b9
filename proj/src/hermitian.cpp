#include "chdecomp/hermitian.hpp"

#include <cmath>

namespace chd {

int signature_of(const Vec3& v) {
    const double n = herm(v, v).real();
    const double scale = v.cwiseAbs().maxCoeff();
    if (std::abs(n) <= iso_tol * scale * scale) return 0;
    return n > 0 ? 1 : -1;
}

cplx herm(const ProjectivePoint& x, const ProjectivePoint& y) { return herm(x.v, y.v); }

double tance(const ProjectivePoint& p1, const ProjectivePoint& p2) {
    if (p1.sig == 0 || p2.sig == 0)
        throw IsotropicPoint("tance requires nonisotropic points");
    const cplx a = herm(p1, p2);
    return (a * std::conj(a)).real() / (herm(p1, p1).real() * herm(p2, p2).real());
}

ComplexLine line_through(const ProjectivePoint& p1, const ProjectivePoint& p2) {
    // polar = J^{-1} (conj(p1) x conj(p2)): orthogonal to both w.r.t. the form
    Vec3 c = cross_bilinear(p1.v.conjugate(), p2.v.conjugate());
    const double scale = p1.v.norm() * p2.v.norm();
    if (c.norm() <= 1e-12 * scale)
        throw CoincidentPoints("line_through: projectively equal points");
    Vec3 polar = form_matrix() * c; // J^{-1} = J
    ProjectivePoint pol(polar);
    LineKind kind = pol.sig > 0   ? LineKind::hyperbolic
                    : pol.sig < 0 ? LineKind::spherical
                                  : LineKind::euclidean;
    return ComplexLine{pol, kind};
}

ProjectivePoint orthogonal_in_line(const ComplexLine& L, const ProjectivePoint& p) {
    const double on = std::abs(herm(p.v, L.polar.v)) / (p.v.norm() * L.polar.v.norm());
    if (on > 1e-8)
        throw PointNotOnLine("orthogonal_in_line: point not on the line");
    // q orthogonal to both p and the polar
    Vec3 q = form_orthogonal(p.v, L.polar.v);
    if (q.norm() <= 1e-12 * p.v.norm() * L.polar.v.norm())
        throw DegenerateOrthogonal("orthogonal_in_line: degenerate configuration");
    ProjectivePoint out(q);
    if (out.sig == 0)
        throw DegenerateOrthogonal("orthogonal_in_line: isotropic orthogonal point");
    return out;
}

bool pair_feasible(double t, int s1, int s2) {
    if (s1 == 0 || s2 == 0) return false;
    if (s1 > 0 && s2 > 0) return t >= 0;
    if (s1 < 0 && s2 < 0) return t > 1;
    return t <= 0;
}

std::pair<ProjectivePoint, ProjectivePoint> pair_with_tance(double t, int s1, int s2) {
    if (!pair_feasible(t, s1, s2))
        throw Unrealizable("pair_with_tance: (t, signs) not realizable in signature ++-");
    Vec3 a, b;
    if (s1 > 0 && s2 > 0) {
        a = Vec3(1, 0, 0);
        if (std::abs(t - 1.0) < 1e-14) {
            b = Vec3(1, 1, 1); // distinct Euclidean pair
        } else if (t < 1.0) {
            b = Vec3(std::sqrt(t), std::sqrt(1 - t), 0);
        } else {
            b = Vec3(std::sqrt(t), 0, std::sqrt(t - 1));
        }
    } else if (s1 > 0 && s2 < 0) {
        a = Vec3(1, 0, 0);
        b = Vec3(std::sqrt(-t), 0, std::sqrt(1 - t));
    } else if (s1 < 0 && s2 > 0) {
        a = Vec3(std::sqrt(-t), 0, std::sqrt(1 - t));
        b = Vec3(1, 0, 0);
    } else {
        a = Vec3(0, 0, 1);
        b = Vec3(std::sqrt(t - 1), 0, std::sqrt(t));
    }
    return {ProjectivePoint(a), ProjectivePoint(b)};
}

std::array<ProjectivePoint, 3> points_from_gram(const Mat3& G) {
    // (V^dag J V)_{ij} = <v_j, v_i> = G_{ji}, so factor G^T.
    Eigen::SelfAdjointEigenSolver<Mat3> es(G.transpose());
    Eigen::Vector3d ew = es.eigenvalues();
    Mat3 U = es.eigenvectors();
    // order eigenvalues descending so signs line up with diag(1,1,-1)
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return ew(i) > ew(j); });
    Eigen::Vector3d d(ew(idx[0]), ew(idx[1]), ew(idx[2]));
    Mat3 Us;
    for (int i = 0; i < 3; ++i) Us.col(i) = U.col(idx[i]);
    const double scale = std::max(1.0, std::abs(d(0)));
    if (d(1) < -1e-9 * scale || d(2) > 1e-9 * scale || d(0) < -1e-9 * scale)
        throw Unrealizable("points_from_gram: signature does not embed in ++-");
    Mat3 V = d.cwiseAbs().cwiseSqrt().asDiagonal() * Us.adjoint();
    std::array<ProjectivePoint, 3> out = {ProjectivePoint(V.col(0)), ProjectivePoint(V.col(1)),
                                          ProjectivePoint(V.col(2))};
    for (const auto& p : out)
        if (p.v.norm() < 1e-12) throw Unrealizable("points_from_gram: zero column");
    return out;
}

Mat3 gram_of_triple(double t1, double t2, double t, std::array<int, 3> s, double im) {
    const auto [s1, s2, s3] = s;
    if (s1 == 0 || s2 == 0 || s3 == 0)
        throw Unrealizable("triple_from_gram: isotropic signature requested");
    if (t1 * s1 * s2 < 0 || t2 * s2 * s3 < 0)
        throw Unrealizable("triple_from_gram: tance incompatible with signs");
    const double g12 = std::sqrt(t1 * s1 * s2);
    const double g23 = std::sqrt(t2 * s2 * s3);
    cplx g31;
    if (g12 * g23 > 1e-14) {
        g31 = cplx(t, im) * double(s1 * s2 * s3) / (g12 * g23);
    } else {
        if (std::abs(t) > 1e-12 || std::abs(im) > 1e-12)
            throw Unrealizable("triple_from_gram: triple ratio fixed but a pair is orthogonal");
        g31 = 0.0;
    }
    Mat3 G;
    G << cplx(s1), cplx(g12), std::conj(g31),
         cplx(g12), cplx(s2), cplx(g23),
         g31, cplx(g23), cplx(s3);
    return G;
}

std::array<ProjectivePoint, 3> triple_from_gram(double t1, double t2, double t,
                                                std::array<int, 3> s, double im) {
    return points_from_gram(gram_of_triple(t1, t2, t, s, im));
}

} // namespace chd
