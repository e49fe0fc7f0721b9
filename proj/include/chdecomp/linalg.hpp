#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace chd {

using cplx = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3cd;

inline const Mat3& form_matrix() {
    static const Mat3 J = (Mat3() << 1, 0, 0, 0, 1, 0, 0, 0, -1).finished();
    return J;
}

// <x,y> = x1 conj(y1) + x2 conj(y2) - x3 conj(y3) = y^dag J x
inline cplx herm(const Vec3& x, const Vec3& y) { return y.dot(form_matrix() * x); }

inline cplx omega_pow(int k) {
    static const cplx w = std::polar(1.0, 2.0 * M_PI / 3.0);
    k %= 3; if (k < 0) k += 3;
    return k == 0 ? cplx(1, 0) : (k == 1 ? w : w * w);
}

// ||M^dag J M - J||, scale-free check that M preserves the form
inline double form_residual(const Mat3& m) {
    return (m.adjoint() * form_matrix() * m - form_matrix()).norm();
}

// bilinear cross product (Eigen's complex .cross() conjugates the result)
inline Vec3 cross_bilinear(const Vec3& a, const Vec3& b) {
    return Vec3(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
                a(0) * b(1) - a(1) * b(0));
}

// direction orthogonal (w.r.t. the form) to both arguments
inline Vec3 form_orthogonal(const Vec3& a, const Vec3& b) {
    return form_matrix() * cross_bilinear(a.conjugate(), b.conjugate());
}

// Roots of z^3 + a z^2 + b z + c, Cardano with a Newton polish step.
std::array<cplx, 3> cubic_roots(cplx a, cplx b, cplx c);

// Eigenvalues of a 3x3 via its characteristic cubic (deterministic; no iterative solver).
std::array<cplx, 3> eigenvalues3(const Mat3& m);

// Unit-norm kernel direction of (m - lambda I) via SVD.
Vec3 eigenvector3(const Mat3& m, cplx lambda);

// Numerical rank of m with singular values measured against max(top, floor_scale),
// so a matrix that is zero at the working scale has rank 0.
int rank3(const Mat3& m, double rel_gap = 1e-6, double floor_scale = 1.0);

} // namespace chd
