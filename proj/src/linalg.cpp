#include "chdecomp/linalg.hpp"

#include <cmath>

namespace chd {

std::array<cplx, 3> cubic_roots(cplx a, cplx b, cplx c) {
    // depressed cubic: z = t - a/3, t^3 + p t + q = 0
    const cplx p = b - a * a / 3.0;
    const cplx q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    std::array<cplx, 3> roots;
    const double scale = std::max({1.0, std::abs(p), std::abs(q)});
    if (std::abs(p) < 1e-14 * scale && std::abs(q) < 1e-14 * scale) {
        roots = {cplx(0), cplx(0), cplx(0)};
    } else {
        cplx disc = q * q / 4.0 + p * p * p / 27.0;
        cplx s = std::sqrt(disc);
        cplx u3 = -q / 2.0 + s;
        if (std::abs(u3) < std::abs(-q / 2.0 - s)) u3 = -q / 2.0 - s;
        cplx u = std::pow(u3, 1.0 / 3.0);
        const cplx w = std::polar(1.0, 2.0 * M_PI / 3.0);
        for (int k = 0; k < 3; ++k) {
            cplx uk = u * (k == 0 ? cplx(1) : (k == 1 ? w : w * w));
            roots[k] = uk - p / (3.0 * uk);
        }
    }
    for (auto& t : roots) {
        cplx z = t - a / 3.0;
        // Newton polish on the original cubic
        for (int it = 0; it < 3; ++it) {
            cplx f = ((z + a) * z + b) * z + c;
            cplx df = (3.0 * z + 2.0 * a) * z + b;
            if (std::abs(df) < 1e-300) break;
            cplx step = f / df;
            if (!(std::abs(step) < 1.0)) break; // repeated-root stall: keep Cardano value
            z -= step;
        }
        t = z;
    }
    return roots;
}

std::array<cplx, 3> eigenvalues3(const Mat3& m) {
    const cplx tr = m.trace();
    const cplx s2 = (tr * tr - (m * m).trace()) / 2.0;
    const cplx det = m.determinant();
    return cubic_roots(-tr, s2, -det);
}

Vec3 eigenvector3(const Mat3& m, cplx lambda) {
    Mat3 a = m - lambda * Mat3::Identity();
    Eigen::JacobiSVD<Mat3> svd(a, Eigen::ComputeFullV);
    return svd.matrixV().col(2);
}

int rank3(const Mat3& m, double rel_gap, double floor_scale) {
    Eigen::JacobiSVD<Mat3> svd(m);
    const auto& s = svd.singularValues();
    const double ref = std::max({s(0), floor_scale, 1e-300});
    int r = 0;
    for (int i = 0; i < 3; ++i)
        if (s(i) > rel_gap * ref) ++r;
    return r;
}

} // namespace chd
