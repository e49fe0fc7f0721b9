#pragma once

#include <random>

#include "chdecomp/decomposer.hpp"

namespace chdtest {

using namespace chd;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240817ull);
    return gen;
}

inline double uni(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline cplx rand_cplx(double s = 1.0) {
    std::normal_distribution<double> d(0.0, s);
    return {d(rng()), d(rng())};
}

inline Vec3 rand_vec() { return Vec3(rand_cplx(), rand_cplx(), rand_cplx()); }

// random nonisotropic point, optionally of a requested signature; bounded away from
// the isotropic cone so special_elliptic stays well conditioned
inline ProjectivePoint rand_point(int want_sig = 0) {
    for (int it = 0; it < 1000; ++it) {
        Vec3 v = rand_vec();
        if (std::abs(herm(v, v).real()) < 0.05 * v.squaredNorm()) continue;
        ProjectivePoint p(v);
        if (want_sig == 0 || p.sig == want_sig) return p;
    }
    throw std::runtime_error("rand_point failed");
}

// parameter angle bounded away from the cube roots of unity
inline Parameter rand_parameter() {
    while (true) {
        double a = uni(0.0, 2.0 * M_PI);
        bool ok = true;
        for (double root : {0.0, 2.0 * M_PI / 3.0, 4.0 * M_PI / 3.0, 2.0 * M_PI})
            if (std::abs(a - root) < 0.05) ok = false;
        if (ok) return Parameter(a);
    }
}

// random element of SU(2,1) as a product of special elliptic isometries
inline Mat3 rand_su21(int factors = 3) {
    Mat3 m = Mat3::Identity();
    for (int i = 0; i < factors; ++i)
        m = special_elliptic(rand_parameter(), rand_point()) * m;
    return m;
}

// null frame helpers for targeted constructions
struct Frame {
    Vec3 v, e, w; // isotropic v,w with <v,w>=1; e positive orthogonal to both
};

inline Frame std_frame() {
    Frame f;
    f.v = Vec3(1, 0, 1);
    f.e = Vec3(0, 1, 0);
    f.w = Vec3(0.5, 0, -0.5);
    return f;
}

inline Mat3 frame_matrix(const Frame& f) {
    Mat3 b;
    b.col(0) = f.v;
    b.col(1) = f.e;
    b.col(2) = f.w;
    return b;
}

// ellipto-parabolic with repeated eigenvalue lam0 = e^{i th0} and screw sign
inline Mat3 make_ep(double th0, int orient, double rho_scale = 1.0) {
    Frame f = std_frame();
    Mat3 B = frame_matrix(f);
    cplx lam0 = std::polar(1.0, th0);
    cplx lam1 = 1.0 / (lam0 * lam0);
    Mat3 Ff = Mat3::Zero();
    Ff(0, 0) = lam0;
    Ff(1, 1) = lam1;
    Ff(2, 2) = lam0;
    Ff(0, 2) = cplx(0, orient * rho_scale) * lam0;
    return B * Ff * B.inverse();
}

// 2-step unipotent with translation sign
inline Mat3 make_2step(int orient, double rho_scale = 1.0) {
    Frame f = std_frame();
    Mat3 B = frame_matrix(f);
    Mat3 Ff = Mat3::Identity();
    Ff(0, 2) = cplx(0, orient * rho_scale);
    return B * Ff * B.inverse();
}

// 3-step unipotent
inline Mat3 make_3step(cplx a = cplx(1.0, 0.4)) {
    Frame f = std_frame();
    Mat3 B = frame_matrix(f);
    Mat3 Ff = Mat3::Identity();
    Ff(0, 1) = a;                       // e -> e + a v
    Ff(1, 2) = -std::conj(a);           // w -> w - conj(a) e + c v
    Ff(0, 2) = cplx(-std::norm(a) / 2, 0.3);
    return B * Ff * B.inverse();
}

// loxodromic with dilation r > 1 and rotation phi
inline Mat3 make_lox(double r, double phi) {
    Frame f = std_frame();
    Mat3 B = frame_matrix(f);
    cplx mu = std::polar(1.0, phi);
    Mat3 Ff = Mat3::Zero();
    Ff(0, 0) = r * mu;
    Ff(1, 1) = 1.0 / (mu * mu);
    Ff(2, 2) = mu / r;
    return B * Ff * B.inverse();
}

// regular elliptic with angle pair (th1, th2) (E_{th1,th2} in the standard basis,
// negative-type eigenvalue on e3)
inline Mat3 make_elliptic(double th1, double th2) {
    Mat3 m = Mat3::Zero();
    m(0, 0) = std::polar(1.0, (2 * th1 - th2) / 3.0);
    m(1, 1) = std::polar(1.0, (2 * th2 - th1) / 3.0);
    m(2, 2) = std::polar(1.0, -(th1 + th2) / 3.0);
    return m;
}

inline Mat3 rand_conjugate(const Mat3& m, int factors = 2) {
    Mat3 c = rand_su21(factors);
    return c * m * c.inverse();
}

} // namespace chdtest
