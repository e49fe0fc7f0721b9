#include "chdecomp/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace chd {

namespace {

double mod2pi(double x) {
    const double two_pi = 2.0 * M_PI;
    double r = std::fmod(x, two_pi);
    if (r < 0) r += two_pi;
    if (two_pi - r < 1e-12) r = 0.0;
    return r;
}

// adapted null frame around an isotropic direction v: w isotropic with <v,w> = 1,
// e positive with <e,v> = <e,w> = 0
struct NullFrame {
    Vec3 v, e, w;
};

NullFrame null_frame(const Vec3& v_in) {
    Vec3 v = v_in / v_in.norm();
    // transverse direction with the largest pairing against v
    Vec3 w0 = form_matrix() * v.conjugate();
    cplx pairing = herm(v, w0);
    for (int k = 0; k < 3; ++k) {
        Vec3 cand = Vec3::Unit(k);
        cplx p = herm(v, cand);
        if (std::abs(p) > std::abs(pairing)) { w0 = cand; pairing = p; }
    }
    if (std::abs(pairing) < 1e-12) throw IllConditioned("null_frame: degenerate pairing");
    // e spans the orthocomplement of span(v, w0); positive since that plane is hyperbolic
    Vec3 e = form_orthogonal(v, w0);
    cplx ee = herm(e, e);
    if (e.norm() < 1e-12 || ee.real() <= 0)
        throw IllConditioned("null_frame: no positive transverse direction");
    e /= std::sqrt(ee.real());
    // w: isotropic, orthogonal to e, <v,w> = 1
    Vec3 w = w0 - herm(w0, e) * e;
    // <w + s v, .> norm: <w,w> + 2 Re(s <v,w>) = 0
    const double ww = herm(w, w).real();
    const cplx vw = herm(v, w);
    w = w - (ww * std::conj(vw) / (2.0 * std::norm(vw))) * v;
    cplx p = herm(v, w);
    if (std::abs(p) < 1e-12) throw IllConditioned("null_frame: pairing collapsed");
    w = w / std::conj(p);
    return {v, e, w};
}

// F parabolic with isotropic fixed direction v and repeated eigenvalue lam0:
// in the adapted frame F w = lam0 w + c v mod e, c = i rho lam0; orient = sign(rho).
int parabolic_orientation(const Mat3& F, const Vec3& v, cplx lam0) {
    NullFrame fr = null_frame(v);
    cplx c = herm(F * fr.w - lam0 * fr.w, fr.w);
    double rho = (c * std::conj(lam0)).imag();
    return rho >= 0 ? 1 : -1;
}

int canonical_omega(cplx trace) {
    if (std::abs(trace) <= 1e-12) return 0;
    for (int k = 0; k < 3; ++k) {
        double ar = std::arg(omega_pow(k) * trace);
        if (ar < 0) ar += 2.0 * M_PI;
        if (ar < 2.0 * M_PI / 3.0 - 1e-15) return k;
    }
    return 0;
}

} // namespace

Parameter::Parameter(double angle) : a(mod2pi(angle)), value(std::polar(1.0, a)) {
    for (int k = 0; k < 3; ++k)
        if (std::abs(value - omega_pow(k)) < 1e-9)
            throw ParameterOutOfRange("parameter is a cube root of unity");
}

Parameter::Parameter(cplx v) : Parameter(std::arg(v)) {
    if (std::abs(std::abs(v) - 1.0) > 1e-9)
        throw ParameterOutOfRange("parameter must be a unit complex number");
}

double deltoid_f(cplx z) {
    const double m = std::norm(z);
    return m * m - 8.0 * (z * z * z).real() + 18.0 * m - 27.0;
}

std::string kind_name(IsoKind k, int orient) {
    switch (k) {
        case IsoKind::identity: return "identity";
        case IsoKind::regular_elliptic: return "regular-elliptic";
        case IsoKind::special_elliptic_neg: return "special-elliptic-neg-center";
        case IsoKind::special_elliptic_pos: return "special-elliptic-pos-center";
        case IsoKind::ellipto_parabolic: return "ellipto-parabolic";
        case IsoKind::unipotent_2step:
            return orient >= 0 ? "2-step-unipotent-A" : "2-step-unipotent-B";
        case IsoKind::unipotent_3step: return "3-step-unipotent";
        case IsoKind::loxodromic: return "loxodromic";
    }
    return "?";
}

bool is_su21(const Mat3& m, double tol) {
    return form_residual(m) <= tol * (1.0 + m.squaredNorm()) &&
           std::abs(m.determinant() - cplx(1, 0)) <= tol * (1.0 + m.squaredNorm());
}

Mat3 special_elliptic(const Parameter& alpha, const ProjectivePoint& p) {
    if (p.sig == 0) throw IsotropicCenter("special_elliptic: isotropic center");
    const cplx coef = (1.0 / (alpha.value * alpha.value) - alpha.value) / herm(p, p);
    return alpha.value * Mat3::Identity() + coef * (p.v * (p.v.adjoint() * form_matrix()));
}

std::pair<double, double> canonical_pair(double x, double y) {
    double a = mod2pi(x), b = mod2pi(y);
    if (a < b) std::swap(a, b);
    return {a, b};
}

double pair_quotient_distance(std::pair<double, double> a, std::pair<double, double> b) {
    auto reps = [](std::pair<double, double> p) {
        const double two_pi = 2.0 * M_PI;
        std::vector<std::pair<double, double>> r = {p};
        if (p.second < 1e-9) {
            r.push_back({two_pi, p.first});            // (th,0) ~ (2pi,th)
            if (p.first < 1e-9) r.push_back({two_pi, two_pi});
        }
        if (std::abs(p.first - two_pi) < 1e-9) r.push_back({p.second, 0.0});
        return r;
    };
    double best = 1e300;
    for (auto& ra : reps(a))
        for (auto& rb : reps(b))
            best = std::min(best, std::hypot(ra.first - rb.first, ra.second - rb.second));
    return best;
}

namespace {

std::pair<double, double> pair_from_eigs(const std::array<cplx, 3>& eig, int neg) {
    std::array<double, 2> th;
    int j = 0;
    for (int i = 0; i < 3; ++i)
        if (i != neg) th[j++] = std::arg(eig[i] * std::conj(eig[neg]));
    return canonical_pair(th[0], th[1]);
}

} // namespace

ClassInfo classify(const Mat3& m) {
    if (!is_su21(m))
        throw NotUnitary("classify: matrix is not in SU(2,1)");
    ClassInfo out;
    out.trace = m.trace();

    const int k = canonical_omega(out.trace);
    out.canon_delta = k;
    const Mat3 F = omega_pow(k) * m;
    const cplx tau = omega_pow(k) * out.trace;
    const double f = deltoid_f(tau);
    out.f_value = f;
    const double band = 1e-7 * (1.0 + std::pow(std::abs(tau), 4));

    // characteristic cubic of an SU(2,1) element: z^3 - tau z^2 + conj(tau) z - 1
    auto eig = cubic_roots(-tau, std::conj(tau), cplx(-1, 0));
    out.eig = eig;

    if (f > band) {
        out.key.kind = IsoKind::loxodromic;
        out.key.lox_trace = tau;
        return out;
    }

    if (f < -band) {
        for (auto& l : eig) l /= std::abs(l);
        out.eig = eig;
        int neg = -1;
        for (int i = 0; i < 3; ++i) {
            Vec3 v = eigenvector3(F, eig[i]);
            if (herm(v, v).real() < 0) { neg = i; break; }
        }
        if (neg < 0) throw NumericallyAmbiguous("classify: no negative-type eigenvalue");
        out.neg_index = neg;
        out.key.kind = IsoKind::regular_elliptic;
        std::tie(out.key.th1, out.key.th2) = pair_from_eigs(eig, neg);
        return out;
    }

    // boundary band; cusp zone is cube-root wide since f has a cusp there
    const double cusp_band = 2.0 * std::cbrt(band);
    if (std::abs(tau - 3.0) < cusp_band) {
        const Mat3 N = F - Mat3::Identity();
        const int r = rank3(N, 1e-6, F.norm());
        if (r == 0) {
            out.key.kind = IsoKind::identity;
            return out;
        }
        if (r == 1) {
            Eigen::JacobiSVD<Mat3> svd(N, Eigen::ComputeFullU);
            Vec3 v = svd.matrixU().col(0);
            out.key.kind = IsoKind::unipotent_2step;
            out.key.orient = parabolic_orientation(F, v, cplx(1, 0));
            return out;
        }
        out.key.kind = IsoKind::unipotent_3step;
        return out;
    }

    // repeated eigenvalue lam0 with simple lam1 = lam0^{-2}
    for (auto& l : eig) l /= std::abs(l);
    int i0 = 0, i1 = 1, is_ = 2;
    double bestd = 1e300;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double d = std::abs(eig[i] - eig[j]);
            if (d < bestd) { bestd = d; i0 = i; i1 = j; is_ = 3 - i - j; }
        }
    cplx lam0 = (eig[i0] + eig[i1]) / 2.0;
    lam0 /= std::abs(lam0);
    cplx lam1 = eig[is_] / std::abs(eig[is_]);
    out.eig = {lam0, lam0, lam1};

    const int r = rank3(F - lam0 * Mat3::Identity(), 1e-6, F.norm());
    if (r <= 1) {
        Vec3 u = eigenvector3(F, lam1);
        const double nu = herm(u, u).real() / u.squaredNorm();
        if (std::abs(nu) < 1e-7)
            throw NumericallyAmbiguous("classify: special elliptic with isotropic center");
        if (nu < 0) {
            out.key.kind = IsoKind::special_elliptic_neg;
            out.neg_index = 2;
            const double th = std::arg(lam0 * std::conj(lam1));
            std::tie(out.key.th1, out.key.th2) = canonical_pair(th, th);
        } else {
            out.key.kind = IsoKind::special_elliptic_pos;
            out.neg_index = 0;
            std::tie(out.key.th1, out.key.th2) =
                canonical_pair(std::arg(lam1 * std::conj(lam0)), 0.0);
        }
        return out;
    }

    Vec3 v = eigenvector3(F, lam0);
    out.key.kind = IsoKind::ellipto_parabolic;
    out.key.orient = parabolic_orientation(F, v, lam0);
    std::tie(out.key.th1, out.key.th2) =
        canonical_pair(std::arg(lam1 * std::conj(lam0)), 0.0);
    return out;
}

Isometry::Isometry(const Mat3& mat) : m(mat), info(classify(mat)) {}

bool is_regular(const ClassInfo& c) {
    switch (c.key.kind) {
        case IsoKind::identity:
        case IsoKind::special_elliptic_neg:
        case IsoKind::special_elliptic_pos:
        case IsoKind::unipotent_2step:
            return false;
        default:
            return true;
    }
}

bool is_regular(const Mat3& m) { return is_regular(classify(m)); }

std::pair<double, double> angle_pair(const Mat3& m) {
    ClassInfo c = classify(m);
    switch (c.key.kind) {
        case IsoKind::identity: return {0.0, 0.0};
        case IsoKind::regular_elliptic:
        case IsoKind::special_elliptic_neg:
        case IsoKind::special_elliptic_pos:
        case IsoKind::ellipto_parabolic:
            return {c.key.th1, c.key.th2};
        default:
            throw NotElliptic("angle_pair: isometry has no angle pair");
    }
}

bool same_class(const ClassKey& a, const ClassKey& b, double tol) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case IsoKind::identity:
        case IsoKind::unipotent_3step:
            return true;
        case IsoKind::unipotent_2step:
            return a.orient == b.orient;
        case IsoKind::ellipto_parabolic:
            return a.orient == b.orient &&
                   pair_quotient_distance({a.th1, a.th2}, {b.th1, b.th2}) < tol;
        case IsoKind::loxodromic:
            return std::abs(a.lox_trace - b.lox_trace) < tol * (1.0 + std::abs(a.lox_trace));
        default:
            return pair_quotient_distance({a.th1, a.th2}, {b.th1, b.th2}) < tol;
    }
}

std::pair<Mat3, int> normalize_lift(const Mat3& m) {
    if (std::abs(m.determinant()) < 1e-12)
        throw NotFormPreserving("normalize_lift: singular matrix");
    const Mat3 G = m.adjoint() * form_matrix() * m;
    const double lambda = (G(0, 0).real() + G(1, 1).real() - G(2, 2).real()) / 3.0;
    if (lambda <= 0 || (G - lambda * form_matrix()).norm() > 1e-8 * 3.0 * lambda)
        throw NotFormPreserving("normalize_lift: matrix does not scale the form");
    Mat3 u = m / std::sqrt(lambda);
    u *= std::pow(u.determinant(), -1.0 / 3.0);
    const int k = canonical_omega(u.trace());
    return {omega_pow(k) * u, k};
}

double omega_distance(const Mat3& a, const Mat3& b, int* best) {
    double bd = 1e300;
    for (int k = 0; k < 3; ++k) {
        double d = (omega_pow(k) * a - b).norm();
        if (d < bd) { bd = d; if (best) *best = k; }
    }
    return bd;
}

namespace {

// ----- semisimple conjugation via eigenframe matching ---------------------------------

std::optional<Mat3> match_semisimple(const Mat3& f1, const Mat3& f2, const ClassInfo& c1) {
    auto e1 = eigenvalues3(f1);
    auto e2 = eigenvalues3(f2);
    const bool repeated = c1.key.kind == IsoKind::special_elliptic_neg ||
                          c1.key.kind == IsoKind::special_elliptic_pos;

    auto build_se_frame = [](const Mat3& f) -> std::optional<Mat3> {
        auto eg = eigenvalues3(f);
        int a = 0, b = 1, s = 2;
        double bestd = 1e300;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                double dd = std::abs(eg[i] - eg[j]);
                if (dd < bestd) { bestd = dd; a = i; b = j; s = 3 - i - j; }
            }
        cplx lam0 = (eg[a] + eg[b]) / 2.0;
        Mat3 A = f - lam0 * Mat3::Identity();
        Eigen::JacobiSVD<Mat3> svd(A, Eigen::ComputeFullV);
        Vec3 b1 = svd.matrixV().col(1), b2 = svd.matrixV().col(2);
        Eigen::Matrix2cd g;
        g << herm(b1, b1), herm(b2, b1), herm(b1, b2), herm(b2, b2);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(g);
        Vec3 d1 = b1 * es.eigenvectors()(0, 0) + b2 * es.eigenvectors()(1, 0);
        Vec3 d2 = b1 * es.eigenvectors()(0, 1) + b2 * es.eigenvectors()(1, 1);
        double n1 = herm(d1, d1).real(), n2 = herm(d2, d2).real();
        if (std::abs(n1) < 1e-10 || std::abs(n2) < 1e-10) return std::nullopt;
        d1 /= std::sqrt(std::abs(n1));
        d2 /= std::sqrt(std::abs(n2));
        if (n1 < n2) std::swap(d1, d2); // positive direction first
        Vec3 u = eigenvector3(f, eg[s]);
        double nu = herm(u, u).real();
        if (std::abs(nu) < 1e-10) return std::nullopt;
        u /= std::sqrt(std::abs(nu));
        Mat3 M;
        M.col(0) = d1;
        M.col(1) = d2;
        M.col(2) = u;
        return M;
    };

    if (repeated) {
        auto mv = build_se_frame(f1);
        auto mw = build_se_frame(f2);
        if (!mv || !mw) return std::nullopt;
        Mat3 C = *mw * mv->inverse();
        const cplx dc = C.determinant();
        if (std::abs(dc) < 1e-12) return std::nullopt;
        C *= std::pow(dc, -1.0 / 3.0);
        if (omega_distance(C * f1 * C.inverse(), f2) < 1e-8 * (1.0 + f2.norm()))
            return C;
        return std::nullopt;
    }

    for (int k = 0; k < 3; ++k) {
        const cplx d = omega_pow(k);
        std::array<bool, 3> used{false, false, false};
        std::array<int, 3> perm{-1, -1, -1};
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            double best = 1e300;
            int bj = -1;
            for (int j = 0; j < 3; ++j) {
                if (used[j]) continue;
                double dd = std::abs(e1[i] * d - e2[j]);
                if (dd < best) { best = dd; bj = j; }
            }
            if (bj < 0 || best > 1e-5 * (1.0 + std::abs(e1[i]))) { ok = false; break; }
            used[bj] = true;
            perm[i] = bj;
        }
        if (!ok) continue;

        Mat3 V, W;
        bool frames_ok = true;
        for (int i = 0; i < 3; ++i) {
            V.col(i) = eigenvector3(f1, e1[i]);
            W.col(i) = eigenvector3(f2, e2[perm[i]]);
        }
        if (c1.key.kind == IsoKind::loxodromic) {
            std::array<int, 3> ord = {0, 1, 2};
            std::sort(ord.begin(), ord.end(),
                      [&](int i, int j) { return std::abs(e1[i]) > std::abs(e1[j]); });
            Mat3 V2, W2;
            for (int i = 0; i < 3; ++i) { V2.col(i) = V.col(ord[i]); W2.col(i) = W.col(ord[i]); }
            V = V2;
            W = W2;
            auto fix = [&frames_ok](Mat3& M) {
                cplx nu = herm(Vec3(M.col(2)), Vec3(M.col(2)));
                if (nu.real() <= 0) { frames_ok = false; return; }
                M.col(2) /= std::sqrt(nu.real());
                cplx g = herm(Vec3(M.col(0)), Vec3(M.col(1)));
                if (std::abs(g) < 1e-12) { frames_ok = false; return; }
                M.col(0) /= g;
            };
            fix(V);
            fix(W);
        } else {
            for (int i = 0; i < 3 && frames_ok; ++i) {
                double nv = herm(Vec3(V.col(i)), Vec3(V.col(i))).real();
                double nw = herm(Vec3(W.col(i)), Vec3(W.col(i))).real();
                if (nv * nw <= 0) { frames_ok = false; break; }
                V.col(i) /= std::sqrt(std::abs(nv));
                W.col(i) /= std::sqrt(std::abs(nw));
            }
        }
        if (!frames_ok) continue;
        Mat3 C = W * V.inverse();
        const cplx dc = C.determinant();
        if (std::abs(dc) < 1e-12) continue;
        C *= std::pow(dc, -1.0 / 3.0);
        if (omega_distance(C * f1 * C.inverse(), f2) < 1e-8 * (1.0 + f2.norm()))
            return C;
    }
    return std::nullopt;
}

// ----- parabolic conjugation via Sylvester nullspace + Gauss-Newton --------------------

std::optional<Mat3> intertwiner_unitary(const Mat3& A, const Mat3& B) {
    using M9 = Eigen::Matrix<cplx, 9, 9>;
    M9 S = M9::Zero();
    // vec(C A - B C) = (A^T ⊗ I - I ⊗ B) vec(C), column-major vec
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            for (int r = 0; r < 3; ++r)
                S(3 * i + r, 3 * j + r) += A(j, i);
            if (i == j)
                for (int r = 0; r < 3; ++r)
                    for (int c = 0; c < 3; ++c)
                        S(3 * i + r, 3 * i + c) -= B(r, c);
        }
    Eigen::JacobiSVD<M9> svd(S, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double top = std::max(sv(0), 1e-300);
    std::vector<Mat3> basis;
    for (int i = 0; i < 9; ++i) {
        if (sv(i) < 1e-8 * top) {
            Eigen::Matrix<cplx, 9, 1> col = svd.matrixV().col(i);
            Mat3 N;
            for (int c = 0; c < 3; ++c)
                for (int r = 0; r < 3; ++r)
                    N(r, c) = col(3 * c + r);
            basis.push_back(N);
        }
    }
    if (basis.empty()) return std::nullopt;
    const int n = int(basis.size());
    const Mat3& J = form_matrix();

    auto assemble = [&](const Eigen::VectorXd& z) {
        Mat3 C = Mat3::Zero();
        for (int i = 0; i < n; ++i)
            C += cplx(z(2 * i), z(2 * i + 1)) * basis[i];
        return C;
    };
    auto pack = [](const Mat3& R, Eigen::VectorXd& f) {
        int idx = 0;
        for (int c = 0; c < 3; ++c)
            for (int r = 0; r < 3; ++r) {
                f(idx++) = R(r, c).real();
                f(idx++) = R(r, c).imag();
            }
    };

    std::vector<Eigen::VectorXd> starts;
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd z = Eigen::VectorXd::Zero(2 * n);
        z(2 * i) = 1.0;
        starts.push_back(z);
    }
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto rnd = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return double(state % 2000001) / 1000000.0 - 1.0;
    };
    for (int s = 0; s < 6; ++s) {
        Eigen::VectorXd z(2 * n);
        for (int i = 0; i < 2 * n; ++i) z(i) = rnd();
        starts.push_back(z);
    }

    for (auto z : starts) {
        for (int it = 0; it < 80; ++it) {
            Mat3 C = assemble(z);
            Mat3 Res = C.adjoint() * J * C - J;
            if (Res.norm() < 1e-12) break;
            Eigen::VectorXd f(18);
            pack(Res, f);
            Eigen::MatrixXd Jac(18, 2 * n);
            Eigen::VectorXd colv(18);
            for (int i = 0; i < n; ++i) {
                Mat3 dr = basis[i].adjoint() * J * C + C.adjoint() * J * basis[i];
                Mat3 di = cplx(0, 1) * (C.adjoint() * J * basis[i]) -
                          cplx(0, 1) * (basis[i].adjoint() * J * C);
                pack(dr, colv);
                Jac.col(2 * i) = colv;
                pack(di, colv);
                Jac.col(2 * i + 1) = colv;
            }
            Eigen::VectorXd step =
                Jac.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-f);
            if (!step.allFinite()) break;
            z += 0.9 * step;
        }
        Mat3 C = assemble(z);
        if ((C.adjoint() * J * C - J).norm() < 1e-9 && std::abs(C.determinant()) > 1e-8) {
            C *= std::pow(C.determinant(), -1.0 / 3.0);
            return C;
        }
    }
    return std::nullopt;
}

} // namespace

Mat3 conjugator(const Mat3& f1, const Mat3& f2) {
    ClassInfo c1 = classify(f1), c2 = classify(f2);
    if (!same_class(c1.key, c2.key))
        throw NotConjugate("conjugator: distinct conjugacy classes");
    if (c1.key.kind == IsoKind::identity)
        return Mat3::Identity();

    const bool parabolic = c1.key.kind == IsoKind::ellipto_parabolic ||
                           c1.key.kind == IsoKind::unipotent_2step ||
                           c1.key.kind == IsoKind::unipotent_3step;
    if (!parabolic) {
        auto c = match_semisimple(f1, f2, c1);
        if (c) return *c;
        throw IllConditioned("conjugator: eigenframe matching failed");
    }
    for (int k = 0; k < 3; ++k) {
        auto c = intertwiner_unitary(f1, omega_pow(k) * f2);
        if (c && omega_distance(*c * f1 * c->inverse(), f2) < 1e-8 * (1.0 + f2.norm()))
            return *c;
    }
    throw IllConditioned("conjugator: no unitary intertwiner found");
}

} // namespace chd
