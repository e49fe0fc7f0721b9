#include "chdecomp/decomposer.hpp"

#include <algorithm>
#include <cmath>

namespace chd {

namespace {

const Vec3 e1 = Vec3::Unit(0);
const Vec3 e2 = Vec3::Unit(1);
const Vec3 e3 = Vec3::Unit(2);

constexpr double kResidualTol = 1e-8;

Mat3 product_of(const Parameter& alpha, const std::vector<ProjectivePoint>& pts) {
    Mat3 p = Mat3::Identity();
    for (const auto& c : pts)
        p = special_elliptic(alpha, c) * p;
    return p;
}

// best rational approximation of x with bounded denominator (continued fractions)
Rat rat_approx(double x, std::int64_t max_den) {
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        std::int64_t ai = std::int64_t(fl);
        std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    return q1 > 0 ? Rat(p1, q1) : Rat(1, 1);
}

struct NullFrameLocal {
    Vec3 v, e, w; // <v,w> = 1, v,w isotropic, e positive orthogonal to both
};

NullFrameLocal make_null_frame(const Vec3& v_in) {
    Vec3 v = v_in / v_in.norm();
    Vec3 w0 = form_matrix() * v.conjugate();
    cplx pairing = herm(v, w0);
    for (int k = 0; k < 3; ++k) {
        Vec3 cand = Vec3::Unit(k);
        cplx p = herm(v, cand);
        if (std::abs(p) > std::abs(pairing)) { w0 = cand; pairing = p; }
    }
    if (std::abs(pairing) < 1e-12) throw IllConditioned("null frame: degenerate pairing");
    Vec3 e = form_orthogonal(v, w0);
    cplx ee = herm(e, e);
    if (e.norm() < 1e-12 || ee.real() <= 0)
        throw IllConditioned("null frame: no positive transverse direction");
    e /= std::sqrt(ee.real());
    Vec3 w = w0 - herm(w0, e) * e;
    const double ww = herm(w, w).real();
    const cplx vw = herm(v, w);
    w = w - (ww * std::conj(vw) / (2.0 * std::norm(vw))) * v;
    w = w / std::conj(herm(v, w));
    return {v, e, w};
}

} // namespace

Parameter normalize_parameter(const Parameter& alpha, int* k_out) {
    for (int k = 0; k < 3; ++k) {
        double ang = std::fmod(alpha.a + 2.0 * M_PI * k / 3.0, 2.0 * M_PI);
        if (ang > 1e-12 && ang < 2.0 * M_PI / 3.0 - 1e-12) {
            if (k_out) *k_out = k;
            Parameter p(ang);
            if (alpha.exact)
                p.exact = rat_mod(*alpha.exact + Rat(2 * k, 3), Rat(2));
            return p;
        }
    }
    throw ParameterOutOfRange("normalize_parameter: parameter too close to a cube root of unity");
}

double certify_residual(const Mat3& F, const Parameter& alpha,
                        const std::vector<ProjectivePoint>& centers, int* delta) {
    return omega_distance(product_of(alpha, centers), F, delta);
}

// ---------------------------------------------------------------------------------------
// length 2
// ---------------------------------------------------------------------------------------

namespace {

struct BuiltPair {
    ProjectivePoint p1, p2;
    Mat3 prod;
};

std::optional<BuiltPair> build_pair(const Parameter& a1, const Parameter& a2,
                                    const L2Witness& w) {
    try {
        ProjectivePoint p1(e1), p2(e1);
        if (w.same_center) {
            Vec3 c = w.s1 < 0 ? e3 : e1;
            p1 = ProjectivePoint(c);
            p2 = p1;
        } else {
            auto pr = pair_with_tance(w.t, w.s1, w.s2);
            p1 = pr.first;
            p2 = pr.second;
            if (w.change_signs) {
                auto L = line_through(p1, p2);
                if (L.kind != LineKind::hyperbolic) return std::nullopt;
                p1 = orthogonal_in_line(L, p1);
                p2 = orthogonal_in_line(L, p2);
            }
        }
        Mat3 prod = special_elliptic(a2, p2) * special_elliptic(a1, p1);
        return BuiltPair{p1, p2, prod};
    } catch (const chd_error&) {
        return std::nullopt;
    }
}

} // namespace

std::vector<L2Witness> length2_test(const ClassInfo& info, const Parameter& a1,
                                    const Parameter& a2) {
    std::vector<L2Witness> out;
    const cplx prod_param = a1.value * a2.value;

    if (info.key.kind == IsoKind::unipotent_2step) return out;
    if (info.key.kind == IsoKind::identity) {
        for (int k = 0; k < 3; ++k)
            if (std::abs(prod_param - omega_pow(k)) < 1e-9) {
                L2Witness w;
                w.same_center = true;
                w.s1 = w.s2 = 1;
                w.t = 1.0;
                out.push_back(w);
                break;
            }
        return out;
    }

    const cplx tau_c = omega_pow(info.canon_delta) * info.trace;
    const bool trace_determines = info.key.kind == IsoKind::loxodromic;

    for (int d = 0; d < 3; ++d) {
        const cplx tau = omega_pow(d) * tau_c;
        if (!line_contains(tau, prod_param)) continue;
        const double t0 = line_parameter(a1.value, a2.value, tau);
        if ((info.key.kind == IsoKind::ellipto_parabolic ||
             info.key.kind == IsoKind::unipotent_3step) &&
            std::abs(t0) < 1e-9)
            continue; // excluded point tau(0)
        const bool at_one = std::abs(t0 - 1.0) < 1e-9;
        const std::array<std::pair<int, int>, 4> sigs = {
            std::make_pair(1, 1), {-1, -1}, {1, -1}, {-1, 1}};
        for (auto [s1, s2] : sigs) {
            if (!pair_feasible(t0, s1, s2) && !(at_one && s1 == s2)) continue;
            std::vector<L2Witness> cands;
            L2Witness w;
            w.delta_pow = d;
            w.s1 = s1;
            w.s2 = s2;
            w.t = at_one ? 1.0 : t0;
            if (at_one && s1 == s2) {
                L2Witness sc = w;
                sc.same_center = true;
                cands.push_back(sc); // special elliptic (same center)
                if (s1 > 0) cands.push_back(w); // distinct Euclidean pair (parabolic)
            } else {
                cands.push_back(w);
                if (t0 < -1e-9 || t0 > 1.0 + 1e-9) {
                    L2Witness cs = w;
                    cs.change_signs = true;
                    cands.push_back(cs);
                }
            }
            for (auto& cand : cands) {
                if (trace_determines) {
                    if (!cand.change_signs) out.push_back(cand);
                    continue;
                }
                auto built = build_pair(a1, a2, cand);
                if (!built) continue;
                try {
                    if (same_class(classify(built->prod).key, info.key)) out.push_back(cand);
                } catch (const chd_error&) {
                }
            }
        }
    }
    return out;
}

DecompResult decompose2(const Mat3& F, const Parameter& a1, const Parameter& a2,
                        int force_s1) {
    DecompResult res;
    ClassInfo info = classify(F);
    auto wits = length2_test(info, a1, a2);
    bool any = false;
    for (const auto& w : wits) {
        if (force_s1 != 0 && w.s1 != force_s1) continue;
        any = true;
        auto built = build_pair(a1, a2, w);
        if (!built) continue;
        try {
            Mat3 C = conjugator(built->prod, F);
            std::vector<ProjectivePoint> centers = {ProjectivePoint(C * built->p1.v),
                                                    ProjectivePoint(C * built->p2.v)};
            Mat3 P = special_elliptic(a2, centers[1]) * special_elliptic(a1, centers[0]);
            Decomposition dec{0, a1, centers, 0.0};
            dec.residual = omega_distance(P, F, &dec.delta_pow);
            if (dec.residual <= kResidualTol) {
                res.status = DecompStatus::ok;
                res.dec = std::move(dec);
                return res;
            }
        } catch (const chd_error&) {
        }
    }
    if (!any) {
        res.status = DecompStatus::not_decomposable;
        res.note = "no (a1,a2)-witness for class " + kind_name(info.key.kind, info.key.orient);
    } else {
        res.status = DecompStatus::search_exhausted;
        res.note = "witness constructions failed";
    }
    return res;
}

// ---------------------------------------------------------------------------------------
// surface machinery
// ---------------------------------------------------------------------------------------

SurfaceInstance::SurfaceInstance(const Parameter& alpha_, cplx tau_, std::array<int, 3> sig_)
    : alpha(alpha_), tau(tau_), sig(sig_) {
    chi = chi_of(alpha.value);
    const cplx kap = kappa(alpha, tau);
    const double G = 2.0 * chi * kap.real() + kap.imag();
    d1 = 1.0 + 4.0 * chi * chi;
    d2 = -4.0 * chi * G;
    d3 = G * G;
    last_ineq = double(sig[0] * sig[1] * sig[2]) * (2.0 * kap.real() + 1.0);
}

namespace {

std::vector<std::array<double, 3>> surface_candidates(const SurfaceInstance& inst,
                                                      bool relax_last, size_t max_n) {
    std::vector<std::array<double, 3>> out;
    const double eps_last = 1e-11 * (1.0 + std::abs(inst.tau));
    if (!(inst.last_ineq < -eps_last || (relax_last && inst.last_ineq <= eps_last)))
        return out;
    const double re_k = kappa(inst.alpha, inst.tau).real();
    const int q1 = inst.sig[0] * inst.sig[1];
    const int q2 = inst.sig[1] * inst.sig[2];
    for (double m = 1.0; m <= double(1 << 20) && out.size() < max_n; m *= 2.0) {
        for (double m2 = 1.0; m2 <= m && out.size() < max_n; m2 *= 2.0) {
            for (auto [u1, u2] : {std::make_pair(m, m2), std::make_pair(m2, m)}) {
                const double t1 = q1 < 0 ? -u1 : 1.0 + u1;
                const double t2 = q2 < 0 ? -u2 : 1.0 + u2;
                const double A = inst.d1;
                const double B = inst.d2 - 2.0 * t1 * t2;
                const double C =
                    t1 * t1 * t2 + t1 * t2 * t2 + 2.0 * re_k * t1 * t2 + inst.d3;
                const double disc = B * B - 4.0 * A * C;
                if (disc >= 0) {
                    const double r = std::sqrt(disc);
                    out.push_back({t1, t2, (-B - r) / (2.0 * A)});
                    if (out.size() < max_n) out.push_back({t1, t2, (-B + r) / (2.0 * A)});
                }
                if (u1 == u2) break;
            }
        }
    }
    return out;
}

} // namespace

std::optional<std::array<double, 3>> surface_solve(const SurfaceInstance& inst,
                                                   bool relax_last) {
    auto c = surface_candidates(inst, relax_last, 1);
    if (c.empty()) return std::nullopt;
    return c.front();
}

std::array<ProjectivePoint, 3> surface_points(const SurfaceInstance& inst,
                                              const std::array<double, 3>& t123) {
    const auto [t1, t2, t] = t123;
    const cplx a = inst.alpha.value;
    const cplx c = 1.0 / (a * a) - a;
    const cplx kap = kappa(inst.alpha, inst.tau);
    const cplx nu = a / c;
    const double t3 = 2.0 * (t - kap.real()) - t1 - t2;
    const cplx T = kap - nu * (t1 + t2 + t3);
    return triple_from_gram(t1, t2, T.real(), inst.sig, T.imag());
}

// ---------------------------------------------------------------------------------------
// length 3
// ---------------------------------------------------------------------------------------

namespace {

const std::array<std::array<int, 3>, 4> kSignTriples = {
    std::array<int, 3>{-1, 1, -1}, {1, -1, -1}, {1, -1, 1}, {-1, 1, 1}};

DecompResult ok_result(Decomposition dec) {
    DecompResult res;
    res.status = DecompStatus::ok;
    res.dec = std::move(dec);
    return res;
}

std::optional<Decomposition> finish_with_triple(const Mat3& F, const Parameter& alpha,
                                                const std::array<ProjectivePoint, 3>& pts) {
    try {
        Mat3 P = special_elliptic(alpha, pts[2]) * special_elliptic(alpha, pts[1]) *
                 special_elliptic(alpha, pts[0]);
        Mat3 C = conjugator(P, F);
        std::vector<ProjectivePoint> centers = {ProjectivePoint(C * pts[0].v),
                                                ProjectivePoint(C * pts[1].v),
                                                ProjectivePoint(C * pts[2].v)};
        Decomposition dec{0, alpha, centers, 0.0};
        dec.residual = certify_residual(F, alpha, centers, &dec.delta_pow);
        if (dec.residual <= kResidualTol) return dec;
    } catch (const chd_error&) {
    }
    return std::nullopt;
}

// one pass of the surface route for a fixed relax flag
std::optional<Decomposition> surface_route(const Mat3& F, const Parameter& an,
                                           const ClassInfo& info, bool relax) {
    const cplx tau_c = omega_pow(info.canon_delta) * info.trace;
    for (int d = 0; d < 3; ++d) {
        const cplx tau = omega_pow(d) * tau_c;
        for (const auto& sig : kSignTriples) {
            SurfaceInstance inst(an, tau, sig);
            for (const auto& cand : surface_candidates(inst, relax, 12)) {
                try {
                    auto pts = surface_points(inst, cand);
                    Mat3 P = special_elliptic(an, pts[2]) * special_elliptic(an, pts[1]) *
                             special_elliptic(an, pts[0]);
                    if (!same_class(classify(P).key, info.key)) continue;
                    auto dec = finish_with_triple(F, an, pts);
                    if (dec) return dec;
                } catch (const chd_error&) {
                }
            }
        }
    }
    return std::nullopt;
}

DecompResult parlox_route(const Mat3& F, const Parameter& an, const ClassInfo& info) {
    for (bool relax : {false, true}) {
        auto dec = surface_route(F, an, info, relax);
        if (dec) return ok_result(std::move(*dec));
    }
    DecompResult res;
    res.status = DecompStatus::search_exhausted;
    res.note = "surface route found no matching triple";
    return res;
}

// ----- E-set machinery on floats (synthesis side) --------------------------------------

struct FSeg {
    double x1, y1, x2, y2;
    int s1, s2;
};

std::vector<FSeg> fsegs_of(double a1, double a2,
                           std::initializer_list<std::pair<int, int>> sigs) {
    std::vector<FSeg> out;
    for (auto [s1, s2] : sigs) {
        auto es = e_sigma_segments_f(a1, a2, s1, s2);
        for (auto& s : es.segs) out.push_back(FSeg{s.x1, s.y1, s.x2, s.y2, s1, s2});
    }
    return out;
}

std::vector<std::pair<double, double>> freps(double x, double y) {
    std::vector<std::pair<double, double>> reps = {{x, y}};
    if (std::abs(y) < 1e-12) reps.push_back({2.0, x});
    if (std::abs(x - 2.0) < 1e-12) reps.push_back({y, 0.0});
    return reps;
}

std::optional<std::pair<double, double>> fseg_intersection(const FSeg& A, const FSeg& B) {
    const double ax = A.x2 - A.x1, ay = A.y2 - A.y1;
    const double bx = B.x2 - B.x1, by = B.y2 - B.y1;
    const double den = ax * by - ay * bx;
    if (std::abs(den) > 1e-12) {
        const double s = ((B.x1 - A.x1) * by - (B.y1 - A.y1) * bx) / den;
        const double u = ((B.x1 - A.x1) * ay - (B.y1 - A.y1) * ax) / den;
        if (s >= -1e-9 && s <= 1.0 + 1e-9 && u >= -1e-9 && u <= 1.0 + 1e-9)
            return std::make_pair(A.x1 + s * ax, A.y1 + s * ay);
    }
    auto on = [](double px, double py, const FSeg& S) {
        const double sx = S.x2 - S.x1, sy = S.y2 - S.y1;
        const double cr = sx * (py - S.y1) - sy * (px - S.x1);
        if (std::abs(cr) > 1e-9 * (1.0 + std::abs(sx) + std::abs(sy))) return false;
        const double dot = (px - S.x1) * sx + (py - S.y1) * sy;
        return dot >= -1e-9 && dot <= sx * sx + sy * sy + 1e-9;
    };
    for (auto [px, py] : {std::make_pair(A.x1, A.y1), {A.x2, A.y2}})
        for (auto [rx, ry] : freps(px, py))
            if (on(rx, ry, B)) return std::make_pair(px, py);
    for (auto [px, py] : {std::make_pair(B.x1, B.y1), {B.x2, B.y2}})
        for (auto [rx, ry] : freps(px, py))
            if (on(rx, ry, A)) return std::make_pair(rx, ry);
    return std::nullopt;
}

struct Realized {
    Mat3 P;
    ProjectivePoint r1, r2;
};

// concrete R^{r2}_{b2} R^{r1}_{b1} whose class is the T-point x (pi units), with the
// requested center signatures
std::optional<Realized> realize_at(const Parameter& b1, const Parameter& b2, int s1, int s2,
                                   std::pair<double, double> x) {
    cplx txc;
    try {
        txc = unfolded_trace(x.first * M_PI, x.second * M_PI);
    } catch (const chd_error&) {
        return std::nullopt;
    }
    for (int d = 0; d < 3; ++d) {
        const cplx tau = omega_pow(d) * txc;
        if (!line_contains(tau, b1.value * b2.value)) continue;
        const double t0 = line_parameter(b1.value, b2.value, tau);
        const bool at_one = std::abs(t0 - 1.0) < 1e-9;
        if (!pair_feasible(t0, s1, s2) && !(at_one && s1 == s2)) continue;
        for (int variant = 0; variant < 3; ++variant) {
            try {
                ProjectivePoint p1(e1), p2(e1);
                if (variant == 2) {
                    if (!(at_one && s1 == s2)) continue;
                    Vec3 ctr = s1 < 0 ? e3 : e1;
                    p1 = ProjectivePoint(ctr);
                    p2 = p1;
                } else {
                    auto pr = pair_with_tance(t0, s1, s2);
                    p1 = pr.first;
                    p2 = pr.second;
                    if (variant == 1) {
                        auto L = line_through(p1, p2);
                        if (L.kind != LineKind::hyperbolic) continue;
                        p1 = orthogonal_in_line(L, p1);
                        p2 = orthogonal_in_line(L, p2);
                    }
                }
                Mat3 P = special_elliptic(b2, p2) * special_elliptic(b1, p1);
                ClassInfo ci = classify(P);
                std::pair<double, double> got;
                switch (ci.key.kind) {
                    case IsoKind::regular_elliptic:
                    case IsoKind::special_elliptic_neg:
                    case IsoKind::special_elliptic_pos:
                    case IsoKind::ellipto_parabolic:
                        got = {ci.key.th1, ci.key.th2};
                        break;
                    case IsoKind::identity:
                    case IsoKind::unipotent_3step:
                        got = {0.0, 0.0};
                        break;
                    default:
                        continue;
                }
                if (pair_quotient_distance(got, {x.first * M_PI, x.second * M_PI}) < 1e-6)
                    return Realized{P, p1, p2};
            } catch (const chd_error&) {
            }
        }
    }
    return std::nullopt;
}

// does the class of F lie on a wall of the alpha-atlas (tr~ image on ell_{w^j alpha^3})?
bool on_alpha3_wall(const ClassInfo& info, const Parameter& an) {
    const cplx a3 = std::pow(an.value, 3);
    const cplx tau_c = omega_pow(info.canon_delta) * info.trace;
    for (int d = 0; d < 3; ++d)
        for (int j = 0; j < 3; ++j)
            if (line_contains(omega_pow(d) * tau_c, omega_pow(j) * a3)) return true;
    return false;
}

ChamberStatus chamber_status_for(const Parameter& alpha, double th1, double th2) {
    Rat a_pi = alpha.exact ? *alpha.exact : rat_approx(alpha.a / M_PI, 1000000);
    if (is_transition_parameter(a_pi))
        a_pi = a_pi + Rat(1, 27000000);
    Atlas at = chambers(a_pi);
    return status_at(at, th1, th2);
}

cplx w_trace(const Mat3& G, const cplx& an, const Vec3& q) {
    const cplx ac = std::conj(an);
    const cplx h = herm(Vec3(G * q), q) / herm(q, q);
    return ac * G.trace() + (an * an - ac) * h;
}

// assemble F = w^{-d} R^q_an W from a successful W = R^q_{conj an} (w^d Fc) split
std::optional<Decomposition> assemble_from_w(const Mat3& F, const Parameter& an,
                                             const DecompResult& d2,
                                             const ProjectivePoint& q) {
    if (!d2.ok()) return std::nullopt;
    std::vector<ProjectivePoint> centers = {d2.dec->centers[0], d2.dec->centers[1], q};
    Decomposition dec{0, an, centers, 0.0};
    dec.residual = certify_residual(F, an, centers, &dec.delta_pow);
    if (dec.residual <= kResidualTol) return dec;
    return std::nullopt;
}

// bounded search: find q with W := R^q_{conj an} (w^d Fc) on a tangent line ell_{w^j an^2}
// and class admitting an (an,an)-decomposition
std::optional<Decomposition> synth_elliptic3(const Mat3& F, const Parameter& an,
                                             const ClassInfo& info) {
    const Parameter anc(std::conj(an.value));
    const Mat3 Fc = omega_pow(info.canon_delta) * F;
    std::array<Vec3, 3> vecs;
    std::array<double, 3> norms;
    int negi = -1;
    for (int i = 0; i < 3; ++i) {
        vecs[i] = eigenvector3(Fc, info.eig[i]);
        norms[i] = herm(vecs[i], vecs[i]).real();
        if (norms[i] < 0 && negi < 0) negi = i;
    }
    if (negi < 0) return std::nullopt;
    for (int i = 0; i < 3; ++i) vecs[i] /= std::sqrt(std::abs(norms[i]));

    std::vector<std::pair<Vec3, Vec3>> frames;
    for (int i = 0; i < 3; ++i)
        if (i != negi) frames.push_back({vecs[negi], vecs[i]});
    frames.push_back({vecs[(negi + 1) % 3], vecs[(negi + 2) % 3]});

    const int n_phase = 8, n_s = 48;
    for (int d = 0; d < 3; ++d) {
        const Mat3 G = omega_pow(d) * Fc;
        for (int j = 0; j < 3; ++j) {
            const cplx line_label = omega_pow(j) * an.value * an.value;
            for (const auto& [u, v] : frames) {
                for (int ip = 0; ip < n_phase; ++ip) {
                    const cplx ph = std::polar(1.0, 2.0 * M_PI * ip / n_phase);
                    auto qof = [&](double s) {
                        return Vec3(std::cos(s) * u + std::sin(s) * ph * v);
                    };
                    auto gof = [&](double s) {
                        Vec3 q = qof(s);
                        return line_offset(w_trace(G, an.value, q), line_label);
                    };
                    double prev_s = 0, prev_g = 0;
                    bool prev_ok = false;
                    for (int is = 0; is <= n_s; ++is) {
                        const double s = 0.02 + (M_PI - 0.04) * is / n_s;
                        Vec3 q = qof(s);
                        if (std::abs(herm(q, q).real()) < 1e-4 * q.squaredNorm()) {
                            prev_ok = false;
                            continue;
                        }
                        const double g = gof(s);
                        if (prev_ok && g * prev_g < 0) {
                            double lo = prev_s, hi = s, glo = prev_g;
                            for (int it = 0; it < 70; ++it) {
                                double mid = (lo + hi) / 2, gm = gof(mid);
                                if (gm * glo <= 0) hi = mid;
                                else { lo = mid; glo = gm; }
                            }
                            Vec3 q0 = qof((lo + hi) / 2);
                            if (std::abs(herm(q0, q0).real()) > 1e-6 * q0.squaredNorm()) {
                                try {
                                    ProjectivePoint qq(q0);
                                    if (qq.sig != 0) {
                                        Mat3 W = special_elliptic(anc, qq) * G;
                                        auto dec = assemble_from_w(F, an,
                                                                   decompose2(W, an, an), qq);
                                        if (dec) return dec;
                                    }
                                } catch (const chd_error&) {
                                }
                            }
                        }
                        prev_s = s;
                        prev_g = g;
                        prev_ok = true;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

// special elliptic target F ~ R^q_beta (center signature cs) via the constructive
// E-set intersection of the specialdecomp / diagchamb proofs
DecompResult se_route(const Mat3& F, const Parameter& an, const ClassInfo& info, int cs) {
    DecompResult res;
    const double th = info.key.th1;
    const double bang = cs < 0 ? th / 3.0 : (2.0 * M_PI - th) / 3.0;

    // shortcut: beta ~ delta alpha^3 means F is a cube of reflections at its own center
    {
        const cplx beta = std::polar(1.0, bang);
        const cplx a3 = std::pow(an.value, 3);
        for (int k = 0; k < 3; ++k) {
            if (std::abs(beta - omega_pow(k) * a3) < 1e-9) {
                Mat3 Fc = omega_pow(info.canon_delta) * F;
                Vec3 q = eigenvector3(Fc, info.eig[2]);
                ProjectivePoint qq(q);
                if (qq.sig == 0) break;
                std::vector<ProjectivePoint> centers = {qq, qq, qq};
                Decomposition dec{0, an, centers, 0.0};
                dec.residual = certify_residual(F, an, centers, &dec.delta_pow);
                if (dec.residual <= kResidualTol) return ok_result(std::move(dec));
                break;
            }
        }
    }

    const double au = an.a / M_PI;
    const double acu = 2.0 / 3.0 - au;
    double bu = std::fmod(bang / M_PI, 2.0 / 3.0);
    if (bu <= 0) bu += 2.0 / 3.0;
    if (bu < 1e-11 || bu > 2.0 / 3.0 - 1e-11) {
        res.status = DecompStatus::search_exhausted;
        res.note = "se_route: reflection parameter on a cube root";
        return res;
    }
    const Parameter bpar(bu * M_PI);
    const Parameter acpar(acu * M_PI);

    auto U1 = fsegs_of(au, au, {{-1, -1}, {1, 1}});
    auto U2 = cs < 0 ? fsegs_of(bu, acu, {{-1, -1}, {-1, 1}})
                     : fsegs_of(bu, acu, {{1, -1}, {1, 1}});

    bool found_intersection = false;
    for (const auto& sa : U1)
        for (const auto& sb : U2) {
            auto x = fseg_intersection(sa, sb);
            if (!x) continue;
            found_intersection = true;
            auto V = realize_at(an, an, sa.s1, sa.s2, *x);
            if (!V) continue;
            DecompResult d2 = decompose2(V->P, bpar, acpar, cs);
            if (!d2.ok()) continue;
            // V = w^dd R^{p4}_{ac} R^{q}_{beta'}  =>  R^q_{beta'} = w^{-dd} R^{p4}_{conj ac} V
            const ProjectivePoint& p4 = d2.dec->centers[1];
            Mat3 G = special_elliptic(Parameter(std::conj(acpar.value)), p4) *
                     (std::conj(omega_pow(d2.dec->delta_pow)) * V->P);
            try {
                ClassInfo gi = classify(G);
                if (!same_class(gi.key, info.key)) continue;
                Mat3 C = conjugator(G, F);
                std::vector<ProjectivePoint> centers = {ProjectivePoint(C * V->r1.v),
                                                        ProjectivePoint(C * V->r2.v),
                                                        ProjectivePoint(C * p4.v)};
                Decomposition dec{0, an, centers, 0.0};
                dec.residual = certify_residual(F, an, centers, &dec.delta_pow);
                if (dec.residual <= kResidualTol) return ok_result(std::move(dec));
            } catch (const chd_error&) {
            }
        }
    if (cs < 0 && !found_intersection) {
        res.status = DecompStatus::not_decomposable;
        res.note = "diagonal criterion: the E-set unions do not intersect (empty chamber)";
    } else {
        res.status = DecompStatus::search_exhausted;
        res.note = "E-set intersection route failed";
    }
    return res;
}

// 2-step unipotent, alpha^3 in Omega: q in the polar line of the fixed point
DecompResult twostep_omega_route(const Mat3& F, const Parameter& an, const ClassInfo& info) {
    DecompResult res;
    const Mat3 Fc = omega_pow(info.canon_delta) * F;
    const Mat3 N = Fc - Mat3::Identity();
    Eigen::JacobiSVD<Mat3> svd(N, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Parameter anc(std::conj(an.value));
    for (int c1 = 1; c1 <= 2; ++c1)
        for (int c2 = c1; c2 <= 2; ++c2)
            for (double mix : {0.0, 0.7, -0.7}) {
                Vec3 q = svd.matrixV().col(c1) + mix * svd.matrixV().col(c2);
                if (c1 == c2 && mix != 0.0) continue;
                try {
                    ProjectivePoint qq(q);
                    if (qq.sig == 0) continue;
                    Mat3 W = special_elliptic(anc, qq) * Fc;
                    auto dec = assemble_from_w(F, an, decompose2(W, an, an), qq);
                    if (dec) return ok_result(std::move(*dec));
                } catch (const chd_error&) {
                }
            }
    res.status = DecompStatus::search_exhausted;
    res.note = "2-step (alpha^3 in Omega) construction failed";
    return res;
}

// 2-step unipotent, alpha^3 in -Omega: hit the crossing of ell_{conj alpha} with
// ell_{w^{-j} alpha^2} on the reachable trace line, then shape the class
DecompResult twostep_minus_route(const Mat3& F, const Parameter& an, const ClassInfo& info) {
    DecompResult res;
    const Mat3 Fc = omega_pow(info.canon_delta) * F;
    const Mat3 N = Fc - Mat3::Identity();
    Eigen::JacobiSVD<Mat3> svd(N, Eigen::ComputeFullU);
    NullFrameLocal fr = make_null_frame(svd.matrixU().col(0));
    const Parameter anc(std::conj(an.value));

    const double srho = herm(Vec3(N * fr.w), fr.w).imag();
    if (std::abs(srho) < 1e-12) {
        res.status = DecompStatus::search_exhausted;
        res.note = "2-step: vanishing translation invariant";
        return res;
    }

    const cplx tau0 = 2.0 * std::conj(an.value) + an.value * an.value;
    const cplx dir = cplx(0, 1) * (an.value * an.value - std::conj(an.value));
    for (int j = 1; j <= 2; ++j) {
        const cplx label = omega_pow(3 - j) * an.value * an.value;
        TangentLine L(label);
        const double du = (dir / L.direction).imag();
        if (std::abs(du) < 1e-12) continue;
        const double u_star = -((tau0 - L.tangency) / L.direction).imag() / du;
        if (std::abs(u_star) < 1e-9) continue;
        const double denom = srho / u_star; // required <q,q>
        for (double babs : {0.0, 0.5, 1.0, 1.7, 2.5})
            for (int bp = 0; bp < 6; ++bp) {
                const cplx b = babs == 0.0 ? cplx(0) : std::polar(babs, 2.0 * M_PI * bp / 6.0);
                const double re_mu = (denom - std::norm(b)) / 2.0;
                for (double im_mu : {0.0, 0.4, -0.4, 1.1, -1.1, 2.2, -2.2}) {
                    Vec3 q = fr.w + b * fr.e + cplx(re_mu, im_mu) * fr.v;
                    try {
                        ProjectivePoint qq(q);
                        if (qq.sig == 0) continue;
                        Mat3 W = special_elliptic(anc, qq) * Fc;
                        auto dec = assemble_from_w(F, an, decompose2(W, an, an), qq);
                        if (dec) return ok_result(std::move(*dec));
                    } catch (const chd_error&) {
                    }
                }
                if (babs == 0.0) break;
            }
    }
    res.status = DecompStatus::search_exhausted;
    res.note = "2-step (alpha^3 in -Omega) search failed";
    return res;
}

} // namespace

DecompResult decompose3(const Mat3& F, const Parameter& alpha) {
    DecompResult res;
    const Parameter an = normalize_parameter(alpha);
    ClassInfo info = classify(F);

    switch (info.key.kind) {
        case IsoKind::identity: {
            std::vector<ProjectivePoint> centers = {ProjectivePoint(e1), ProjectivePoint(e2),
                                                    ProjectivePoint(e3)};
            Decomposition dec{0, an, centers, 0.0};
            dec.residual = certify_residual(F, an, centers, &dec.delta_pow);
            return ok_result(std::move(dec));
        }
        case IsoKind::loxodromic:
        case IsoKind::ellipto_parabolic:
        case IsoKind::unipotent_3step:
            return parlox_route(F, an, info);
        case IsoKind::special_elliptic_pos: {
            DecompResult r = se_route(F, an, info, +1);
            if (r.ok()) return r;
            auto dec = synth_elliptic3(F, an, info);
            if (dec) return ok_result(std::move(*dec));
            return r;
        }
        case IsoKind::special_elliptic_neg: {
            if (on_alpha3_wall(info, an)) {
                // wall classes belong to the closure of the adjacent chambers
                auto dec = synth_elliptic3(F, an, info);
                if (dec) return ok_result(std::move(*dec));
                ChamberStatus st = chamber_status_for(an, info.key.th1, info.key.th2);
                res.status = st == ChamberStatus::full ? DecompStatus::search_exhausted
                                                       : DecompStatus::not_decomposable;
                res.note = "on-wall special elliptic";
                return res;
            }
            DecompResult r = se_route(F, an, info, -1);
            if (r.ok() || r.status == DecompStatus::not_decomposable) return r;
            auto dec = synth_elliptic3(F, an, info);
            if (dec) return ok_result(std::move(*dec));
            return r;
        }
        case IsoKind::unipotent_2step: {
            const cplx a3 = std::pow(an.value, 3);
            bool in_omega = false, in_minus = false;
            for (int k = 0; k < 3; ++k) {
                if (std::abs(a3 - omega_pow(k)) < 1e-9) in_omega = true;
                if (std::abs(a3 + omega_pow(k)) < 1e-9) in_minus = true;
            }
            if (in_omega) return twostep_omega_route(F, an, info);
            if (in_minus) return twostep_minus_route(F, an, info);
            res.status = DecompStatus::unknown;
            res.note = "2-step unipotent with alpha^3 outside ±Omega: open problem";
            return res;
        }
        case IsoKind::regular_elliptic: {
            auto direct = surface_route(F, an, info, false);
            if (direct) return ok_result(std::move(*direct));
            ChamberStatus st = chamber_status_for(an, info.key.th1, info.key.th2);
            if (st == ChamberStatus::empty) {
                res.status = DecompStatus::not_decomposable;
                res.note = "angle pair lies in an empty chamber";
                return res;
            }
            auto dec = synth_elliptic3(F, an, info);
            if (dec) return ok_result(std::move(*dec));
            res.status = st == ChamberStatus::full ? DecompStatus::search_exhausted
                                                   : DecompStatus::unknown;
            res.note = st == ChamberStatus::full
                           ? "full chamber but synthesis failed (soundness bug indicator)"
                           : "chamber status unknown and synthesis failed";
            return res;
        }
    }
    res.status = DecompStatus::search_exhausted;
    return res;
}

DecompResult decompose4(const Mat3& F, const Parameter& alpha) {
    DecompResult res;
    const Parameter an = normalize_parameter(alpha);
    const Parameter anc(std::conj(an.value));
    ClassInfo info = classify(F);
    const Mat3 Fc = omega_pow(info.canon_delta) * F;

    std::vector<Vec3> cands;
    if (info.key.kind == IsoKind::unipotent_2step) {
        const Mat3 N = Fc - Mat3::Identity();
        Eigen::JacobiSVD<Mat3> svd(N, Eigen::ComputeFullV);
        for (int c = 1; c <= 2; ++c) cands.push_back(svd.matrixV().col(c));
        cands.push_back(svd.matrixV().col(1) + 0.6 * svd.matrixV().col(2));
        cands.push_back(svd.matrixV().col(1) - 0.6 * svd.matrixV().col(2));
    } else {
        std::array<Vec3, 3> vecs;
        std::array<double, 3> norms;
        int negi = -1;
        std::vector<int> pos;
        for (int i = 0; i < 3; ++i) {
            vecs[i] = eigenvector3(Fc, info.eig[i]);
            norms[i] = herm(vecs[i], vecs[i]).real();
            if (norms[i] < 0 && negi < 0) negi = i;
            else pos.push_back(i);
        }
        if (negi >= 0) {
            Vec3 c = vecs[negi] / std::sqrt(-norms[negi]);
            for (int pi_ : pos) {
                if (norms[pi_] <= 0) continue;
                Vec3 u = vecs[pi_] / std::sqrt(norms[pi_]);
                for (double s : {0.9, 0.99, 0.999, 0.7, 0.5})
                    cands.push_back(c + s * u);
            }
        }
    }

    for (const auto& q : cands) {
        try {
            ProjectivePoint qq(q);
            if (qq.sig == 0) continue;
            Mat3 W = special_elliptic(anc, qq) * Fc;
            ClassInfo wi = classify(W);
            if (info.key.kind != IsoKind::unipotent_2step &&
                wi.key.kind != IsoKind::loxodromic)
                continue;
            DecompResult d3 = decompose3(W, an);
            if (!d3.ok()) continue;
            std::vector<ProjectivePoint> centers = d3.dec->centers;
            centers.push_back(qq);
            Decomposition dec{0, an, centers, 0.0};
            dec.residual = certify_residual(F, an, centers, &dec.delta_pow);
            if (dec.residual <= kResidualTol) return ok_result(std::move(dec));
        } catch (const chd_error&) {
        }
    }
    res.status = DecompStatus::search_exhausted;
    res.note = "decompose4: no reduction found";
    return res;
}

LengthResult alpha_length(const Mat3& F, const Parameter& alpha) {
    const Parameter an = normalize_parameter(alpha);
    ClassInfo info = classify(F);

    if (info.key.kind == IsoKind::special_elliptic_neg ||
        info.key.kind == IsoKind::special_elliptic_pos) {
        const double want = info.key.kind == IsoKind::special_elliptic_neg
                                ? 3.0 * an.a
                                : 2.0 * M_PI - 3.0 * an.a;
        if (std::abs(std::remainder(info.key.th1 - want, 2.0 * M_PI)) < 1e-8) {
            Mat3 Fc = omega_pow(info.canon_delta) * F;
            Vec3 q = eigenvector3(Fc, info.eig[2]);
            ProjectivePoint qq(q);
            if (qq.sig != 0) {
                std::vector<ProjectivePoint> centers = {qq};
                Decomposition dec{0, an, centers, 0.0};
                dec.residual = certify_residual(F, an, centers, &dec.delta_pow);
                if (dec.residual <= kResidualTol) return LengthResult{1, true, std::move(dec)};
            }
        }
    }

    DecompResult d2 = decompose2(F, alpha, alpha);
    if (d2.ok()) return LengthResult{2, true, std::move(*d2.dec)};

    DecompResult d3 = decompose3(F, alpha);
    if (d3.ok()) return LengthResult{3, true, std::move(*d3.dec)};
    const bool gap = d3.status == DecompStatus::unknown;
    if (d3.status == DecompStatus::search_exhausted)
        throw SearchExhausted("alpha_length: decompose3 exhausted: " + d3.note);

    DecompResult d4 = decompose4(F, alpha);
    if (d4.ok()) return LengthResult{4, !gap, std::move(*d4.dec)};
    throw SearchExhausted("alpha_length: decompose4 failed: " + d4.note);
}

std::pair<ProjectivePoint, ProjectivePoint> change_signs(const ProjectivePoint& p1,
                                                         const ProjectivePoint& p2,
                                                         const Parameter& a1,
                                                         const Parameter& a2,
                                                         bool* distinct_class) {
    auto L = line_through(p1, p2);
    if (L.kind != LineKind::hyperbolic)
        throw NotHyperbolicLine("change_signs: the centers span a nonhyperbolic line");
    ProjectivePoint q1 = orthogonal_in_line(L, p1);
    ProjectivePoint q2 = orthogonal_in_line(L, p2);
    if (distinct_class) {
        Mat3 R = special_elliptic(a2, p2) * special_elliptic(a1, p1);
        *distinct_class = classify(R).key.kind == IsoKind::regular_elliptic;
    }
    return {q1, q2};
}

} // namespace chd
