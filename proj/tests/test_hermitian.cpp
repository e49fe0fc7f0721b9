#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace chd;
using namespace chdtest;

TEST_CASE("herm on basis vectors") {
    ProjectivePoint a(Vec3(1, 0, 0)), b(Vec3(0, 0, 1));
    CHECK(std::abs(herm(a, b)) < 1e-15);
    CHECK(herm(b, b).real() == doctest::Approx(-1.0));
    ProjectivePoint c(Vec3(2, 0, 1));
    CHECK(herm(c, c).real() == doctest::Approx(3.0));
}

TEST_CASE("tance basics") {
    ProjectivePoint p(Vec3(1, 0, 0)), q(Vec3(0, 0, 1)), r(Vec3(2, 0, 1));
    CHECK(tance(p, p) == doctest::Approx(1.0));
    CHECK(tance(p, q) == doctest::Approx(0.0));
    CHECK(tance(p, r) == doctest::Approx(4.0 / 3.0));
    ProjectivePoint iso(Vec3(1, 0, 1));
    CHECK_THROWS_AS(tance(p, iso), IsotropicPoint);
}

TEST_CASE("tance scale invariance") {
    for (int it = 0; it < 200; ++it) {
        auto p = rand_point(), q = rand_point();
        cplx l = rand_cplx() + cplx(2.0, 0), m = rand_cplx() + cplx(0, 2.0);
        ProjectivePoint ps(l * p.v), qs(m * q.v);
        double t1 = tance(p, q), t2 = tance(ps, qs);
        CHECK(std::abs(t1 - t2) <= 1e-12 * (1.0 + std::abs(t1)));
    }
}

TEST_CASE("line_through kinds and Sylvester consistency") {
    auto L1 = line_through(ProjectivePoint(Vec3(1, 0, 0)), ProjectivePoint(Vec3(0, 1, 0)));
    CHECK(L1.kind == LineKind::spherical);
    auto L2 = line_through(ProjectivePoint(Vec3(1, 0, 0)), ProjectivePoint(Vec3(2, 0, 1)));
    CHECK(L2.kind == LineKind::hyperbolic);
    auto L3 = line_through(ProjectivePoint(Vec3(1, 0, 1).eval()), ProjectivePoint(Vec3(0, 1, 0)));
    CHECK(L3.kind == LineKind::euclidean);

    int n = 0;
    while (n < 1000) {
        auto p = rand_point(), q = rand_point();
        double t;
        try {
            t = tance(p, q);
        } catch (const chd_error&) { continue; }
        if (std::abs(t) < 1e-6 || std::abs(t - 1.0) < 1e-6) continue;
        LineKind want = (t > 1.0 || t < 0.0) ? LineKind::hyperbolic : LineKind::spherical;
        auto L = line_through(p, q);
        CHECK(L.kind == want);
        ++n;
    }
}

TEST_CASE("orthogonal_in_line round trip") {
    auto p1 = ProjectivePoint(Vec3(1, 0, 0));
    auto L = line_through(p1, ProjectivePoint(Vec3(0, 0, 1)));
    auto q = orthogonal_in_line(L, p1);
    CHECK(std::abs(herm(q, p1)) < 1e-12);
    // spec example: L(e1, (2,0,1)), p = e1 -> (0,0,1)
    auto L2 = line_through(p1, ProjectivePoint(Vec3(2, 0, 1)));
    auto q2 = orthogonal_in_line(L2, p1);
    CHECK(std::abs(q2.v(0)) < 1e-12);
    CHECK(std::abs(q2.v(1)) < 1e-12);

    for (int it = 0; it < 200; ++it) {
        auto a = rand_point(), b = rand_point();
        double t;
        try { t = tance(a, b); } catch (const chd_error&) { continue; }
        if (t > -0.2 && t < 1.2) continue; // keep the line clearly hyperbolic
        auto L3 = line_through(a, b);
        ProjectivePoint q3 = orthogonal_in_line(L3, a);
        double scale = a.v.norm() * q3.v.norm();
        CHECK(std::abs(herm(q3, a)) <= 1e-10 * scale);
        ProjectivePoint back = orthogonal_in_line(L3, q3);
        // projectively equal to a
        cplx r = herm(back, a);
        CHECK(std::abs(std::abs(r) * std::abs(r) -
                       herm(back, back).real() * herm(a, a).real() * tance(back, a)) < 1e-6);
        CHECK(tance(back, a) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("pair_with_tance feasibility table") {
    CHECK(pair_feasible(0.5, 1, 1));
    CHECK(pair_feasible(7.0, 1, 1));
    CHECK(!pair_feasible(-0.5, 1, 1));
    CHECK(pair_feasible(2.0, -1, -1));
    CHECK(!pair_feasible(0.5, -1, -1));
    CHECK(!pair_feasible(1.0, -1, -1));
    CHECK(pair_feasible(-3.0, 1, -1));
    CHECK(!pair_feasible(0.5, 1, -1));

    for (double t : {-4.0, -0.3, 0.0, 0.4, 1.0, 1.5, 9.0}) {
        for (auto [s1, s2] : {std::make_pair(1, 1), {-1, -1}, {1, -1}, {-1, 1}}) {
            if (!pair_feasible(t, s1, s2)) continue;
            auto [p, q] = pair_with_tance(t, s1, s2);
            CHECK(p.sig == s1);
            CHECK(q.sig == s2);
            CHECK(tance(p, q) == doctest::Approx(t).epsilon(1e-10));
        }
    }
    // t = 1 gives a distinct Euclidean pair
    auto [p, q] = pair_with_tance(1.0, 1, 1);
    CHECK((p.v.normalized() - q.v.normalized()).norm() > 1e-3);
    CHECK(line_through(p, q).kind == LineKind::euclidean);
}

TEST_CASE("triple_from_gram round trip") {
    // orthogonal basis triple
    auto tr = triple_from_gram(0, 0, 0, {1, 1, -1});
    CHECK(std::abs(herm(tr[0], tr[1])) < 1e-10);
    CHECK(std::abs(herm(tr[1], tr[2])) < 1e-10);

    // spec example: (4/3, 0, 0, (+,+,+)) realizable with p3 orthogonal to p2
    auto tr2 = triple_from_gram(4.0 / 3.0, 0, 0, {1, 1, 1});
    CHECK(tance(tr2[0], tr2[1]) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK(std::abs(herm(tr2[1], tr2[2])) < 1e-9);

    // all-positive signature is not embeddable once the Gram is definite
    CHECK_THROWS_AS(triple_from_gram(0.5, 0.5, 0.1, {1, 1, 1}), Unrealizable);

    int done = 0;
    while (done < 1000) {
        int s1 = rng()() % 2 ? 1 : -1, s2 = rng()() % 2 ? 1 : -1, s3 = rng()() % 2 ? 1 : -1;
        double t1 = uni(-6, 8), t2 = uni(-6, 8), t = uni(-4, 4), im = uni(-2, 2);
        if (t1 * s1 * s2 < 0 || t2 * s2 * s3 < 0) continue;
        if (std::abs(t1) < 1e-3 || std::abs(t2) < 1e-3) continue;
        std::array<ProjectivePoint, 3> pts = {ProjectivePoint(Vec3(1, 0, 0)),
                                              ProjectivePoint(Vec3(1, 0, 0)),
                                              ProjectivePoint(Vec3(1, 0, 0))};
        try {
            pts = triple_from_gram(t1, t2, t, {s1, s2, s3}, im);
        } catch (const Unrealizable&) { continue; }
        ++done;
        CHECK(tance(pts[0], pts[1]) == doctest::Approx(t1).epsilon(1e-9));
        CHECK(tance(pts[1], pts[2]) == doctest::Approx(t2).epsilon(1e-9));
        cplx triple = herm(pts[0], pts[1]) * herm(pts[1], pts[2]) * herm(pts[2], pts[0]) /
                      (herm(pts[0], pts[0]) * herm(pts[1], pts[1]) * herm(pts[2], pts[2]));
        CHECK(triple.real() == doctest::Approx(t).epsilon(1e-8));
    }
}
