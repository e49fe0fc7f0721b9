#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace chd;
using namespace chdtest;

TEST_CASE("deltoid_f reference values") {
    CHECK(deltoid_f(cplx(3, 0)) == doctest::Approx(0.0));
    CHECK(deltoid_f(cplx(0, 0)) == doctest::Approx(-27.0));
    CHECK(deltoid_f(cplx(4, 0)) == doctest::Approx(5.0));
}

TEST_CASE("special elliptic basics") {
    Parameter al(uni(0.2, 1.8));
    Mat3 r3 = special_elliptic(al, ProjectivePoint(Vec3(0, 0, 1)));
    Mat3 want = Mat3::Zero();
    want(0, 0) = al.value;
    want(1, 1) = al.value;
    want(2, 2) = 1.0 / (al.value * al.value);
    CHECK((r3 - want).norm() < 1e-12);

    Mat3 r1 = special_elliptic(al, ProjectivePoint(Vec3(1, 0, 0)));
    CHECK(std::abs(r1(0, 0) - 1.0 / (al.value * al.value)) < 1e-12);

    for (int it = 0; it < 1000; ++it) {
        Parameter a = rand_parameter();
        ProjectivePoint p = rand_point();
        Mat3 r = special_elliptic(a, p);
        CHECK(form_residual(r) < 1e-10 * (1.0 + r.squaredNorm()));
        CHECK(std::abs(r.determinant() - cplx(1, 0)) < 1e-10);
        CHECK(std::abs(r.trace() - (2.0 * a.value + 1.0 / (a.value * a.value))) < 1e-10);
    }
    CHECK_THROWS_AS(special_elliptic(al, ProjectivePoint(Vec3(1, 0, 1))), IsotropicCenter);
}

TEST_CASE("classify basic kinds") {
    CHECK(classify(Mat3::Identity()).key.kind == IsoKind::identity);
    CHECK(classify(omega_pow(1) * Mat3::Identity()).key.kind == IsoKind::identity);

    Parameter i_par(M_PI / 2);
    Mat3 se = special_elliptic(i_par, ProjectivePoint(Vec3(0, 0, 1)));
    auto c = classify(se);
    CHECK(c.key.kind == IsoKind::special_elliptic_neg);
    CHECK(deltoid_f(omega_pow(c.canon_delta) * se.trace()) ==
          doctest::Approx(0.0).epsilon(1e-9));

    Mat3 sp = special_elliptic(i_par, ProjectivePoint(Vec3(1, 0, 0)));
    CHECK(classify(sp).key.kind == IsoKind::special_elliptic_pos);

    Mat3 lox = make_lox(2.0, 0.0);
    CHECK(classify(lox).key.kind == IsoKind::loxodromic);
    CHECK(classify(rand_conjugate(lox)).key.kind == IsoKind::loxodromic);

    Mat3 re = make_elliptic(2.0, 0.9);
    auto cre = classify(re);
    CHECK(cre.key.kind == IsoKind::regular_elliptic);
    CHECK(cre.key.th1 == doctest::Approx(2.0));
    CHECK(cre.key.th2 == doctest::Approx(0.9));

    CHECK(classify(make_ep(0.4, +1)).key.kind == IsoKind::ellipto_parabolic);
    CHECK(classify(make_2step(+1)).key.kind == IsoKind::unipotent_2step);
    CHECK(classify(make_3step()).key.kind == IsoKind::unipotent_3step);

    Mat3 bad = Mat3::Identity() * 2.0;
    CHECK_THROWS_AS(classify(bad), NotUnitary);
}

TEST_CASE("special elliptic eigenvalue multiset and angle pairs") {
    for (int it = 0; it < 300; ++it) {
        Parameter a = rand_parameter();
        ProjectivePoint p = rand_point();
        Mat3 r = special_elliptic(a, p);
        auto ev = eigenvalues3(r);
        int n_a = 0, n_inv = 0;
        for (auto& l : ev) {
            if (std::abs(l - a.value) < 1e-7) ++n_a;
            if (std::abs(l - 1.0 / (a.value * a.value)) < 1e-7) ++n_inv;
        }
        CHECK(n_a >= 2);
        CHECK(n_inv >= 1);
        auto c = classify(r);
        if (p.sig < 0) {
            CHECK(c.key.kind == IsoKind::special_elliptic_neg);
            auto want = canonical_pair(3.0 * a.a, 3.0 * a.a);
            CHECK(pair_quotient_distance({c.key.th1, c.key.th2}, want) < 1e-7);
        } else {
            CHECK(c.key.kind == IsoKind::special_elliptic_pos);
            auto want = canonical_pair(-3.0 * a.a, 0.0);
            CHECK(pair_quotient_distance({c.key.th1, c.key.th2}, want) < 1e-7);
        }
    }
}

TEST_CASE("classify is conjugation and omega invariant") {
    std::vector<Mat3> basics = {make_lox(1.7, 0.8), make_elliptic(2.2, 1.1), make_ep(0.7, -1),
                                make_2step(+1), make_2step(-1), make_3step(),
                                special_elliptic(Parameter(0.9), rand_point(-1))};
    for (const auto& m : basics) {
        auto k0 = classify(m).key;
        for (int d = 1; d < 3; ++d)
            CHECK(same_class(classify(omega_pow(d) * m).key, k0));
        for (int it = 0; it < 5; ++it)
            CHECK(same_class(classify(rand_conjugate(m)).key, k0));
    }
}

TEST_CASE("is_regular") {
    CHECK(!is_regular(special_elliptic(rand_parameter(), rand_point())));
    CHECK(is_regular(make_elliptic(2.0, 1.0)));
    CHECK(!is_regular(make_2step(1)));
    CHECK(is_regular(make_3step()));
    CHECK(is_regular(make_ep(0.5, 1)));
    CHECK(is_regular(make_lox(1.5, 0.2)));
}

TEST_CASE("two ellipto-parabolic classes per trace, two 2-step classes") {
    Mat3 ep_plus = make_ep(0.35, +1), ep_minus = make_ep(0.35, -1);
    CHECK(std::abs(ep_plus.trace() - ep_minus.trace()) < 1e-12);
    auto kp = classify(ep_plus).key, km = classify(ep_minus).key;
    CHECK(kp.kind == IsoKind::ellipto_parabolic);
    CHECK(km.kind == IsoKind::ellipto_parabolic);
    CHECK(kp.orient != km.orient);
    CHECK(!same_class(kp, km));
    CHECK_THROWS_AS(conjugator(ep_plus, ep_minus), chd_error);
    // same orientation, different translation scale: conjugate
    Mat3 ep_plus2 = make_ep(0.35, +1, 2.5);
    Mat3 C = conjugator(ep_plus, ep_plus2);
    CHECK(omega_distance(C * ep_plus * C.inverse(), ep_plus2) < 1e-8);

    auto k2p = classify(make_2step(+1)).key, k2m = classify(make_2step(-1)).key;
    CHECK(!same_class(k2p, k2m));
    for (int it = 0; it < 10; ++it) {
        CHECK(classify(rand_conjugate(make_2step(+1))).key.orient == k2p.orient);
        CHECK(classify(rand_conjugate(make_ep(0.35, -1))).key.orient == km.orient);
    }
}

TEST_CASE("angle pair examples") {
    auto p0 = angle_pair(Mat3::Identity());
    CHECK(p0.first == doctest::Approx(0.0));
    Mat3 e = make_elliptic(1.9, 0.4);
    auto pe = angle_pair(e);
    CHECK(pe.first == doctest::Approx(1.9));
    CHECK(pe.second == doctest::Approx(0.4));
    CHECK_THROWS_AS(angle_pair(make_lox(2.0, 0.1)), NotElliptic);
    Parameter a(0.77);
    auto ps = angle_pair(special_elliptic(a, ProjectivePoint(Vec3(1, 0, 0))));
    CHECK(pair_quotient_distance(ps, canonical_pair(-3 * 0.77, 0.0)) < 1e-8);
}

TEST_CASE("normalize_lift") {
    auto [id1, k1] = normalize_lift(2.0 * Mat3::Identity());
    CHECK((id1 - Mat3::Identity()).norm() < 1e-12);
    auto [id2, k2] = normalize_lift(omega_pow(1) * Mat3::Identity());
    CHECK((id2 - Mat3::Identity()).norm() < 1e-12);
    for (int it = 0; it < 50; ++it) {
        Mat3 m = rand_su21();
        cplx s = rand_cplx() + cplx(3.0, 0);
        auto [u, k] = normalize_lift(s * m);
        CHECK(is_su21(u, 1e-8));
        double ar = std::arg(u.trace());
        if (ar < 0) ar += 2 * M_PI;
        if (std::abs(u.trace()) > 1e-9) CHECK(ar < 2.0 * M_PI / 3.0 + 1e-12);
        CHECK(omega_distance(u, m) < 1e-7 * (1.0 + m.norm()));
    }
    Mat3 notform = Mat3::Identity();
    notform(0, 1) = 0.3;
    CHECK_THROWS_AS(normalize_lift(notform), NotFormPreserving);
}

TEST_CASE("conjugator across kinds") {
    CHECK((conjugator(Mat3::Identity(), Mat3::Identity()) - Mat3::Identity()).norm() < 1e-12);

    std::vector<Mat3> models = {make_lox(1.8, 0.5),
                                make_elliptic(2.4, 1.3),
                                make_ep(0.8, +1),
                                make_ep(0.8, -1),
                                make_2step(+1),
                                make_2step(-1),
                                make_3step(),
                                special_elliptic(Parameter(1.1), rand_point(-1)),
                                special_elliptic(Parameter(1.1), rand_point(+1))};
    for (const auto& m : models) {
        for (int it = 0; it < 4; ++it) {
            Mat3 m2 = omega_pow(int(rng()() % 3)) * rand_conjugate(m);
            Mat3 C = conjugator(m, m2);
            CHECK(is_su21(C, 1e-7));
            CHECK(omega_distance(C * m * C.inverse(), m2) < 1e-7 * (1.0 + m2.norm()));
        }
    }

    Parameter a(0.9);
    Mat3 rp = special_elliptic(a, rand_point(+1));
    Mat3 rn = special_elliptic(a, rand_point(-1));
    CHECK(std::abs(rp.trace() - rn.trace()) < 1e-12);
    CHECK_THROWS_AS(conjugator(rp, rn), NotConjugate);
}

TEST_CASE("cyclic permutation invariance of products") {
    for (int it = 0; it < 50; ++it) {
        Parameter a1 = rand_parameter(), a2 = rand_parameter(), a3 = rand_parameter();
        ProjectivePoint p1 = rand_point(), p2 = rand_point(), p3 = rand_point();
        Mat3 r1 = special_elliptic(a1, p1), r2 = special_elliptic(a2, p2),
             r3 = special_elliptic(a3, p3);
        auto k1 = classify(r3 * r2 * r1).key;
        auto k2 = classify(r1 * r3 * r2).key;
        CHECK(same_class(k1, k2, 1e-5));
    }
}

TEST_CASE("R_{delta alpha}^p = delta R_alpha^p") {
    for (int it = 0; it < 50; ++it) {
        Parameter a = rand_parameter();
        ProjectivePoint p = rand_point();
        for (int d = 0; d < 3; ++d) {
            Parameter da(std::arg(omega_pow(d) * a.value));
            Mat3 lhs = special_elliptic(da, p);
            Mat3 rhs = omega_pow(d) * special_elliptic(a, p);
            CHECK((lhs - rhs).norm() < 1e-12);
        }
    }
}

TEST_CASE("Euclidean-line products are parabolic (Lemma)") {
    for (int it = 0; it < 60; ++it) {
        cplx z = std::polar(uni(0.3, 2.0), uni(0.0, 2 * M_PI));
        ProjectivePoint p1(Vec3(1, 0, 0)), p2(Vec3(1.0, z, z));
        REQUIRE(std::abs(tance(p1, p2) - 1.0) < 1e-12);
        Parameter a1 = rand_parameter(), a2 = rand_parameter();
        Mat3 r = special_elliptic(a2, p2) * special_elliptic(a1, p1);
        auto k = classify(r).key;
        bool prod_in_omega = false;
        for (int d = 0; d < 3; ++d)
            if (std::abs(a1.value * a2.value - omega_pow(d)) < 1e-9) prod_in_omega = true;
        if (prod_in_omega)
            CHECK(k.kind == IsoKind::unipotent_3step);
        else
            CHECK(k.kind == IsoKind::ellipto_parabolic);
    }
}
