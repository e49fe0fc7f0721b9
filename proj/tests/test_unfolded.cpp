#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "chdecomp/trace_geometry.hpp"
#include "chdecomp/unfolded.hpp"

using namespace chd;
using namespace chdtest;

TEST_CASE("unfolded trace values") {
    CHECK(std::abs(unfolded_trace(0, 0) - cplx(3, 0)) < 1e-12);
    double th = 1.3;
    cplx want = 2.0 * std::polar(1.0, th / 3) + std::polar(1.0, -2 * th / 3);
    CHECK(std::abs(unfolded_trace(th, th) - want) < 1e-12);
    CHECK(std::abs(unfolded_trace(M_PI, M_PI) - std::polar(1.0, M_PI / 3)) < 1e-12);
    CHECK(std::abs(unfolded_trace(4 * M_PI / 3, 2 * M_PI / 3)) < 1e-12);
    CHECK_THROWS_AS(unfolded_trace(1.0, 2.0), OutOfTriangle);
}

TEST_CASE("unfolded inverse round trip on a grid") {
    const int n = 60;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i; ++j) {
            double th1 = 2 * M_PI * i / n, th2 = 2 * M_PI * j / n;
            cplx tau = unfolded_trace(th1, th2);
            CHECK(deltoid_f(tau) <= 1e-8 * (1 + std::pow(std::abs(tau), 4)));
            auto [x, y] = unfolded_inverse(tau);
            CHECK(pair_quotient_distance({x, y}, {th1, th2}) < 1e-9);
        }
    CHECK_THROWS_AS(unfolded_inverse(cplx(4, 0)), OutsideDeltoid);
    auto v = unfolded_inverse(cplx(3, 0));
    CHECK(pair_quotient_distance(v, {0.0, 0.0}) < 1e-9);
    auto z = unfolded_inverse(cplx(0, 0));
    CHECK(pair_quotient_distance(z, {4 * M_PI / 3, 2 * M_PI / 3}) < 1e-9);
}

TEST_CASE("unfolded trace of classes is conjugation invariant and trace-compatible") {
    for (int it = 0; it < 500; ++it) {
        double th1 = uni(0.1, 2 * M_PI - 0.1);
        double th2 = uni(0.05, th1 - 0.05);
        if (th1 - th2 < 0.05 || th1 > 2 * M_PI - 0.02) continue;
        Mat3 f = make_elliptic(th1, th2);
        if (classify(f).key.kind != IsoKind::regular_elliptic) continue;
        Mat3 g = rand_conjugate(f);
        auto pf = angle_pair(f), pg = angle_pair(g);
        CHECK(pair_quotient_distance(pf, pg) < 1e-6);
        cplx ut = unfolded_trace(pf.first, pf.second);
        CHECK(omega_distance(Mat3::Identity() * ut, Mat3::Identity() * f.trace()) ==
              doctest::Approx(0.0).epsilon(1e-6));
    }
}

TEST_CASE("walls at the acceptance anchor a = pi/3 (parameter pi/9)") {
    auto ws = walls(Rat(1, 3)); // line-label angle 3a with a = pi/9
    REQUIRE(ws.size() == 6);
    auto eq = [](const RatPt& p, std::int64_t xn, std::int64_t xd, std::int64_t yn,
                 std::int64_t yd) { return p.x == Rat(xn, xd) && p.y == Rat(yn, yd); };
    // chain 0: (1/2,0) -> (1,1) -> (2,3/2)
    CHECK(ws[0].label == 0);
    CHECK(eq(ws[0].a, 1, 2, 0, 1));
    CHECK(eq(ws[0].b, 1, 1, 1, 1));
    CHECK(eq(ws[1].a, 1, 1, 1, 1));
    CHECK(eq(ws[1].b, 2, 1, 3, 2));
    // chain 1: (3/2,3/2) -> (2,1) -> (3/2,0)
    CHECK(ws[2].label == 1);
    CHECK(eq(ws[2].a, 3, 2, 3, 2));
    CHECK(eq(ws[2].b, 2, 1, 1, 1));
    CHECK(eq(ws[3].a, 2, 1, 1, 1));
    CHECK(eq(ws[3].b, 3, 2, 0, 1));
    // chain 2: (1/2,1/2) -> (1,0) -> (2,1/2)
    CHECK(ws[4].label == 2);
    CHECK(eq(ws[4].a, 1, 2, 1, 2));
    CHECK(eq(ws[4].b, 1, 1, 0, 1));
    CHECK(eq(ws[5].a, 1, 1, 0, 1));
    CHECK(eq(ws[5].b, 2, 1, 1, 2));
}

TEST_CASE("wall segments map onto the labeled tangent lines") {
    for (int k = 1; k <= 40; ++k) {
        Rat a(k * 7 % 83, 42); // assorted rationals in (0,2)
        a = rat_mod(a, Rat(2));
        if (a.is_zero()) continue;
        auto ws = walls(a);
        cplx alpha = std::polar(1.0, a.to_double() * M_PI);
        for (const auto& w : ws) {
            for (double lam : {0.21, 0.5, 0.83}) {
                double x = (w.a.x.to_double() + lam * (w.b.x - w.a.x).to_double()) * M_PI;
                double y = (w.a.y.to_double() + lam * (w.b.y - w.a.y).to_double()) * M_PI;
                cplx tv = unfolded_trace(x, y);
                CHECK(line_contains(tv, omega_pow(w.label) * alpha));
            }
        }
    }
}

TEST_CASE("wall slopes lie in {-1, 1/2, 2}") {
    for (int k = 1; k < 54; ++k) {
        Rat a(k, 27);
        if (a == Rat(2, 3) || a == Rat(4, 3)) continue;
        for (const auto& w : walls(a)) {
            Rat dx = w.b.x - w.a.x, dy = w.b.y - w.a.y;
            if (dx.is_zero()) continue; // degenerate medians have been dropped
            Rat slope = dy / dx;
            bool ok = slope == Rat(-1) || slope == Rat(1, 2) || slope == Rat(2);
            CHECK(ok);
        }
    }
}

TEST_CASE("median degenerations") {
    auto ws = walls(Rat(0));
    CHECK(ws.size() == 3);
    auto ws2 = walls(Rat(2, 3));
    CHECK(ws2.size() == 3);
}

TEST_CASE("boundary sides map to deltoid boundary") {
    for (double th = 0.1; th < 2 * M_PI; th += 0.37) {
        CHECK(std::abs(deltoid_f(unfolded_trace(th, th))) < 1e-8);
        CHECK(std::abs(deltoid_f(unfolded_trace(th, 0))) < 1e-8);
        CHECK(std::abs(deltoid_f(unfolded_trace(2 * M_PI, th))) < 1e-8);
        // the nondiagonal sides carry the same classes: tr~(th,0) = tr~(2pi, ...) shifted
        cplx a = unfolded_trace(th, 0.0);
        cplx b = 2.0 * std::polar(1.0, -th / 3) + std::polar(1.0, 2 * th / 3);
        CHECK(std::abs(a - b) < 1e-12);
    }
}
