#include "chdecomp/unfolded.hpp"

#include <cmath>

namespace chd {

cplx unfolded_trace(double th1, double th2) {
    if (!(th2 >= -1e-9 && th1 >= th2 - 1e-9 && th1 <= 2.0 * M_PI + 1e-9))
        throw OutOfTriangle("unfolded_trace: angle pair outside T");
    return std::polar(1.0, (2.0 * th1 - th2) / 3.0) +
           std::polar(1.0, (2.0 * th2 - th1) / 3.0) +
           std::polar(1.0, -(th1 + th2) / 3.0);
}

std::pair<double, double> unfolded_inverse(cplx tau) {
    if (deltoid_f(tau) > 1e-8 * (1.0 + std::pow(std::abs(tau), 4)))
        throw OutsideDeltoid("unfolded_inverse: trace outside the deltoid");
    auto roots = cubic_roots(-tau, std::conj(tau), cplx(-1, 0));
    for (auto& r : roots) r /= std::abs(r);
    // one choice of negative-type eigenvalue reproduces tau itself (the others give
    // w tau, w^2 tau); pick it
    double best = 1e300;
    std::pair<double, double> out{0, 0};
    for (int neg = 0; neg < 3; ++neg) {
        std::array<double, 2> th;
        int j = 0;
        for (int i = 0; i < 3; ++i)
            if (i != neg) th[j++] = std::arg(roots[i] * std::conj(roots[neg]));
        auto pair = canonical_pair(th[0], th[1]);
        double d = std::abs(unfolded_trace(pair.first, pair.second) - tau);
        if (d < best) { best = d; out = pair; }
    }
    return out;
}

namespace {

WallSegment seg(Rat x1, Rat y1, Rat x2, Rat y2, int label) {
    return WallSegment{RatPt{x1, y1}, RatPt{x2, y2}, label};
}

} // namespace

std::vector<WallSegment> walls(const Rat& a_in) {
    const Rat two(2), zero(0);
    Rat a = rat_mod(a_in, two);
    const Rat a32 = Rat(3, 2) * a; // 3a/2 in pi units
    const Rat a3 = Rat(3) * a;     // 3a
    std::vector<WallSegment> out;
    if (a < Rat(2, 3)) {
        out = {
            seg(a32, zero, a3, a3, 0),
            seg(a3, a3, two, Rat(1) + a32, 0),
            seg(two - a32, two - a32, two, two - a3, 1),
            seg(two, two - a3, Rat(1) + a32, zero, 1),
            seg(Rat(1) - a32, Rat(1) - a32, two - a3, zero, 2),
            seg(two - a3, zero, two, a32, 2),
        };
    } else if (a < Rat(4, 3)) {
        out = {
            seg(Rat(3) - a32, Rat(3) - a32, two, Rat(4) - a3, 0),
            seg(two, Rat(4) - a3, a32, zero, 0),
            seg(two, a32 - Rat(1), Rat(4) - a3, zero, 1),
            seg(Rat(4) - a3, zero, two - a32, two - a32, 1),
            seg(a32 - Rat(1), zero, a3 - two, a3 - two, 2),
            seg(a3 - two, a3 - two, two, a32, 2),
        };
    } else {
        out = {
            seg(two, a32 - two, Rat(6) - a3, zero, 0),
            seg(Rat(6) - a3, zero, Rat(3) - a32, Rat(3) - a32, 0),
            seg(a32 - two, zero, a3 - Rat(4), a3 - Rat(4), 1),
            seg(a3 - Rat(4), a3 - Rat(4), two, a32 - Rat(1), 1),
            seg(Rat(4) - a32, Rat(4) - a32, two, Rat(6) - a3, 2),
            seg(two, Rat(6) - a3, a32 - Rat(1), zero, 2),
        };
    }
    std::vector<WallSegment> keep;
    for (auto& s : out)
        if (s.a != s.b) keep.push_back(s);
    return keep;
}

} // namespace chd
