#include "chdecomp/atlas.hpp"

#include <algorithm>
#include <cmath>

namespace chd {

namespace {

template <typename T>
ESeg<T> make_seg(T x1, T y1, T x2, T y2, std::vector<EndCls> ca, std::vector<EndCls> cb,
                 double ta, double tb) {
    return ESeg<T>{x1, y1, x2, y2, std::move(ca), std::move(cb), ta, tb};
}

template <typename T>
ESigmaSet<T> esigma_impl(T a1, T a2, int s1, int s2, double tm, double tp) {
    const T zero(0), one(1), two(2);
    const T twothirds = T(2) / T(3);
    const T s = a1 + a2;
    const T s32 = T(3) * s / T(2);
    ESigmaSet<T> out;
    out.s1 = s1;
    out.s2 = s2;

    if (s1 < 0 && s2 < 0) {
        if (s == twothirds) {
            out.segs.push_back(make_seg(two, two, two, two, std::vector<EndCls>{EndCls::identity},
                                        std::vector<EndCls>{EndCls::identity}, 1.0, 1.0));
        } else if (s < twothirds) {
            out.segs.push_back(make_seg(T(3) * s, T(3) * s, two, one + s32,
                                        {EndCls::special_elliptic_neg},
                                        {EndCls::ellipto_parabolic}, 1.0, tp));
        } else {
            out.segs.push_back(make_seg(T(3) * s - two, T(3) * s - two, s32 - one, zero,
                                        {EndCls::special_elliptic_neg},
                                        {EndCls::ellipto_parabolic}, 1.0, tp));
        }
        return out;
    }

    if (s1 > 0 && s2 > 0) {
        T ex = two - T(3) * (a1 <= a2 ? a1 : a2);
        T ey = two - T(3) * (a1 <= a2 ? a2 : a1);
        std::vector<EndCls> ecls = (a1 == a2) ? std::vector<EndCls>{EndCls::special_elliptic_neg}
                                              : std::vector<EndCls>{EndCls::regular_elliptic};
        std::vector<EndCls> vcls = {EndCls::special_elliptic_pos, EndCls::ellipto_parabolic};
        if (s < twothirds) {
            T vx = two, vy = two - T(3) * s;
            out.segs.push_back(make_seg(ex, ey, vx, vy, ecls, vcls, 0.0, 1.0));
            out.segs.push_back(make_seg(vx, vy, one + s32, zero, vcls,
                                        {EndCls::ellipto_parabolic}, 1.0, tp));
        } else if (s == twothirds) {
            out.segs.push_back(make_seg(ex, ey, two, zero, ecls,
                                        {EndCls::identity, EndCls::unipotent_3step}, 0.0, 1.0));
        } else {
            T vx = T(4) - T(3) * s, vy = zero;
            out.segs.push_back(make_seg(vx, vy, ex, ey, vcls, ecls, 1.0, 0.0));
            out.segs.push_back(make_seg(two, s32 - one, vx, vy, {EndCls::ellipto_parabolic},
                                        vcls, tp, 1.0));
        }
        return out;
    }

    // mixed signatures
    if (s1 > 0 && s2 < 0) {
        if (a1 == a2) {
            out.segs.push_back(make_seg(T(3) * a2, zero, T(3) * a2, zero,
                                        {EndCls::special_elliptic_pos},
                                        {EndCls::special_elliptic_pos}, 0.0, 0.0));
        } else if (a1 < a2) {
            out.segs.push_back(make_seg(T(3) * a2, T(3) * (a2 - a1), s32, zero,
                                        {EndCls::regular_elliptic},
                                        {EndCls::ellipto_parabolic}, 0.0, tm));
        } else {
            out.segs.push_back(make_seg(two + T(3) * (a2 - a1), T(3) * a2, two, s32,
                                        {EndCls::regular_elliptic},
                                        {EndCls::ellipto_parabolic}, 0.0, tm));
        }
        return out;
    }

    // s1 < 0 && s2 > 0
    if (a1 == a2) {
        out.segs.push_back(make_seg(T(3) * a1, zero, T(3) * a1, zero,
                                    {EndCls::special_elliptic_pos},
                                    {EndCls::special_elliptic_pos}, 0.0, 0.0));
    } else if (a1 < a2) {
        out.segs.push_back(make_seg(two + T(3) * (a1 - a2), T(3) * a1, two, s32,
                                    {EndCls::regular_elliptic},
                                    {EndCls::ellipto_parabolic}, 0.0, tm));
    } else {
        out.segs.push_back(make_seg(T(3) * a1, T(3) * (a1 - a2), s32, zero,
                                    {EndCls::regular_elliptic},
                                    {EndCls::ellipto_parabolic}, 0.0, tm));
    }
    return out;
}

std::pair<double, double> tpm_units(double a1, double a2) {
    return t_plus_minus(std::polar(1.0, a1 * M_PI), std::polar(1.0, a2 * M_PI));
}

} // namespace

ESigmaSet<Rat> e_sigma_segments(const Rat& a1, const Rat& a2, int s1, int s2) {
    if (!(Rat(0) < a1 && a1 < Rat(2, 3) && Rat(0) < a2 && a2 < Rat(2, 3)))
        throw ParameterOutOfRange("e_sigma_segments: angles must be in (0, 2pi/3)");
    auto [tm, tp] = tpm_units(a1.to_double(), a2.to_double());
    return esigma_impl<Rat>(a1, a2, s1, s2, tm, tp);
}

ESigmaSet<double> e_sigma_segments_f(double a1, double a2, int s1, int s2) {
    if (!(0 < a1 && a1 < 2.0 / 3.0 && 0 < a2 && a2 < 2.0 / 3.0))
        throw ParameterOutOfRange("e_sigma_segments_f: angles must be in (0, 2pi/3)");
    auto [tm, tp] = tpm_units(a1, a2);
    return esigma_impl<double>(a1, a2, s1, s2, tm, tp);
}

// ----- exact segment predicates ---------------------------------------------------------

namespace {

bool on_segment(const RatPt& p, const RatPt& a, const RatPt& b) {
    if (cross(a, b, p) != Rat(0)) return false;
    return cmp(std::min(a.x, b.x, [](const Rat& u, const Rat& v) { return u < v; }), p.x) <= 0 &&
           cmp(p.x, std::max(a.x, b.x, [](const Rat& u, const Rat& v) { return u < v; })) <= 0 &&
           cmp(std::min(a.y, b.y, [](const Rat& u, const Rat& v) { return u < v; }), p.y) <= 0 &&
           cmp(p.y, std::max(a.y, b.y, [](const Rat& u, const Rat& v) { return u < v; })) <= 0;
}

bool segments_meet(const RatPt& a, const RatPt& b, const RatPt& c, const RatPt& d) {
    const Rat z(0);
    Rat o1 = cross(a, b, c), o2 = cross(a, b, d), o3 = cross(c, d, a), o4 = cross(c, d, b);
    if (sign(o1) * sign(o2) < 0 && sign(o3) * sign(o4) < 0) return true;
    if (o1 == z && on_segment(c, a, b)) return true;
    if (o2 == z && on_segment(d, a, b)) return true;
    if (o3 == z && on_segment(a, c, d)) return true;
    if (o4 == z && on_segment(b, c, d)) return true;
    return false;
}

// boundary identification reps of a point
std::vector<RatPt> boundary_reps(const RatPt& p) {
    const Rat two(2), zero(0);
    std::vector<RatPt> reps = {p};
    if (p.y == zero) reps.push_back(RatPt{two, p.x});
    if (p.x == two) reps.push_back(RatPt{p.y, zero});
    if (p.x == two && p.y == two) reps.push_back(RatPt{zero, zero});
    if (p.x == zero && p.y == zero) { reps.push_back(RatPt{two, zero}); reps.push_back(RatPt{two, two}); }
    return reps;
}

} // namespace

bool esets_intersect(const std::vector<ESeg<Rat>>& A, const std::vector<ESeg<Rat>>& B) {
    auto endpoints = [](const ESeg<Rat>& s) {
        return std::array<RatPt, 2>{RatPt{s.x1, s.y1}, RatPt{s.x2, s.y2}};
    };
    for (const auto& sa : A)
        for (const auto& sb : B) {
            RatPt a1{sa.x1, sa.y1}, a2{sa.x2, sa.y2}, b1{sb.x1, sb.y1}, b2{sb.x2, sb.y2};
            if (segments_meet(a1, a2, b1, b2)) return true;
            for (const auto& e : endpoints(sa))
                for (const auto& r : boundary_reps(e))
                    if (on_segment(r, b1, b2)) return true;
            for (const auto& e : endpoints(sb))
                for (const auto& r : boundary_reps(e))
                    if (on_segment(r, a1, a2)) return true;
        }
    return false;
}

bool diag_chamber_full(const Rat& theta, const Rat& a) {
    auto ws = walls(rat_mod(Rat(3) * a, Rat(2)));
    RatPt p{theta, theta};
    for (const auto& w : ws)
        if (on_segment(p, w.a, w.b)) throw OnWall("diag_chamber_full: sample lies on a wall");
    auto U1a = e_sigma_segments(a, a, -1, -1).segs;
    auto U1b = e_sigma_segments(a, a, +1, +1).segs;
    std::vector<ESeg<Rat>> U1 = U1a;
    U1.insert(U1.end(), U1b.begin(), U1b.end());
    const Rat beta = theta / Rat(3);
    const Rat ac = Rat(2, 3) - a; // Omega-normalized conjugate parameter
    auto U2a = e_sigma_segments(beta, ac, -1, -1).segs;
    auto U2b = e_sigma_segments(beta, ac, -1, +1).segs;
    std::vector<ESeg<Rat>> U2 = U2a;
    U2.insert(U2.end(), U2b.begin(), U2b.end());
    return esets_intersect(U1, U2);
}

// ----- chamber arrangement --------------------------------------------------------------

namespace {

struct RatLine {
    Rat A, B, C; // A x + B y = C
};

RatLine line_of(const RatPt& p, const RatPt& q) {
    Rat A = q.y - p.y, B = p.x - q.x;
    return RatLine{A, B, A * p.x + B * p.y};
}

int side(const RatLine& l, const RatPt& p) { return sign(l.A * p.x + l.B * p.y - l.C); }

bool same_line(const RatLine& a, const RatLine& b) {
    return a.A * b.B == b.A * a.B && a.A * b.C == b.A * a.C && a.B * b.C == b.B * a.C;
}

using Poly = std::vector<RatPt>;

Rat poly_area2(const Poly& p) {
    Rat s(0);
    for (size_t i = 0; i < p.size(); ++i) {
        const RatPt& a = p[i];
        const RatPt& b = p[(i + 1) % p.size()];
        s = s + (a.x * b.y - b.x * a.y);
    }
    return s; // twice the signed area
}

Poly dedupe(Poly p) {
    Poly out;
    for (auto& v : p)
        if (out.empty() || !(out.back() == v)) out.push_back(v);
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

std::pair<Poly, Poly> split_poly(const Poly& poly, const RatLine& l) {
    Poly neg, pos;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const RatPt& p = poly[i];
        const RatPt& q = poly[(i + 1) % n];
        int sp = side(l, p), sq = side(l, q);
        if (sp <= 0) neg.push_back(p);
        if (sp >= 0) pos.push_back(p);
        if (sp * sq < 0) {
            // intersection point on the edge
            Rat t = (l.C - l.A * p.x - l.B * p.y) / (l.A * (q.x - p.x) + l.B * (q.y - p.y));
            RatPt x{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
            neg.push_back(x);
            pos.push_back(x);
        }
    }
    auto clean = [](Poly p) {
        p = dedupe(std::move(p));
        if (p.size() < 3 || poly_area2(p) == Rat(0)) p.clear();
        return p;
    };
    return {clean(std::move(neg)), clean(std::move(pos))};
}

Poly canonical_poly(Poly p) {
    if (sign(poly_area2(p)) < 0) std::reverse(p.begin(), p.end());
    size_t best = 0;
    for (size_t i = 1; i < p.size(); ++i)
        if (lex_less(p[i], p[best])) best = i;
    std::rotate(p.begin(), p.begin() + best, p.end());
    return p;
}

bool point_in_poly(const Poly& p, const RatPt& q) {
    for (size_t i = 0; i < p.size(); ++i)
        if (sign(cross(p[i], p[(i + 1) % p.size()], q)) < 0) return false;
    return true;
}

RatPt centroid(const Poly& p) {
    Rat sx(0), sy(0);
    for (auto& v : p) { sx = sx + v.x; sy = sy + v.y; }
    Rat n(std::int64_t(p.size()));
    return RatPt{sx / n, sy / n};
}

} // namespace

bool is_transition_parameter(const Rat& a) {
    return (a * Rat(27, 2)).is_integer();
}

Atlas chambers(const Rat& a, const std::function<bool(double, double)>& certify) {
    if (!(Rat(0) < a && a < Rat(2, 3)))
        throw ParameterOutOfRange("chambers: parameter angle must be in (0, 2pi/3)");
    if (is_transition_parameter(a))
        throw TransitionParameter("chambers: chamber degeneration at a multiple of 2pi/27");

    Atlas at;
    at.a = a;
    at.wall_segs = walls(rat_mod(Rat(3) * a, Rat(2)));

    std::vector<RatLine> lines;
    for (const auto& w : at.wall_segs) {
        RatLine l = line_of(w.a, w.b);
        bool dup = false;
        for (const auto& o : lines)
            if (same_line(l, o)) { dup = true; break; }
        if (!dup) lines.push_back(l);
    }

    const Rat two(2), zero(0);
    std::vector<Poly> cells = {Poly{RatPt{zero, zero}, RatPt{two, zero}, RatPt{two, two}}};
    for (const auto& l : lines) {
        std::vector<Poly> next;
        for (const auto& c : cells) {
            auto [lo, hi] = split_poly(c, l);
            if (!lo.empty()) next.push_back(lo);
            if (!hi.empty()) next.push_back(hi);
        }
        cells = std::move(next);
    }

    for (auto& c : cells) c = canonical_poly(std::move(c));
    std::sort(cells.begin(), cells.end(),
              [](const Poly& a_, const Poly& b_) { return lex_less(a_[0], b_[0]); });

    const RatPt trace0{Rat(4, 3), Rat(2, 3)};
    const bool outside_window = a <= Rat(4, 27) || a >= Rat(14, 27);

    for (auto& poly : cells) {
        Chamber ch;
        ch.poly = poly;
        const size_t n = poly.size();
        bool decided = false;
        // (1) open segment of the nondiagonal side (bottom y=0 or right x=2)
        for (size_t i = 0; i < n && !decided; ++i) {
            const RatPt& p = poly[i];
            const RatPt& q = poly[(i + 1) % n];
            if (p == q) continue;
            if ((p.y == Rat(0) && q.y == Rat(0)) || (p.x == Rat(2) && q.x == Rat(2))) {
                ch.status = ChamberStatus::full;
                ch.criterion = 1;
                ch.sample = RatPt{(p.x + q.x) / Rat(2), (p.y + q.y) / Rat(2)};
                decided = true;
            }
        }
        // (2) the trace-zero class admits a decomposition for every parameter
        if (!decided && point_in_poly(poly, trace0)) {
            ch.status = ChamberStatus::full;
            ch.criterion = 2;
            ch.sample = trace0;
            decided = true;
        }
        // (3) diagonal chambers: Prop. diagchamb criterion at the diagonal edge midpoint
        for (size_t i = 0; i < n && !decided; ++i) {
            const RatPt& p = poly[i];
            const RatPt& q = poly[(i + 1) % n];
            if (p == q || !(p.x == p.y && q.x == q.y)) continue;
            RatPt mid{(p.x + q.x) / Rat(2), (p.y + q.y) / Rat(2)};
            ch.status = diag_chamber_full(mid.x, a) ? ChamberStatus::full : ChamberStatus::empty;
            ch.criterion = 3;
            ch.sample = mid;
            decided = true;
        }
        // (4) outside the window of Theorem 1 every chamber is full
        if (!decided && outside_window) {
            ch.status = ChamberStatus::full;
            ch.criterion = 4;
            ch.sample = centroid(poly);
            decided = true;
        }
        // (5) certified interior witness
        if (!decided) {
            RatPt c = centroid(poly);
            ch.sample = c;
            ch.criterion = 5;
            if (certify && certify(c.x.to_double() * M_PI, c.y.to_double() * M_PI))
                ch.status = ChamberStatus::full;
            else
                ch.status = ChamberStatus::unknown;
        }
        at.chambers.push_back(std::move(ch));
    }
    return at;
}

ChamberStatus status_at(const Atlas& at, double th1, double th2) {
    const double tol = 1e-9;
    auto reps_of = [&](double x, double y) {
        std::vector<std::pair<double, double>> reps = {{x, y}};
        if (std::abs(y) < tol) reps.push_back({2.0, x});
        if (std::abs(x - 2.0) < tol) reps.push_back({y, 0.0});
        return reps;
    };
    bool any_full = false, any_empty = false, any_unknown = false;
    for (const auto& ch : at.chambers) {
        bool inside = false;
        for (auto [px, py] : reps_of(th1 / M_PI, th2 / M_PI)) {
            bool in = true;
            const size_t n = ch.poly.size();
            for (size_t i = 0; i < n && in; ++i) {
                const RatPt& a = ch.poly[i];
                const RatPt& b = ch.poly[(i + 1) % n];
                double cx = (b.x.to_double() - a.x.to_double()) * (py - a.y.to_double()) -
                            (b.y.to_double() - a.y.to_double()) * (px - a.x.to_double());
                if (cx < -tol) in = false;
            }
            if (in) { inside = true; break; }
        }
        if (!inside) continue;
        switch (ch.status) {
            case ChamberStatus::full: any_full = true; break;
            case ChamberStatus::empty: any_empty = true; break;
            case ChamberStatus::unknown: any_unknown = true; break;
        }
    }
    if (any_full) return ChamberStatus::full;
    if (any_unknown) return ChamberStatus::unknown;
    if (any_empty) return ChamberStatus::empty;
    return ChamberStatus::unknown;
}

SweepResult sweep(const Rat& from, const Rat& to, int steps,
                  const std::function<bool(double, double)>& certify) {
    SweepResult out;
    const Rat h = (to - from) / Rat(steps);
    std::string last;
    bool last_valid = false;
    for (int k = 0; k <= steps; ++k) {
        Rat a = from + Rat(k) * h;
        if (!(Rat(0) < a && a < Rat(2, 3))) continue;
        SweepRecord rec;
        rec.a = a;
        if (is_transition_parameter(a)) {
            rec.transition = true;
            out.records.push_back(rec);
            out.detected_transitions.push_back(a);
            last_valid = false;
            continue;
        }
        Atlas at = chambers(a, certify);
        for (const auto& ch : at.chambers) {
            rec.fingerprint += ch.status == ChamberStatus::full    ? 'F'
                               : ch.status == ChamberStatus::empty ? 'E'
                                                                   : 'U';
            if (ch.status == ChamberStatus::empty) ++rec.empty_count;
        }
        if (last_valid && rec.fingerprint != last)
            out.detected_transitions.push_back(a);
        last = rec.fingerprint;
        last_valid = true;
        out.records.push_back(std::move(rec));
    }
    return out;
}

} // namespace chd
