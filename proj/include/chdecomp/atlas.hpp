#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chdecomp/rational.hpp"
#include "chdecomp/trace_geometry.hpp"
#include "chdecomp/unfolded.hpp"

namespace chd {

// Classes represented at segment endpoints of the length-2 sets.
enum class EndCls {
    regular_elliptic,
    special_elliptic_neg,
    special_elliptic_pos,
    ellipto_parabolic,
    identity,
    unipotent_3step,
};

// One segment of an E^{s1 s2} set, coordinates in units of pi. t_lo/t_hi is the tance range
// the segment is traced by (the segment interior corresponds to regular elliptic classes).
template <typename T>
struct ESeg {
    T x1, y1, x2, y2;
    std::vector<EndCls> cls_a, cls_b;
    double t_at_a = 0, t_at_b = 0; // tance parameter at each endpoint
};

template <typename T>
struct ESigmaSet {
    int s1 = 0, s2 = 0;
    std::vector<ESeg<T>> segs; // one or two; a point is a zero-length segment
};

// Exact segments of E^{s1 s2}_{a1,a2}; angles in units of pi, 0 < a1, a2 < 2/3.
ESigmaSet<Rat> e_sigma_segments(const Rat& a1, const Rat& a2, int s1, int s2);
// Float variant for synthesis with irrational parameters (angles in units of pi).
ESigmaSet<double> e_sigma_segments_f(double a1, double a2, int s1, int s2);

// Closed-segment intersection in T including the boundary identification
// (th,0) ~ (2,th); true if the two unions of segments meet.
bool esets_intersect(const std::vector<ESeg<Rat>>& A, const std::vector<ESeg<Rat>>& B);

// Prop. diagchamb criterion at the diagonal point (theta, theta), theta in units of pi:
// beta = e^{i theta/3}; fails with OnWall if (theta,theta) lies on a wall of alpha's atlas.
bool diag_chamber_full(const Rat& theta, const Rat& a);

enum class ChamberStatus { full, empty, unknown };

struct Chamber {
    std::vector<RatPt> poly; // convex, CCW
    ChamberStatus status = ChamberStatus::unknown;
    int criterion = 0; // 1 nondiagonal side, 2 trace-zero class, 3 diagonal test,
                       // 4 theorem window, 5 certified interior witness
    RatPt sample{};    // the point the decision was made at
};

struct Atlas {
    Rat a; // parameter angle in units of pi, 0 < a < 2/3
    std::vector<WallSegment> wall_segs;
    std::vector<Chamber> chambers;
};

// Chamber decomposition of T for parameter alpha = e^{a pi i}. certify, when given,
// resolves chambers the closed-form criteria leave open by synthesizing a decomposition
// at an interior sample (angles in radians).
Atlas chambers(const Rat& a, const std::function<bool(double, double)>& certify = {});

// Status of the chamber(s) containing an angle pair (radians). Points on walls take the
// best status among incident chambers (full chambers are closed).
ChamberStatus status_at(const Atlas& at, double th1, double th2);

struct SweepRecord {
    Rat a;
    bool transition = false; // exact multiple of 2pi/27
    std::string fingerprint; // chamber statuses in canonical order
    int empty_count = 0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<Rat> detected_transitions; // grid points adjacent to a pattern change
};

SweepResult sweep(const Rat& from, const Rat& to, int steps,
                  const std::function<bool(double, double)>& certify = {});

// exact test: is a (in units of pi) a multiple of 2/27?
bool is_transition_parameter(const Rat& a);

} // namespace chd
