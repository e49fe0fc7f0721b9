#pragma once

#include <vector>

#include "chdecomp/isometry.hpp"
#include "chdecomp/rational.hpp"

namespace chd {

// tr~(th1, th2) = e^{(2th1-th2)i/3} + e^{(2th2-th1)i/3} + e^{-(th1+th2)i/3},
// angles in radians with 0 <= th2 <= th1 <= 2pi
cplx unfolded_trace(double th1, double th2);

// inverse of tr~ on the closed deltoid; returns the canonical T representative
std::pair<double, double> unfolded_inverse(cplx tau);

// wall segment in T, coordinates in units of pi; label j in {0,1,2} marks which of
// ell_{w^j alpha} the segment is the preimage of; slope_num/slope_den in {-1, 1/2, 2}
struct WallSegment {
    RatPt a, b;
    int label;
};

// Preimage under tr~ of ell_alpha ∪ ell_{w alpha} ∪ ell_{w^2 alpha} for alpha = e^{a i},
// a in [0, 2pi) given in units of pi. Six chords generically, the medians of T when
// a is 0, 2pi/3 or 4pi/3. Zero-length segments are dropped.
std::vector<WallSegment> walls(const Rat& a_pi);

} // namespace chd
