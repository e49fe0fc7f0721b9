#pragma once

#include <stdexcept>
#include <string>

namespace chd {

struct chd_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IsotropicPoint : chd_error { using chd_error::chd_error; };
struct IsotropicCenter : chd_error { using chd_error::chd_error; };
struct CoincidentPoints : chd_error { using chd_error::chd_error; };
struct PointNotOnLine : chd_error { using chd_error::chd_error; };
struct DegenerateOrthogonal : chd_error { using chd_error::chd_error; };
struct Unrealizable : chd_error { using chd_error::chd_error; };
struct NotUnitary : chd_error { using chd_error::chd_error; };
struct NumericallyAmbiguous : chd_error { using chd_error::chd_error; };
struct NotElliptic : chd_error { using chd_error::chd_error; };
struct NotFormPreserving : chd_error { using chd_error::chd_error; };
struct NotConjugate : chd_error { using chd_error::chd_error; };
struct IllConditioned : chd_error { using chd_error::chd_error; };
struct ParameterOutOfRange : chd_error { using chd_error::chd_error; };
struct OutOfTriangle : chd_error { using chd_error::chd_error; };
struct OutsideDeltoid : chd_error { using chd_error::chd_error; };
struct TransitionParameter : chd_error { using chd_error::chd_error; };
struct OnWall : chd_error { using chd_error::chd_error; };
struct NotHyperbolicLine : chd_error { using chd_error::chd_error; };
struct ConjugationFailed : chd_error { using chd_error::chd_error; };
struct SearchExhausted : chd_error { using chd_error::chd_error; };
struct RationalOverflow : chd_error { using chd_error::chd_error; };

} // namespace chd
