#pragma once

#include "invlip/group_space.hpp"
#include "invlip/lipschitz.hpp"

namespace invlip {

/// Growth of f in direction s at x: the sup, inf and midpoint of
/// f(g s x) - f(g x) over g.
struct MeanGrowth {
    Word direction;
    Word base;
    Rational c_plus;
    Rational c_minus;
    Rational c;
    Scope scope;
    Word g_plus, g_minus;  // translations attaining c_plus and c_minus
};

/// Exact for Structured f on free and free abelian groups, for f defined on
/// all of a finite group, and for pullbacks whose base is exact on the
/// quotient. Otherwise g ranges over ball(radius).
MeanGrowth mean_growth(const LipFn& f, const GroupSpace& space, const Word& s, const Word& x,
                       const Rational& radius);

/// c_plus - c_minus <= delta * d(s x, x).
bool check_gap(const MeanGrowth& mg, const Rational& delta, const GroupSpace& space);

struct GapReport {
    Rational value;
    Word direction;  // attaining s
    Scope scope;
};

/// max over s != e in ball(radius) of (c+(s, e) - c-(s, e)) / d(s, e).
///
/// On a word metric the gap is subadditive along geodesics, so the maximum is
/// already attained on a generator and the value is exact whenever the
/// individual mean growths are.
GapReport gap_characterization(const LipFn& f, const GroupSpace& space, const Rational& radius);

}  // namespace invlip
