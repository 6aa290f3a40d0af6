#pragma once

#include "invlip/group_space.hpp"
#include "invlip/lipschitz.hpp"

#include <optional>

namespace invlip {

/// Whether qm_defects first confirms d(gk, hk) = d(g, h) on the ball.
enum class BiInvariance { verify, skip };

struct QmReport {
    Rational defect_D;   // max |f(gh) - f(g) - f(h)|
    Rational partial_D;  // max of the same over min(d(g, e), d(h, e))
    Scope scope;
    Word defect_g, defect_h;
    Word partial_g, partial_h;
};

/// Scans g, h over ball(radius). Under BiInvariance::verify a non
/// bi-invariant metric raises DomainError with a witness triple (g, h, k).
QmReport qm_defects(const LipFn& f, const GroupSpace& space, const Rational& radius,
                    BiInvariance policy = BiInvariance::verify);

/// First (g, h, k) in ball(radius) with d(gk, hk) != d(g, h), if any. Uses
/// left invariance to reduce to |k^-1 x k| = |x| for x in ball(2 radius) and
/// generators k.
struct BiInvarianceWitness {
    Word g, h, k;
};
std::optional<BiInvarianceWitness> find_bi_invariance_violation(const GroupSpace& space, const Rational& radius);

struct TwoSidedDefect {
    Rational value;        // max of the two
    Rational left, right;  // x -> f(gx) - f(x) and x -> f(x g^-1) - f(x)
    Word left_g, left_x, left_y;
    Word right_g, right_x, right_y;
    Scope scope;
};

/// Invariance defect for both translation actions, g, x, y over ball(radius).
TwoSidedDefect two_sided_defect(const LipFn& f, const GroupSpace& space, const Rational& radius);

struct PqmImplications {
    bool i = false;    // partial_D <= delta / 2
    bool ii = false;   // two-sided defect <= delta
    bool iii = false;  // partial_D <= delta
    QmReport qm;
    TwoSidedDefect defect;

    /// Neither (i and not ii) nor (ii and not iii).
    [[nodiscard]] bool consistent() const { return !(i && !ii) && !(ii && !iii); }
};

/// Implication flags for given defects at threshold delta.
PqmImplications evaluate_implications(const QmReport& qm, const TwoSidedDefect& defect, const Rational& delta);

PqmImplications check_pqm_implications(const LipFn& f, const GroupSpace& space, const Rational& delta,
                                       const Rational& radius, BiInvariance policy = BiInvariance::verify);

struct PqmConstant {
    Rational constant;  // 2 L(f) + |f(e)| / A
    Rational lipschitz;
    Rational partial_D;
    bool holds = false;  // partial_D <= constant on the ball
};

/// Requires d(g, e) >= A > 0 for g != e in the ball (DomainError otherwise).
/// `known` reuses an earlier qm_defects result on the same ball.
PqmConstant pqm_constant_from_lipschitz(const LipFn& f, const GroupSpace& space, const Rational& a,
                                        const Rational& radius, BiInvariance policy = BiInvariance::verify,
                                        const QmReport* known = nullptr);

}  // namespace invlip
