#pragma once

#include "invlip/group_space.hpp"
#include "invlip/kernel_projection.hpp"
#include "invlip/lipschitz.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace invlip {

/// Outcome of one approximation run. Bounds are always stated against the
/// measured defect delta_hat.
struct ApproximationReport {
    std::string pipeline;  // "free", "adjusted", "presented", "orbit"
    Rational delta_hat;
    Rational bound;
    Rational achieved_ball;
    std::optional<Rational> achieved_exact;
    Rational radius;
    bool pass = false;
    Scope defect_scope;
    DefectReport defect;  // group pipelines: witness (g, x, y)
    Word error_x, error_y;  // pair attaining the reported error
    std::string error_space = "group";  // presented pipeline: "quotient" or "free"
    // Orbit pipeline: witnesses are point indices; `defect.g` holds the group element.
    std::size_t defect_px = 0, defect_py = 0, error_px = 0, error_py = 0;
    std::map<std::string, Rational> constants;

    /// achieved_exact when present, else achieved_ball.
    [[nodiscard]] const Rational& achieved() const { return achieved_exact ? *achieved_exact : achieved_ball; }
};

struct Approximation {
    LipFn fbar;
    ApproximationReport report;
};

/// Homomorphism with generator values c_f(s, e); certified ||f - fbar|| <= delta_hat / 2.
Approximation free_approximant(const LipFn& f, const GroupSpace& space, const Rational& radius);

/// True iff the exact ||f - fbar|| <= ||f - h|| for every candidate homomorphism h.
bool optimality_check(const LipFn& f, const LipFn& fbar, const std::vector<HomValues>& candidates,
                      const GroupSpace& space, const Rational& radius);

/// Homomorphism with values u, where |c_f(s, e) - u(s)| <= eta for every s.
/// Certified ||f - fbar|| <= delta_hat / 2 + eta.
Approximation adjusted_approximant(const LipFn& f, const GroupSpace& space, const HomValues& u, const Rational& eta,
                                   const Rational& radius);

/// F = f o q on the free group over the presentation's generators.
LipFn lift_to_free(const LipFn& f, const Presentation& p, const GroupSpace& quotient);

struct PresentedApproximation {
    LipFn fbar;  // homomorphism on the quotient (generator values u)
    ApproximationReport report;
    RationalVector growth;  // x = (c_F(s, e))_s
    KernelProjection projection;
    Rational c_r;    // max_r d(r, e) / 2
    Rational d_emp;  // ||x - u|| / ||A x||, 0 when A x = 0
    bool growth_bound_holds = false;  // ||A x|| <= C_R delta_hat
    bool well_defined = false;        // fbar agrees on w and w r for relators r
};

PresentedApproximation presented_approximant(const LipFn& f, const Presentation& p, const GroupSpace& quotient,
                                             const Rational& radius);

/// A finite group acting by isometries on a finite pointed metric space.
///
/// Point 0 is the basepoint. `generator_action[s][i]` is the image of point i
/// under generator s of `group`; a word acts letter by letter from the right
/// end, so (g h)(p) = g(h(p)).
struct FiniteActionSpace {
    std::vector<std::string> labels;
    std::vector<RationalVector> dist;
    GroupSpace group = GroupSpace::cyclic(1);
    std::vector<Permutation> generator_action;
    std::vector<std::size_t> domain;  // fundamental domain D, contains 0
    Rational alpha = 1;

    [[nodiscard]] std::size_t size() const { return dist.size(); }
    /// Image of every point under g.
    [[nodiscard]] Permutation act(const Word& g) const;
    /// Throws ValidationError listing every failed axiom.
    void validate() const;
};

/// Values of a function on the points of a FiniteActionSpace.
using PointFunction = RationalVector;

/// max over g and points x != y of |(f(gx) - f(x)) - (f(gy) - f(y))| / d(x, y).
struct ActionDefect {
    Rational value;
    Word g;
    std::size_t x = 0, y = 0;
};
ActionDefect action_defect(const FiniteActionSpace& fa, const PointFunction& f);

/// max over pairs of |f(x) - f(y)| / d(x, y).
Rational point_lip_norm(const FiniteActionSpace& fa, const PointFunction& f, std::size_t* arg_x = nullptr,
                        std::size_t* arg_y = nullptr);

struct OrbitApproximation {
    PointFunction fbar;
    ApproximationReport report;
    bool invariant = false;  // fbar(gx) = fbar(x) for all g, x (H = 0)
};

/// fbar(y) = f(x) for the D-point x of y's orbit; certified ||f - fbar|| <= (2 alpha + 1) delta_hat.
OrbitApproximation orbit_collapse_approximant(const FiniteActionSpace& fa, const PointFunction& f);

/// Lipschitz number of f over a finite group is at most delta. Throws
/// PreconditionError when delta_defect(f) > delta and ScopeError on infinite groups.
bool shrink_norm_check(const GroupSpace& space, const LipFn& f, const Rational& delta);

/// f'(h^k) = f(g h^k y) - f(g y) on the cyclic subgroup generated by h, with
/// the pseudometric d'(h^k, h^j) = d(h^k y, h^j y).
struct OrbitRestriction {
    GroupSpace cyclic;  // rank one, normal forms s^k with 0 <= k < order
    LipFn f;
    std::size_t order = 0;
    Rational diameter;  // largest d' to e, enough to cover the subgroup with one ball
};

OrbitRestriction restrict_to_orbit(const LipFn& f, const GroupSpace& space, const Word& g, const Word& y,
                                   const Word& h, std::size_t max_order = 100000);

}  // namespace invlip
