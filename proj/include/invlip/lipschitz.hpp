#pragma once

#include "invlip/group_space.hpp"
#include "invlip/rational.hpp"
#include "invlip/word.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace invlip {

/// Where a supremum was taken: over the whole group, or over a ball of radius R.
/// Ball-scoped values are certified lower bounds of the global supremum.
struct Scope {
    bool exact = false;
    Rational radius = 0;

    static Scope whole_group() { return {true, 0}; }
    static Scope within(const Rational& r) { return {false, r}; }
    [[nodiscard]] std::string describe() const { return exact ? "exact" : "ball(" + to_string(radius) + ")"; }

    friend bool operator==(const Scope&, const Scope&) = default;
};

using PointTable = std::map<Word, Rational>;
using HomValues = RationalVector;

/// A Lipschitz function on a group, vanishing at e unless `pointed` is false.
///
/// Tabulated: values on a finite set of normal forms.
/// Structured: f(g) = sum_s hom[s] * #(g, s) + perturbation(g), where
///   #(g, s) is the exponent sum of the normal form of g.
/// Pullback: F = f o q on the free group over the quotient's generators.
class LipFn {
public:
    enum class Kind { tabulated, structured, pullback };

    static LipFn tabulated(PointTable values, bool pointed = true);
    static LipFn structured(HomValues hom, PointTable perturbation = {}, bool pointed = true);
    static LipFn homomorphism(HomValues hom) { return structured(std::move(hom)); }
    static LipFn pullback(const LipFn& base, const GroupSpace& quotient);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_structured() const { return kind_ == Kind::structured; }
    [[nodiscard]] bool pointed() const { return pointed_; }
    /// Tabulated values or Structured perturbation (zeros removed).
    [[nodiscard]] const PointTable& table() const { return table_; }
    [[nodiscard]] const HomValues& hom() const { return hom_; }
    [[nodiscard]] const LipFn& base() const;
    [[nodiscard]] const GroupSpace& quotient() const;
    /// Largest norm of a perturbation support point (Structured only).
    [[nodiscard]] Rational support_radius(const GroupSpace& space) const;

private:
    Kind kind_ = Kind::tabulated;
    bool pointed_ = true;
    PointTable table_;
    HomValues hom_;
    std::shared_ptr<const LipFn> base_;
    std::shared_ptr<const GroupSpace> quotient_;
};

/// Value of f at the group element represented by g.
Rational eval(const LipFn& f, const GroupSpace& space, const Word& g);

/// Structured difference f - g (hom and perturbation subtract pointwise).
LipFn subtract(const LipFn& f, const LipFn& g);

/// Lipschitz number over all pairs of `points`.
///
/// Pairs at distance 0 are only legal when `allow_pseudometric` is set and the
/// two values agree; otherwise UnboundedNormError.
Rational lip_norm(const LipFn& f, const std::vector<Word>& points, const GroupSpace& space,
                  bool allow_pseudometric = false);

struct LipReport {
    Rational value;
    Word x, y;  // attaining pair
    Scope scope;
};

/// Lipschitz number of f, exact whenever the backend allows it: Structured f on
/// free or free abelian groups (Cayley-graph edge scan around the support plus
/// the homomorphism tail) and any fully evaluable f on a finite group.
/// Otherwise the pairwise maximum over ball(radius).
LipReport lipschitz_number(const LipFn& f, const GroupSpace& space, const Rational& radius);

struct HomNorm {
    Rational value;
    Scope scope;
};

/// L(h) = sup_{g != e} |h(g)| / d(g, e); exact max_s |h(s)| on free and free
/// abelian backends, ball(radius) scan elsewhere.
HomNorm hom_norm(const HomValues& hom, const GroupSpace& space, const Rational& radius);

struct DefectReport {
    Rational delta_hat;
    Word g, x, y;  // |(f(gx) - f(x)) - (f(gy) - f(y))| / d(x, y) = delta_hat
    Scope scope;
};

/// Smallest delta for which f is delta-invariant under left translations.
DefectReport delta_defect(const LipFn& f, const GroupSpace& space, const Rational& radius);

/// Recomputes the defect ratio at a witness triple.
Rational defect_at(const LipFn& f, const GroupSpace& space, const Word& g, const Word& x, const Word& y);

/// |f(g1...gn x) - f(x) - sum_i (f(gi y) - f(y))| <= delta (n d(x,y) + sum_{i>=2} d(gi x, x)).
bool check_chain_inequality(const LipFn& f, const GroupSpace& space, const std::vector<Word>& gs, const Word& x,
                            const Word& y, const Rational& delta);

/// H(s) = f(s) when f(gx) - f(x) is independent of x on the checked scope.
std::optional<HomValues> detect_invariance(const LipFn& f, const GroupSpace& space, const Rational& radius);

/// Random Structured function whose perturbation has Lipschitz number at most
/// delta / 2, hence delta-invariant. Homomorphism values are drawn only for
/// infinite word backends; a finite group has no nonzero homomorphism to R.
LipFn random_delta_invariant(const GroupSpace& space, const Rational& delta, const Rational& support_radius,
                             std::uint64_t seed);

/// Small deterministic generator shared by the random constructions; output is
/// identical across standard libraries.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed);
    std::uint64_t next();
    /// Uniform-ish integer in [lo, hi].
    long long between(long long lo, long long hi);
    /// num / den with num in [-num_bound, num_bound], den in [1, den_bound].
    Rational rational(long long num_bound, long long den_bound);

private:
    std::uint64_t state_;
};

}  // namespace invlip
