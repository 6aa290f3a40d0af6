#include "invlip/mean_growth.hpp"

#include "invlip/errors.hpp"
#include "support.hpp"

#include <set>

namespace invlip {

namespace {

struct Extremes {
    Rational hi, lo;
    Word g_hi, g_lo;
    bool found = false;

    void add(const Rational& v, const Word& g) {
        if (!found || v > hi) {
            hi = v;
            g_hi = g;
        }
        if (!found || v < lo) {
            lo = v;
            g_lo = g;
        }
        found = true;
    }
};

MeanGrowth finish(const Word& s, const Word& x, const Extremes& ex, Scope scope) {
    return {s, x, ex.hi, ex.lo, (ex.hi + ex.lo) / 2, std::move(scope), ex.g_hi, ex.g_lo};
}

}  // namespace

MeanGrowth mean_growth(const LipFn& f, const GroupSpace& space, const Word& s_in, const Word& x_in,
                       const Rational& radius) {
    const Word s = space.normal_form(s_in);
    const Word x = space.normal_form(x_in);
    const Word sx = space.multiply(s, x);

    if (f.kind() == LipFn::Kind::pullback) {
        // q is onto, so g q(s) q(x) ranges over the same translates as g s x.
        const GroupSpace& quotient = f.quotient();
        MeanGrowth mg = mean_growth(f.base(), quotient, s, x, radius);
        mg.direction = s;
        mg.base = x;
        return mg;
    }

    Extremes ex;
    if (detail::exact_structured(f, space)) {
        // Off P (sx)^-1 and P x^-1 the difference is the homomorphism value.
        const Rational k = detail::hom_at(f.hom(), s);
        const Word sx_inv = space.inverse(sx);
        const Word x_inv = space.inverse(x);
        std::set<Word> candidates;
        for (const auto& [a, v] : f.table()) {
            candidates.insert(space.multiply(a, sx_inv));
            candidates.insert(space.multiply(a, x_inv));
        }
        candidates.insert(detail::far_element(space, f.support_radius(space) + space.norm(sx) + space.norm(x)));
        for (const auto& g : candidates) {
            ex.add(k + detail::perturbation_at(f, space.multiply(g, sx)) - detail::perturbation_at(f, space.multiply(g, x)), g);
        }
        return finish(s, x, ex, Scope::whole_group());
    }

    const bool finite = detail::exact_finite(f, space);
    const std::vector<Word> gs = finite ? space.elements() : [&] {
        std::vector<Word> out;
        for (auto& p : space.ball(radius).points) out.push_back(std::move(p.element));
        return out;
    }();
    for (const auto& g : gs) {
        ex.add(eval(f, space, space.multiply(g, sx)) - eval(f, space, space.multiply(g, x)), g);
    }
    return finish(s, x, ex, finite ? Scope::whole_group() : Scope::within(radius));
}

bool check_gap(const MeanGrowth& mg, const Rational& delta, const GroupSpace& space) {
    const Rational d = space.distance(space.multiply(mg.direction, mg.base), mg.base);
    return mg.c_plus - mg.c_minus <= delta * d;
}

GapReport gap_characterization(const LipFn& f, const GroupSpace& space, const Rational& radius) {
    if (radius < 1) throw DomainError("gap_characterization needs radius >= 1");
    const Word e = space.identity();
    GapReport best{0, e, Scope::whole_group()};
    bool exact = space.is_word_metric();
    for (const auto& point : space.ball(radius).points) {
        if (point.distance == 0) continue;
        const MeanGrowth mg = mean_growth(f, space, point.element, e, radius);
        exact = exact && mg.scope.exact;
        const Rational ratio = (mg.c_plus - mg.c_minus) / point.distance;
        if (best.direction.is_identity() || ratio > best.value) {
            best.value = ratio;
            best.direction = point.element;
        }
    }
    best.scope = exact ? Scope::whole_group() : Scope::within(radius);
    return best;
}

}  // namespace invlip
