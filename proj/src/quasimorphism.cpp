#include "invlip/quasimorphism.hpp"

#include "invlip/errors.hpp"

#include <unordered_map>

namespace invlip {

namespace {

// Memoized evaluation; products of ball points repeat heavily.
class ValueCache {
public:
    ValueCache(const LipFn& f, const GroupSpace& space) : f_(f), space_(space) {}

    const Rational& operator()(const Word& w) {
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(w, eval(f_, space_, w)).first->second;
    }

private:
    const LipFn& f_;
    const GroupSpace& space_;
    std::unordered_map<Word, Rational, WordHash> cache_;
};

}  // namespace

std::optional<BiInvarianceWitness> find_bi_invariance_violation(const GroupSpace& space, const Rational& radius) {
    const Word e = space.identity();
    for (const auto& p : space.ball(2 * radius).points) {
        for (std::uint32_t s = 0; s < space.rank(); ++s) {
            for (int sign : {1, -1}) {
                const Word k = space.generator(s, sign);
                const Word conj = space.multiply(space.inverse(k), space.multiply(p.element, k));
                if (space.norm(conj) != p.distance) {
                    // d(e k, x k) = |k^-1 x k| differs from d(e, x).
                    return BiInvarianceWitness{e, p.element, k};
                }
            }
        }
    }
    return std::nullopt;
}

QmReport qm_defects(const LipFn& f, const GroupSpace& space, const Rational& radius, BiInvariance policy) {
    if (policy == BiInvariance::verify) {
        if (auto w = find_bi_invariance_violation(space, radius)) {
            throw DomainError("metric is not bi-invariant: d(g k, h k) != d(g, h) at g = " + space.format(w->g) +
                              ", h = " + space.format(w->h) + ", k = " + space.format(w->k));
        }
    }
    const Ball ball = space.ball(radius);
    ValueCache value(f, space);
    QmReport r{0, 0, ball.covers_group ? Scope::whole_group() : Scope::within(radius), space.identity(),
               space.identity(), space.identity(), space.identity()};
    for (const auto& g : ball.points) {
        const Rational fg = value(g.element);
        for (const auto& h : ball.points) {
            const Rational v = abs(value(space.multiply(g.element, h.element)) - fg - value(h.element));
            if (v > r.defect_D) {
                r.defect_D = v;
                r.defect_g = g.element;
                r.defect_h = h.element;
            }
            const Rational& m = std::min(g.distance, h.distance);
            if (m == 0) continue;
            const Rational ratio = v / m;
            if (ratio > r.partial_D) {
                r.partial_D = ratio;
                r.partial_g = g.element;
                r.partial_h = h.element;
            }
        }
    }
    return r;
}

TwoSidedDefect two_sided_defect(const LipFn& f, const GroupSpace& space, const Rational& radius) {
    const IndexedBall ball = index_ball(space, radius);
    ValueCache value(f, space);
    TwoSidedDefect out;
    out.scope = ball.ball.covers_group ? Scope::whole_group() : Scope::within(radius);
    out.left_g = out.left_x = out.left_y = out.right_g = out.right_x = out.right_y = space.identity();

    const std::size_t n = ball.size();
    std::vector<Rational> left(n), right(n);
    auto scan = [&](const std::vector<Rational>& phi, Rational& best, Word& bg, Word& bx, Word& by, const Word& g) {
        auto consider = [&](std::size_t i, std::size_t j, const Rational& d) {
            if (d == 0) {
                if (phi[i] != phi[j]) throw UnboundedNormError("pseudo-distance 0 with different translated values");
                return;
            }
            const Rational v = abs(phi[i] - phi[j]) / d;
            if (v > best) {
                best = v;
                bg = g;
                bx = ball.at(i);
                by = ball.at(j);
            }
        };
        if (ball.convex) {
            for (const auto& [i, j] : ball.edges) consider(i, j, Rational(1));
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) consider(i, j, space.distance(ball.at(i), ball.at(j)));
            }
        }
    };
    for (std::size_t gi = 0; gi < n; ++gi) {
        const Word& g = ball.at(gi);
        const Word g_inv = space.inverse(g);
        for (std::size_t xi = 0; xi < n; ++xi) {
            const Word& x = ball.at(xi);
            const Rational& fx = value(x);
            left[xi] = value(space.multiply(g, x)) - fx;
            right[xi] = value(space.multiply(x, g_inv)) - fx;
        }
        scan(left, out.left, out.left_g, out.left_x, out.left_y, g);
        scan(right, out.right, out.right_g, out.right_x, out.right_y, g);
    }
    out.value = std::max(out.left, out.right);
    return out;
}

PqmImplications evaluate_implications(const QmReport& qm, const TwoSidedDefect& defect, const Rational& delta) {
    PqmImplications out;
    out.qm = qm;
    out.defect = defect;
    out.i = qm.partial_D <= delta / 2;
    out.ii = defect.value <= delta;
    out.iii = qm.partial_D <= delta;
    return out;
}

PqmImplications check_pqm_implications(const LipFn& f, const GroupSpace& space, const Rational& delta,
                                       const Rational& radius, BiInvariance policy) {
    return evaluate_implications(qm_defects(f, space, radius, policy), two_sided_defect(f, space, radius), delta);
}

PqmConstant pqm_constant_from_lipschitz(const LipFn& f, const GroupSpace& space, const Rational& a,
                                        const Rational& radius, BiInvariance policy, const QmReport* known) {
    if (a <= 0) throw DomainError("uniform discreteness bound must be positive");
    for (const auto& p : space.ball(radius).points) {
        if (!p.element.is_identity() && p.distance < a) {
            throw DomainError("metric is not uniformly discrete with A = " + to_string(a) + ": d(" +
                              space.format(p.element) + ", e) = " + to_string(p.distance));
        }
    }
    PqmConstant out;
    out.lipschitz = lipschitz_number(f, space, radius).value;
    out.constant = 2 * out.lipschitz + abs(eval(f, space, space.identity())) / a;
    out.partial_D = known ? known->partial_D : qm_defects(f, space, radius, policy).partial_D;
    out.holds = out.partial_D <= out.constant;
    return out;
}

}  // namespace invlip
