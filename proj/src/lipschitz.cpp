#include "invlip/lipschitz.hpp"

#include "invlip/errors.hpp"
#include "support.hpp"

#include <algorithm>
#include <unordered_map>

namespace invlip {

using detail::exact_finite;
using detail::exact_structured;
using detail::perturbation_at;

// ---------------------------------------------------------------------------
// LipFn

LipFn LipFn::tabulated(PointTable values, bool pointed) {
    LipFn f;
    f.kind_ = Kind::tabulated;
    f.pointed_ = pointed;
    if (pointed && !values.empty()) {
        const Word e = Word::identity(values.begin()->first.rank());
        auto [it, inserted] = values.try_emplace(e, 0);
        if (!inserted && it->second != 0) {
            throw ValidationError("tabulated function must vanish at e (got " + to_string(it->second) + ")");
        }
    }
    f.table_ = std::move(values);
    return f;
}

LipFn LipFn::structured(HomValues hom, PointTable perturbation, bool pointed) {
    LipFn f;
    f.kind_ = Kind::structured;
    f.pointed_ = pointed;
    f.hom_ = std::move(hom);
    for (auto& [w, v] : perturbation) {
        if (v == 0) continue;
        if (pointed && w.is_identity()) {
            throw ValidationError("perturbation must vanish at e (got " + to_string(v) + ")");
        }
        if (!f.hom_.empty() && w.rank() != f.hom_.size()) throw ValidationError("perturbation word has wrong rank");
        f.table_.emplace(w, v);
    }
    return f;
}

LipFn LipFn::pullback(const LipFn& base, const GroupSpace& quotient) {
    LipFn f;
    f.kind_ = Kind::pullback;
    f.pointed_ = base.pointed();
    f.base_ = std::make_shared<const LipFn>(base);
    f.quotient_ = std::make_shared<const GroupSpace>(quotient);
    return f;
}

const LipFn& LipFn::base() const {
    if (!base_) throw DomainError("not a pullback function");
    return *base_;
}

const GroupSpace& LipFn::quotient() const {
    if (!quotient_) throw DomainError("not a pullback function");
    return *quotient_;
}

Rational LipFn::support_radius(const GroupSpace& space) const {
    Rational r = 0;
    for (const auto& [w, v] : table_) r = std::max(r, space.norm(w));
    return r;
}

Rational eval(const LipFn& f, const GroupSpace& space, const Word& g) {
    switch (f.kind()) {
        case LipFn::Kind::tabulated: {
            const Word nf = space.normal_form(g);
            auto it = f.table().find(nf);
            if (it == f.table().end()) throw DomainError("no tabulated value at " + space.format(nf));
            return it->second;
        }
        case LipFn::Kind::structured: {
            if (f.hom().size() != space.rank()) {
                throw DomainError("homomorphism has " + std::to_string(f.hom().size()) + " values, group rank is " +
                                  std::to_string(space.rank()));
            }
            const Word nf = space.normal_form(g);
            return detail::hom_at(f.hom(), nf) + perturbation_at(f, nf);
        }
        case LipFn::Kind::pullback: {
            if (g.rank() != f.quotient().rank()) throw DomainError("pullback evaluated on a word of the wrong rank");
            return eval(f.base(), f.quotient(), g);
        }
    }
    return 0;
}

LipFn subtract(const LipFn& f, const LipFn& g) {
    if (!f.is_structured() || !g.is_structured()) throw DomainError("subtract needs two Structured functions");
    HomValues hom = f.hom();
    if (hom.empty()) hom.assign(g.hom().size(), 0);
    if (g.hom().size() != hom.size() && !g.hom().empty()) throw DomainError("homomorphism length mismatch");
    for (std::size_t i = 0; i < g.hom().size(); ++i) hom[i] -= g.hom()[i];
    PointTable p = f.table();
    for (const auto& [w, v] : g.table()) p[w] -= v;
    return LipFn::structured(std::move(hom), std::move(p), f.pointed() && g.pointed());
}

// ---------------------------------------------------------------------------
// Lipschitz numbers

namespace {

struct PairMax {
    Rational value = 0;
    std::size_t i = 0, j = 0;
    bool found = false;
};

/// max |v_i - v_j| / d(i, j) over the ball, edges only when the ball is convex.
PairMax pairwise_max(const std::vector<Rational>& v, const IndexedBall& ball, const GroupSpace& space,
                     bool allow_pseudometric) {
    PairMax best;
    auto consider = [&](std::size_t i, std::size_t j, const Rational& d) {
        const Rational diff = abs(v[i] - v[j]);
        if (d == 0) {
            if (diff != 0) {
                if (!allow_pseudometric) throw DomainError("distinct points at distance 0 in a strict metric");
                throw UnboundedNormError("points " + space.format(ball.at(i)) + " and " + space.format(ball.at(j)) +
                                         " are at distance 0 with different values");
            }
            return;
        }
        const Rational ratio = diff / d;
        if (!best.found || ratio > best.value) best = {ratio, i, j, true};
    };
    if (ball.convex) {
        for (const auto& [i, j] : ball.edges) consider(i, j, Rational(1));
    } else {
        for (std::size_t i = 0; i < ball.size(); ++i) {
            for (std::size_t j = i + 1; j < ball.size(); ++j) consider(i, j, space.distance(ball.at(i), ball.at(j)));
        }
    }
    return best;
}

std::vector<Rational> values_on(const LipFn& f, const GroupSpace& space, const IndexedBall& ball) {
    std::vector<Rational> v;
    v.reserve(ball.size());
    for (std::size_t i = 0; i < ball.size(); ++i) v.push_back(eval(f, space, ball.at(i)));
    return v;
}

LipReport structured_lipschitz(const LipFn& f, const GroupSpace& space) {
    const auto support = detail::edge_support(f, space);
    const Word far = detail::far_element(space, f.support_radius(space) + 1);
    LipReport best{0, space.identity(), space.generator(0), Scope::whole_group()};
    bool found = false;
    for (std::uint32_t s = 0; s < space.rank(); ++s) {
        const Word gen = space.generator(s);
        const Rational& k = f.hom()[s];
        // The homomorphism tail: an edge far from the support.
        if (!found || abs(k) > best.value) {
            best = {abs(k), far, space.multiply(far, gen), Scope::whole_group()};
            found = true;
        }
        for (const auto& x : support) {
            const Word xs = space.multiply(x, gen);
            const Rational diff = abs(k + perturbation_at(f, xs) - perturbation_at(f, x));
            if (diff > best.value) best = {diff, x, xs, Scope::whole_group()};
        }
    }
    return best;
}

}  // namespace

Rational lip_norm(const LipFn& f, const std::vector<Word>& points, const GroupSpace& space, bool allow_pseudometric) {
    if (points.size() < 2) throw DomainError("lip_norm needs at least two points");
    std::vector<Rational> v;
    v.reserve(points.size());
    for (const auto& p : points) v.push_back(eval(f, space, p));
    Rational best = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const Rational d = space.distance(points[i], points[j]);
            const Rational diff = abs(v[i] - v[j]);
            if (d == 0) {
                if (space.normal_form(points[i]) == space.normal_form(points[j])) continue;
                if (!allow_pseudometric) {
                    throw DomainError("points " + space.format(points[i]) + " and " + space.format(points[j]) +
                                      " are at distance 0; set the pseudometric flag");
                }
                if (diff != 0) {
                    throw UnboundedNormError("points " + space.format(points[i]) + " and " +
                                             space.format(points[j]) + " are at distance 0 with different values");
                }
                continue;
            }
            best = std::max(best, Rational(diff / d));
        }
    }
    return best;
}

LipReport lipschitz_number(const LipFn& f, const GroupSpace& space, const Rational& radius) {
    if (exact_structured(f, space)) return structured_lipschitz(f, space);
    const bool finite = exact_finite(f, space);
    const IndexedBall ball = index_ball(space, finite ? group_diameter(space) : radius);
    const auto v = values_on(f, space, ball);
    const PairMax m = pairwise_max(v, ball, space, space.pseudometric());
    LipReport out{m.value, space.identity(), space.identity(), finite ? Scope::whole_group() : Scope::within(radius)};
    if (m.found) {
        out.x = ball.at(m.i);
        out.y = ball.at(m.j);
    }
    return out;
}

HomNorm hom_norm(const HomValues& hom, const GroupSpace& space, const Rational& radius) {
    if (hom.size() != space.rank()) throw DomainError("homomorphism length does not match the group rank");
    if (space.supports_exact_structured()) return {max_abs(hom), Scope::whole_group()};
    if (radius < 1) throw DomainError("hom_norm needs radius >= 1");
    const Ball ball = space.ball(radius);
    Rational best = 0;
    for (const auto& p : ball.points) {
        if (p.distance == 0) continue;
        best = std::max(best, Rational(abs(detail::hom_at(hom, p.element)) / p.distance));
    }
    return {best, ball.covers_group ? Scope::whole_group() : Scope::within(radius)};
}

// ---------------------------------------------------------------------------
// Invariance defects

Rational defect_at(const LipFn& f, const GroupSpace& space, const Word& g, const Word& x, const Word& y) {
    const Rational d = space.distance(x, y);
    const Rational num = abs((eval(f, space, space.multiply(g, x)) - eval(f, space, x)) -
                             (eval(f, space, space.multiply(g, y)) - eval(f, space, y)));
    if (d == 0) {
        if (num != 0) throw UnboundedNormError("defect witness at pseudo-distance 0 has nonzero numerator");
        return 0;
    }
    return num / d;
}

namespace {

// For f = k + p, f(gx) - f(x) - f(gxs) + f(xs) = D(xs_min) - D(x_max) with
// D(x) = p(xs) - p(x); its range over x (0 far from the support) is the defect.
DefectReport structured_defect(const LipFn& f, const GroupSpace& space) {
    const auto support = detail::edge_support(f, space);
    const Word far = detail::far_element(space, f.support_radius(space) + 1);
    DefectReport best{0, space.identity(), space.identity(), space.generator(0), Scope::whole_group()};
    for (std::uint32_t s = 0; s < space.rank(); ++s) {
        const Word gen = space.generator(s);
        Rational hi = 0, lo = 0;
        Word arg_hi = far, arg_lo = far;
        for (const auto& x : support) {
            const Rational delta = perturbation_at(f, space.multiply(x, gen)) - perturbation_at(f, x);
            if (delta > hi) {
                hi = delta;
                arg_hi = x;
            }
            if (delta < lo) {
                lo = delta;
                arg_lo = x;
            }
        }
        if (hi - lo > best.delta_hat) {
            const Word g = space.multiply(arg_hi, space.inverse(arg_lo));
            best = {hi - lo, g, arg_lo, space.multiply(arg_lo, gen), Scope::whole_group()};
        }
    }
    return best;
}

}  // namespace

DefectReport delta_defect(const LipFn& f, const GroupSpace& space, const Rational& radius) {
    if (exact_structured(f, space)) return structured_defect(f, space);

    const bool finite = exact_finite(f, space);
    const IndexedBall ball = index_ball(space, finite ? group_diameter(space) : radius);
    const std::vector<Rational> fx = values_on(f, space, ball);
    DefectReport best{0, space.identity(), space.identity(), space.identity(),
                      finite ? Scope::whole_group() : Scope::within(radius)};
    bool found = false;
    std::vector<Rational> phi(ball.size());
    for (std::size_t gi = 0; gi < ball.size(); ++gi) {
        const Word& g = ball.at(gi);
        for (std::size_t xi = 0; xi < ball.size(); ++xi) {
            phi[xi] = eval(f, space, space.multiply(g, ball.at(xi))) - fx[xi];
        }
        const PairMax m = pairwise_max(phi, ball, space, space.pseudometric());
        if (m.found && (!found || m.value > best.delta_hat)) {
            best.delta_hat = m.value;
            best.g = g;
            best.x = ball.at(m.i);
            best.y = ball.at(m.j);
            found = true;
        }
    }
    return best;
}

bool check_chain_inequality(const LipFn& f, const GroupSpace& space, const std::vector<Word>& gs, const Word& x,
                            const Word& y, const Rational& delta) {
    if (gs.empty()) throw DomainError("chain inequality needs at least one group element");
    Word product = space.identity();
    for (const auto& g : gs) product = space.multiply(product, g);
    const Rational fx = eval(f, space, x);
    const Rational fy = eval(f, space, y);
    Rational lhs = eval(f, space, space.multiply(product, x)) - fx;
    for (const auto& g : gs) lhs -= eval(f, space, space.multiply(g, y)) - fy;
    Rational rhs = Rational(static_cast<long long>(gs.size())) * space.distance(x, y);
    for (std::size_t i = 1; i < gs.size(); ++i) rhs += space.distance(space.multiply(gs[i], x), x);
    return abs(lhs) <= delta * rhs;
}

std::optional<HomValues> detect_invariance(const LipFn& f, const GroupSpace& space, const Rational& radius) {
    if (delta_defect(f, space, radius).delta_hat != 0) return std::nullopt;
    HomValues h;
    for (std::uint32_t s = 0; s < space.rank(); ++s) h.push_back(eval(f, space, space.generator(s)));
    return h;
}

// ---------------------------------------------------------------------------
// Random delta-invariant functions

SeededRng::SeededRng(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL) {}

std::uint64_t SeededRng::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

long long SeededRng::between(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next() % span);
}

Rational SeededRng::rational(long long num_bound, long long den_bound) {
    const long long num = between(-num_bound, num_bound);
    const long long den = between(1, den_bound);
    return Rational(num, den);
}

LipFn random_delta_invariant(const GroupSpace& space, const Rational& delta, const Rational& support_radius,
                             std::uint64_t seed) {
    if (delta <= 0) throw DomainError("delta must be positive");
    SeededRng rng(seed);
    HomValues hom(space.rank(), 0);
    if (space.supports_exact_structured()) {
        for (auto& h : hom) h = rng.rational(8, 4);
    }
    PointTable p;
    for (const auto& point : space.ball(support_radius).points) {
        if (point.element.is_identity()) continue;
        p.emplace(point.element, rng.rational(6, 4));
    }
    const LipFn raw = LipFn::structured(HomValues(space.rank(), 0), p);
    const Rational lip = lipschitz_number(raw, space, support_radius + 1).value;
    if (lip > delta / 2) {
        const Rational scale = delta / (2 * lip);
        for (auto& [w, v] : p) v *= scale;
    }
    return LipFn::structured(std::move(hom), std::move(p));
}

}  // namespace invlip
