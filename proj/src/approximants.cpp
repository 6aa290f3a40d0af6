#include "invlip/approximants.hpp"

#include "invlip/errors.hpp"
#include "invlip/mean_growth.hpp"
#include "support.hpp"

#include <numeric>
#include <set>

namespace invlip {

namespace {

// f - h tabulated on ball(radius), or on every element of a finite group.
LipFn difference_table(const LipFn& f, const HomValues& h, const GroupSpace& space, const Rational& radius) {
    PointTable table;
    const std::vector<Word> points = space.is_finite() ? space.elements() : [&] {
        std::vector<Word> out;
        for (auto& p : space.ball(radius).points) out.push_back(std::move(p.element));
        return out;
    }();
    for (const auto& w : points) table.emplace(w, eval(f, space, w) - detail::hom_at(h, w));
    return LipFn::tabulated(std::move(table), f.pointed());
}

HomValues generator_growth(const LipFn& f, const GroupSpace& space, const Rational& radius) {
    HomValues c;
    for (std::uint32_t s = 0; s < space.rank(); ++s) {
        c.push_back(mean_growth(f, space, space.generator(s), space.identity(), radius).c);
    }
    return c;
}

// Shared certification for homomorphism approximants on a group.
ApproximationReport certify(const LipFn& f, const HomValues& h, const GroupSpace& space, const Rational& radius,
                            std::string pipeline, const Rational& extra) {
    ApproximationReport r;
    r.pipeline = std::move(pipeline);
    r.radius = radius;
    r.defect = delta_defect(f, space, radius);
    r.delta_hat = r.defect.delta_hat;
    r.defect_scope = r.defect.scope;
    r.bound = r.delta_hat / 2 + extra;

    const LipReport ball = lipschitz_number(difference_table(f, h, space, radius), space, radius);
    r.achieved_ball = ball.value;
    r.error_x = ball.x;
    r.error_y = ball.y;
    if (detail::exact_structured(f, space)) {
        const LipReport exact = lipschitz_number(subtract(f, LipFn::homomorphism(h)), space, radius);
        r.achieved_exact = exact.value;
        r.error_x = exact.x;
        r.error_y = exact.y;
    } else if (ball.scope.exact) {
        r.achieved_exact = ball.value;
    }
    r.pass = r.achieved() <= r.bound;
    return r;
}

void require_free(const GroupSpace& space) {
    if (space.kind() != BackendKind::free_word) {
        throw DomainError("free-group approximant needs the free backend, got " + to_string(space.kind()));
    }
}

}  // namespace

Approximation free_approximant(const LipFn& f, const GroupSpace& space, const Rational& radius) {
    require_free(space);
    const HomValues c = generator_growth(f, space, radius);
    return {LipFn::homomorphism(c), certify(f, c, space, radius, "free", 0)};
}

bool optimality_check(const LipFn& f, const LipFn& fbar, const std::vector<HomValues>& candidates,
                      const GroupSpace& space, const Rational& radius) {
    if (!detail::exact_structured(f, space) || !fbar.is_structured()) {
        throw ScopeError("optimality check needs Structured functions on a free or free abelian backend");
    }
    const Rational own = lipschitz_number(subtract(f, fbar), space, radius).value;
    for (const auto& h : candidates) {
        if (lipschitz_number(subtract(f, LipFn::homomorphism(h)), space, radius).value < own) return false;
    }
    return true;
}

Approximation adjusted_approximant(const LipFn& f, const GroupSpace& space, const HomValues& u, const Rational& eta,
                                   const Rational& radius) {
    require_free(space);
    if (u.size() != space.rank()) throw DomainError("adjusted values need one entry per generator");
    if (eta < 0) throw PreconditionError("eta must be nonnegative");
    const HomValues c = generator_growth(f, space, radius);
    for (std::size_t s = 0; s < c.size(); ++s) {
        if (abs(c[s] - u[s]) > eta) {
            throw PreconditionError("generator " + space.names()[s] + ": |c - u| = " + to_string(abs(c[s] - u[s])) +
                                    " exceeds eta = " + to_string(eta));
        }
    }
    Approximation out{LipFn::homomorphism(u), certify(f, u, space, radius, "adjusted", eta)};
    out.report.constants["eta"] = eta;
    return out;
}

LipFn lift_to_free(const LipFn& f, const Presentation& p, const GroupSpace& quotient) {
    p.validate();
    if (p.generator_count != quotient.rank()) {
        throw DomainError("presentation has " + std::to_string(p.generator_count) + " generators, quotient backend has " +
                          std::to_string(quotient.rank()));
    }
    for (const auto& r : p.relators) {
        if (!quotient.normal_form(r).is_identity()) {
            throw DomainError("relator " + quotient.format(r) + " is not trivial in the quotient backend");
        }
    }
    return LipFn::pullback(f, quotient);
}

PresentedApproximation presented_approximant(const LipFn& f, const Presentation& p, const GroupSpace& quotient,
                                             const Rational& radius) {
    const LipFn lifted = lift_to_free(f, p, quotient);
    const GroupSpace free = GroupSpace::free_group(quotient.rank(), quotient.names());

    PresentedApproximation out{LipFn::homomorphism({}), {}, {}, {}, 0, 0, false, false};
    out.growth = generator_growth(lifted, free, radius);

    const RationalMatrix a = RationalMatrix::from_exponents(exponent_matrix(p));
    for (const auto& r : p.relators) out.c_r = std::max(out.c_r, Rational(static_cast<long long>(r.length()), 2));

    ApproximationReport& rep = out.report;
    rep.pipeline = "presented";
    rep.radius = radius;
    rep.defect = delta_defect(f, quotient, radius);
    rep.delta_hat = rep.defect.delta_hat;
    rep.defect_scope = rep.defect.scope;

    Rational ax_norm = 0;
    if (a.rows == 0) {
        out.projection = {out.growth, 0, {}};
    } else {
        ax_norm = max_abs(a.apply(out.growth));
        out.projection = linf_kernel_project(a, out.growth);
    }
    out.growth_bound_holds = ax_norm <= out.c_r * rep.delta_hat;
    out.d_emp = ax_norm == 0 ? Rational(0) : Rational(out.projection.t / ax_norm);
    const HomValues& u = out.projection.u;
    out.fbar = LipFn::homomorphism(u);

    // Two representatives per element: the normal form and w r for each relator.
    out.well_defined = true;
    for (const auto& point : quotient.ball(std::min(radius, Rational(2))).points) {
        const Rational v = detail::hom_at(u, point.element);
        for (const auto& r : p.relators) {
            if (detail::hom_at(u, multiply(point.element, r)) != v) out.well_defined = false;
        }
    }

    rep.bound = (Rational(1, 2) + out.c_r * out.d_emp) * rep.delta_hat;
    const LipReport ball = lipschitz_number(difference_table(lifted, u, free, radius), free, radius);
    rep.achieved_ball = ball.value;
    rep.error_x = ball.x;
    rep.error_y = ball.y;
    rep.error_space = "free";
    // On the quotient's Cayley graph every edge is the image of a free edge,
    // so the exact norm there equals the norm of the lifted difference.
    if (detail::exact_structured(f, quotient)) {
        const LipReport exact = lipschitz_number(subtract(f, out.fbar), quotient, radius);
        rep.achieved_exact = exact.value;
        rep.error_x = exact.x;
        rep.error_y = exact.y;
        rep.error_space = "quotient";
    } else if (detail::exact_finite(f, quotient)) {
        const LipReport exact = lipschitz_number(difference_table(f, u, quotient, radius), quotient, radius);
        rep.achieved_exact = exact.value;
        rep.error_x = exact.x;
        rep.error_y = exact.y;
        rep.error_space = "quotient";
    }
    rep.constants["C_R"] = out.c_r;
    rep.constants["D_emp"] = out.d_emp;
    rep.constants["t"] = out.projection.t;
    rep.constants["Ax_norm"] = ax_norm;
    rep.pass = rep.achieved() <= rep.bound && out.growth_bound_holds && out.well_defined;
    return out;
}

// ---------------------------------------------------------------------------
// Finite actions

Permutation FiniteActionSpace::act(const Word& g) const {
    const std::size_t n = size();
    Permutation out(n);
    std::iota(out.begin(), out.end(), 0U);
    const Word nf = group.normal_form(g);
    for (auto it = nf.letters().rbegin(); it != nf.letters().rend(); ++it) {
        const Permutation& gen = generator_action.at(it->generator);
        Permutation next(n);
        if (it->sign > 0) {
            for (std::size_t p = 0; p < n; ++p) next[p] = gen[out[p]];
        } else {
            Permutation inv(n);
            for (std::size_t p = 0; p < n; ++p) inv[gen[p]] = static_cast<std::uint32_t>(p);
            for (std::size_t p = 0; p < n; ++p) next[p] = inv[out[p]];
        }
        out = std::move(next);
    }
    return out;
}

void FiniteActionSpace::validate() const {
    std::vector<std::string> failed;
    const std::size_t n = size();
    auto fail = [&](std::string axiom) { failed.push_back(std::move(axiom)); };

    if (n == 0) throw ValidationError("action space has no points");
    if (!labels.empty() && labels.size() != n) fail("labels: one label per point");
    bool metric_ok = true;
    for (const auto& row : dist) metric_ok = metric_ok && row.size() == n;
    if (!metric_ok) throw ValidationError("distance matrix is not square");
    for (std::size_t i = 0; i < n && metric_ok; ++i) {
        for (std::size_t j = 0; j < n && metric_ok; ++j) {
            if (dist[i][j] != dist[j][i] || (i == j) != (dist[i][j] == 0) || dist[i][j] < 0) metric_ok = false;
            for (std::size_t k = 0; k < n && metric_ok; ++k) {
                if (dist[i][k] > dist[i][j] + dist[j][k]) metric_ok = false;
            }
        }
    }
    if (!metric_ok) fail("metric: symmetric, positive off the diagonal, triangle inequality");
    if (alpha < 1) fail("alpha >= 1");
    if (std::find(domain.begin(), domain.end(), 0) == domain.end()) fail("basepoint 0 lies in D");
    for (auto d : domain) {
        if (d >= n) throw ValidationError("fundamental domain point " + std::to_string(d) + " out of range");
    }

    bool perms_ok = generator_action.size() == group.rank();
    for (const auto& g : generator_action) {
        std::vector<bool> hit(n, false);
        if (g.size() != n) perms_ok = false;
        for (auto p : g) {
            if (p >= n || hit[p]) {
                perms_ok = false;
                break;
            }
            hit[p] = true;
        }
    }
    if (!perms_ok) throw ValidationError("generator actions must be permutations of the points, one per generator");

    bool isometric = true;
    for (const auto& g : generator_action) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) isometric = isometric && dist[g[i]][g[j]] == dist[i][j];
        }
    }
    if (!isometric) fail("isometry: every generator preserves distances");

    const std::vector<Word> elements = group.elements();
    bool hom = true;
    for (const auto& g : elements) {
        const Permutation ag = act(g);
        for (std::uint32_t s = 0; s < group.rank() && hom; ++s) {
            const Permutation ags = act(group.multiply(g, group.generator(s)));
            for (std::size_t p = 0; p < n; ++p) hom = hom && ags[p] == ag[generator_action[s][p]];
        }
    }
    if (!hom) fail("homomorphism: the action respects the group multiplication");

    std::vector<std::set<std::size_t>> orbits;
    for (auto d : domain) {
        std::set<std::size_t> orbit;
        for (const auto& g : elements) orbit.insert(act(g)[d]);
        orbits.push_back(std::move(orbit));
    }
    std::vector<int> owner(n, 0);
    for (const auto& orbit : orbits) {
        for (auto p : orbit) ++owner[p];
    }
    if (std::any_of(owner.begin(), owner.end(), [](int c) { return c > 1; })) fail("orbits of D-points are disjoint");
    if (std::any_of(owner.begin(), owner.end(), [](int c) { return c == 0; })) fail("orbits of D cover every point");

    for (std::size_t a = 0; a < domain.size(); ++a) {
        for (std::size_t b = a + 1; b < domain.size(); ++b) {
            Rational orbit_dist = -1;
            for (auto p : orbits[a]) {
                for (auto q : orbits[b]) {
                    if (orbit_dist < 0 || dist[p][q] < orbit_dist) orbit_dist = dist[p][q];
                }
            }
            if (dist[domain[a]][domain[b]] > alpha * orbit_dist) {
                fail("d(x, y) <= alpha d(Gx, Gy) for D-points " + std::to_string(domain[a]) + ", " +
                     std::to_string(domain[b]));
            }
        }
    }

    if (!failed.empty()) {
        std::string msg = "finite action space failed:";
        for (const auto& f : failed) msg += " [" + f + "]";
        throw ValidationError(msg);
    }
}

ActionDefect action_defect(const FiniteActionSpace& fa, const PointFunction& f) {
    const std::size_t n = fa.size();
    if (f.size() != n) throw DomainError("point function has the wrong length");
    ActionDefect best{0, fa.group.identity(), 0, 0};
    for (const auto& g : fa.group.elements()) {
        const Permutation ag = fa.act(g);
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = x + 1; y < n; ++y) {
                const Rational v = abs((f[ag[x]] - f[x]) - (f[ag[y]] - f[y])) / fa.dist[x][y];
                if (v > best.value) best = {v, g, x, y};
            }
        }
    }
    return best;
}

Rational point_lip_norm(const FiniteActionSpace& fa, const PointFunction& f, std::size_t* arg_x, std::size_t* arg_y) {
    const std::size_t n = fa.size();
    if (f.size() != n) throw DomainError("point function has the wrong length");
    Rational best = 0;
    std::size_t bx = 0, by = 0;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
            const Rational v = abs(f[x] - f[y]) / fa.dist[x][y];
            if (v > best) {
                best = v;
                bx = x;
                by = y;
            }
        }
    }
    if (arg_x) *arg_x = bx;
    if (arg_y) *arg_y = by;
    return best;
}

OrbitApproximation orbit_collapse_approximant(const FiniteActionSpace& fa, const PointFunction& f) {
    fa.validate();
    const std::size_t n = fa.size();
    if (f.size() != n) throw DomainError("point function has the wrong length");
    if (f[0] != 0) throw ValidationError("point function must vanish at the basepoint");

    OrbitApproximation out;
    out.fbar.assign(n, 0);
    const std::vector<Word> elements = fa.group.elements();
    for (auto d : fa.domain) {
        for (const auto& g : elements) out.fbar[fa.act(g)[d]] = f[d];
    }

    ApproximationReport& r = out.report;
    r.pipeline = "orbit";
    r.radius = 0;
    const ActionDefect defect = action_defect(fa, f);
    r.delta_hat = defect.value;
    r.defect_scope = Scope::whole_group();
    r.defect = {defect.value, defect.g, fa.group.identity(), fa.group.identity(), Scope::whole_group()};
    r.defect_px = defect.x;
    r.defect_py = defect.y;
    r.bound = (2 * fa.alpha + 1) * r.delta_hat;
    PointFunction diff(n);
    for (std::size_t p = 0; p < n; ++p) diff[p] = f[p] - out.fbar[p];
    r.achieved_ball = point_lip_norm(fa, diff, &r.error_px, &r.error_py);
    r.achieved_exact = r.achieved_ball;
    r.error_x = r.error_y = fa.group.identity();
    r.constants["alpha"] = fa.alpha;

    out.invariant = true;
    for (const auto& g : elements) {
        const Permutation ag = fa.act(g);
        for (std::size_t p = 0; p < n; ++p) out.invariant = out.invariant && out.fbar[ag[p]] == out.fbar[p];
    }
    r.pass = r.achieved() <= r.bound && out.invariant;
    return out;
}

bool shrink_norm_check(const GroupSpace& space, const LipFn& f, const Rational& delta) {
    if (!space.is_finite()) throw ScopeError("norm collapse is only checked on finite groups");
    const Rational diam = group_diameter(space);
    const Rational defect = delta_defect(f, space, diam).delta_hat;
    if (defect > delta) {
        throw PreconditionError("delta_defect(f) = " + to_string(defect) + " exceeds delta = " + to_string(delta));
    }
    return lipschitz_number(f, space, diam).value <= delta;
}

OrbitRestriction restrict_to_orbit(const LipFn& f, const GroupSpace& space, const Word& g, const Word& y,
                                   const Word& h, std::size_t max_order) {
    const Word gy = space.multiply(g, y);
    const Rational base = eval(f, space, gy);
    std::vector<Word> orbit{space.normal_form(y)};  // h^k y
    std::vector<Word> powers{space.identity()};
    for (;;) {
        Word next = space.multiply(h, powers.back());
        if (next.is_identity()) break;
        if (powers.size() >= max_order) {
            throw ScopeError("cyclic subgroup exceeds " + std::to_string(max_order) + " elements; only finite orbits are supported");
        }
        orbit.push_back(space.multiply(next, y));
        powers.push_back(std::move(next));
    }
    const std::size_t n = powers.size();

    auto norms = std::make_shared<RationalVector>();
    for (const auto& p : orbit) norms->push_back(space.distance(p, orbit.front()));
    auto reduce_mod = [n](const Word& w) {
        const long long k = exponent_sum(w, 0);
        const long long r = ((k % static_cast<long long>(n)) + static_cast<long long>(n)) % static_cast<long long>(n);
        return static_cast<std::size_t>(r);
    };
    GroupSpace cyclic = GroupSpace::oracle(
        1, [reduce_mod](const Word& w) { return Word::generator(1, 0, static_cast<int>(reduce_mod(w))); },
        [reduce_mod, norms](const Word& w) { return (*norms)[reduce_mod(w)]; }, {"h"}, true);

    PointTable values;
    for (std::size_t k = 0; k < n; ++k) {
        values.emplace(Word::generator(1, 0, static_cast<int>(k)),
                       eval(f, space, space.multiply(g, orbit[k])) - base);
    }
    Rational diameter = 0;
    for (const auto& d : *norms) diameter = std::max(diameter, d);
    return {cyclic, LipFn::tabulated(std::move(values)), n, diameter};
}

}  // namespace invlip
