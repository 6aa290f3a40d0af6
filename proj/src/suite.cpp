#include "invlip/suite.hpp"

#include "invlip/approximants.hpp"
#include "invlip/errors.hpp"
#include "invlip/instances.hpp"
#include "invlip/io.hpp"
#include "invlip/kernel_projection.hpp"
#include "invlip/mean_growth.hpp"
#include "invlip/quasimorphism.hpp"
#include "invlip/sweep.hpp"

#include <chrono>
#include <functional>

namespace invlip {

using nlohmann::json;
using io::to_json;

namespace {

const Rational& delta_for(std::uint64_t seed) {
    static const Rational deltas[] = {Rational(1, 2), Rational(1), Rational(3)};
    return deltas[(seed - 1) % 3];
}

std::vector<std::uint64_t> seeds(const SuiteOptions& o, std::size_t limit = 0) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = o.seed_first; s <= o.seed_last; ++s) {
        if (limit && out.size() == limit) break;
        out.push_back(s);
    }
    return out;
}

unsigned workers(const SuiteOptions& o) { return o.workers ? o.workers : default_workers(); }

template <class Fn>
std::vector<json> sweep(const SuiteOptions& o, const std::vector<std::uint64_t>& ss, Fn fn) {
    return parallel_map(ss.size(), workers(o), [&](std::size_t i) { return fn(ss[i]); });
}

bool all_pass(const std::vector<json>& records) {
    for (const auto& r : records) {
        if (!r.at("pass").get<bool>()) return false;
    }
    return !records.empty();
}

std::size_t count_pass(const std::vector<json>& records) {
    std::size_t n = 0;
    for (const auto& r : records) n += r.at("pass").get<bool>() ? 1 : 0;
    return n;
}

std::string tally(const std::vector<json>& records, const std::string& what) {
    return std::to_string(count_pass(records)) + "/" + std::to_string(records.size()) + " " + what;
}

CriterionResult example_reproduction(const SuiteOptions&) {
    CriterionResult r{1, "one-sided ramp on Z: c+ = 1, c- = 0, fbar(x) = x/2, error 1/2", false, "", 0, {}};
    const GroupSpace z = GroupSpace::free_group(1);
    const LipFn f = one_sided_ramp(1, 16);
    const MeanGrowth mg = mean_growth(f, z, z.generator(0), z.identity(), 16);
    const Approximation ap = free_approximant(f, z, 16);
    const bool growth_ok = mg.c_plus == 1 && mg.c_minus == 0 && mg.c == Rational(1, 2) && mg.scope.exact;
    const bool fbar_ok = ap.fbar.is_structured() && ap.fbar.hom() == HomValues{Rational(1, 2)} && ap.fbar.table().empty();
    const bool error_ok = ap.report.achieved_exact && *ap.report.achieved_exact == Rational(1, 2) &&
                          ap.report.bound == Rational(1, 2) && ap.report.pass;
    r.pass = growth_ok && fbar_ok && error_ok;
    r.report = {{"mean_growth", to_json(mg)}, {"fbar", to_json(ap.fbar)}, {"approximation", to_json(ap.report)}};
    r.detail = "c+=" + to_string(mg.c_plus) + " c-=" + to_string(mg.c_minus) + " c=" + to_string(mg.c) +
               " error=" + (ap.report.achieved_exact ? to_string(*ap.report.achieved_exact) : "n/a");
    return r;
}

CriterionResult free_group_bound(const SuiteOptions& o) {
    CriterionResult r{2, "free group: exact ||f - fbar|| <= delta_hat/2", false, "", 0, {}};
    const GroupSpace f2 = GroupSpace::free_group(2);
    const auto records = sweep(o, seeds(o), [&](std::uint64_t seed) {
        const LipFn f = random_delta_invariant(f2, delta_for(seed), 3, seed);
        const Approximation ap = free_approximant(f, f2, 4);
        const bool ok = ap.report.pass && ap.report.achieved_exact && ap.report.defect_scope.exact &&
                        ap.report.delta_hat <= delta_for(seed);
        return json{{"seed", seed}, {"delta", to_json(delta_for(seed))}, {"report", to_json(ap.report)}, {"pass", ok}};
    });
    r.pass = all_pass(records);
    r.detail = tally(records, "seeds within delta_hat/2");
    r.report = records;
    return r;
}

CriterionResult optimality(const SuiteOptions& o) {
    CriterionResult r{3, "optimality against 20 homomorphism candidates per seed", false, "", 0, {}};
    const GroupSpace f2 = GroupSpace::free_group(2);
    const auto records = sweep(o, seeds(o), [&](std::uint64_t seed) {
        const LipFn f = random_delta_invariant(f2, delta_for(seed), 3, seed);
        const Approximation ap = free_approximant(f, f2, 4);
        const Rational own = *ap.report.achieved_exact;
        SeededRng rng(seed * 7919 + 17);
        std::size_t ok = 0;
        Rational closest = -1;
        for (int k = 0; k < 20; ++k) {
            HomValues h = ap.fbar.hom();
            // Half near fbar, half anywhere.
            for (auto& v : h) v = k < 10 ? v + rng.rational(2, 8) : rng.rational(8, 4);
            const Rational other = lipschitz_number(subtract(f, LipFn::homomorphism(h)), f2, 4).value;
            if (own <= other) ++ok;
            if (closest < 0 || other - own < closest) closest = other - own;
        }
        return json{{"seed", seed}, {"error", to_json(own)}, {"comparisons", 20}, {"held", ok},
                    {"smallest_margin", to_json(closest)}, {"pass", ok == 20}};
    });
    std::size_t held = 0;
    for (const auto& rec : records) held += rec.at("held").get<std::size_t>();
    r.pass = all_pass(records);
    r.detail = std::to_string(held) + "/" + std::to_string(20 * records.size()) + " comparisons hold";
    r.report = records;
    return r;
}

CriterionResult mean_growth_properties(const SuiteOptions& o) {
    CriterionResult r{4, "antisymmetry, gap bound and gap characterization", false, "", 0, {}};
    const GroupSpace f2 = GroupSpace::free_group(2);
    const Ball directions = f2.ball(2);
    const auto records = sweep(o, seeds(o), [&](std::uint64_t seed) {
        const LipFn f = random_delta_invariant(f2, delta_for(seed), 3, seed);
        const DefectReport defect = delta_defect(f, f2, 2);
        bool antisymmetric = true, gap = true, exact = defect.scope.exact;
        for (const auto& p : directions.points) {
            if (p.distance == 0) continue;
            const MeanGrowth mg = mean_growth(f, f2, p.element, f2.identity(), 2);
            const MeanGrowth inv = mean_growth(f, f2, f2.inverse(p.element), f2.identity(), 2);
            exact = exact && mg.scope.exact && inv.scope.exact;
            antisymmetric = antisymmetric && mg.c == -inv.c;
            gap = gap && check_gap(mg, defect.delta_hat, f2);
        }
        const GapReport gc = gap_characterization(f, f2, 2);
        const bool equal = gc.value == defect.delta_hat && gc.scope.exact;
        return json{{"seed", seed},          {"delta_hat", to_json(defect.delta_hat)},
                    {"gap_char", to_json(gc.value)}, {"antisymmetric", antisymmetric},
                    {"gap_bound", gap},      {"exact", exact},
                    {"pass", antisymmetric && gap && equal && exact}};
    });
    r.pass = all_pass(records);
    r.detail = tally(records, "seeds with all three properties over ball(2)");
    r.report = records;
    return r;
}

CriterionResult kernel_projection(const SuiteOptions& o) {
    CriterionResult r{5, "kernel projection equals the vertex-enumeration optimum", false, "", 0, {}};
    std::vector<std::uint64_t> ids;
    for (std::uint64_t i = 1; i <= 250; ++i) ids.push_back(i);
    const auto records = sweep(o, ids, [&](std::uint64_t id) {
        SeededRng rng(id * 104729 + o.seed_first);
        const auto m = static_cast<std::size_t>(rng.between(1, 3));
        const auto n = static_cast<std::size_t>(rng.between(1, 5));
        RationalMatrix a(m, n);
        for (auto& v : a.entries) v = rng.between(-9, 9);
        RationalVector x(n);
        for (auto& v : x) v = rng.rational(9, 4);
        const KernelProjection kp = linf_kernel_project(a, x);
        const Rational oracle = kernel_project_oracle(a, x);
        bool zero = true;
        for (const auto& v : a.apply(kp.u)) zero = zero && v == 0;
        return json{{"instance", id}, {"m", m}, {"n", n}, {"t", to_json(kp.t)}, {"oracle", to_json(oracle)},
                    {"residual_zero", zero}, {"pass", zero && kp.t == oracle}};
    });
    r.pass = all_pass(records);
    r.detail = tally(records, "instances match the oracle with A u = 0");
    r.report = records;
    return r;
}

CriterionResult presented_pipeline(const SuiteOptions& o) {
    CriterionResult r{6, "presented groups: Z^2 within (1/2 + C_R D_emp) delta_hat, Z_5 collapses", false, "", 0, {}};
    const GroupSpace z2 = GroupSpace::free_abelian(2).with_presentation(commutator_presentation());
    const GroupSpace z5 = GroupSpace::cyclic(5);
    const auto ss = seeds(o, 50);
    const auto z2_records = sweep(o, ss, [&](std::uint64_t seed) {
        const LipFn f = random_delta_invariant(z2, delta_for(seed), 2, seed);
        const PresentedApproximation pa = presented_approximant(f, commutator_presentation(), z2, 4);
        const bool ok = pa.report.pass && pa.c_r == 2 && pa.report.achieved_exact.has_value();
        return json{{"seed", seed}, {"group", "Z^2"}, {"report", to_json(pa.report)}, {"pass", ok}};
    });
    const auto z5_records = sweep(o, ss, [&](std::uint64_t seed) {
        const LipFn f = random_delta_invariant(z5, delta_for(seed), 2, seed);
        const PresentedApproximation pa = presented_approximant(f, cyclic_presentation(5), z5, 4);
        const Rational norm = lipschitz_number(f, z5, 2).value;
        const bool u_zero = pa.projection.u == HomValues{0};
        const bool ok = pa.report.pass && u_zero && norm <= pa.report.delta_hat;
        return json{{"seed", seed}, {"group", "Z_5"}, {"norm", to_json(norm)}, {"u_zero", u_zero},
                    {"report", to_json(pa.report)}, {"pass", ok}};
    });
    r.pass = all_pass(z2_records) && all_pass(z5_records);
    r.detail = tally(z2_records, "Z^2") + ", " + tally(z5_records, "Z_5");
    r.report = {{"Z2", z2_records}, {"Z5", z5_records}};
    return r;
}

CriterionResult norm_collapse(const SuiteOptions& o) {
    CriterionResult r{7, "finite groups: ||f|| <= delta_hat", false, "", 0, {}};
    const std::vector<std::pair<std::string, GroupSpace>> groups = {
        {"Z_2", GroupSpace::cyclic(2)}, {"Z_3", GroupSpace::cyclic(3)},   {"Z_5", GroupSpace::cyclic(5)},
        {"Z_8", GroupSpace::cyclic(8)}, {"Sym_3", GroupSpace::symmetric(3)}};
    const auto ss = seeds(o, 50);
    json report = json::object();
    bool pass = true;
    std::string detail;
    for (const auto& [name, g] : groups) {
        const Rational diam = group_diameter(g);
        const auto records = sweep(o, ss, [&, &g = g](std::uint64_t seed) {
            const LipFn f = random_delta_invariant(g, delta_for(seed), diam, seed);
            const Rational defect = delta_defect(f, g, diam).delta_hat;
            const Rational norm = lipschitz_number(f, g, diam).value;
            const bool ok = shrink_norm_check(g, f, defect);
            return json{{"seed", seed}, {"delta_hat", to_json(defect)}, {"norm", to_json(norm)}, {"pass", ok}};
        });
        pass = pass && all_pass(records);
        detail += (detail.empty() ? "" : ", ") + tally(records, name);
        report[name] = records;
    }
    r.pass = pass;
    r.detail = detail;
    r.report = report;
    return r;
}

CriterionResult orbit_collapse(const SuiteOptions& o) {
    CriterionResult r{8, "orbit collapse: ||f - fbar|| <= 3 delta_hat, fbar invariant", false, "", 0, {}};
    const FiniteActionSpace fa = reflected_strip();
    fa.validate();
    const auto records = sweep(o, seeds(o, 50), [&](std::uint64_t seed) {
        const PointFunction f = io::random_point_function(fa, seed);
        const OrbitApproximation oa = orbit_collapse_approximant(fa, f);
        const bool h_zero = action_defect(fa, oa.fbar).value == 0 && oa.fbar[fa.act(fa.group.generator(0))[0]] == 0;
        return json{{"seed", seed}, {"report", to_json(oa.report)}, {"invariant", oa.invariant},
                    {"pass", oa.report.pass && oa.invariant && h_zero}};
    });
    r.pass = all_pass(records);
    r.detail = tally(records, "seeds within (2 alpha + 1) delta_hat");
    r.report = records;
    return r;
}

CriterionResult quasimorphism_implications(const SuiteOptions& o) {
    CriterionResult r{9, "partial quasimorphism implications and the 2L(f) + |f(e)|/A constant", false, "", 0, {}};
    json report = json::object();
    bool pass = true;
    std::string detail;
    const std::vector<std::pair<std::string, GroupSpace>> groups = {{"F_2", GroupSpace::free_group(2)},
                                                                    {"Z^2", GroupSpace::free_abelian(2)}};
    for (const auto& [name, g] : groups) {
        const auto violation = find_bi_invariance_violation(g, 4);
        const BiInvariance policy = violation ? BiInvariance::skip : BiInvariance::verify;
        const auto records = sweep(o, seeds(o), [&, &g = g](std::uint64_t seed) {
            const LipFn f = random_delta_invariant(g, delta_for(seed), 3, seed);
            const QmReport qm = qm_defects(f, g, 4, policy);
            const TwoSidedDefect two = two_sided_defect(f, g, 4);
            // (ii) holds at delta = two-sided defect, (i) at delta = 2 partial_D.
            const PqmImplications at_defect = evaluate_implications(qm, two, two.value);
            const PqmImplications at_partial = evaluate_implications(qm, two, 2 * qm.partial_D);
            const PqmConstant c = pqm_constant_from_lipschitz(f, g, 1, 4, policy, &qm);
            const bool ok = at_defect.consistent() && at_partial.consistent() && c.holds;
            return json{{"seed", seed},
                        {"partial_D", to_json(qm.partial_D)},
                        {"defect_D", to_json(qm.defect_D)},
                        {"two_sided", to_json(two.value)},
                        {"constant", to_json(c.constant)},
                        {"ii_implies_iii", at_defect.consistent()},
                        {"i_implies_ii", at_partial.consistent()},
                        {"constant_holds", c.holds},
                        {"pass", ok}};
        });
        json entry = {{"records", records}, {"bi_invariant_on_ball", !violation}};
        if (violation) {
            entry["bi_invariance_witness"] = {{"g", to_json(violation->g)}, {"h", to_json(violation->h)},
                                              {"k", to_json(violation->k)}};
        }
        report[name] = entry;
        pass = pass && all_pass(records);
        detail += (detail.empty() ? "" : ", ") + tally(records, name) +
                  (violation ? " (metric not bi-invariant; check skipped)" : "");
    }
    r.pass = pass;
    r.detail = detail;
    r.report = report;
    return r;
}

CriterionResult determinism(const SuiteOptions& o) {
    CriterionResult r{10, "identical reports with 1 and N workers", false, "", 0, {}};
    SuiteOptions one = o, many = o;
    one.workers = 1;
    many.workers = std::max(4U, default_workers());
    json report = json::array();
    bool pass = true;
    for (int id : {2, 4, 5, 6, 8}) {
        const std::string a = run_criterion(id, one).report.dump();
        const std::string b = run_criterion(id, many).report.dump();
        const bool same = a == b;
        pass = pass && same;
        report.push_back({{"criterion", id}, {"bytes", a.size()}, {"identical", same}});
    }
    r.pass = pass;
    r.detail = "criteria 2, 4, 5, 6, 8 compared at 1 and " + std::to_string(many.workers) + " workers";
    r.report = report;
    return r;
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& options) {
    using Runner = std::function<CriterionResult(const SuiteOptions&)>;
    static const std::vector<Runner> runners = {example_reproduction, free_group_bound,   optimality,
                                                mean_growth_properties, kernel_projection, presented_pipeline,
                                                norm_collapse,        orbit_collapse,     quasimorphism_implications,
                                                determinism};
    if (id < 1 || id > static_cast<int>(runners.size())) throw DomainError("unknown criterion " + std::to_string(id));
    if (options.seed_first == 0 || options.seed_first > options.seed_last) throw DomainError("empty seed range");
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r = runners[static_cast<std::size_t>(id - 1)](options);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (id == 1 && r.seconds >= 1.0) {
        r.pass = false;
        r.detail += " (runtime budget 1 s exceeded)";
    }
    if (id == 2 && r.seconds >= 30.0) {
        r.pass = false;
        r.detail += " (runtime budget 30 s exceeded)";
    }
    return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options, const std::vector<int>& ids) {
    std::vector<int> which = ids;
    if (which.empty()) {
        for (int i = 1; i <= 10; ++i) which.push_back(i);
    }
    std::vector<CriterionResult> out;
    for (int id : which) out.push_back(run_criterion(id, options));
    return out;
}

SuiteOptions parse_seed_range(const std::string& text, SuiteOptions base) {
    auto parse = [&](const std::string& s) -> std::uint64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw ParseError("seed range must look like 1..100, got \"" + text + "\"");
        }
        return std::stoull(s);
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        base.seed_first = base.seed_last = parse(text);
    } else {
        base.seed_first = parse(text.substr(0, dots));
        base.seed_last = parse(text.substr(dots + 2));
    }
    if (base.seed_first == 0 || base.seed_first > base.seed_last) throw ParseError("empty seed range \"" + text + "\"");
    return base;
}

}  // namespace invlip
