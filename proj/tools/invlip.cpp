// invlip: invariant approximants of almost-invariant Lipschitz functions.

#include "invlip/approximants.hpp"
#include "invlip/errors.hpp"
#include "invlip/io.hpp"
#include "invlip/kernel_projection.hpp"
#include "invlip/mean_growth.hpp"
#include "invlip/quasimorphism.hpp"
#include "invlip/suite.hpp"
#include "invlip/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace invlip;
using io::json;
using io::to_json;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Common {
    std::string instance;
    std::string out;
    std::string radius = "4";
    std::uint64_t seed = 1;
    std::string seeds;
    std::string csv;
    unsigned workers = 0;
};

json merged(json head, const json& tail) {
    head.update(tail);
    return head;
}

void emit(const json& j, const std::string& path) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

Rational radius_of(const Common& c) {
    const Rational r = parse_rational(c.radius);
    if (r < 1) throw ParseError("--radius must be at least 1");
    return r;
}

void report_violation(const ApproximationReport& r) {
    std::cerr << "bound violated: achieved " << to_string(r.achieved()) << " > bound " << to_string(r.bound)
              << " (pipeline " << r.pipeline << ")\n";
}

// One approximation run; returns the JSON record and the report.
std::pair<json, ApproximationReport> approx_once(const std::string& pipeline, const io::Instance& inst,
                                                 const Rational& radius, std::uint64_t seed) {
    if (pipeline == "orbit") {
        if (!inst.action) throw ParseError("field 'action': missing (orbit instances describe a finite action)");
        const PointFunction f = io::build_point_function(inst, seed);
        const OrbitApproximation oa = orbit_collapse_approximant(*inst.action, f);
        json fbar = json::array();
        for (const auto& v : oa.fbar) fbar.push_back(to_json(v));
        return {{{"seed", seed}, {"fbar", fbar}, {"invariant", oa.invariant}, {"report", to_json(oa.report)}}, oa.report};
    }
    const GroupSpace space = io::build_space(inst);
    const LipFn f = io::build_function(inst, space, seed);
    if (pipeline == "free") {
        const Approximation ap = free_approximant(f, space, radius);
        return {{{"seed", seed}, {"fbar", to_json(ap.fbar)}, {"report", to_json(ap.report)}}, ap.report};
    }
    const PresentedApproximation pa = presented_approximant(f, inst.presentation, space, radius);
    json x = json::array();
    for (const auto& v : pa.growth) x.push_back(to_json(v));
    return {{{"seed", seed},
             {"fbar", to_json(pa.fbar)},
             {"growth", x},
             {"projection", to_json(pa.projection)},
             {"growth_bound_holds", pa.growth_bound_holds},
             {"well_defined", pa.well_defined},
             {"report", to_json(pa.report)}},
            pa.report};
}

int run_approx(const std::string& pipeline, const Common& c) {
    const io::Instance inst = io::load_instance(c.instance);
    const Rational radius = pipeline == "orbit" ? Rational(0) : radius_of(c);
    if (c.seeds.empty()) {
        auto [record, report] = approx_once(pipeline, inst, radius, c.seed);
        record = merged(json{{"command", "approx-" + pipeline}}, record);
        emit(record, c.out);
        if (!c.csv.empty()) io::emit_curve({{c.seed, report}}, c.csv);
        if (!report.pass) {
            report_violation(report);
            return kExitViolation;
        }
        return 0;
    }
    const SuiteOptions range = parse_seed_range(c.seeds);
    std::vector<std::uint64_t> seeds;
    for (auto s = range.seed_first; s <= range.seed_last; ++s) seeds.push_back(s);
    const auto runs = parallel_map(seeds.size(), c.workers ? c.workers : default_workers(),
                                   [&](std::size_t i) { return approx_once(pipeline, inst, radius, seeds[i]); });
    json records = json::array();
    std::vector<io::CurveRow> rows;
    bool pass = true;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        records.push_back(runs[i].first);
        rows.push_back({seeds[i], runs[i].second});
        if (!runs[i].second.pass) {
            pass = false;
            report_violation(runs[i].second);
        }
    }
    emit({{"command", "approx-" + pipeline}, {"runs", records}, {"pass", pass}}, c.out);
    if (!c.csv.empty()) io::emit_curve(rows, c.csv);
    return pass ? 0 : kExitViolation;
}

int run_mean_growth(const Common& c, const std::string& direction, const std::string& base) {
    const io::Instance inst = io::load_instance(c.instance);
    const GroupSpace space = io::build_space(inst);
    const LipFn f = io::build_function(inst, space, c.seed);
    const Word s = io::word_from_json(json(direction), space.rank(), space.names(), "--direction");
    const Word x = io::word_from_json(json(base), space.rank(), space.names(), "--base");
    const MeanGrowth mg = mean_growth(f, space, s, x, radius_of(c));
    emit(merged(json{{"command", "mean-growth"}, {"seed", c.seed}}, to_json(mg)), c.out);
    return 0;
}

int run_kernel_project(const std::string& matrix, const std::string& vector, bool oracle, const std::string& out) {
    const RationalMatrix a = io::matrix_from_json(io::read_json_file(matrix));
    const json xj = io::read_json_file(vector);
    const RationalVector x = io::rational_vector_from_json(xj.is_object() ? xj.at("vector") : xj, "vector");
    if (x.size() != a.cols) throw ParseError("field 'vector': length " + std::to_string(x.size()) + " does not match " +
                                             std::to_string(a.cols) + " matrix columns");
    const KernelProjection kp = linf_kernel_project(a, x);
    json j = merged(json{{"command", "kernel-project"}}, to_json(kp));
    if (oracle) {
        const Rational t = kernel_project_oracle(a, x);
        j["oracle_t"] = to_json(t);
        j["oracle_agrees"] = t == kp.t;
    }
    emit(j, out);
    return oracle && kernel_project_oracle(a, x) != kp.t ? kExitViolation : 0;
}

int run_qm(const Common& c, const std::string& delta_text, bool skip_bi) {
    const io::Instance inst = io::load_instance(c.instance);
    const GroupSpace space = io::build_space(inst);
    const LipFn f = io::build_function(inst, space, c.seed);
    const Rational radius = radius_of(c);
    const BiInvariance policy = skip_bi ? BiInvariance::skip : BiInvariance::verify;
    json j{{"command", "qm"}, {"seed", c.seed}};
    if (skip_bi) {
        if (auto w = find_bi_invariance_violation(space, radius)) {
            j["bi_invariance_witness"] = {{"g", to_json(w->g)}, {"h", to_json(w->h)}, {"k", to_json(w->k)}};
        }
    }
    const QmReport qm = qm_defects(f, space, radius, policy);
    const TwoSidedDefect two = two_sided_defect(f, space, radius);
    const Rational delta = delta_text.empty() ? two.value : parse_rational(delta_text);
    const PqmImplications imp = evaluate_implications(qm, two, delta);
    const PqmConstant pc = pqm_constant_from_lipschitz(f, space, 1, radius, policy, &qm);
    j["delta"] = to_json(delta);
    j.update(to_json(imp));
    j["pqm_constant"] = {{"constant", to_json(pc.constant)}, {"lipschitz", to_json(pc.lipschitz)}, {"holds", pc.holds}};
    emit(j, c.out);
    if (!imp.consistent() || !pc.holds) {
        std::cerr << "implication or constant check failed\n";
        return kExitViolation;
    }
    return 0;
}

// Recomputes every witness stored in a report.
int run_check(const Common& c, const std::string& report_path) {
    const io::Instance inst = io::load_instance(c.instance);
    const json rep = io::read_json_file(report_path);
    const std::uint64_t seed = rep.value("seed", c.seed);
    json checks = json::object();
    bool ok = true;
    auto record = [&](const std::string& name, bool value) {
        checks[name] = value;
        ok = ok && value;
    };

    if (rep.contains("report") && rep.at("report").value("pipeline", "") == "orbit") {
        const json& r = rep.at("report");
        const FiniteActionSpace& fa = *inst.action;
        const PointFunction f = io::build_point_function(inst, seed);
        const PointFunction fbar = io::rational_vector_from_json(rep.at("fbar"), "fbar");
        const Word g = io::word_from_json(r.at("defect").at("witness").at("g"), fa.group.rank(), fa.group.names(), "g");
        const std::size_t x = r["defect"]["witness"]["x"], y = r["defect"]["witness"]["y"];
        const Permutation ag = fa.act(g);
        const Rational delta_hat = io::rational_from_json(r.at("delta_hat"), "delta_hat");
        const Rational defect = x == y ? Rational(0) : Rational(abs((f[ag[x]] - f[x]) - (f[ag[y]] - f[y])) / fa.dist[x][y]);
        record("defect_witness", defect == delta_hat && action_defect(fa, f).value == delta_hat);
        const std::size_t ex = r["error_witness"]["x"], ey = r["error_witness"]["y"];
        const Rational achieved = io::rational_from_json(r.at("achieved_ball"), "achieved_ball");
        const Rational err = ex == ey ? Rational(0) : Rational(abs((f[ex] - fbar[ex]) - (f[ey] - fbar[ey])) / fa.dist[ex][ey]);
        record("error_witness", err == achieved);
        const Rational bound = io::rational_from_json(r.at("bound"), "bound");
        record("bound_formula", bound == (2 * fa.alpha + 1) * delta_hat);
        record("pass_flag", r.at("pass").get<bool>() == (achieved <= bound));
    } else if (rep.contains("report")) {
        const json& r = rep.at("report");
        const GroupSpace space = io::build_space(inst);
        const LipFn f = io::build_function(inst, space, seed);
        const LipFn fbar = io::lipfn_from_json(rep.at("fbar"), space, "fbar");
        auto word = [&](const json& j, const char* name) { return io::word_from_json(j, space.rank(), space.names(), name); };
        const json& w = r.at("defect").at("witness");
        const Rational delta_hat = io::rational_from_json(r.at("delta_hat"), "delta_hat");
        record("defect_witness", defect_at(f, space, word(w.at("g"), "g"), word(w.at("x"), "x"), word(w.at("y"), "y")) == delta_hat);
        const json& e = r.at("error_witness");
        const std::string where = e.value("space", "group");
        const GroupSpace err_space = where == "free" ? GroupSpace::free_group(space.rank(), space.names()) : space;
        const LipFn err_f = where == "free" ? lift_to_free(f, inst.presentation, space) : f;
        const Word x = word(e.at("x"), "x"), y = word(e.at("y"), "y");
        const Rational d = err_space.distance(x, y);
        const Rational fx = eval(err_f, err_space, x) - eval(fbar, space, x);
        const Rational fy = eval(err_f, err_space, y) - eval(fbar, space, y);
        const Rational err = d == 0 ? Rational(0) : Rational(abs(fx - fy) / d);
        const bool exact = !r.at("achieved_exact").is_null() && where != "free";
        const Rational achieved = io::rational_from_json(exact ? r.at("achieved_exact") : r.at("achieved_ball"), "achieved");
        record("error_witness", err == achieved);
        const Rational bound = io::rational_from_json(r.at("bound"), "bound");
        Rational expected = delta_hat / 2;
        const json& k = r.at("constants");
        if (k.contains("eta")) expected += io::rational_from_json(k.at("eta"), "eta");
        if (k.contains("C_R")) {
            expected = (Rational(1, 2) + io::rational_from_json(k.at("C_R"), "C_R") * io::rational_from_json(k.at("D_emp"), "D_emp")) * delta_hat;
        }
        record("bound_formula", bound == expected);
        const Rational reported = io::rational_from_json(r.at("achieved_exact").is_null() ? r.at("achieved_ball") : r.at("achieved_exact"), "achieved");
        record("pass_flag", !r.at("pass").get<bool>() || reported <= bound);
    } else if (rep.contains("c_plus")) {
        const GroupSpace space = io::build_space(inst);
        const LipFn f = io::build_function(inst, space, seed);
        auto word = [&](const json& j, const char* name) { return io::word_from_json(j, space.rank(), space.names(), name); };
        const Word s = word(rep.at("direction"), "direction"), x = word(rep.at("base"), "base");
        auto diff = [&](const Word& g) {
            return eval(f, space, space.multiply(g, space.multiply(s, x))) - eval(f, space, space.multiply(g, x));
        };
        record("c_plus_witness", diff(word(rep["witness"]["g_plus"], "g_plus")) == io::rational_from_json(rep.at("c_plus"), "c_plus"));
        record("c_minus_witness", diff(word(rep["witness"]["g_minus"], "g_minus")) == io::rational_from_json(rep.at("c_minus"), "c_minus"));
    } else if (rep.contains("qm")) {
        const GroupSpace space = io::build_space(inst);
        const LipFn f = io::build_function(inst, space, seed);
        auto word = [&](const json& j, const char* name) { return io::word_from_json(j, space.rank(), space.names(), name); };
        const json& q = rep.at("qm");
        auto qm_value = [&](const Word& g, const Word& h) {
            return abs(eval(f, space, space.multiply(g, h)) - eval(f, space, g) - eval(f, space, h));
        };
        const Word g = word(q["witness_D"]["g"], "g"), h = word(q["witness_D"]["h"], "h");
        record("defect_D_witness", qm_value(g, h) == io::rational_from_json(q.at("defect_D"), "defect_D"));
        const Word pg = word(q["witness_partial"]["g"], "g"), ph = word(q["witness_partial"]["h"], "h");
        const Rational m = std::min(space.norm(pg), space.norm(ph));
        const Rational partial = m == 0 ? Rational(0) : Rational(qm_value(pg, ph) / m);
        record("partial_D_witness", partial == io::rational_from_json(q.at("partial_D"), "partial_D"));
    } else {
        throw ParseError("field 'report': unrecognized report layout");
    }
    emit({{"command", "check"}, {"checks", checks}, {"reproduced", ok}}, c.out);
    return ok ? 0 : kExitViolation;
}

int run_suite_command(const std::string& seeds, unsigned workers, const std::vector<int>& criteria, const std::string& out) {
    SuiteOptions opts = parse_seed_range(seeds);
    opts.workers = workers;
    const auto results = run_suite(opts, criteria);
    json j = json::array();
    bool pass = true;
    for (const auto& r : results) {
        std::cerr << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " - " << r.detail << "\n";
        j.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"report", r.report}});
        pass = pass && r.pass;
    }
    if (!out.empty()) emit({{"command", "suite"}, {"seeds", seeds}, {"criteria", j}, {"pass", pass}}, out);
    return pass ? 0 : kExitViolation;
}

void add_common(CLI::App* cmd, Common& c, bool sweep) {
    cmd->add_option("--instance", c.instance, "instance JSON file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--radius", c.radius, "ball radius for truncated suprema");
    cmd->add_option("--seed", c.seed, "seed for random functions");
    cmd->add_option("--out", c.out, "write JSON here instead of stdout");
    if (sweep) {
        cmd->add_option("--seeds", c.seeds, "seed range lo..hi for a sweep");
        cmd->add_option("--csv", c.csv, "write seed,delta_hat,bound,achieved,pass rows");
        cmd->add_option("--workers", c.workers, "parallel workers (default: hardware threads)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invlip: invariant approximants of almost-invariant Lipschitz functions"};
    app.require_subcommand(1);

    Common approx_common;
    std::string pipeline;
    auto* approx = app.add_subcommand("approx", "construct fbar and certify ||f - fbar||");
    approx->add_option("pipeline", pipeline, "free | presented | orbit")
        ->required()
        ->check(CLI::IsMember({"free", "presented", "orbit"}));
    add_common(approx, approx_common, true);

    Common alias_common[3];
    const char* alias_names[3] = {"free", "presented", "orbit"};
    CLI::App* aliases[3];
    for (int i = 0; i < 3; ++i) {
        aliases[i] = app.add_subcommand(std::string("approx-") + alias_names[i], std::string("same as: approx ") + alias_names[i]);
        add_common(aliases[i], alias_common[i], true);
    }

    Common mg_common;
    std::string direction, base = "e";
    auto* mg = app.add_subcommand("mean-growth", "c+, c-, c of f in a direction");
    add_common(mg, mg_common, false);
    mg->add_option("--direction", direction, "direction word, e.g. \"a\" or \"a b^-1\"")->required();
    mg->add_option("--base", base, "base point (default e)");

    std::string matrix, vector, kp_out;
    bool with_oracle = false;
    auto* kp = app.add_subcommand("kernel-project", "nearest point of ker A in the max norm");
    kp->add_option("--matrix", matrix, "JSON matrix of rationals")->required()->check(CLI::ExistingFile);
    kp->add_option("--vector", vector, "JSON vector of rationals")->required()->check(CLI::ExistingFile);
    kp->add_flag("--oracle", with_oracle, "also run the vertex-enumeration oracle");
    kp->add_option("--out", kp_out, "write JSON here instead of stdout");

    Common qm_common;
    std::string delta;
    bool skip_bi = false;
    auto* qm = app.add_subcommand("qm", "quasimorphism defects and implication checks");
    add_common(qm, qm_common, false);
    qm->add_option("--delta", delta, "threshold (default: the two-sided defect)");
    qm->add_flag("--skip-bi-invariance", skip_bi, "do not require d(gk, hk) = d(g, h) on the ball");

    Common check_common;
    std::string report_path;
    auto* check = app.add_subcommand("check", "recompute the witnesses stored in a report");
    add_common(check, check_common, false);
    check->add_option("--report", report_path, "report JSON produced by another command")->required()->check(CLI::ExistingFile);

    std::string suite_seeds = "1..100", suite_out;
    unsigned suite_workers = 0;
    std::vector<int> criteria;
    auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
    suite->add_option("--seeds", suite_seeds, "seed range lo..hi");
    suite->add_option("--workers", suite_workers, "parallel workers (default: hardware threads)");
    suite->add_option("--criteria", criteria, "subset of criteria 1..10")->delimiter(',');
    suite->add_option("--out", suite_out, "write the full JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*approx) return run_approx(pipeline, approx_common);
        for (int i = 0; i < 3; ++i) {
            if (*aliases[i]) return run_approx(alias_names[i], alias_common[i]);
        }
        if (*mg) return run_mean_growth(mg_common, direction, base);
        if (*kp) return run_kernel_project(matrix, vector, with_oracle, kp_out);
        if (*qm) return run_qm(qm_common, delta, skip_bi);
        if (*check) return run_check(check_common, report_path);
        if (*suite) return run_suite_command(suite_seeds, suite_workers, criteria, suite_out);
    } catch (const ParseError& e) {
        std::cerr << "invlip: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << "invlip: invalid input: " << e.what() << "\n";
        return kExitInput;
    } catch (const DomainError& e) {
        std::cerr << "invlip: " << e.what() << "\n";
        return kExitInput;
    } catch (const PreconditionError& e) {
        std::cerr << "invlip: precondition failed: " << e.what() << "\n";
        return kExitInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invlip: malformed report: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "invlip: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
