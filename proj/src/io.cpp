#include "invlip/io.hpp"

#include "invlip/errors.hpp"

#include <fstream>
#include <sstream>

namespace invlip::io {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
    throw ParseError("field '" + field + "': " + what);
}

const json& require(const json& j, const char* key, const std::string& field) {
    if (!j.is_object() || !j.contains(key)) bad(field.empty() ? key : field + "." + key, "missing");
    return j.at(key);
}

std::string sub(const std::string& field, const std::string& key) { return field.empty() ? key : field + "." + key; }
std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

std::vector<std::string> string_list(const json& j, const std::string& field) {
    if (!j.is_array()) bad(field, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) bad(at(field, i), "expected a string");
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

std::size_t index_from_json(const json& j, const std::string& field) {
    if (!j.is_number_integer() || j.get<long long>() < 0) bad(field, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

Permutation permutation_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) bad(field, "expected an array of point indices");
    Permutation p;
    for (std::size_t i = 0; i < j.size(); ++i) p.push_back(static_cast<std::uint32_t>(index_from_json(j[i], at(field, i))));
    return p;
}

PointTable table_from_json(const json& j, const GroupSpace& space, const std::string& field) {
    if (!j.is_array()) bad(field, "expected an array of [word, value] pairs");
    PointTable table;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string f = at(field, i);
        if (!j[i].is_array() || j[i].size() != 2) bad(f, "expected [word, value]");
        const Word w = space.normal_form(word_from_json(j[i][0], space.rank(), space.names(), f + "[0]"));
        const Rational v = rational_from_json(j[i][1], f + "[1]");
        if (!table.emplace(w, v).second) bad(f, "duplicate point " + space.format(w));
    }
    return table;
}

json table_to_json(const PointTable& table) {
    json out = json::array();
    for (const auto& [w, v] : table) out.push_back(json::array({to_json(w), to_json(v)}));
    return out;
}

}  // namespace

json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j, const std::string& field) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            bad(field, e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long long>());
    bad(field, "expected a rational string \"p/q\" or an integer");
}

RationalVector rational_vector_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) bad(field, "expected an array of rationals");
    RationalVector out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], at(field, i)));
    return out;
}

json to_json(const Word& w) {
    json out = json::array();
    for (const auto& l : w.letters()) out.push_back(json::array({l.generator, static_cast<int>(l.sign)}));
    return out;
}

Word word_from_json(const json& j, std::size_t rank, const std::vector<std::string>& names, const std::string& field) {
    try {
        if (j.is_string()) {
            try {
                return parse_word(j.get<std::string>(), names);
            } catch (const ParseError& e) {
                bad(field, e.what());
            }
        }
        if (!j.is_array()) bad(field, "expected a word: [[generator, sign], ...] or a string");
        std::vector<Letter> letters;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const json& l = j[i];
            if (!l.is_array() || l.size() != 2 || !l[0].is_number_integer() || !l[1].is_number_integer()) {
                bad(at(field, i), "expected [generator, sign]");
            }
            const long long g = l[0].get<long long>();
            const long long s = l[1].get<long long>();
            if (g < 0 || static_cast<std::size_t>(g) >= rank) bad(at(field, i), "generator index out of range");
            if (s != 1 && s != -1) bad(at(field, i), "sign must be 1 or -1");
            letters.push_back({static_cast<std::uint32_t>(g), static_cast<std::int8_t>(s)});
        }
        return Word(rank, letters);
    } catch (const DomainError& e) {
        bad(field, e.what());
    }
}

json to_json(const Scope& s) { return s.describe(); }

json to_json(const LipFn& f) {
    switch (f.kind()) {
        case LipFn::Kind::structured: {
            json hom = json::array();
            for (const auto& h : f.hom()) hom.push_back(to_json(h));
            return {{"kind", "structured"}, {"hom", hom}, {"support", table_to_json(f.table())}, {"pointed", f.pointed()}};
        }
        case LipFn::Kind::tabulated:
            return {{"kind", "tabulated"}, {"values", table_to_json(f.table())}, {"pointed", f.pointed()}};
        case LipFn::Kind::pullback:
            return {{"kind", "pullback"}, {"base", to_json(f.base())}};
    }
    return nullptr;
}

LipFn lipfn_from_json(const json& j, const GroupSpace& space, const std::string& field) {
    const std::string kind = require(j, "kind", field).is_string() ? j.at("kind").get<std::string>() : "";
    const bool pointed = j.value("pointed", true);
    try {
        if (kind == "structured") {
            RationalVector hom = rational_vector_from_json(require(j, "hom", field), sub(field, "hom"));
            if (hom.size() != space.rank()) bad(sub(field, "hom"), "needs one value per generator");
            PointTable p = j.contains("support") ? table_from_json(j.at("support"), space, sub(field, "support")) : PointTable{};
            return LipFn::structured(std::move(hom), std::move(p), pointed);
        }
        if (kind == "tabulated") {
            return LipFn::tabulated(table_from_json(require(j, "values", field), space, sub(field, "values")), pointed);
        }
    } catch (const ValidationError& e) {
        bad(field, e.what());
    }
    bad(sub(field, "kind"), "expected \"structured\", \"tabulated\" or \"random\"");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
    }
}

Instance instance_from_json(const json& j) {
    if (!j.is_object()) bad("", "instance must be a JSON object");
    Instance inst;
    if (j.contains("action")) {
        inst.action = action_from_json(j.at("action"));
        inst.backend = "finite_cayley";
        if (j.contains("function")) inst.function = j.at("function");
        return inst;
    }
    Presentation& p = inst.presentation;
    p.generator_names = string_list(require(j, "generators", ""), "generators");
    p.generator_count = p.generator_names.size();
    if (p.generator_count == 0) bad("generators", "at least one generator is required");
    if (j.contains("relators")) {
        const json& rel = j.at("relators");
        if (!rel.is_array()) bad("relators", "expected an array of words");
        for (std::size_t i = 0; i < rel.size(); ++i) {
            p.relators.push_back(word_from_json(rel[i], p.generator_count, p.generator_names, at("relators", i)));
        }
    }
    try {
        p.validate();
    } catch (const Error& e) {
        bad("relators", e.what());
    }
    const json& backend = require(j, "backend", "");
    if (!backend.is_string()) bad("backend", "expected a string");
    inst.backend = backend.get<std::string>();
    if (inst.backend != "free" && inst.backend != "free_abelian" && inst.backend != "finite_cayley" &&
        inst.backend != "oracle") {
        bad("backend", "expected \"free\", \"free_abelian\", \"finite_cayley\" or \"oracle\"");
    }
    if (j.contains("permutations")) {
        const json& perms = j.at("permutations");
        if (!perms.is_array()) bad("permutations", "expected one permutation per generator");
        for (std::size_t i = 0; i < perms.size(); ++i) inst.permutations.push_back(permutation_from_json(perms[i], at("permutations", i)));
    }
    if (j.contains("function")) inst.function = j.at("function");
    return inst;
}

Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

GroupSpace build_space(const Instance& inst) {
    const Presentation& p = inst.presentation;
    if (inst.action) return inst.action->group;
    if (inst.backend == "free") return GroupSpace::free_group(p.generator_count, p.generator_names).with_presentation(p);
    if (inst.backend == "free_abelian") {
        return GroupSpace::free_abelian(p.generator_count, p.generator_names).with_presentation(p);
    }
    if (inst.backend == "finite_cayley") {
        if (!inst.permutations.empty()) {
            if (inst.permutations.size() != p.generator_count) bad("permutations", "needs one permutation per generator");
            try {
                return GroupSpace::finite_cayley(inst.permutations, p.generator_names).with_presentation(p);
            } catch (const ValidationError& e) {
                bad("permutations", e.what());
            }
        }
        // <s | s^n> needs no explicit permutations.
        if (p.generator_count == 1 && p.relators.size() == 1) {
            const long long n = exponent_sum(p.relators.front(), 0);
            if (p.relators.front().length() == static_cast<std::size_t>(std::llabs(n)) && n != 0) {
                Permutation cycle(static_cast<std::size_t>(std::llabs(n)));
                for (std::size_t i = 0; i < cycle.size(); ++i) cycle[i] = static_cast<std::uint32_t>((i + 1) % cycle.size());
                return GroupSpace::finite_cayley({cycle}, p.generator_names).with_presentation(p);
            }
        }
        bad("permutations", "finite_cayley backend needs one permutation per generator");
    }
    bad("backend", "the oracle backend takes callbacks and is only available through the C++ and Python APIs");
}

LipFn build_function(const Instance& inst, const GroupSpace& space, std::uint64_t seed) {
    if (!inst.function) bad("function", "missing");
    const json& j = *inst.function;
    if (j.is_object() && j.value("kind", "") == "random") {
        const Rational delta = rational_from_json(require(j, "delta", "function"), "function.delta");
        const Rational radius = rational_from_json(require(j, "support_radius", "function"), "function.support_radius");
        if (delta <= 0) bad("function.delta", "must be positive");
        return random_delta_invariant(space, delta, radius, seed);
    }
    return lipfn_from_json(j, space, "function");
}

PointFunction random_point_function(const FiniteActionSpace& fa, std::uint64_t seed) {
    SeededRng rng(seed);
    const std::size_t n = fa.size();
    PointFunction base(n);
    const std::vector<Word> elements = fa.group.elements();
    for (auto d : fa.domain) {
        const Rational v = rng.rational(12, 4);
        for (const auto& g : elements) base[fa.act(g)[d]] = v;
    }
    for (auto& v : base) v += rng.rational(3, 8);
    const Rational shift = base[0];
    for (auto& v : base) v -= shift;
    return base;
}

PointFunction build_point_function(const Instance& inst, std::uint64_t seed) {
    if (!inst.action) bad("action", "missing");
    if (!inst.function) bad("function", "missing");
    const json& j = *inst.function;
    const std::string kind = j.is_object() ? j.value("kind", "") : "";
    if (kind == "random") return random_point_function(*inst.action, seed);
    if (kind != "points") bad("function.kind", "expected \"points\" or \"random\" for an action instance");
    PointFunction f = rational_vector_from_json(require(j, "values", "function"), "function.values");
    if (f.size() != inst.action->size()) bad("function.values", "needs one value per point");
    return f;
}

FiniteActionSpace action_from_json(const json& j) {
    FiniteActionSpace fa;
    const std::string f = "action";
    if (j.contains("points")) fa.labels = string_list(j.at("points"), sub(f, "points"));
    const json& dist = require(j, "dist", f);
    if (!dist.is_array()) bad(sub(f, "dist"), "expected a square matrix");
    for (std::size_t i = 0; i < dist.size(); ++i) fa.dist.push_back(rational_vector_from_json(dist[i], at(sub(f, "dist"), i)));
    const json& group = require(j, "group", f);
    const std::vector<std::string> names = string_list(require(group, "generators", sub(f, "group")), sub(f, "group.generators"));
    std::vector<Permutation> perms;
    const json& gp = require(group, "permutations", sub(f, "group"));
    if (!gp.is_array() || gp.size() != names.size()) bad(sub(f, "group.permutations"), "needs one permutation per generator");
    for (std::size_t i = 0; i < gp.size(); ++i) perms.push_back(permutation_from_json(gp[i], at(sub(f, "group.permutations"), i)));
    try {
        fa.group = GroupSpace::finite_cayley(perms, names);
    } catch (const ValidationError& e) {
        bad(sub(f, "group.permutations"), e.what());
    }
    const json& ga = require(j, "generator_action", f);
    if (!ga.is_array()) bad(sub(f, "generator_action"), "expected one permutation of the points per generator");
    for (std::size_t i = 0; i < ga.size(); ++i) fa.generator_action.push_back(permutation_from_json(ga[i], at(sub(f, "generator_action"), i)));
    const json& dom = require(j, "domain", f);
    if (!dom.is_array()) bad(sub(f, "domain"), "expected an array of point indices");
    for (std::size_t i = 0; i < dom.size(); ++i) fa.domain.push_back(index_from_json(dom[i], at(sub(f, "domain"), i)));
    fa.alpha = j.contains("alpha") ? rational_from_json(j.at("alpha"), sub(f, "alpha")) : Rational(1);
    return fa;
}

json to_json(const FiniteActionSpace& fa) {
    json dist = json::array();
    for (const auto& row : fa.dist) {
        json r = json::array();
        for (const auto& v : row) r.push_back(to_json(v));
        dist.push_back(r);
    }
    json gens = json::array();
    json perms = json::array();
    // Generator permutations of the acting group, recovered from its regular action.
    const std::vector<Word> elements = fa.group.elements();
    for (std::uint32_t s = 0; s < fa.group.rank(); ++s) {
        gens.push_back(fa.group.names()[s]);
        json p = json::array();
        for (const auto& g : elements) {
            const Word gs = fa.group.multiply(fa.group.generator(s), g);
            p.push_back(std::find(elements.begin(), elements.end(), gs) - elements.begin());
        }
        perms.push_back(p);
    }
    return {{"points", fa.labels},
            {"dist", dist},
            {"group", {{"generators", gens}, {"permutations", perms}}},
            {"generator_action", fa.generator_action},
            {"domain", fa.domain},
            {"alpha", to_json(fa.alpha)}};
}

json to_json(const DefectReport& d) {
    return {{"value", to_json(d.delta_hat)},
            {"scope", to_json(d.scope)},
            {"witness", {{"g", to_json(d.g)}, {"x", to_json(d.x)}, {"y", to_json(d.y)}}}};
}

json to_json(const ApproximationReport& r) {
    json out;
    out["pipeline"] = r.pipeline;
    out["delta_hat"] = to_json(r.delta_hat);
    out["bound"] = to_json(r.bound);
    out["achieved_ball"] = to_json(r.achieved_ball);
    out["achieved_exact"] = r.achieved_exact ? to_json(*r.achieved_exact) : json(nullptr);
    out["radius"] = to_json(r.radius);
    out["pass"] = r.pass;
    json defect = to_json(r.defect);
    json error;
    if (r.pipeline == "orbit") {
        defect["witness"] = {{"g", to_json(r.defect.g)}, {"x", r.defect_px}, {"y", r.defect_py}};
        error = {{"x", r.error_px}, {"y", r.error_py}};
    } else {
        error = {{"x", to_json(r.error_x)}, {"y", to_json(r.error_y)}, {"space", r.error_space}};
    }
    out["defect"] = defect;
    out["error_witness"] = error;
    json constants = json::object();
    for (const auto& [k, v] : r.constants) constants[k] = to_json(v);
    out["constants"] = constants;
    return out;
}

json to_json(const MeanGrowth& mg) {
    return {{"direction", to_json(mg.direction)}, {"base", to_json(mg.base)},   {"c_plus", to_json(mg.c_plus)},
            {"c_minus", to_json(mg.c_minus)},     {"c", to_json(mg.c)},         {"scope", to_json(mg.scope)},
            {"witness", {{"g_plus", to_json(mg.g_plus)}, {"g_minus", to_json(mg.g_minus)}}}};
}

json to_json(const KernelProjection& kp) {
    json u = json::array();
    for (const auto& v : kp.u) u.push_back(to_json(v));
    return {{"u", u}, {"t", to_json(kp.t)}, {"basis_certificate", kp.basis_certificate}};
}

json to_json(const QmReport& q) {
    return {{"defect_D", to_json(q.defect_D)},
            {"partial_D", to_json(q.partial_D)},
            {"scope", to_json(q.scope)},
            {"witness_D", {{"g", to_json(q.defect_g)}, {"h", to_json(q.defect_h)}}},
            {"witness_partial", {{"g", to_json(q.partial_g)}, {"h", to_json(q.partial_h)}}}};
}

json to_json(const TwoSidedDefect& d) {
    return {{"value", to_json(d.value)},
            {"left", to_json(d.left)},
            {"right", to_json(d.right)},
            {"scope", to_json(d.scope)},
            {"witness_left", {{"g", to_json(d.left_g)}, {"x", to_json(d.left_x)}, {"y", to_json(d.left_y)}}},
            {"witness_right", {{"g", to_json(d.right_g)}, {"x", to_json(d.right_x)}, {"y", to_json(d.right_y)}}}};
}

json to_json(const PqmImplications& p) {
    return {{"i", p.i}, {"ii", p.ii}, {"iii", p.iii}, {"consistent", p.consistent()}, {"qm", to_json(p.qm)},
            {"two_sided_defect", to_json(p.defect)}};
}

RationalMatrix matrix_from_json(const json& j) {
    const json& rows = j.is_object() ? require(j, "matrix", "") : j;
    if (!rows.is_array() || rows.empty()) bad("matrix", "expected a nonempty array of rows");
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < rows.size(); ++i) out.push_back(rational_vector_from_json(rows[i], at("matrix", i)));
    try {
        return RationalMatrix::from_rows(out);
    } catch (const DomainError& e) {
        bad("matrix", e.what());
    }
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
    if (rows.empty()) throw PreconditionError("emit_curve needs at least one report");
    std::string out = "seed,delta_hat,bound,achieved,pass\n";
    for (const auto& row : rows) {
        out += std::to_string(row.seed) + "," + to_string(row.report.delta_hat) + "," + to_string(row.report.bound) +
               "," + to_string(row.report.achieved()) + "," + (row.report.pass ? "true" : "false") + "\n";
    }
    return out;
}

void emit_curve(const std::vector<CurveRow>& rows, const std::string& path) {
    const std::string text = curve_csv(rows);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("failed writing " + path);
}

}  // namespace invlip::io
