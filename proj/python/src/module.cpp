#include "invlip/approximants.hpp"
#include "invlip/errors.hpp"
#include "invlip/instances.hpp"
#include "invlip/io.hpp"
#include "invlip/kernel_projection.hpp"
#include "invlip/lipschitz.hpp"
#include "invlip/mean_growth.hpp"
#include "invlip/quasimorphism.hpp"
#include "invlip/suite.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace invlip;

// Rational <-> fractions.Fraction. int and "p/q" strings are accepted on input.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
    PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (!src) return false;
        try {
            if (py::isinstance<py::str>(src)) {
                value = parse_rational(src.cast<std::string>());
                return true;
            }
            if (py::isinstance<py::bool_>(src)) return false;
            if (py::isinstance<py::int_>(src)) {
                value = Rational(Integer(py::str(src).cast<std::string>()));
                return true;
            }
            const py::object fraction = py::module_::import("fractions").attr("Fraction");
            if (py::isinstance(src, fraction)) {
                const std::string num = py::str(src.attr("numerator"));
                const std::string den = py::str(src.attr("denominator"));
                value = Rational(Integer(num), Integer(den));
                return true;
            }
        } catch (const Error&) {
            return false;
        }
        return false;
    }

    static handle cast(const Rational& r, return_value_policy, handle) {
        const py::object fraction = py::module_::import("fractions").attr("Fraction");
        const py::object num = py::int_(py::str(boost::multiprecision::numerator(r).str()));
        const py::object den = py::int_(py::str(boost::multiprecision::denominator(r).str()));
        return fraction(num, den).release();
    }
};
}  // namespace pybind11::detail

namespace {

py::object to_python(const io::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

io::json from_python(const py::object& o) {
    return io::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

std::vector<Letter> letters_from(const std::vector<std::pair<std::uint32_t, int>>& pairs) {
    std::vector<Letter> out;
    for (auto [g, s] : pairs) {
        if (s != 1 && s != -1) throw DomainError("sign must be 1 or -1");
        out.push_back({g, static_cast<std::int8_t>(s)});
    }
    return out;
}

PointTable table_from(const py::dict& d, const GroupSpace& space) {
    PointTable out;
    for (auto [k, v] : d) {
        const Word w = py::isinstance<py::str>(k) ? space.parse(k.cast<std::string>()) : k.cast<Word>();
        out[space.normal_form(w)] = v.cast<Rational>();
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_invlip, m) {
    m.doc() = "Exact approximation of almost-invariant Lipschitz functions on groups";

    static py::exception<Error> base_error(m, "InvlipError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base_error.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base_error.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base_error.ptr());
    py::register_exception<ScopeError>(m, "ScopeError", base_error.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base_error.ptr());
    py::register_exception<UnboundedNormError>(m, "UnboundedNormError", base_error.ptr());
    py::register_exception<ParseError>(m, "ParseError", base_error.ptr());
    py::register_exception<OracleError>(m, "OracleError", base_error.ptr());

    py::class_<Word>(m, "Word")
        .def(py::init([](std::size_t rank, const std::vector<std::pair<std::uint32_t, int>>& letters) {
                 return Word(rank, letters_from(letters));
             }),
             py::arg("rank"), py::arg("letters") = std::vector<std::pair<std::uint32_t, int>>{})
        .def_static("generator", &Word::generator, py::arg("rank"), py::arg("index"), py::arg("power") = 1)
        .def_property_readonly("rank", &Word::rank)
        .def_property_readonly("letters",
                               [](const Word& w) {
                                   std::vector<std::pair<std::uint32_t, int>> out;
                                   for (const auto& l : w.letters()) out.emplace_back(l.generator, l.sign);
                                   return out;
                               })
        .def("__len__", &Word::length)
        .def("__eq__", [](const Word& a, const Word& b) { return a == b; })
        .def("__lt__", [](const Word& a, const Word& b) { return a < b; })
        .def("__hash__", [](const Word& w) { return WordHash{}(w); })
        .def("__mul__", [](const Word& a, const Word& b) { return multiply(a, b); })
        .def("inverse", [](const Word& w) { return invert(w); })
        .def("__repr__", [](const Word& w) { return "Word(" + format_word(w, default_generator_names(w.rank())) + ")"; });

    py::class_<GroupSpace>(m, "GroupSpace")
        .def_static("free_group", &GroupSpace::free_group, py::arg("rank"), py::arg("names") = std::vector<std::string>{})
        .def_static("free_abelian", &GroupSpace::free_abelian, py::arg("rank"),
                    py::arg("names") = std::vector<std::string>{})
        .def_static("cyclic", &GroupSpace::cyclic, py::arg("n"))
        .def_static("symmetric", &GroupSpace::symmetric, py::arg("k"))
        .def_static(
            "finite_cayley",
            [](const std::vector<Permutation>& gens, std::vector<std::string> names) {
                return GroupSpace::finite_cayley(gens, std::move(names));
            },
            py::arg("permutations"), py::arg("names") = std::vector<std::string>{})
        .def_static(
            "oracle",
            [](std::size_t rank, const std::function<Word(const Word&)>& normal_form,
               const std::function<Rational(const Word&)>& norm, std::vector<std::string> names, bool pseudometric) {
                return GroupSpace::oracle(rank, normal_form, norm, std::move(names), pseudometric);
            },
            py::arg("rank"), py::arg("normal_form"), py::arg("norm"), py::arg("names") = std::vector<std::string>{},
            py::arg("pseudometric") = false)
        .def_property_readonly("kind", [](const GroupSpace& s) { return to_string(s.kind()); })
        .def_property_readonly("rank", &GroupSpace::rank)
        .def_property_readonly("names", &GroupSpace::names)
        .def_property_readonly("is_finite", &GroupSpace::is_finite)
        .def("identity", &GroupSpace::identity)
        .def("generator", &GroupSpace::generator, py::arg("index"), py::arg("power") = 1)
        .def("parse", [](const GroupSpace& s, const std::string& text) { return s.parse(text); })
        .def("format", &GroupSpace::format)
        .def("normal_form", &GroupSpace::normal_form)
        .def("multiply", &GroupSpace::multiply)
        .def("inverse", &GroupSpace::inverse)
        .def("norm", &GroupSpace::norm)
        .def("distance", &GroupSpace::distance)
        .def("ball",
             [](const GroupSpace& s, const Rational& r) {
                 std::vector<Word> out;
                 for (const auto& p : s.ball(r).points) out.push_back(p.element);
                 return out;
             })
        .def("elements", &GroupSpace::elements)
        .def("order", &GroupSpace::order);

    py::class_<LipFn>(m, "LipFn")
        .def_static(
            "structured",
            [](const GroupSpace& space, const HomValues& hom, const py::dict& perturbation) {
                return LipFn::structured(hom, table_from(perturbation, space));
            },
            py::arg("space"), py::arg("hom"), py::arg("perturbation") = py::dict())
        .def_static(
            "tabulated", [](const GroupSpace& space, const py::dict& values) { return LipFn::tabulated(table_from(values, space)); },
            py::arg("space"), py::arg("values"))
        .def_static("homomorphism", &LipFn::homomorphism, py::arg("hom"))
        .def_static("pullback", &LipFn::pullback, py::arg("base"), py::arg("quotient"))
        .def_static("random", &random_delta_invariant, py::arg("space"), py::arg("delta"), py::arg("support_radius"),
                    py::arg("seed"))
        .def_static(
            "from_json",
            [](const py::object& j, const GroupSpace& space) { return io::lipfn_from_json(from_python(j), space, "function"); },
            py::arg("data"), py::arg("space"))
        .def_property_readonly("hom", &LipFn::hom)
        .def("to_json", [](const LipFn& f) { return to_python(io::to_json(f)); })
        .def("__call__", [](const LipFn& f, const GroupSpace& space, const Word& g) { return eval(f, space, g); });

    m.def("one_sided_ramp", &one_sided_ramp, py::arg("delta"), py::arg("support_radius") = 16);

    m.def(
        "lipschitz_number",
        [](const LipFn& f, const GroupSpace& space, const Rational& radius) {
            const auto r = lipschitz_number(f, space, radius);
            return py::dict(py::arg("value") = r.value, py::arg("x") = r.x, py::arg("y") = r.y,
                            py::arg("scope") = r.scope.describe());
        },
        py::arg("f"), py::arg("space"), py::arg("radius"));
    m.def(
        "delta_defect", [](const LipFn& f, const GroupSpace& space, const Rational& radius) {
            return to_python(io::to_json(delta_defect(f, space, radius)));
        },
        py::arg("f"), py::arg("space"), py::arg("radius"));
    m.def(
        "mean_growth",
        [](const LipFn& f, const GroupSpace& space, const Word& s, const Word& x, const Rational& radius) {
            return to_python(io::to_json(mean_growth(f, space, s, x, radius)));
        },
        py::arg("f"), py::arg("space"), py::arg("direction"), py::arg("base"), py::arg("radius"));
    m.def(
        "gap_characterization",
        [](const LipFn& f, const GroupSpace& space, const Rational& radius) {
            const auto g = gap_characterization(f, space, radius);
            return py::dict(py::arg("value") = g.value, py::arg("direction") = g.direction,
                            py::arg("scope") = g.scope.describe());
        },
        py::arg("f"), py::arg("space"), py::arg("radius"));

    m.def(
        "linf_kernel_project",
        [](const std::vector<RationalVector>& a, const RationalVector& x) {
            const auto kp = linf_kernel_project(RationalMatrix::from_rows(a), x);
            return py::make_tuple(kp.u, kp.t);
        },
        py::arg("matrix"), py::arg("x"));
    m.def(
        "kernel_project_oracle",
        [](const std::vector<RationalVector>& a, const RationalVector& x) {
            return kernel_project_oracle(RationalMatrix::from_rows(a), x);
        },
        py::arg("matrix"), py::arg("x"));

    m.def(
        "free_approximant",
        [](const LipFn& f, const GroupSpace& space, const Rational& radius) {
            auto a = free_approximant(f, space, radius);
            return py::make_tuple(a.fbar, to_python(io::to_json(a.report)));
        },
        py::arg("f"), py::arg("space"), py::arg("radius"));
    m.def(
        "adjusted_approximant",
        [](const LipFn& f, const GroupSpace& space, const HomValues& u, const Rational& eta, const Rational& radius) {
            auto a = adjusted_approximant(f, space, u, eta, radius);
            return py::make_tuple(a.fbar, to_python(io::to_json(a.report)));
        },
        py::arg("f"), py::arg("space"), py::arg("u"), py::arg("eta"), py::arg("radius"));
    m.def(
        "presented_approximant",
        [](const LipFn& f, const GroupSpace& quotient, const Rational& radius) {
            if (!quotient.presentation()) throw DomainError("the quotient space carries no presentation");
            auto a = presented_approximant(f, *quotient.presentation(), quotient, radius);
            return py::make_tuple(a.fbar, to_python(io::to_json(a.report)));
        },
        py::arg("f"), py::arg("quotient"), py::arg("radius"));
    m.def(
        "with_presentation",
        [](const GroupSpace& space, const std::vector<std::string>& relators) {
            Presentation p{space.rank(), space.names(), {}};
            for (const auto& r : relators) p.relators.push_back(space.parse(r));
            p.validate();
            return space.with_presentation(p);
        },
        py::arg("space"), py::arg("relators"));
    m.def(
        "orbit_collapse",
        [](const py::object& action, const PointFunction& f) {
            const FiniteActionSpace fa = io::action_from_json(from_python(action));
            fa.validate();
            auto a = orbit_collapse_approximant(fa, f);
            return py::make_tuple(a.fbar, to_python(io::to_json(a.report)), a.invariant);
        },
        py::arg("action"), py::arg("f"));
    m.def("reflected_strip", []() { return to_python(io::to_json(reflected_strip())); });
    m.def("shrink_norm_check", &shrink_norm_check, py::arg("space"), py::arg("f"), py::arg("delta"));

    m.def(
        "qm_defects",
        [](const LipFn& f, const GroupSpace& space, const Rational& radius, bool skip_bi_invariance) {
            return to_python(
                io::to_json(qm_defects(f, space, radius, skip_bi_invariance ? BiInvariance::skip : BiInvariance::verify)));
        },
        py::arg("f"), py::arg("space"), py::arg("radius"), py::arg("skip_bi_invariance") = false);
    m.def(
        "check_pqm_implications",
        [](const LipFn& f, const GroupSpace& space, const Rational& delta, const Rational& radius, bool skip) {
            return to_python(io::to_json(
                check_pqm_implications(f, space, delta, radius, skip ? BiInvariance::skip : BiInvariance::verify)));
        },
        py::arg("f"), py::arg("space"), py::arg("delta"), py::arg("radius"), py::arg("skip_bi_invariance") = false);

    m.def(
        "run_suite",
        [](const std::string& seeds, const std::vector<int>& criteria, unsigned workers) {
            SuiteOptions options = parse_seed_range(seeds);
            options.workers = workers;
            std::vector<CriterionResult> results;
            {
                py::gil_scoped_release release;
                results = run_suite(options, criteria);
            }
            py::list out;
            for (const auto& r : results) {
                out.append(py::dict(py::arg("id") = r.id, py::arg("name") = r.name, py::arg("pass") = r.pass,
                                    py::arg("detail") = r.detail));
            }
            return out;
        },
        py::arg("seeds") = "1..100", py::arg("criteria") = std::vector<int>{}, py::arg("workers") = 0U);
}
