#include "invlip/errors.hpp"
#include "invlip/instances.hpp"
#include "invlip/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace invlip;
using invlip::io::json;

TEST_CASE("rationals and words round trip") {
    CHECK(io::to_json(Rational(-3, 4)) == "-3/4");
    CHECK(io::rational_from_json("6/8", "x") == Rational(3, 4));
    CHECK(io::rational_from_json(5, "x") == 5);
    CHECK_THROWS_AS(io::rational_from_json("1/0", "x"), ParseError);
    CHECK_THROWS_AS(io::rational_from_json(0.5, "x"), ParseError);
    const Word w = Word(2, {{0, 1}, {1, -1}});
    CHECK(io::word_from_json(io::to_json(w), 2, {"a", "b"}, "w") == w);
    CHECK(io::word_from_json("a b^-1", 2, {"a", "b"}, "w") == w);
    CHECK_THROWS_AS(io::word_from_json(json::parse("[[2, 1]]"), 2, {"a", "b"}, "w"), ParseError);
}

TEST_CASE("functions round trip") {
    const auto f1 = GroupSpace::free_group(1, {"s"});
    const LipFn ramp = one_sided_ramp(1, 16);
    const LipFn back = io::lipfn_from_json(io::to_json(ramp), f1, "function");
    CHECK(back.hom() == ramp.hom());
    CHECK(back.table() == ramp.table());
}

TEST_CASE("instance parsing reports field paths") {
    const json good = json::parse(R"({"generators": ["a", "b"], "relators": ["a b a^-1 b^-1"],
                                     "backend": "free_abelian",
                                     "function": {"kind": "random", "delta": "1", "support_radius": 2}})");
    const auto inst = io::instance_from_json(good);
    const auto space = io::build_space(inst);
    CHECK(space.kind() == BackendKind::free_abelian);
    CHECK(io::build_function(inst, space, 3).hom() == random_delta_invariant(space, 1, 2, 3).hom());

    json bad = good;
    bad["relators"] = json::array({"a c"});
    try {
        io::instance_from_json(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("relators[0]") != std::string::npos);
    }
    bad = good;
    bad["backend"] = "oracle";
    CHECK_THROWS_AS(io::build_space(io::instance_from_json(bad)), ParseError);
    bad = good;
    bad["function"] = {{"kind", "structured"}, {"hom", {"1"}}};
    CHECK_THROWS_WITH_AS(io::build_function(io::instance_from_json(bad), space, 1), doctest::Contains("function.hom"),
                         ParseError);
}

TEST_CASE("cyclic instances need no permutations") {
    const json j = json::parse(R"({"generators": ["s"], "relators": ["s^5"], "backend": "finite_cayley"})");
    CHECK(io::build_space(io::instance_from_json(j)).order() == 5);
}

TEST_CASE("actions round trip") {
    const auto fa = reflected_strip();
    const auto back = io::action_from_json(io::to_json(fa));
    CHECK(back.dist == fa.dist);
    CHECK(back.generator_action == fa.generator_action);
    CHECK(back.domain == fa.domain);
    back.validate();
    const auto f = io::random_point_function(fa, 7);
    CHECK(f[0] == 0);
    CHECK(f == io::random_point_function(fa, 7));
}

TEST_CASE("matrices") {
    const auto m = io::matrix_from_json(json::parse(R"({"matrix": [["1/2", 0], [3, "-1"]]})"));
    CHECK(m.rows == 2);
    CHECK(m.at(0, 0) == Rational(1, 2));
    CHECK(io::matrix_from_json(json::parse("[[1, 2]]")).cols == 2);
    CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[1, 2], [3]]")), ParseError);
}

TEST_CASE("curve output") {
    CHECK_THROWS_AS(io::curve_csv({}), PreconditionError);
    ApproximationReport r;
    r.delta_hat = 1;
    r.bound = Rational(1, 2);
    r.achieved_ball = Rational(1, 2);
    r.pass = true;
    const std::string csv = io::curve_csv({{1, r}});
    std::istringstream in(csv);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 2);
    CHECK(csv.find("1,1,1/2,1/2,true") != std::string::npos);
}

TEST_CASE("malformed files report a position") {
    const std::string path = "malformed_test_input.json";
    {
        std::ofstream out(path);
        out << "{\n  \"generators\": [\"a\",\n";
    }
    CHECK_THROWS_WITH_AS(io::read_json_file(path), doctest::Contains("malformed_test_input.json:"), ParseError);
    std::remove(path.c_str());
}
