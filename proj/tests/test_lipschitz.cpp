#include "invlip/errors.hpp"
#include "invlip/instances.hpp"
#include "invlip/lipschitz.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace invlip;

namespace {

Word z(long long k) { return Word::generator(1, 0, static_cast<int>(k)); }

}  // namespace

TEST_CASE("one-sided ramp values and norms") {
    const auto f1 = GroupSpace::free_group(1);
    const LipFn ramp = one_sided_ramp(1, 16);
    CHECK(eval(ramp, f1, z(-3)) == 0);
    CHECK(eval(ramp, f1, z(2)) == 2);
    CHECK(eval(ramp, f1, z(8)) == 8);
    CHECK(eval(ramp, f1, z(0)) == 0);
    CHECK(lip_norm(ramp, oracle::words(f1, 5), f1) == 1);
    const auto lip = lipschitz_number(ramp, f1, 4);
    CHECK(lip.value == 1);
    CHECK(lip.scope.exact);
    const LipFn half = LipFn::homomorphism({Rational(1, 2)});
    CHECK(lip_norm(subtract(ramp, half), oracle::words(f1, 8), f1) == Rational(1, 2));
    CHECK_THROWS_AS(one_sided_ramp(1, 3), DomainError);
}

TEST_CASE("factories validate their input") {
    CHECK_THROWS_AS(LipFn::tabulated({{Word::identity(1), 1}}), ValidationError);
    CHECK_THROWS_AS(LipFn::structured({0}, {{Word::identity(1), 1}}), ValidationError);
    CHECK_THROWS_AS(LipFn::structured({0}, {{Word::generator(2, 0), 1}}), ValidationError);
    const LipFn t = LipFn::tabulated({{z(1), 3}});
    CHECK(t.table().at(Word::identity(1)) == 0);
    const LipFn s = LipFn::structured({1}, {{z(2), 0}});
    CHECK(s.table().empty());
}

TEST_CASE("lip_norm and pseudometrics") {
    const auto f1 = GroupSpace::free_group(1);
    const LipFn f = LipFn::tabulated({{z(1), 3}, {z(-1), -1}});
    CHECK(lip_norm(f, {z(0), z(1), z(-1)}, f1) == 3);
    const auto pseudo = GroupSpace::oracle(
        1, [](const Word& w) { return w; }, [](const Word&) { return Rational(0); }, {}, true);
    const LipFn flat = LipFn::tabulated({{z(1), 0}});
    CHECK(lip_norm(flat, {z(0), z(1)}, pseudo, true) == 0);
    CHECK_THROWS_AS(lip_norm(f, {z(0), z(1)}, pseudo, true), UnboundedNormError);
}

TEST_CASE("homomorphism norms") {
    CHECK(hom_norm({Rational(1, 2), Rational(-1, 3)}, GroupSpace::free_group(2), 3).value == Rational(1, 2));
    CHECK(hom_norm({1, 1}, GroupSpace::free_abelian(2), 3).value == 1);
    CHECK(hom_norm({1, 1}, GroupSpace::free_abelian(2), 3).scope.exact);
}

TEST_CASE("defect of the ramp and of homomorphisms") {
    const auto f1 = GroupSpace::free_group(1);
    const auto d = delta_defect(one_sided_ramp(1, 16), f1, 4);
    CHECK(d.delta_hat == 1);
    CHECK(d.scope.exact);
    CHECK(defect_at(one_sided_ramp(1, 16), f1, d.g, d.x, d.y) == 1);
    const auto f2 = GroupSpace::free_group(2);
    CHECK(delta_defect(LipFn::homomorphism({3, -2}), f2, 3).delta_hat == 0);
    CHECK(detect_invariance(LipFn::homomorphism({3, -2}), f2, 2) == HomValues{3, -2});
    CHECK_FALSE(detect_invariance(one_sided_ramp(1, 16), f1, 3).has_value());
}

TEST_CASE("chain inequality instance") {
    const auto f1 = GroupSpace::free_group(1);
    const LipFn ramp = one_sided_ramp(1, 16);
    CHECK(check_chain_inequality(ramp, f1, {z(1), z(1)}, z(0), z(1), 1));
}

TEST_CASE("oracle: exact defect and Lipschitz number agree with pair scans") {
    const std::vector<GroupSpace> spaces = {GroupSpace::free_group(2), GroupSpace::free_abelian(2)};
    for (const auto& space : spaces) {
        // Edges touching a radius-2 support lie in ball(3), so translations in
        // ball(6) reach every pair of such edges.
        const auto pts = oracle::words(space, 3);
        const auto gs = oracle::words(space, 6);
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const Rational delta = seed % 2 ? Rational(1) : Rational(1, 2);
            const LipFn f = random_delta_invariant(space, delta, 2, seed);
            const auto d = delta_defect(f, space, 4);
            REQUIRE(d.scope.exact);
            CHECK(d.delta_hat <= delta);
            CHECK(d.delta_hat == oracle::defect(f, space, gs, pts));
            const auto lip = lipschitz_number(f, space, 4);
            REQUIRE(lip.scope.exact);
            CHECK(lip.value == oracle::lipschitz(f, space, pts));
        }
    }
}

TEST_CASE("property: defect is scale covariant and vanishes on homomorphisms") {
    const auto space = GroupSpace::free_group(2);
    SeededRng rng(99);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const LipFn f = random_delta_invariant(space, 1, 2, seed);
        const Rational lambda = rng.rational(5, 3);
        PointTable scaled;
        for (const auto& [w, v] : f.table()) scaled[w] = lambda * v;
        HomValues hom = f.hom();
        for (auto& v : hom) v *= lambda;
        const LipFn g = LipFn::structured(hom, scaled);
        CHECK(delta_defect(g, space, 3).delta_hat == invlip::abs(lambda) * delta_defect(f, space, 3).delta_hat);
        HomValues shift{rng.rational(4, 4), rng.rational(4, 4)};
        HomValues moved = f.hom();
        for (std::size_t s = 0; s < 2; ++s) moved[s] += shift[s];
        CHECK(delta_defect(LipFn::structured(moved, f.table()), space, 3).delta_hat ==
              delta_defect(f, space, 3).delta_hat);
    }
}

TEST_CASE("property: chain inequality holds at the measured defect") {
    const auto space = GroupSpace::free_abelian(2);
    SeededRng rng(5);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const LipFn f = random_delta_invariant(space, 1, 2, seed);
        const Rational delta = delta_defect(f, space, 3).delta_hat;
        const auto pts = oracle::words(space, 2);
        std::vector<Word> gs;
        for (int i = rng.between(1, 3); i > 0; --i) gs.push_back(pts[rng.between(0, pts.size() - 1)]);
        const Word x = pts[rng.between(0, pts.size() - 1)];
        const Word y = pts[rng.between(0, pts.size() - 1)];
        CHECK(check_chain_inequality(f, space, gs, x, y, delta));
    }
}

TEST_CASE("random functions are deterministic in the seed") {
    const auto space = GroupSpace::free_group(2);
    const LipFn a = random_delta_invariant(space, 1, 2, 42);
    const LipFn b = random_delta_invariant(space, 1, 2, 42);
    CHECK(a.hom() == b.hom());
    CHECK(a.table() == b.table());
    const LipFn c = random_delta_invariant(GroupSpace::cyclic(5), 1, 2, 42);
    CHECK(c.hom() == HomValues{0});
}
