#include "invlip/approximants.hpp"
#include "invlip/errors.hpp"
#include "invlip/instances.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace invlip;

TEST_CASE("free approximant of the ramp") {
    const auto f1 = GroupSpace::free_group(1);
    const LipFn ramp = one_sided_ramp(1, 16);
    const auto approx = free_approximant(ramp, f1, 16);
    CHECK(approx.fbar.hom() == HomValues{Rational(1, 2)});
    CHECK(approx.report.delta_hat == 1);
    REQUIRE(approx.report.achieved_exact.has_value());
    CHECK(*approx.report.achieved_exact == Rational(1, 2));
    CHECK(approx.report.bound == Rational(1, 2));
    CHECK(approx.report.pass);

    CHECK(lip_norm(subtract(ramp, LipFn::homomorphism({1})), oracle::words(f1, 8), f1) == 1);
    CHECK(optimality_check(ramp, approx.fbar, {{1}, {0}, {Rational(1, 3)}}, f1, 16));
    CHECK_THROWS_AS(free_approximant(ramp, GroupSpace::free_abelian(1), 4), DomainError);
}

TEST_CASE("adjusted approximant") {
    const auto f1 = GroupSpace::free_group(1);
    const LipFn ramp = one_sided_ramp(1, 16);
    const auto approx = adjusted_approximant(ramp, f1, {0}, Rational(1, 2), 16);
    CHECK(approx.report.achieved() == 1);
    CHECK(approx.report.bound == 1);
    CHECK(approx.report.pass);
    CHECK_THROWS_AS(adjusted_approximant(ramp, f1, {0}, Rational(1, 4), 16), PreconditionError);
}

TEST_CASE("optimality needs an exact scope") {
    const auto z5 = GroupSpace::cyclic(5);
    const auto f1 = GroupSpace::free_group(1);
    const LipFn lifted = LipFn::pullback(random_delta_invariant(z5, 1, 2, 1), z5);
    CHECK_THROWS_AS(optimality_check(lifted, LipFn::homomorphism({0}), {{1}}, f1, 3), ScopeError);
}

TEST_CASE("property: free approximant meets its bound on F_2") {
    const auto f2 = GroupSpace::free_group(2);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const LipFn f = random_delta_invariant(f2, seed % 3 + 1, 2, seed);
        const auto approx = free_approximant(f, f2, 4);
        REQUIRE(approx.report.achieved_exact.has_value());
        CHECK(*approx.report.achieved_exact <= approx.report.delta_hat / 2);
        CHECK(approx.report.pass);
        const auto pts = oracle::words(f2, 3);
        CHECK(oracle::lipschitz(subtract(f, approx.fbar), f2, pts) <= *approx.report.achieved_exact);
    }
}

TEST_CASE("presented approximant on Z^2 and Z_5") {
    const auto z2 = GroupSpace::free_abelian(2).with_presentation(commutator_presentation());
    const LipFn f = random_delta_invariant(z2, 1, 2, 5);
    const auto pa = presented_approximant(f, commutator_presentation(), z2, 4);
    CHECK(pa.c_r == 2);
    CHECK(pa.report.pass);
    CHECK(pa.well_defined);
    CHECK(pa.growth_bound_holds);
    CHECK(pa.projection.u == pa.growth);

    const auto z5 = GroupSpace::cyclic(5);
    const LipFn g = random_delta_invariant(z5, 1, 2, 8);
    const auto pz = presented_approximant(g, cyclic_presentation(5), z5, 3);
    CHECK(pz.projection.u == RationalVector{0});
    CHECK(pz.report.achieved() <= pz.report.delta_hat);
    CHECK(pz.report.pass);
    CHECK(pz.c_r == Rational(5, 2));
}

TEST_CASE("lifting checks relators") {
    const auto z5 = GroupSpace::cyclic(5);
    CHECK_THROWS_AS(lift_to_free(LipFn::homomorphism({0}), cyclic_presentation(4), z5), DomainError);
}

TEST_CASE("orbit collapse on the reflected strip") {
    const auto fa = reflected_strip();
    fa.validate();
    PointFunction f(fa.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = Rational(static_cast<long long>(i % 2), 2);
    const auto oa = orbit_collapse_approximant(fa, f);
    CHECK(oa.invariant);
    CHECK(oa.report.pass);
    CHECK(oa.report.achieved() <= 3 * oa.report.delta_hat);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(oa.fbar[i] == oa.fbar[i ^ 1]);
}

TEST_CASE("action validation reports every broken axiom") {
    auto fa = reflected_strip();
    fa.domain = {1, 3};
    fa.dist[0][1] = 5;
    try {
        fa.validate();
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("basepoint") != std::string::npos);
        CHECK(msg.find("symmetric") != std::string::npos);
    }
}

TEST_CASE("shrink norm check on finite groups") {
    for (std::size_t n : {2, 3, 5, 8}) {
        const auto zn = GroupSpace::cyclic(n);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const LipFn f = random_delta_invariant(zn, 1, 2, seed);
            CHECK(shrink_norm_check(zn, f, delta_defect(f, zn, 4).delta_hat));
        }
    }
    const auto z5 = GroupSpace::cyclic(5);
    const LipFn f = LipFn::tabulated(
        {{z5.generator(0), 1}, {z5.generator(0, 2), 3}, {z5.generator(0, -1), 0}, {z5.generator(0, -2), 0}});
    CHECK_THROWS_AS(shrink_norm_check(z5, f, 0), PreconditionError);
    CHECK_THROWS_AS(shrink_norm_check(GroupSpace::free_group(1), LipFn::homomorphism({0}), 1), ScopeError);
}

TEST_CASE("restriction to a cyclic orbit") {
    const auto z6 = GroupSpace::cyclic(6);
    const LipFn f = random_delta_invariant(z6, 1, 2, 4);
    const auto r = restrict_to_orbit(f, z6, z6.identity(), z6.identity(), z6.generator(0, 2));
    CHECK(r.order == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        const Word hk = Word::generator(1, 0, static_cast<int>(k));
        CHECK(eval(r.f, r.cyclic, hk) == eval(f, z6, z6.generator(0, 2 * static_cast<int>(k))));
    }
    CHECK_THROWS_AS(restrict_to_orbit(f, GroupSpace::free_group(1), Word::identity(1), Word::identity(1),
                                      Word::generator(1, 0), 50),
                    ScopeError);
}
