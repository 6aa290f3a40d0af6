#include "invlip/instances.hpp"
#include "invlip/mean_growth.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace invlip;

TEST_CASE("ramp mean growth in the positive direction") {
    const auto f1 = GroupSpace::free_group(1);
    const auto mg = mean_growth(one_sided_ramp(1, 16), f1, f1.generator(0), f1.identity(), 4);
    CHECK(mg.c_plus == 1);
    CHECK(mg.c_minus == 0);
    CHECK(mg.c == Rational(1, 2));
    CHECK(mg.scope.exact);
    CHECK(check_gap(mg, 1, f1));
    CHECK_FALSE(check_gap(mg, Rational(1, 2), f1));
}

TEST_CASE("homomorphisms grow exactly by their value") {
    const auto f2 = GroupSpace::free_group(2);
    const LipFn h = LipFn::homomorphism({Rational(3, 2), -1});
    const auto mg = mean_growth(h, f2, f2.parse("a b"), f2.parse("b"), 3);
    CHECK(mg.c_plus == Rational(1, 2));
    CHECK(mg.c_minus == Rational(1, 2));
    CHECK(gap_characterization(h, f2, 2).value == 0);
}

TEST_CASE("oracle: exact mean growth matches a wide translation scan") {
    const std::vector<GroupSpace> spaces = {GroupSpace::free_group(2), GroupSpace::free_abelian(2)};
    for (const auto& space : spaces) {
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            const LipFn f = random_delta_invariant(space, 1, 2, seed);
            const auto gs = oracle::words(space, 5);
            for (const auto& s : oracle::words(space, 1)) {
                const Word x = space.generator(1, -1);
                const auto mg = mean_growth(f, space, s, x, 2);
                REQUIRE(mg.scope.exact);
                const auto [hi, lo] = oracle::growth(f, space, s, x, gs);
                CHECK(mg.c_plus == hi);
                CHECK(mg.c_minus == lo);
            }
        }
    }
}

TEST_CASE("property: antisymmetry, gap bound and gap characterization") {
    const std::vector<GroupSpace> spaces = {GroupSpace::free_group(2), GroupSpace::free_abelian(2),
                                            GroupSpace::cyclic(5)};
    for (const auto& space : spaces) {
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const LipFn f = random_delta_invariant(space, 1, 2, seed);
            const Rational delta = delta_defect(f, space, 3).delta_hat;
            for (const auto& s : oracle::words(space, 2)) {
                const auto fwd = mean_growth(f, space, s, space.identity(), 2);
                const auto back = mean_growth(f, space, space.inverse(s), s, 2);
                CHECK(fwd.c_plus == -back.c_minus);
                CHECK(fwd.c_minus == -back.c_plus);
                CHECK(check_gap(fwd, delta, space));
            }
            const auto gap = gap_characterization(f, space, 2);
            CHECK(gap.scope.exact);
            CHECK(gap.value == delta);
        }
    }
}

TEST_CASE("pullbacks delegate to the quotient") {
    const auto z5 = GroupSpace::cyclic(5);
    const LipFn f = random_delta_invariant(z5, 1, 2, 3);
    const LipFn lifted = LipFn::pullback(f, z5);
    const auto free1 = GroupSpace::free_group(1);
    const auto a = mean_growth(lifted, free1, free1.generator(0), free1.identity(), 2);
    const auto b = mean_growth(f, z5, z5.generator(0), z5.identity(), 2);
    CHECK(a.c_plus == b.c_plus);
    CHECK(a.c_minus == b.c_minus);
    CHECK(a.scope.exact);
}
