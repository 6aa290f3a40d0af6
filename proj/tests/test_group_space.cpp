#include "invlip/errors.hpp"
#include "invlip/group_space.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cstdlib>
#include <set>

using namespace invlip;

TEST_CASE("distances on the three built-in backends") {
    const auto f2 = GroupSpace::free_group(2);
    CHECK(f2.distance(f2.parse("a b"), f2.parse("a")) == 1);
    CHECK(f2.distance(f2.identity(), f2.parse("a b a^-1")) == 3);
    const auto z2 = GroupSpace::free_abelian(2);
    CHECK(z2.distance(z2.identity(), z2.parse("a b a^-1")) == 1);
}

TEST_CASE("normal forms") {
    const auto f2 = GroupSpace::free_group(2);
    CHECK(f2.normal_form(f2.parse("a b a^-1")) == f2.parse("a b a^-1"));
    const auto z2 = GroupSpace::free_abelian(2);
    CHECK(z2.normal_form(z2.parse("a b a^-1")) == z2.parse("b"));
    const auto z5 = GroupSpace::cyclic(5);
    CHECK(z5.normal_form(Word::generator(1, 0, 7)) == Word::generator(1, 0, 2));
    CHECK(z5.normal_form(Word::generator(1, 0, -1)) == Word::generator(1, 0, -1));
}

TEST_CASE("ball sizes") {
    const auto f1 = GroupSpace::free_group(1);
    const Ball b = f1.ball(2);
    REQUIRE(b.size() == 5);
    std::set<Word> got;
    for (const auto& p : b.points) got.insert(p.element);
    for (int k = -2; k <= 2; ++k) CHECK(got.count(Word::generator(1, 0, k)) == 1);
    const auto f2 = GroupSpace::free_group(2);
    CHECK(f2.ball(1).size() == 5);
    CHECK(f2.ball(3).size() == 53);
    // 1 + 2k((2k-1)^R - 1)/(2k-2)
    for (std::size_t k = 2; k <= 3; ++k) {
        for (int r = 0; r <= 4; ++r) {
            long long p = 1;
            for (int i = 0; i < r; ++i) p *= static_cast<long long>(2 * k - 1);
            const long long expected = 1 + static_cast<long long>(2 * k) * (p - 1) / static_cast<long long>(2 * k - 2);
            CHECK(GroupSpace::free_group(k).ball(r).size() == static_cast<std::size_t>(expected));
        }
    }
    CHECK(GroupSpace::cyclic(8).ball(10).covers_group);
    CHECK(GroupSpace::symmetric(3).order() == 6);
}

TEST_CASE("ball invariants: e first, radius respected, prefix closed, nested") {
    const auto f2 = GroupSpace::free_group(2);
    const Ball b3 = f2.ball(3);
    CHECK(b3.points.front().element.is_identity());
    CHECK(b3.points.front().distance == 0);
    std::set<Word> set3;
    for (const auto& p : b3.points) {
        CHECK(p.distance <= 3);
        CHECK(set3.insert(p.element).second);
    }
    for (const auto& p : b3.points) {
        if (p.element.is_identity()) continue;
        std::vector<Letter> prefix(p.element.letters().begin(), p.element.letters().end() - 1);
        CHECK(set3.count(Word(2, prefix)) == 1);
    }
    for (const auto& p : f2.ball(2).points) CHECK(set3.count(p.element) == 1);
}

TEST_CASE("oracle: F_2 word length equals breadth-first distance on ball(4)") {
    const auto f2 = GroupSpace::free_group(2);
    const auto bfs = oracle::f2_bfs(8);
    const auto pts = oracle::words(f2, 4);
    for (std::size_t i = 0; i < pts.size(); i += 3) {
        for (std::size_t j = 0; j < pts.size(); j += 2) {
            const Word diff = multiply(invert(pts[i]), pts[j]);
            CHECK(f2.distance(pts[i], pts[j]) == bfs.at(oracle::to_text(diff)));
        }
    }
}

TEST_CASE("oracle: Z^2 l1 distance equals breadth-first distance") {
    const auto z2 = GroupSpace::free_abelian(2);
    const auto bfs = oracle::z2_bfs(6);
    for (const auto& p : z2.ball(3).points) {
        const auto v = exponent_vector(p.element);
        CHECK(p.distance == bfs.at({v[0], v[1]}));
    }
}

TEST_CASE("property: left invariance and normal-form idempotence on every backend") {
    const std::vector<GroupSpace> spaces = {GroupSpace::free_group(2), GroupSpace::free_abelian(2),
                                            GroupSpace::cyclic(5), GroupSpace::symmetric(3)};
    for (const auto& space : spaces) {
        const auto pts = oracle::words(space, 2);
        for (const auto& g : pts) {
            CHECK(space.normal_form(space.normal_form(g)) == space.normal_form(g));
            for (const auto& h : pts) {
                const Rational d = space.distance(g, h);
                CHECK(d == space.distance(h, g));
                CHECK((d == 0) == (g == h));
                for (std::size_t k = 0; k < pts.size(); k += 3) {
                    CHECK(space.distance(space.multiply(pts[k], g), space.multiply(pts[k], h)) == d);
                    CHECK(space.distance(g, pts[k]) <= d + space.distance(h, pts[k]));
                }
            }
        }
    }
}

TEST_CASE("finite Cayley cap and the oracle backend") {
    CHECK_THROWS_AS(GroupSpace::finite_cayley({{1, 2, 3, 4, 5, 0}}, {"s"}, 3), ResourceError);
    const auto z = GroupSpace::oracle(
        1, [](const Word& w) { return w; }, [](const Word& w) { return Rational(static_cast<long long>(w.length())); });
    CHECK(z.ball(2).size() == 5);
    CHECK(z.distance(Word::generator(1, 0, 3), Word::generator(1, 0, -1)) == 4);
    const auto broken = GroupSpace::oracle(
        1, [](const Word&) -> Word { throw std::runtime_error("down"); }, [](const Word&) { return Rational(0); });
    CHECK_THROWS_AS((void)broken.normal_form(Word::generator(1, 0)), OracleError);
}

TEST_CASE("element cap from the environment") {
    ::setenv("INVLIP_MAX_BALL", "4", 1);
    CHECK(default_element_cap() == 4);
    CHECK_THROWS_AS(GroupSpace::cyclic(6), ResourceError);
    ::unsetenv("INVLIP_MAX_BALL");
    CHECK(default_element_cap() == 1000000);
}
