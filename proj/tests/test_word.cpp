#include "invlip/errors.hpp"
#include "invlip/word.hpp"

#include <doctest.h>

#include <random>

using namespace invlip;

namespace {

const std::vector<std::string> ab = {"a", "b"};

Word w2(const char* text) { return parse_word(text, ab); }

Word random_word(std::mt19937_64& rng, std::size_t rank, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len), gen(0, static_cast<int>(rank) - 1), sign(0, 1);
    std::vector<Letter> letters;
    for (int i = len(rng); i > 0; --i) {
        letters.push_back({static_cast<std::uint32_t>(gen(rng)), static_cast<std::int8_t>(sign(rng) ? 1 : -1)});
    }
    return Word(rank, letters);
}

}  // namespace

TEST_CASE("reduce cancels adjacent inverse pairs") {
    CHECK(reduce(2, {}).is_identity());
    CHECK(reduce(2, {{0, 1}, {0, -1}}).is_identity());
    CHECK(reduce(2, {{0, 1}, {1, 1}, {1, -1}, {0, 1}}) == Word::generator(2, 0, 2));
    CHECK_THROWS_AS(reduce(2, {{2, 1}}), DomainError);
}

TEST_CASE("multiply and invert") {
    CHECK(multiply(w2("a"), w2("a^-1")).is_identity());
    CHECK(multiply(w2("a b"), w2("b^-1")) == w2("a"));
    CHECK(multiply(w2("a^2 b"), w2("b^-1 a")) == w2("a^3"));
    CHECK_THROWS_AS(multiply(w2("a"), Word::generator(3, 0)), DomainError);
    CHECK(invert(Word::identity(2)).is_identity());
    CHECK(invert(w2("a b")) == w2("b^-1 a^-1"));
    CHECK(invert(w2("a^-2")) == w2("a^2"));
}

TEST_CASE("exponent sums and the exponent matrix") {
    CHECK(exponent_sum(w2("a b a^-1 b^-1"), 0) == 0);
    CHECK(exponent_sum(Word::generator(1, 0, 7), 0) == 7);
    CHECK(exponent_sum(w2("a^2 b^-1"), 1) == -1);

    Presentation comm{2, ab, {w2("a b a^-1 b^-1")}};
    auto m = exponent_matrix(comm);
    CHECK(m.rows == 1);
    CHECK(m.entries == std::vector<long long>{0, 0});
    Presentation z5{1, {"s"}, {Word::generator(1, 0, 5)}};
    CHECK(exponent_matrix(z5).entries == std::vector<long long>{5});
    Presentation p{2, ab, {w2("a^2 b^-3")}};
    CHECK(exponent_matrix(p).entries == std::vector<long long>{2, -3});
}

TEST_CASE("presentation validation") {
    Presentation bad{2, ab, {Word::identity(2)}};
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    Presentation wrong_rank{2, ab, {Word::generator(1, 0)}};
    CHECK_THROWS_AS(wrong_rank.validate(), ValidationError);
}

TEST_CASE("format and parse round trip") {
    CHECK(format_word(w2("a b^-1 a^2"), ab) == "a b^-1 a^2");
    CHECK(format_word(Word::identity(2), ab) == "e");
    CHECK(parse_word("ab^-1", ab) == w2("a b^-1"));
    CHECK(parse_word("e", ab).is_identity());
    CHECK_THROWS(parse_word("c", ab));
}

TEST_CASE("property: group laws on random words") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 500; ++trial) {
        const Word u = random_word(rng, 3, 8), v = random_word(rng, 3, 8), w = random_word(rng, 3, 8);
        CHECK(multiply(multiply(u, v), w) == multiply(u, multiply(v, w)));
        CHECK(multiply(w, invert(w)).is_identity());
        for (std::uint32_t s = 0; s < 3; ++s) {
            CHECK(exponent_sum(multiply(u, v), s) == exponent_sum(u, s) + exponent_sum(v, s));
        }
        // reduced: no adjacent inverse pair
        for (std::size_t i = 1; i < u.length(); ++i) CHECK(u.letters()[i] != u.letters()[i - 1].inverse());
        CHECK(parse_word(format_word(u, {"a", "b", "c"}), {"a", "b", "c"}) == u);
    }
}
