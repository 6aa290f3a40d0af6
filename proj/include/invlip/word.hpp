#pragma once

#include "invlip/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace invlip {

/// One signed generator occurrence, s_i^{+1} or s_i^{-1}.
struct Letter {
    std::uint32_t generator = 0;
    std::int8_t sign = 1;

    [[nodiscard]] Letter inverse() const { return {generator, static_cast<std::int8_t>(-sign)}; }
    /// Dense index 2*generator + (sign < 0); also the canonical letter order.
    [[nodiscard]] std::size_t index() const { return 2 * std::size_t{generator} + (sign < 0 ? 1 : 0); }

    friend bool operator==(const Letter&, const Letter&) = default;
    friend std::strong_ordering operator<=>(const Letter& a, const Letter& b) {
        return a.index() <=> b.index();
    }
};

/// A freely reduced word over the alphabet {s_0, ..., s_{rank-1}}^{+-1}.
///
/// Every constructor reduces, so a Word value is always reduced. Ordering is
/// shortlex (length first, then letter order), which is also the order used
/// for normal forms and ball listings.
class Word {
public:
    Word() = default;
    /// Reduces `letters`; throws DomainError on a generator index >= rank.
    Word(std::size_t rank, const std::vector<Letter>& letters);

    static Word identity(std::size_t rank) { return Word(rank, {}); }
    static Word generator(std::size_t rank, std::uint32_t index, int power = 1);

    [[nodiscard]] std::size_t rank() const { return rank_; }
    [[nodiscard]] const std::vector<Letter>& letters() const { return letters_; }
    [[nodiscard]] std::size_t length() const { return letters_.size(); }
    [[nodiscard]] bool is_identity() const { return letters_.empty(); }

    friend bool operator==(const Word& a, const Word& b) {
        return a.rank_ == b.rank_ && a.letters_ == b.letters_;
    }
    friend std::strong_ordering operator<=>(const Word& a, const Word& b);

private:
    std::size_t rank_ = 0;
    std::vector<Letter> letters_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

/// Free reduction of an arbitrary letter sequence.
Word reduce(std::size_t rank, const std::vector<Letter>& letters);
/// Reduced concatenation; DomainError when the ranks differ.
Word multiply(const Word& u, const Word& v);
Word invert(const Word& w);
Word power(const Word& w, long long exponent);
/// Signed count of occurrences of generator `s` in `w`.
long long exponent_sum(const Word& w, std::uint32_t s);
std::vector<long long> exponent_vector(const Word& w);

/// Default generator names: "a", "b", ... ("s" when rank is 1).
std::vector<std::string> default_generator_names(std::size_t rank);

/// Formats as "a b^-1 a^2"; the identity prints as "e".
std::string format_word(const Word& w, const std::vector<std::string>& names);

/// Parses "a b^-1", "ab^-1" or "a^3" (longest generator name wins). "e", "1"
/// and "" denote the identity unless a generator carries that name.
Word parse_word(std::string_view text, const std::vector<std::string>& names);

/// A finite presentation <S | R>. Relators are kept as given (reduced, nonempty).
struct Presentation {
    std::size_t generator_count = 0;
    std::vector<std::string> generator_names;
    std::vector<Word> relators;

    /// Throws ValidationError on empty relators, rank mismatch, or bad names.
    void validate() const;
};

/// Integer matrix of exponent sums, rows = relators, columns = generators.
struct ExponentMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<long long> entries;  // row-major

    [[nodiscard]] long long at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

ExponentMatrix exponent_matrix(const Presentation& p);

}  // namespace invlip
