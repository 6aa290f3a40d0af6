#pragma once

#include "invlip/rational.hpp"
#include "invlip/word.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace invlip {

enum class BackendKind { free_word, free_abelian, finite_cayley, oracle };

std::string to_string(BackendKind kind);

/// Element cap for finite Cayley closure; INVLIP_MAX_BALL overrides 10^6.
std::size_t default_element_cap();

using Permutation = std::vector<std::uint32_t>;

struct BallPoint {
    Word element;  // normal form
    Rational distance;  // d(element, e)
};

/// All normal forms at distance <= radius, sorted by (distance, shortlex).
struct Ball {
    Rational radius;
    std::vector<BallPoint> points;
    bool covers_group = false;  // true when the group is finite and fully listed

    [[nodiscard]] std::size_t size() const { return points.size(); }
};

/// Normal-form and norm callbacks for groups whose word problem lives elsewhere.
using NormalFormFn = std::function<Word(const Word&)>;
using NormFn = std::function<Rational(const Word&)>;

namespace detail {
struct Backend;
}

/// A group with a left-invariant metric and basepoint e.
///
/// Four backends: the word metric on a free group (FreeWord), the l1 metric on
/// exponent vectors of Z^n (FreeAbelianL1), an explicit finite group closed
/// from generator permutations (FiniteCayley), and a user-supplied Oracle.
/// Instances are immutable and cheap to copy.
class GroupSpace {
public:
    static GroupSpace free_group(std::size_t rank, std::vector<std::string> names = {});
    static GroupSpace free_abelian(std::size_t rank, std::vector<std::string> names = {});
    /// Closure of the given generator permutations under multiplication. The
    /// element listing is breadth-first, so normal forms are shortlex minimal.
    static GroupSpace finite_cayley(const std::vector<Permutation>& generators,
                                    std::vector<std::string> names = {},
                                    std::size_t element_cap = default_element_cap());
    /// Z_n = <s | s^n> with the word metric.
    static GroupSpace cyclic(std::size_t n);
    /// Sym(k) generated by the transposition (0 1) and the k-cycle (0 1 ... k-1).
    static GroupSpace symmetric(std::size_t k);
    static GroupSpace oracle(std::size_t rank, NormalFormFn normal_form, NormFn norm,
                             std::vector<std::string> names = {}, bool pseudometric = false);

    /// Attaches a presentation (relators over the same generators).
    [[nodiscard]] GroupSpace with_presentation(Presentation p) const;

    [[nodiscard]] BackendKind kind() const;
    [[nodiscard]] std::size_t rank() const;
    [[nodiscard]] const std::vector<std::string>& names() const;
    [[nodiscard]] const std::optional<Presentation>& presentation() const;
    [[nodiscard]] bool pseudometric() const;
    [[nodiscard]] bool is_finite() const;
    /// Free and free abelian backends: infinite, word metric, exponent sums
    /// well defined on elements. Structured functions get exact certification.
    [[nodiscard]] bool supports_exact_structured() const;
    /// Distances are path lengths in the Cayley graph of the listed generators.
    [[nodiscard]] bool is_word_metric() const;

    [[nodiscard]] Word identity() const { return Word::identity(rank()); }
    [[nodiscard]] Word generator(std::uint32_t s, int power = 1) const;
    [[nodiscard]] Word normal_form(const Word& w) const;
    [[nodiscard]] Word multiply(const Word& u, const Word& v) const;
    [[nodiscard]] Word inverse(const Word& w) const;
    [[nodiscard]] Rational norm(const Word& g) const;
    [[nodiscard]] Rational distance(const Word& g, const Word& h) const;
    [[nodiscard]] Ball ball(const Rational& radius) const;

    /// Finite backend only: every element in breadth-first order.
    [[nodiscard]] std::vector<Word> elements() const;
    [[nodiscard]] std::size_t order() const;

    [[nodiscard]] std::string format(const Word& w) const { return format_word(w, names()); }
    [[nodiscard]] Word parse(std::string_view text) const { return parse_word(text, names()); }

private:
    explicit GroupSpace(std::shared_ptr<const detail::Backend> backend) : backend_(std::move(backend)) {}
    std::shared_ptr<const detail::Backend> backend_;
};

/// A ball with a hash index and its Cayley-graph edges (x, x s), s in S.
///
/// When `convex` is set, every pair of ball points is joined by a geodesic
/// inside the ball, so pairwise Lipschitz maxima equal maxima over `edges`.
struct IndexedBall {
    Ball ball;
    std::unordered_map<Word, std::size_t, WordHash> index;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    bool convex = false;

    [[nodiscard]] std::size_t size() const { return ball.size(); }
    [[nodiscard]] const Word& at(std::size_t i) const { return ball.points[i].element; }
    [[nodiscard]] std::optional<std::size_t> find(const Word& w) const {
        auto it = index.find(w);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

IndexedBall index_ball(const GroupSpace& space, const Rational& radius);

/// Ball used when a computation must range over the whole finite group.
Rational group_diameter(const GroupSpace& space);

}  // namespace invlip
