#pragma once

// Shared internals for exact computations on Structured functions.

#include "invlip/group_space.hpp"
#include "invlip/lipschitz.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace invlip::detail {

inline Rational perturbation_at(const LipFn& f, const Word& nf) {
    auto it = f.table().find(nf);
    return it == f.table().end() ? Rational(0) : it->second;
}

inline Rational hom_at(const HomValues& hom, const Word& nf) {
    Rational total = 0;
    for (const auto& letter : nf.letters()) {
        if (letter.sign > 0) {
            total += hom[letter.generator];
        } else {
            total -= hom[letter.generator];
        }
    }
    return total;
}

/// Element whose distance to e exceeds `margin`: s_0^(floor(margin) + 1).
inline Word far_element(const GroupSpace& space, const Rational& margin) {
    const Integer m = boost::multiprecision::numerator(margin) / boost::multiprecision::denominator(margin);
    return space.generator(0, m.convert_to<int>() + 1);
}

/// Points x with p(x) != 0 or p(x s) != 0 for some generator s, in shortlex order.
inline std::vector<Word> edge_support(const LipFn& f, const GroupSpace& space) {
    std::set<Word> out;
    for (const auto& [a, value] : f.table()) {
        out.insert(a);
        for (std::uint32_t s = 0; s < space.rank(); ++s) out.insert(space.multiply(a, space.generator(s, -1)));
    }
    return {out.begin(), out.end()};
}

inline bool exact_structured(const LipFn& f, const GroupSpace& space) {
    return f.is_structured() && space.supports_exact_structured();
}

/// f is defined on every element of a finite group.
inline bool exact_finite(const LipFn& f, const GroupSpace& space) {
    if (!space.is_finite()) return false;
    if (f.kind() == LipFn::Kind::structured) return true;
    if (f.kind() == LipFn::Kind::pullback) return false;
    for (const auto& w : space.elements()) {
        if (!f.table().contains(w)) return false;
    }
    return true;
}

}  // namespace invlip::detail
