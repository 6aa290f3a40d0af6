#pragma once

// Fixed instances used by the acceptance suite, the tests and data/.

#include "invlip/approximants.hpp"
#include "invlip/group_space.hpp"
#include "invlip/lipschitz.hpp"

namespace invlip {

/// On Z = F_1: f(x) = 0 for x <= 0 and delta x for x >= 0, as long as
/// |x| <= support_radius / 2. Encoded as the homomorphism delta/2 plus the
/// tent (delta/2) min(|x|, support_radius - |x|)^+, so the perturbation lives
/// in ball(support_radius) and every increment lies in {0, delta/2, delta}.
LipFn one_sided_ramp(const Rational& delta, int support_radius);

/// Eight points (a, b) in the l1 plane, a in {0, 1, 3, 4}, b in {0, 2}, with
/// Z_2 acting by (a, b) -> (a, 2 - b). Point index 2i + (b == 2); the
/// fundamental domain is the b = 0 row and alpha = 1.
FiniteActionSpace reflected_strip();

/// <a, b | a b a^-1 b^-1> and <s | s^n>.
Presentation commutator_presentation();
Presentation cyclic_presentation(std::size_t n);

}  // namespace invlip
