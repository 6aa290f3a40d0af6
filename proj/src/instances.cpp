#include "invlip/instances.hpp"

#include "invlip/errors.hpp"

namespace invlip {

LipFn one_sided_ramp(const Rational& delta, int support_radius) {
    if (support_radius < 2 || support_radius % 2 != 0) throw DomainError("support radius must be even and >= 2");
    const int half = support_radius / 2;
    PointTable tent;
    for (int x = -support_radius; x <= support_radius; ++x) {
        const int ax = x < 0 ? -x : x;
        const int height = ax <= half ? ax : support_radius - ax;
        if (height != 0) tent.emplace(Word::generator(1, 0, x), delta / 2 * height);
    }
    return LipFn::structured({delta / 2}, std::move(tent));
}

FiniteActionSpace reflected_strip() {
    const int xs[] = {0, 1, 3, 4};
    FiniteActionSpace fa;
    fa.group = GroupSpace::cyclic(2);
    std::vector<std::pair<int, int>> coords;
    for (int x : xs) {
        for (int y : {0, 2}) {
            coords.emplace_back(x, y);
            fa.labels.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
        }
    }
    const std::size_t n = coords.size();
    fa.dist.assign(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            fa.dist[i][j] = std::abs(coords[i].first - coords[j].first) + std::abs(coords[i].second - coords[j].second);
        }
    }
    Permutation flip(n);
    for (std::size_t i = 0; i < n; ++i) flip[i] = static_cast<std::uint32_t>(i ^ 1U);
    fa.generator_action = {flip};
    fa.domain = {0, 2, 4, 6};
    fa.alpha = 1;
    return fa;
}

Presentation commutator_presentation() {
    Presentation p;
    p.generator_count = 2;
    p.generator_names = {"a", "b"};
    p.relators = {Word(2, {{0, 1}, {1, 1}, {0, -1}, {1, -1}})};
    return p;
}

Presentation cyclic_presentation(std::size_t n) {
    Presentation p;
    p.generator_count = 1;
    p.generator_names = {"s"};
    p.relators = {Word::generator(1, 0, static_cast<int>(n))};
    return p;
}

}  // namespace invlip
