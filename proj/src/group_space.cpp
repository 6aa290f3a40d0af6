#include "invlip/group_space.hpp"

#include "invlip/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_set>

namespace invlip {

std::string to_string(BackendKind kind) {
    switch (kind) {
        case BackendKind::free_word: return "free";
        case BackendKind::free_abelian: return "free_abelian";
        case BackendKind::finite_cayley: return "finite_cayley";
        case BackendKind::oracle: return "oracle";
    }
    return "unknown";
}

std::size_t default_element_cap() {
    if (const char* env = std::getenv("INVLIP_MAX_BALL")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return 1'000'000;
}

namespace detail {

struct FiniteData {
    std::size_t letters = 0;  // 2 * rank
    std::vector<std::uint32_t> next;  // next[elem * letters + letter.index()]
    std::vector<Word> normal_forms;
    std::vector<std::uint32_t> depth;

    [[nodiscard]] std::uint32_t element_of(const Word& w) const {
        std::uint32_t e = 0;
        for (const auto& letter : w.letters()) e = next[e * letters + letter.index()];
        return e;
    }
};

struct Backend {
    BackendKind kind = BackendKind::free_word;
    std::size_t rank = 0;
    std::vector<std::string> names;
    std::optional<Presentation> presentation;
    bool pseudometric = false;
    std::shared_ptr<const FiniteData> finite;
    NormalFormFn oracle_normal_form;
    NormFn oracle_norm;
};

}  // namespace detail

namespace {

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto v : p) {
            h ^= v + 0x9e3779b97f4a7c15ULL;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

std::vector<std::string> names_or_default(std::vector<std::string> names, std::size_t rank) {
    if (names.empty()) return default_generator_names(rank);
    if (names.size() != rank) {
        throw ValidationError("expected " + std::to_string(rank) + " generator names, got " +
                              std::to_string(names.size()));
    }
    return names;
}

Word abelian_normal_form(const std::vector<long long>& exponents) {
    std::vector<Letter> letters;
    for (std::uint32_t s = 0; s < exponents.size(); ++s) {
        const Letter letter{s, static_cast<std::int8_t>(exponents[s] < 0 ? -1 : 1)};
        for (long long i = 0; i < std::llabs(exponents[s]); ++i) letters.push_back(letter);
    }
    return Word(exponents.size(), letters);
}

long long floor_to_integer(const Rational& r) {
    if (r < 0) return -1;
    const Integer q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
    return q.convert_to<long long>();
}

template <class Fn>
auto call_oracle(Fn&& fn, const char* what) {
    try {
        return fn();
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw OracleError(std::string("oracle ") + what + " failed: " + e.what());
    }
}

}  // namespace

GroupSpace GroupSpace::free_group(std::size_t rank, std::vector<std::string> names) {
    if (rank == 0) throw DomainError("free group needs rank >= 1");
    auto b = std::make_shared<detail::Backend>();
    b->kind = BackendKind::free_word;
    b->rank = rank;
    b->names = names_or_default(std::move(names), rank);
    return GroupSpace(std::move(b));
}

GroupSpace GroupSpace::free_abelian(std::size_t rank, std::vector<std::string> names) {
    if (rank == 0) throw DomainError("free abelian group needs rank >= 1");
    auto b = std::make_shared<detail::Backend>();
    b->kind = BackendKind::free_abelian;
    b->rank = rank;
    b->names = names_or_default(std::move(names), rank);
    return GroupSpace(std::move(b));
}

GroupSpace GroupSpace::finite_cayley(const std::vector<Permutation>& generators, std::vector<std::string> names,
                                     std::size_t element_cap) {
    if (generators.empty()) throw DomainError("finite Cayley group needs at least one generator");
    const std::size_t degree = generators.front().size();
    std::vector<Permutation> letter_perms;  // indexed by Letter::index()
    for (const auto& perm : generators) {
        if (perm.size() != degree) throw ValidationError("generator permutations have different degrees");
        Permutation inverse(degree);
        std::vector<bool> seen(degree, false);
        for (std::uint32_t i = 0; i < degree; ++i) {
            if (perm[i] >= degree || seen[perm[i]]) throw ValidationError("generator is not a permutation");
            seen[perm[i]] = true;
            inverse[perm[i]] = i;
        }
        letter_perms.push_back(perm);
        letter_perms.push_back(std::move(inverse));
    }

    const std::size_t rank = generators.size();
    auto data = std::make_shared<detail::FiniteData>();
    data->letters = 2 * rank;

    Permutation identity(degree);
    std::iota(identity.begin(), identity.end(), 0U);
    std::vector<Permutation> perms{identity};
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> lookup{{identity, 0U}};
    data->normal_forms.push_back(Word::identity(rank));
    data->depth.push_back(0);

    for (std::size_t head = 0; head < perms.size(); ++head) {
        for (std::size_t li = 0; li < data->letters; ++li) {
            // (g s)(i) = g(s(i)): words act as products of permutations.
            Permutation child(degree);
            for (std::size_t i = 0; i < degree; ++i) child[i] = perms[head][letter_perms[li][i]];
            auto [it, inserted] = lookup.try_emplace(child, static_cast<std::uint32_t>(perms.size()));
            if (inserted) {
                if (perms.size() >= element_cap) {
                    throw ResourceError("finite Cayley closure exceeded element cap " + std::to_string(element_cap));
                }
                const Letter letter{static_cast<std::uint32_t>(li / 2), static_cast<std::int8_t>(li % 2 ? -1 : 1)};
                perms.push_back(std::move(child));
                data->normal_forms.push_back(invlip::multiply(data->normal_forms[head], Word(rank, {letter})));
                data->depth.push_back(data->depth[head] + 1);
            }
            data->next.push_back(it->second);
        }
    }

    auto b = std::make_shared<detail::Backend>();
    b->kind = BackendKind::finite_cayley;
    b->rank = rank;
    b->names = names_or_default(std::move(names), rank);
    b->finite = std::move(data);
    return GroupSpace(std::move(b));
}

GroupSpace GroupSpace::cyclic(std::size_t n) {
    if (n == 0) throw DomainError("cyclic group order must be positive");
    Permutation shift(n);
    for (std::uint32_t i = 0; i < n; ++i) shift[i] = static_cast<std::uint32_t>((i + 1) % n);
    Presentation p;
    p.generator_count = 1;
    p.generator_names = {"s"};
    p.relators = {Word::generator(1, 0, static_cast<int>(n))};
    auto space = finite_cayley({shift}, {"s"});
    return n == 1 ? space : space.with_presentation(std::move(p));
}

GroupSpace GroupSpace::symmetric(std::size_t k) {
    if (k < 2) throw DomainError("symmetric group needs k >= 2");
    Permutation transposition(k);
    Permutation cycle(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        transposition[i] = i;
        cycle[i] = static_cast<std::uint32_t>((i + 1) % k);
    }
    std::swap(transposition[0], transposition[1]);
    return finite_cayley({transposition, cycle}, {"a", "b"});
}

GroupSpace GroupSpace::oracle(std::size_t rank, NormalFormFn normal_form, NormFn norm, std::vector<std::string> names,
                              bool pseudometric) {
    if (rank == 0) throw DomainError("oracle group needs rank >= 1");
    if (!normal_form || !norm) throw DomainError("oracle backend needs normal-form and norm callbacks");
    auto b = std::make_shared<detail::Backend>();
    b->kind = BackendKind::oracle;
    b->rank = rank;
    b->names = names_or_default(std::move(names), rank);
    b->pseudometric = pseudometric;
    b->oracle_normal_form = std::move(normal_form);
    b->oracle_norm = std::move(norm);
    return GroupSpace(std::move(b));
}

GroupSpace GroupSpace::with_presentation(Presentation p) const {
    if (p.generator_count != rank()) throw ValidationError("presentation rank does not match the group");
    if (p.generator_names.empty()) p.generator_names = names();
    p.validate();
    auto b = std::make_shared<detail::Backend>(*backend_);
    b->presentation = std::move(p);
    return GroupSpace(std::move(b));
}

BackendKind GroupSpace::kind() const { return backend_->kind; }
std::size_t GroupSpace::rank() const { return backend_->rank; }
const std::vector<std::string>& GroupSpace::names() const { return backend_->names; }
const std::optional<Presentation>& GroupSpace::presentation() const { return backend_->presentation; }
bool GroupSpace::pseudometric() const { return backend_->pseudometric; }
bool GroupSpace::is_finite() const { return backend_->kind == BackendKind::finite_cayley; }

bool GroupSpace::supports_exact_structured() const {
    return backend_->kind == BackendKind::free_word || backend_->kind == BackendKind::free_abelian;
}

bool GroupSpace::is_word_metric() const { return backend_->kind != BackendKind::oracle; }

Word GroupSpace::generator(std::uint32_t s, int power) const {
    if (s >= rank()) throw DomainError("generator index " + std::to_string(s) + " out of range");
    return normal_form(Word::generator(rank(), s, power));
}

Word GroupSpace::normal_form(const Word& w) const {
    if (w.rank() != rank()) throw DomainError("word rank does not match the group");
    switch (backend_->kind) {
        case BackendKind::free_word: return w;
        case BackendKind::free_abelian: return abelian_normal_form(exponent_vector(w));
        case BackendKind::finite_cayley: return backend_->finite->normal_forms[backend_->finite->element_of(w)];
        case BackendKind::oracle: {
            Word nf = call_oracle([&] { return backend_->oracle_normal_form(w); }, "normal form");
            if (nf.rank() != rank()) throw OracleError("oracle normal form returned a word of the wrong rank");
            return nf;
        }
    }
    return w;
}

Word GroupSpace::multiply(const Word& u, const Word& v) const { return normal_form(invlip::multiply(u, v)); }

Word GroupSpace::inverse(const Word& w) const { return normal_form(invert(w)); }

Rational GroupSpace::norm(const Word& g) const {
    if (g.rank() != rank()) throw DomainError("word rank does not match the group");
    switch (backend_->kind) {
        case BackendKind::free_word: return Rational(static_cast<long long>(g.length()));
        case BackendKind::free_abelian: {
            long long total = 0;
            for (auto e : exponent_vector(g)) total += std::llabs(e);
            return Rational(total);
        }
        case BackendKind::finite_cayley:
            return Rational(static_cast<long long>(backend_->finite->depth[backend_->finite->element_of(g)]));
        case BackendKind::oracle: {
            const Word nf = normal_form(g);
            Rational d = call_oracle([&] { return backend_->oracle_norm(nf); }, "distance");
            if (d < 0) throw OracleError("oracle returned a negative distance");
            return d;
        }
    }
    return 0;
}

Rational GroupSpace::distance(const Word& g, const Word& h) const {
    return norm(invlip::multiply(invert(g), h));
}

Ball GroupSpace::ball(const Rational& radius) const {
    if (radius < 0) throw DomainError("ball radius must be nonnegative");
    Ball out;
    out.radius = radius;
    const long long r = floor_to_integer(radius);
    const std::size_t n = rank();

    switch (backend_->kind) {
        case BackendKind::free_word: {
            std::vector<Word> level{identity()};
            out.points.push_back({identity(), 0});
            for (long long len = 1; len <= r; ++len) {
                std::vector<Word> next;
                for (const auto& w : level) {
                    for (std::uint32_t s = 0; s < n; ++s) {
                        for (std::int8_t sign : {std::int8_t{1}, std::int8_t{-1}}) {
                            const Letter letter{s, sign};
                            if (!w.is_identity() && w.letters().back() == letter.inverse()) continue;
                            next.push_back(invlip::multiply(w, Word(n, {letter})));
                        }
                    }
                }
                for (const auto& w : next) out.points.push_back({w, Rational(len)});
                level = std::move(next);
            }
            break;
        }
        case BackendKind::free_abelian: {
            std::vector<long long> exps(n, 0);
            std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long budget) {
                if (i == n) {
                    long long used = 0;
                    for (auto e : exps) used += std::llabs(e);
                    out.points.push_back({abelian_normal_form(exps), Rational(used)});
                    return;
                }
                for (long long e = -budget; e <= budget; ++e) {
                    exps[i] = e;
                    rec(i + 1, budget - std::llabs(e));
                }
                exps[i] = 0;
            };
            if (r >= 0) rec(0, r);
            break;
        }
        case BackendKind::finite_cayley: {
            const auto& f = *backend_->finite;
            for (std::size_t e = 0; e < f.normal_forms.size(); ++e) {
                if (static_cast<long long>(f.depth[e]) <= r) out.points.push_back({f.normal_forms[e], Rational(f.depth[e])});
            }
            out.covers_group = out.points.size() == f.normal_forms.size();
            break;
        }
        case BackendKind::oracle: {
            // Breadth-first search that only expands points inside the ball;
            // exact whenever geodesics have monotone prefixes (word metrics).
            const std::size_t cap = default_element_cap();
            std::unordered_set<Word, WordHash> seen{identity()};
            std::deque<Word> queue{identity()};
            while (!queue.empty()) {
                Word w = queue.front();
                queue.pop_front();
                const Rational d = norm(w);
                if (d > radius) continue;
                out.points.push_back({w, d});
                if (out.points.size() > cap) throw ResourceError("oracle ball exceeded element cap " + std::to_string(cap));
                for (std::uint32_t s = 0; s < n; ++s) {
                    for (std::int8_t sign : {std::int8_t{1}, std::int8_t{-1}}) {
                        Word child = multiply(w, Word(n, {Letter{s, sign}}));
                        if (seen.insert(child).second) queue.push_back(std::move(child));
                    }
                }
            }
            break;
        }
    }

    std::sort(out.points.begin(), out.points.end(), [](const BallPoint& a, const BallPoint& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.element < b.element;
    });
    return out;
}

std::vector<Word> GroupSpace::elements() const {
    if (!is_finite()) throw ScopeError("element listing requires a finite backend");
    return backend_->finite->normal_forms;
}

std::size_t GroupSpace::order() const {
    if (!is_finite()) throw ScopeError("order requires a finite backend");
    return backend_->finite->normal_forms.size();
}

IndexedBall index_ball(const GroupSpace& space, const Rational& radius) {
    IndexedBall out;
    out.ball = space.ball(radius);
    out.index.reserve(out.ball.size() * 2);
    for (std::size_t i = 0; i < out.ball.size(); ++i) out.index.emplace(out.ball.points[i].element, i);
    if (space.is_word_metric()) {
        for (std::size_t i = 0; i < out.ball.size(); ++i) {
            for (std::uint32_t s = 0; s < space.rank(); ++s) {
                auto j = out.find(space.multiply(out.at(i), Word::generator(space.rank(), s)));
                if (j && *j != i) out.edges.emplace_back(i, *j);
            }
        }
    }
    out.convex = space.supports_exact_structured() || out.ball.covers_group;
    return out;
}

Rational group_diameter(const GroupSpace& space) {
    if (!space.is_finite()) throw ScopeError("diameter requires a finite backend");
    Rational best = 0;
    for (const auto& w : space.elements()) best = std::max(best, space.norm(w));
    return best;
}

}  // namespace invlip
