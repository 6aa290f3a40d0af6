#pragma once

// Brute-force reference computations. They avoid the library's shortcuts
// (edge scans, support-closure candidate sets) and only share eval/distance.

#include "invlip/group_space.hpp"
#include "invlip/lipschitz.hpp"

#include <deque>
#include <map>
#include <string>

namespace oracle {

using invlip::Rational;
using invlip::Word;

// F_2 words as strings over "aAbB" (capital = inverse), reduced by hand.
inline std::string reduce_text(const std::string& w) {
    std::string out;
    for (char c : w) {
        const char inv = static_cast<char>(std::islower(static_cast<unsigned char>(c)) ? std::toupper(c) : std::tolower(c));
        if (!out.empty() && out.back() == inv) {
            out.pop_back();
        } else {
            out.push_back(c);
        }
    }
    return out;
}

/// Breadth-first distances from e on the Cayley graph of F_2 up to depth.
inline std::map<std::string, int> f2_bfs(int depth) {
    std::map<std::string, int> dist{{"", 0}};
    std::deque<std::string> queue{""};
    while (!queue.empty()) {
        const std::string w = queue.front();
        queue.pop_front();
        if (dist[w] == depth) continue;
        for (char c : std::string("aAbB")) {
            const std::string next = reduce_text(w + c);
            if (dist.emplace(next, dist[w] + 1).second) queue.push_back(next);
        }
    }
    return dist;
}

inline std::string to_text(const Word& w) {
    std::string out;
    for (const auto& l : w.letters()) out.push_back(static_cast<char>((l.generator == 0 ? 'a' : 'b') - (l.sign < 0 ? 32 : 0)));
    return out;
}

/// Breadth-first distances on Z^2 (generators (1,0), (0,1)).
inline std::map<std::pair<long long, long long>, int> z2_bfs(int depth) {
    std::map<std::pair<long long, long long>, int> dist{{{0, 0}, 0}};
    std::deque<std::pair<long long, long long>> queue{{0, 0}};
    while (!queue.empty()) {
        const auto p = queue.front();
        queue.pop_front();
        if (dist[p] == depth) continue;
        for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
            const std::pair<long long, long long> q{p.first + dx, p.second + dy};
            if (dist.emplace(q, dist[p] + 1).second) queue.push_back(q);
        }
    }
    return dist;
}

/// max over g in gs, x != y in xs of |(f(gx) - f(x)) - (f(gy) - f(y))| / d(x, y), all pairs.
inline Rational defect(const invlip::LipFn& f, const invlip::GroupSpace& space, const std::vector<Word>& gs,
                       const std::vector<Word>& xs) {
    Rational best = 0;
    for (const auto& g : gs) {
        std::vector<Rational> phi;
        for (const auto& x : xs) phi.push_back(eval(f, space, space.multiply(g, x)) - eval(f, space, x));
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (std::size_t j = i + 1; j < xs.size(); ++j) {
                const Rational v = invlip::abs(phi[i] - phi[j]) / space.distance(xs[i], xs[j]);
                if (v > best) best = v;
            }
        }
    }
    return best;
}

/// max over pairs of |f(x) - f(y)| / d(x, y).
inline Rational lipschitz(const invlip::LipFn& f, const invlip::GroupSpace& space, const std::vector<Word>& xs) {
    Rational best = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const Rational v = invlip::abs(eval(f, space, xs[i]) - eval(f, space, xs[j])) / space.distance(xs[i], xs[j]);
            if (v > best) best = v;
        }
    }
    return best;
}

/// sup and inf of f(g s x) - f(g x) over g in gs.
inline std::pair<Rational, Rational> growth(const invlip::LipFn& f, const invlip::GroupSpace& space, const Word& s,
                                            const Word& x, const std::vector<Word>& gs) {
    Rational hi = 0, lo = 0;
    bool first = true;
    for (const auto& g : gs) {
        const Rational v = eval(f, space, space.multiply(g, space.multiply(s, x))) - eval(f, space, space.multiply(g, x));
        if (first || v > hi) hi = v;
        if (first || v < lo) lo = v;
        first = false;
    }
    return {hi, lo};
}

inline std::vector<Word> words(const invlip::GroupSpace& space, const Rational& radius) {
    std::vector<Word> out;
    for (const auto& p : space.ball(radius).points) out.push_back(p.element);
    return out;
}

}  // namespace oracle
