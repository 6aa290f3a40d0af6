#include "invlip/word.hpp"

#include "invlip/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace invlip {

namespace {

void append_reduced(std::vector<Letter>& out, const Letter& letter) {
    if (!out.empty() && out.back() == letter.inverse()) {
        out.pop_back();
    } else {
        out.push_back(letter);
    }
}

}  // namespace

Word::Word(std::size_t rank, const std::vector<Letter>& letters) : rank_(rank) {
    letters_.reserve(letters.size());
    for (const auto& letter : letters) {
        if (letter.generator >= rank) {
            throw DomainError("generator index " + std::to_string(letter.generator) +
                              " out of range for rank " + std::to_string(rank));
        }
        if (letter.sign != 1 && letter.sign != -1) {
            throw DomainError("letter sign must be +1 or -1");
        }
        append_reduced(letters_, letter);
    }
}

Word Word::generator(std::size_t rank, std::uint32_t index, int power) {
    std::vector<Letter> letters;
    const Letter letter{index, static_cast<std::int8_t>(power < 0 ? -1 : 1)};
    for (int i = 0; i < (power < 0 ? -power : power); ++i) letters.push_back(letter);
    return Word(rank, letters);
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                  b.letters_.begin(), b.letters_.end());
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ULL ^ w.rank();
    for (const auto& letter : w.letters()) {
        h ^= letter.index() + 1;
        h *= 1099511628211ULL;
    }
    return h;
}

Word reduce(std::size_t rank, const std::vector<Letter>& letters) { return Word(rank, letters); }

Word multiply(const Word& u, const Word& v) {
    if (u.rank() != v.rank()) {
        throw DomainError("alphabet mismatch: rank " + std::to_string(u.rank()) + " vs " +
                          std::to_string(v.rank()));
    }
    std::vector<Letter> letters = u.letters();
    letters.insert(letters.end(), v.letters().begin(), v.letters().end());
    return Word(u.rank(), letters);
}

Word invert(const Word& w) {
    std::vector<Letter> letters;
    letters.reserve(w.length());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) letters.push_back(it->inverse());
    return Word(w.rank(), letters);
}

Word power(const Word& w, long long exponent) {
    const Word base = exponent < 0 ? invert(w) : w;
    Word result = Word::identity(w.rank());
    for (long long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) result = multiply(result, base);
    return result;
}

long long exponent_sum(const Word& w, std::uint32_t s) {
    long long total = 0;
    for (const auto& letter : w.letters()) {
        if (letter.generator == s) total += letter.sign;
    }
    return total;
}

std::vector<long long> exponent_vector(const Word& w) {
    std::vector<long long> v(w.rank(), 0);
    for (const auto& letter : w.letters()) v[letter.generator] += letter.sign;
    return v;
}

std::vector<std::string> default_generator_names(std::size_t rank) {
    if (rank == 1) return {"s"};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < rank; ++i) {
        names.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i));
    }
    return names;
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
    if (w.is_identity()) return "e";
    std::ostringstream out;
    const auto& letters = w.letters();
    for (std::size_t i = 0; i < letters.size();) {
        std::size_t j = i;
        while (j < letters.size() && letters[j] == letters[i]) ++j;
        const long long run = static_cast<long long>(j - i) * letters[i].sign;
        if (i > 0) out << ' ';
        out << (letters[i].generator < names.size() ? names[letters[i].generator]
                                                     : "g" + std::to_string(letters[i].generator));
        if (run != 1) out << '^' << run;
        i = j;
    }
    return out.str();
}

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
    const std::size_t rank = names.size();
    auto is_name = [&](std::string_view t) {
        return std::find(names.begin(), names.end(), t) != names.end();
    };
    std::string_view trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
    if (trimmed.empty() || ((trimmed == "e" || trimmed == "1") && !is_name(trimmed))) {
        return Word::identity(rank);
    }

    std::vector<Letter> letters;
    std::size_t pos = 0;
    while (pos < trimmed.size()) {
        char c = trimmed[pos];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
            ++pos;
            continue;
        }
        std::size_t best = names.size();
        std::size_t best_len = 0;
        for (std::size_t g = 0; g < names.size(); ++g) {
            const auto& name = names[g];
            if (name.size() > best_len && trimmed.substr(pos, name.size()) == name) {
                best = g;
                best_len = name.size();
            }
        }
        if (best == names.size()) {
            throw ParseError("unknown generator at \"" + std::string(trimmed.substr(pos)) + "\"");
        }
        pos += best_len;
        long long exponent = 1;
        if (pos < trimmed.size() && trimmed[pos] == '^') {
            ++pos;
            std::size_t start = pos;
            if (pos < trimmed.size() && (trimmed[pos] == '-' || trimmed[pos] == '+')) ++pos;
            while (pos < trimmed.size() && std::isdigit(static_cast<unsigned char>(trimmed[pos]))) ++pos;
            const std::string digits(trimmed.substr(start, pos - start));
            if (digits.empty() || digits == "-" || digits == "+") {
                throw ParseError("missing exponent in \"" + std::string(text) + "\"");
            }
            exponent = std::stoll(digits);
        }
        const Letter letter{static_cast<std::uint32_t>(best), static_cast<std::int8_t>(exponent < 0 ? -1 : 1)};
        for (long long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) letters.push_back(letter);
    }
    return Word(rank, letters);
}

void Presentation::validate() const {
    if (generator_count == 0) throw ValidationError("presentation needs at least one generator");
    if (!generator_names.empty() && generator_names.size() != generator_count) {
        throw ValidationError("generator_names has " + std::to_string(generator_names.size()) +
                              " entries, expected " + std::to_string(generator_count));
    }
    for (std::size_t i = 0; i < relators.size(); ++i) {
        const auto& r = relators[i];
        if (r.rank() != generator_count) throw ValidationError("relator " + std::to_string(i) + " has wrong rank");
        if (r.is_identity()) throw ValidationError("relator " + std::to_string(i) + " is empty after reduction");
    }
}

ExponentMatrix exponent_matrix(const Presentation& p) {
    ExponentMatrix m;
    m.rows = p.relators.size();
    m.cols = p.generator_count;
    m.entries.assign(m.rows * m.cols, 0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::uint32_t s = 0; s < m.cols; ++s) m.entries[r * m.cols + s] = exponent_sum(p.relators[r], s);
    }
    return m;
}

}  // namespace invlip
