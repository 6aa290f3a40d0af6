#include "invlip/errors.hpp"
#include "invlip/kernel_projection.hpp"

#include <optional>

namespace invlip {

namespace {

// Solves the square system M y = b by Gauss-Jordan elimination; nullopt when singular.
std::optional<RationalVector> solve_square(std::vector<RationalVector> m, RationalVector b) {
    const std::size_t k = b.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && m[pivot][col] == 0) ++pivot;
        if (pivot == k) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < k; ++c) m[r][c] -= f * m[col][c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = 0; i < k; ++i) b[i] /= m[i][i];
    return b;
}

}  // namespace

Rational kernel_project_oracle(const RationalMatrix& a, const RationalVector& x) {
    const std::size_t n = a.cols;
    const std::size_t m = a.rows;
    if (x.size() != n) throw DomainError("vector length does not match matrix columns");
    if (m + n > 14) throw ResourceError("oracle budget exceeded: m + n = " + std::to_string(m + n) + " > 14");

    // Unknowns (u_0..u_{n-1}, t). Constraint rows as equalities:
    //   A u = 0; u_i + t = x_i (x_i - u_i <= t tight); t - u_i = -x_i.
    std::vector<RationalVector> rows;
    RationalVector rhs;
    for (std::size_t r = 0; r < m; ++r) {
        RationalVector row(n + 1);
        for (std::size_t c = 0; c < n; ++c) row[c] = a.at(r, c);
        rows.push_back(std::move(row));
        rhs.push_back(0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector upper(n + 1), lower(n + 1);
        upper[i] = 1;
        upper[n] = 1;
        lower[i] = -1;
        lower[n] = 1;
        rows.push_back(std::move(upper));
        rhs.push_back(x[i]);
        rows.push_back(std::move(lower));
        rhs.push_back(-x[i]);
    }

    const std::size_t total = rows.size();
    const std::size_t k = n + 1;
    std::optional<Rational> best;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
        std::vector<RationalVector> sys;
        RationalVector b;
        for (auto i : pick) {
            sys.push_back(rows[i]);
            b.push_back(rhs[i]);
        }
        if (auto y = solve_square(std::move(sys), std::move(b))) {
            const Rational& t = (*y)[n];
            bool feasible = t >= 0;
            for (std::size_t i = 0; i < n && feasible; ++i) feasible = abs(x[i] - (*y)[i]) <= t;
            for (std::size_t r = 0; r < m && feasible; ++r) {
                Rational s = 0;
                for (std::size_t c = 0; c < n; ++c) s += a.at(r, c) * (*y)[c];
                feasible = s == 0;
            }
            if (feasible && (!best || t < *best)) best = t;
        }
        // next k-combination of [0, total)
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == total - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!best) throw Error("oracle found no feasible vertex");
    return *best;
}

}  // namespace invlip
