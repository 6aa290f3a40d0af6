#include "invlip/kernel_projection.hpp"

#include "invlip/errors.hpp"

#include <optional>

namespace invlip {

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
    if (rows.empty() || rows.front().empty()) throw DomainError("matrix must have positive dimensions");
    RationalMatrix a(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != a.cols) throw DomainError("ragged matrix row " + std::to_string(r));
        for (std::size_t c = 0; c < a.cols; ++c) a.at(r, c) = rows[r][c];
    }
    return a;
}

RationalMatrix RationalMatrix::from_exponents(const ExponentMatrix& e) {
    RationalMatrix a(e.rows, e.cols);
    for (std::size_t i = 0; i < e.entries.size(); ++i) a.entries[i] = e.entries[i];
    return a;
}

RationalVector RationalMatrix::apply(const RationalVector& x) const {
    if (x.size() != cols) throw DomainError("vector length does not match matrix columns");
    RationalVector y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) y[r] += at(r, c) * x[c];
    }
    return y;
}

namespace {

// Standard-form LP: minimize cost . z subject to rows . z = rhs, z >= 0.
class Tableau {
public:
    Tableau(std::vector<RationalVector> rows, RationalVector rhs, std::size_t vars)
        : rows_(std::move(rows)), rhs_(std::move(rhs)), vars_(vars) {}

    // Returns the optimal point; the feasible region is nonempty and the
    // objective bounded for every LP built here.
    RationalVector minimize(const RationalVector& cost) {
        const std::size_t m = rows_.size();
        // Phase 1: an artificial per row, rhs made nonnegative.
        for (std::size_t i = 0; i < m; ++i) {
            if (rhs_[i] < 0) {
                for (auto& v : rows_[i]) v = -v;
                rhs_[i] = -rhs_[i];
            }
            rows_[i].resize(vars_ + m);
            rows_[i][vars_ + i] = 1;
        }
        basis_.resize(m);
        for (std::size_t i = 0; i < m; ++i) basis_[i] = vars_ + i;

        RationalVector phase1(vars_ + m);
        for (std::size_t i = 0; i < m; ++i) phase1[vars_ + i] = 1;
        run(phase1, vars_ + m);
        for (std::size_t i = 0; i < m; ++i) {
            if (basis_[i] >= vars_ && rhs_[i] != 0) throw Error("linear program infeasible");
        }
        drive_out_artificials();

        for (auto& row : rows_) row.resize(vars_);
        run(cost, vars_);

        RationalVector z(vars_);
        for (std::size_t i = 0; i < rows_.size(); ++i) z[basis_[i]] = rhs_[i];
        return z;
    }

private:
    void pivot(std::size_t r, std::size_t col) {
        const Rational p = rows_[r][col];
        for (auto& v : rows_[r]) v /= p;
        rhs_[r] /= p;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || rows_[i][col] == 0) continue;
            const Rational factor = rows_[i][col];
            for (std::size_t j = 0; j < rows_[i].size(); ++j) rows_[i][j] -= factor * rows_[r][j];
            rhs_[i] -= factor * rhs_[r];
        }
        basis_[r] = col;
    }

    // Bland's rule: lowest-index entering column, lowest basis index on ratio ties.
    void run(const RationalVector& cost, std::size_t width) {
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < width && !entering; ++j) {
                Rational reduced = cost[j];
                for (std::size_t i = 0; i < rows_.size(); ++i) reduced -= cost[basis_[i]] * rows_[i][j];
                if (reduced < 0) entering = j;
            }
            if (!entering) return;
            std::optional<std::size_t> leaving;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const Rational& coef = rows_[i][*entering];
                if (coef <= 0) continue;
                const Rational ratio = rhs_[i] / coef;
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (!leaving) throw Error("linear program unbounded");
            pivot(*leaving, *entering);
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < vars_) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < vars_ && !col; ++j) {
                if (rows_[i][j] != 0) col = j;
            }
            if (col) {
                pivot(i, *col);
                ++i;
            } else {
                // Redundant equality.
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    std::vector<RationalVector> rows_;
    RationalVector rhs_;
    std::vector<std::size_t> basis_;
    std::size_t vars_;
};

}  // namespace

KernelProjection linf_kernel_project(const RationalMatrix& a, const RationalVector& x) {
    const std::size_t n = a.cols;
    const std::size_t m = a.rows;
    if (n == 0) throw DomainError("matrix must have at least one column");
    if (x.size() != n) throw DomainError("vector length does not match matrix columns");

    // With w = x - u: min t s.t. A w = A x, -t <= w_i <= t.
    // Columns: w+ (n), w- (n), t, slack+ (n), slack- (n).
    const std::size_t vars = 4 * n + 1;
    const std::size_t t_col = 2 * n;
    std::vector<RationalVector> rows;
    RationalVector rhs;
    const RationalVector ax = a.apply(x);
    for (std::size_t r = 0; r < m; ++r) {
        RationalVector row(vars);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = a.at(r, j);
            row[n + j] = -a.at(r, j);
        }
        rows.push_back(std::move(row));
        rhs.push_back(ax[r]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector upper(vars), lower(vars);
        upper[i] = 1;
        upper[n + i] = -1;
        upper[t_col] = -1;
        upper[t_col + 1 + i] = 1;
        lower[i] = -1;
        lower[n + i] = 1;
        lower[t_col] = -1;
        lower[t_col + 1 + n + i] = 1;
        rows.push_back(std::move(upper));
        rhs.push_back(0);
        rows.push_back(std::move(lower));
        rhs.push_back(0);
    }
    RationalVector cost(vars);
    cost[t_col] = 1;
    const RationalVector z = Tableau(std::move(rows), std::move(rhs), vars).minimize(cost);

    KernelProjection out;
    out.t = z[t_col];
    out.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.u[i] = x[i] - (z[i] - z[n + i]);

    for (const auto& v : a.apply(out.u)) {
        if (v != 0) throw Error("kernel projection residual is nonzero");
    }
    Rational achieved = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Rational w = x[i] - out.u[i];
        achieved = std::max(achieved, abs(w));
        if (w == out.t) out.basis_certificate.push_back(2 * i);
        if (-w == out.t) out.basis_certificate.push_back(2 * i + 1);
    }
    if (achieved != out.t) throw Error("kernel projection objective does not match ||x - u||");
    return out;
}

Rational empirical_constant(const RationalMatrix& a, const std::vector<RationalVector>& samples) {
    std::optional<Rational> best;
    for (const auto& x : samples) {
        const Rational ax = max_abs(a.apply(x));
        if (ax == 0) continue;
        const Rational ratio = linf_kernel_project(a, x).t / ax;
        if (!best || ratio > *best) best = ratio;
    }
    if (!best) throw PreconditionError("every sample lies in ker A; the constant is undefined");
    return *best;
}

}  // namespace invlip
