#pragma once

#include "invlip/rational.hpp"
#include "invlip/word.hpp"

#include <cstddef>
#include <vector>

namespace invlip {

/// Dense row-major matrix of exact rationals.
struct RationalMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    RationalVector entries;

    RationalMatrix() = default;
    RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
    static RationalMatrix from_exponents(const ExponentMatrix& a);

    [[nodiscard]] const Rational& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
    Rational& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    [[nodiscard]] RationalVector apply(const RationalVector& x) const;
};

struct KernelProjection {
    RationalVector u;  // A u = 0
    Rational t;        // max_i |x_i - u_i|
    /// Active constraints at the returned vertex: 2i for x_i - u_i = t and
    /// 2i + 1 for u_i - x_i = t.
    std::vector<std::size_t> basis_certificate;
};

/// Exact minimizer of ||x - u||_inf subject to A u = 0, by two-phase simplex
/// with Bland's rule. Any optimal vertex may be returned; t is unique.
KernelProjection linf_kernel_project(const RationalMatrix& a, const RationalVector& x);

/// Brute-force optimum: every (n+1)-subset of the m + 2n constraint rows
/// (u, t) is solved as an equality system and the best feasible t kept.
/// Requires m + n <= 14.
Rational kernel_project_oracle(const RationalMatrix& a, const RationalVector& x);

/// max over samples with A x != 0 of ||x - u(x)||_inf / ||A x||_inf.
Rational empirical_constant(const RationalMatrix& a, const std::vector<RationalVector>& samples);

}  // namespace invlip
