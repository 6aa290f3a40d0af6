#include "invlip/errors.hpp"
#include "invlip/kernel_projection.hpp"
#include "invlip/lipschitz.hpp"

#include <doctest.h>

using namespace invlip;

namespace {

RationalMatrix rows(std::vector<RationalVector> r) { return RationalMatrix::from_rows(r); }

void check_certificate(const RationalMatrix& a, const RationalVector& x, const KernelProjection& kp) {
    for (const auto& v : a.apply(kp.u)) CHECK(v == 0);
    Rational worst = 0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, invlip::abs(x[i] - kp.u[i]));
    CHECK(worst == kp.t);
    for (std::size_t c : kp.basis_certificate) {
        const std::size_t i = c / 2;
        CHECK((c % 2 == 0 ? x[i] - kp.u[i] : kp.u[i] - x[i]) == kp.t);
    }
}

}  // namespace

TEST_CASE("small projections with known answers") {
    {
        const auto a = rows({{1, 1}});
        const auto kp = linf_kernel_project(a, {1, 0});
        CHECK(kp.u == RationalVector{Rational(1, 2), Rational(-1, 2)});
        CHECK(kp.t == Rational(1, 2));
        check_certificate(a, {1, 0}, kp);
    }
    {
        const auto a = rows({{2, -3}});
        const auto kp = linf_kernel_project(a, {1, 0});
        CHECK(kp.t == Rational(2, 5));
        CHECK(kernel_project_oracle(a, {1, 0}) == Rational(2, 5));
        check_certificate(a, {1, 0}, kp);
    }
    {
        const auto a = rows({{2, -2}});
        const auto kp = linf_kernel_project(a, {1, 0});
        CHECK(kp.u == RationalVector{Rational(1, 2), Rational(1, 2)});
        CHECK(kp.t == Rational(1, 2));
    }
    {
        const auto kp = linf_kernel_project(rows({{5}}), {3});
        CHECK(kp.u == RationalVector{0});
        CHECK(kp.t == 3);
    }
    {
        const auto kp = linf_kernel_project(rows({{0, 0}}), {1, 7});
        CHECK(kp.t == 0);
        CHECK(kp.u == RationalVector{1, 7});
    }
    // redundant rows
    {
        const auto a = rows({{1, 1}, {2, 2}});
        CHECK(linf_kernel_project(a, {1, 0}).t == Rational(1, 2));
    }
}

TEST_CASE("empirical constant") {
    CHECK(empirical_constant(rows({{5}}), {{3}}) == Rational(1, 5));
    CHECK_THROWS_AS(empirical_constant(rows({{0, 0}}), {{1, 2}}), PreconditionError);
    CHECK_THROWS_AS(kernel_project_oracle(RationalMatrix(8, 7), RationalVector(7)), ResourceError);
}

TEST_CASE("oracle: simplex optimum equals vertex enumeration on random instances") {
    SeededRng rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const auto m = static_cast<std::size_t>(rng.between(1, 3));
        const auto n = static_cast<std::size_t>(rng.between(1, 4));
        RationalMatrix a(m, n);
        for (auto& e : a.entries) e = rng.between(-4, 4);
        RationalVector x(n);
        for (auto& v : x) v = rng.rational(9, 4);
        const auto kp = linf_kernel_project(a, x);
        check_certificate(a, x, kp);
        CHECK(kp.t == kernel_project_oracle(a, x));
    }
}

TEST_CASE("property: scaling and kernel shifts") {
    SeededRng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        RationalMatrix a(1, 3);
        for (auto& e : a.entries) e = rng.between(-5, 5);
        RationalVector x(3);
        for (auto& v : x) v = rng.rational(6, 3);
        const Rational lambda = rng.between(1, 4);
        RationalVector scaled = x;
        for (auto& v : scaled) v *= lambda;
        const Rational t = linf_kernel_project(a, x).t;
        CHECK(linf_kernel_project(a, scaled).t == lambda * t);
        // x + k for k in ker A gives the same optimum
        RationalVector kernel_vec = linf_kernel_project(a, x).u;
        RationalVector shifted = x;
        for (std::size_t i = 0; i < 3; ++i) shifted[i] += kernel_vec[i];
        CHECK(linf_kernel_project(a, shifted).t == t);
        CHECK(t <= max_abs(x));
    }
}
