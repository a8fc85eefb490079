#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "plasmaskin/dispersion.hpp"

using namespace plasmaskin;

TEST_CASE("lambda is even in k and matches the substituted form") {
    const DispersionKernel kernel(make_derived(2.0, 0.7, 0.3));
    for (double k : {1e-3, 0.2, 1.0, 7.5, 1e4}) {
        CHECK(kernel.lambda_k(k) == kernel.lambda_k(-k));
        CHECK(kernel.lambda_k(k) == kernel.lambda_inv_t(1.0 / k));
        const Complex k2l = kernel.k2_lambda(k);
        CHECK(std::abs(k2l - k * k * kernel.lambda_k(k)) <= 1e-13 * std::abs(k2l));
    }
}

TEST_CASE("lambda tends to one at short wavelengths") {
    const DispersionKernel kernel(make_derived(1.0, 1.0, 1.0));
    CHECK(std::abs(kernel.lambda_inv_t(1e-6) - 1.0) < 1e-11);
}

TEST_CASE("collisionless-free limit alpha = 0 reduces to 1 - Q^2 t^2") {
    const DispersionKernel kernel(make_derived(0.0, 3.0, 0.5));
    for (double t : {0.1, 1.0, 2.0, 10.0})
        CHECK(kernel.lambda_inv_t(t) == Complex(1.0 - 0.25 * t * t, 0.0));
}

TEST_CASE("kernel evaluates 1 - Q^2 t^2 - alpha t^3 t0(i z0 t)") {
    const DispersionKernel kernel(make_derived(0.8, 2.5, 0.4));
    for (double t : {1e-3, 0.3, 2.0, 50.0}) {
        const Complex w(2.5 * t, t);
        const Complex want = 1.0 - 0.16 * t * t - 0.8 * t * t * t * special::t0(w);
        CHECK(std::abs(kernel.lambda_inv_t(t) - want) <= 1e-14 * std::abs(want));
    }
}

TEST_CASE("lambda rejects k = 0 and t <= 0") {
    const DispersionKernel kernel(make_derived(1.0, 1.0, 0.0));
    CHECK_THROWS_AS(kernel.lambda_k(0.0), DomainError);
    CHECK_THROWS_AS(kernel.lambda_inv_t(0.0), DomainError);
    CHECK_THROWS_AS(kernel.lambda_inv_t(-1.0), DomainError);
}

TEST_CASE("scan finds nothing where lambda stays away from zero") {
    const DispersionKernel kernel(make_derived(1.0, 1.0, 0.0));
    CHECK(scan_near_zeros(kernel, {}, 2048, 1e-2).empty());
}

TEST_CASE("scan at gamma = 1 agrees with a dense oracle") {
    const DispersionKernel kernel(derive_dimensionless({1.0, 1e-3, 1e-3}));
    const auto found = scan_near_zeros(kernel, {}, 2048, 1e-2);
    double dense_min = 1e300;
    for (int i = 0; i <= 200000; ++i) {
        const double t = std::pow(10.0, -8.0 + 16.0 * i / 200000.0);
        dense_min = std::min(dense_min, std::abs(kernel.lambda_inv_t(t)));
    }
    CHECK(found.empty() == (dense_min >= 1e-2));
}

TEST_CASE("scan brackets the resonance just above gamma = 1 at eps = 1e-4") {
    const DispersionKernel kernel(derive_dimensionless({1.005, 1e-4, 1e-3}));
    const auto found = scan_near_zeros(kernel, {}, 2048, 1e-2);
    REQUIRE(found.size() == 1);
    const auto& b = found.front();
    CHECK(b.t_lo < b.t_min);
    CHECK(b.t_min < b.t_hi);
    CHECK(b.min_abs_lambda < 1e-2);
    CHECK(std::abs(kernel.lambda_inv_t(b.t_min)) == b.min_abs_lambda);
    // Local minimum: neighbours within the bracket are not deeper.
    for (double f : {0.999, 1.001})
        CHECK(std::abs(kernel.lambda_inv_t(b.t_min * f)) >= b.min_abs_lambda);
}

TEST_CASE("scan argument handling") {
    const DispersionKernel kernel(derive_dimensionless({1.005, 1e-3, 1e-3}));
    CHECK(scan_near_zeros(kernel, {}, 2048, 0.0).empty());
    CHECK(scan_near_zeros(kernel, {}, 2048, -1.0).empty());
    CHECK_THROWS_AS(scan_near_zeros(kernel, {}, 8, 1e-2), ContractError);
    CHECK_THROWS_AS(scan_near_zeros(kernel, {1.0, 0.5}, 2048, 1e-2), ContractError);
    CHECK_THROWS_AS(scan_near_zeros(kernel, {0.0, 1.0}, 2048, 1e-2), ContractError);
}
