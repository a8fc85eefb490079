#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "plasmaskin/impedance.hpp"

using namespace plasmaskin;

namespace {
double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST_CASE("decrement at alpha = Omega = 1, Q = 0") {
    const DispersionKernel kernel(make_derived(1.0, 1.0, 0.0));
    const Complex lam = decrement(kernel);
    CHECK(std::abs(lam - Complex(1.12507650178, 0.49052303783)) < 1e-9);
}

TEST_CASE("Z0 = -i sqrt(alpha) Lambda") {
    const auto r = impedance_dimensionless(make_derived(4.0, 0.5, 0.1));
    CHECK(std::abs(r.Z0 - Complex(0.0, -2.0) * r.Lambda) < 1e-15 * std::abs(r.Z0));
    CHECK(r.abs_Z0 == std::abs(r.Z0));
    CHECK(r.arg_Z0 == std::arg(r.Z0));
}

TEST_CASE("normal skin effect limit") {
    for (double alpha : {1e-6, 1e-8}) {
        const auto r = impedance_dimensionless(make_derived(alpha, 0.0, 0.0));
        CHECK(rel(r.Z0, normal_limit()) < 0.01);
    }
    const double d6 = rel(impedance_dimensionless(make_derived(1e-6, 0.0, 0.0)).Z0, normal_limit());
    const double d8 = rel(impedance_dimensionless(make_derived(1e-8, 0.0, 0.0)).Z0, normal_limit());
    CHECK(d8 < d6);
}

TEST_CASE("anomalous regime approaches the leading-order asymptote") {
    double prev = 1.0;
    for (double alpha : {1e4, 1e6, 1e8}) {
        const auto r = impedance_dimensionless(make_derived(alpha, 0.0, 0.0));
        const double d = rel(r.Z0, anomalous_limit_asymptotic(alpha));
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 0.01);
}

TEST_CASE("closed-form anomalous expression differs from the asymptote by pi^(1/6)") {
    const Complex a = anomalous_limit(1e6), b = anomalous_limit_asymptotic(1e6);
    CHECK(std::abs(a / b - std::pow(kPi, 1.0 / 6.0)) < 1e-14);
    CHECK(std::abs(std::arg(a) + kPi / 3.0) < 1e-14);
    CHECK_THROWS_AS(anomalous_limit(0.0), DomainError);
}

TEST_CASE("tighter tolerance changes Lambda by less than the looser tolerance") {
    const auto d = make_derived(3.0, 2.0, 0.2);
    QuadratureConfig loose;
    loose.rel_tol = 1e-5;
    const auto a = impedance_dimensionless(d, loose);
    const auto b = impedance_dimensionless(d);
    CHECK(rel(a.Lambda, b.Lambda) < 1e-5);
}

TEST_CASE("starved quadrature reports non-convergence") {
    QuadratureConfig cfg;
    cfg.max_evals = 100;
    const auto d = derive_dimensionless({1.005, 1e-3, 1e-3});
    const auto r = evaluate_impedance(d, cfg);
    CHECK_FALSE(r.converged());
    CHECK_THROWS_AS(impedance_dimensionless(d, cfg), ConvergenceError);
}

TEST_CASE("impedance requires alpha > 0") {
    CHECK_THROWS_AS(evaluate_impedance(make_derived(0.0, 1.0, 0.0)), DomainError);
}

TEST_CASE("resonance: argument changes branch across gamma = 1") {
    const auto below = impedance_dimensionless(ScenarioParams{0.8, 1e-3, 1e-3});
    const auto above = impedance_dimensionless(ScenarioParams{1.2, 1e-3, 1e-3});
    CHECK(below.arg_Z0 < -1.4);
    CHECK(std::abs(above.arg_Z0) < 0.1);
    CHECK(above.abs_Z0 > below.abs_Z0);
}

TEST_CASE("displacement current switch only matters through Q") {
    const ScenarioParams s{1.005, 1e-3, 1e-3};
    const auto with = impedance_dimensionless(s, true);
    const auto without = impedance_dimensionless(s, false);
    CHECK(without.params.Q == 0.0);
    CHECK(with.params.Q > 0.0);
    CHECK(rel(with.Z0, without.Z0) > 1e-6);
    const auto no_q = impedance_dimensionless(make_derived(with.params.alpha, with.params.Omega, 0.0));
    CHECK(rel(no_q.Z0, without.Z0) < 1e-14);
}

TEST_CASE("physical impedance: R Z0 equals -i (4 pi omega l / c^2) Lambda") {
    const PhysicalInputs p{1e12, 3000.0, 1e7, 5.6e10};
    const auto r = impedance_physical(p);
    CHECK(rel(r.Z, r.Z_direct) < 1e-10);
    CHECK(r.dimensionless.converged());
}
