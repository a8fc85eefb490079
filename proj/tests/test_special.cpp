#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "plasmaskin/special.hpp"

using namespace plasmaskin;

namespace {
double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST_CASE("t0 at w = i") {
    const Complex v = special::t0({0.0, 1.0});
    CHECK(std::abs(v.real()) < 1e-15);
    CHECK(std::abs(v.imag() - 0.757872156141312) < 1e-14);
}

TEST_CASE("t0 on the imaginary axis is i sqrt(pi) e^{y^2} erfc(y)") {
    for (double y : {1e-6, 0.01, 0.5, 1.0, 3.0, 10.0}) {
        const double want = kSqrtPi * std::exp(y * y) * std::erfc(y);
        const Complex got = special::t0({0.0, y});
        CHECK(std::abs(got.imag() - want) <= 1e-12 * want + 1e-300);
        CHECK(std::abs(got.real()) < 1e-14);
    }
}

TEST_CASE("t0 matches the direct integral oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lx(-3.0, 2.0), ly(-3.0, 2.0), sign(-1.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        const double x = std::copysign(std::pow(10.0, lx(rng)), sign(rng));
        const double y = std::pow(10.0, ly(rng));
        const Complex w(x, y);
        const auto oracle = special::t0_oracle(w, 1e-12);
        REQUIRE(oracle.converged);
        CHECK(rel(special::t0(w), oracle.value) < 1e-9);
    }
}

TEST_CASE("t0 reflection symmetry t0(-conj w) = -conj t0(w)") {
    for (Complex w : {Complex(0.3, 0.2), Complex(5.0, 1e-3), Complex(40.0, 2.0), Complex(1e-4, 7.0)}) {
        const Complex a = special::t0(-std::conj(w));
        const Complex b = -std::conj(special::t0(w));
        CHECK(std::abs(a - b) <= 1e-15 * std::abs(b));
    }
}

TEST_CASE("t0 satisfies dt0/dw = -2 (1 + w t0)") {
    for (Complex w : {Complex(0.5, 0.5), Complex(-2.0, 0.1), Complex(3.0, 4.0), Complex(0.0, 20.0)}) {
        const double h = 1e-6 * std::max(1.0, std::abs(w));
        const Complex fd = (special::t0(w + h) - special::t0(w - h)) / (2.0 * h);
        const Complex want = -2.0 * (1.0 + w * special::t0(w));
        CHECK(std::abs(fd - want) <= 1e-6 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("t0 decays like -1/w for large |w|") {
    for (Complex w : {Complex(1e6, 1.0), Complex(0.0, 1e7), Complex(-3e4, 50.0)}) {
        const Complex wt = w * special::t0(w);
        CHECK(std::abs(wt + 1.0) < 1e-8);
    }
}

TEST_CASE("t0 is rejected on and below the real axis") {
    CHECK_THROWS_AS(special::t0({1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(special::t0({1.0, -1.0}), DomainError);
    CHECK_THROWS_AS(special::faddeeva({1.0, -1.0}), DomainError);
}

TEST_CASE("faddeeva at the origin and tiny arguments") {
    CHECK(std::abs(special::faddeeva({0.0, 0.0}) - 1.0) < 1e-15);
    const Complex w = special::faddeeva({1e-10, 1e-10});
    CHECK(std::abs(w - 1.0) < 1e-9);
}
