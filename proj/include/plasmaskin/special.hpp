#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "plasmaskin/core.hpp"
#include "plasmaskin/quadrature.hpp"

namespace plasmaskin::special {

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z) for Im z >= 0.
///
/// Gautschi's scheme with the Poppe-Wijers constants: a power series near
/// the origin, a Taylor/Laplace continued-fraction blend in the mid
/// region and the bare continued fraction outside the ellipse
/// (x/6.3)^2 + (y/4.4)^2 = 1. Roughly 14 significant digits.
inline Complex faddeeva(Complex z) {
    constexpr double kTwoOverSqrtPi = 1.12837916709551257388;
    const double xabs = std::abs(z.real());
    const double yabs = z.imag();
    if (!(yabs >= 0.0)) throw DomainError("faddeeva evaluated below the real axis");

    const double xs = xabs / 6.3;
    const double ys = yabs / 4.4;
    double qrho = xs * xs + ys * ys;
    const double xquad = xabs * xabs - yabs * yabs;
    const double yquad = 2.0 * xabs * yabs;

    double u = 0.0;
    double v = 0.0;
    if (qrho < 0.085264) {
        qrho = (1.0 - 0.85 * ys) * std::sqrt(qrho);
        const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
        int j = 2 * n + 1;
        double xsum = 1.0 / j;
        double ysum = 0.0;
        for (int i = n; i >= 1; --i) {
            j -= 2;
            const double xaux = (xsum * xquad - ysum * yquad) / i;
            ysum = (xsum * yquad + ysum * xquad) / i;
            xsum = xaux + 1.0 / j;
        }
        const double u1 = -kTwoOverSqrtPi * (xsum * yabs + ysum * xabs) + 1.0;
        const double v1 = kTwoOverSqrtPi * (xsum * xabs - ysum * yabs);
        const double daux = std::exp(-xquad);
        const double u2 = daux * std::cos(yquad);
        const double v2 = -daux * std::sin(yquad);
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    } else {
        double h = 0.0;
        int kapn = 0;
        int nu = 0;
        if (qrho > 1.0) {
            nu = static_cast<int>(3.0 + 1442.0 / (26.0 + 77.0 * std::sqrt(qrho)));
        } else {
            const double q = (1.0 - ys) * std::sqrt(1.0 - qrho);
            h = 1.88 * q;
            kapn = static_cast<int>(std::lround(7.0 + 34.0 * q));
            nu = static_cast<int>(std::lround(16.0 + 26.0 * q));
        }
        const double h2 = 2.0 * h;
        double qlambda = h > 0.0 ? std::pow(h2, kapn) : 0.0;
        double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
        for (int n = nu; n >= 0; --n) {
            const double np1 = n + 1.0;
            double tx = yabs + h + np1 * rx;
            const double ty = xabs - np1 * ry;
            const double c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if (h > 0.0 && n <= kapn) {
                tx = qlambda + sx;
                sx = rx * tx - ry * sy;
                sy = ry * tx + rx * sy;
                qlambda /= h2;
            }
        }
        if (h == 0.0) {
            u = kTwoOverSqrtPi * rx;
            v = kTwoOverSqrtPi * ry;
        } else {
            u = kTwoOverSqrtPi * sx;
            v = kTwoOverSqrtPi * sy;
        }
        if (yabs == 0.0) u = std::exp(-xabs * xabs);
    }
    if (z.real() < 0.0) v = -v;
    return {u, v};
}

/// t0(w) = (1/sqrt(pi)) * integral over the real line of exp(-u^2)/(u - w) du,
/// defined for Im w > 0.
inline Complex t0(Complex w) {
    if (!(w.imag() > 0.0))
        throw DomainError("t0 requires Im w > 0, got Im w = " + std::to_string(w.imag()));
    return Complex(0.0, kSqrtPi) * faddeeva(w);
}

/// Direct quadrature of the defining integral; independent of faddeeva().
///
/// The line is folded about s = u - Re w, which turns the near-pole part
/// into a Lorentzian of width Im w. Gaussian tails are cut where
/// |u| > 9. tol is relative: converged results satisfy
/// err_estimate <= tol * |value|.
inline QuadratureResult t0_oracle(Complex w, double tol) {
    if (!(w.imag() > 0.0))
        throw DomainError("t0_oracle requires Im w > 0, got Im w = " + std::to_string(w.imag()));
    if (!(tol > 0.0)) throw ContractError("t0_oracle tolerance must be positive");

    const double x = w.real();
    const double y = w.imag();
    auto gauss = [](double u) { return std::exp(-u * u) / kSqrtPi; };
    auto folded = [&](double s) -> Complex {
        const double fp = gauss(x + s);
        const double fm = gauss(x - s);
        const double denom = s * s + y * y;
        return Complex((fp - fm) * s / denom, y * (fp + fm) / denom);
    };

    constexpr double kCut = 9.0;
    const double s_max = std::abs(x) + kCut;
    std::vector<double> interior;
    for (double s = 1e-3 * y; s < s_max; s *= 10.0) interior.push_back(s);
    for (double d : {-6.0, -3.0, -1.0, 0.0, 1.0, 3.0, 6.0}) interior.push_back(std::abs(x) + d);

    QuadratureConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = 1e-300;
    cfg.max_depth = 60;
    return integrate_interval(folded, 0.0, s_max, cfg, interior);
}

} // namespace plasmaskin::special
