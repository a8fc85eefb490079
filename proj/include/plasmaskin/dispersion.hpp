#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "plasmaskin/core.hpp"
#include "plasmaskin/params.hpp"
#include "plasmaskin/quadrature.hpp"
#include "plasmaskin/special.hpp"

namespace plasmaskin {

/// Kinetic dispersion kernel lambda(k) of the half-space skin problem.
/// Evaluation always goes through the substituted form lambda(1/t).
class DispersionKernel {
public:
    explicit DispersionKernel(const DerivedParams& params) : params_(params) {}

    const DerivedParams& params() const noexcept { return params_; }

    /// lambda(1/t) = 1 - Q^2 t^2 - alpha t^3 t0(i z0 t).
    Complex lambda_inv_t(double t) const {
        if (!(t > 0.0)) throw DomainError("lambda_inv_t requires t > 0");
        const double q = params_.effective_q();
        Complex value(1.0 - q * q * t * t, 0.0);
        if (params_.alpha != 0.0) {
            const Complex w = Complex(0.0, 1.0) * params_.z0 * t;
            value -= params_.alpha * t * t * t * special::t0(w);
        }
        return value;
    }

    /// lambda(k), even in k.
    Complex lambda_k(double k) const {
        if (k == 0.0 || !std::isfinite(k)) throw DomainError("lambda_k requires finite k != 0");
        return lambda_inv_t(1.0 / std::abs(k));
    }

    /// k^2 lambda(k), computed without forming lambda when k is tiny.
    Complex k2_lambda(double k) const {
        const double t = 1.0 / std::abs(k);
        return lambda_inv_t(t) / (t * t);
    }

private:
    DerivedParams params_;
};

struct ScanRange {
    double t_lo = 1e-8;
    double t_hi = 1e8;
};

namespace detail {

// Golden-section minimisation of |lambda(1/t)| over log t in [a, b].
inline double golden_min_log_t(const DispersionKernel& kernel, double a, double b) {
    constexpr double kInvPhi = 0.6180339887498948482;
    auto f = [&](double s) { return std::abs(kernel.lambda_inv_t(std::exp(s))); };
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return std::exp(0.5 * (a + b));
}

} // namespace detail

/// Brackets around local minima of |lambda(1/t)| that dip below threshold.
/// Log-spaced sampling locates candidate minima, golden-section search
/// refines them; a bracket spans the two neighbouring samples.
inline std::vector<ZeroBracket> scan_near_zeros(const DispersionKernel& kernel, ScanRange range,
                                                std::size_t n_samples, double threshold) {
    if (!(range.t_lo > 0.0) || !(range.t_hi > range.t_lo) || !std::isfinite(range.t_hi))
        throw ContractError("scan range must satisfy 0 < t_lo < t_hi < inf");
    if (n_samples < 16) throw ContractError("scan_near_zeros needs at least 16 samples");

    std::vector<ZeroBracket> out;
    if (!(threshold > 0.0)) return out;

    const double log_lo = std::log(range.t_lo);
    const double step = (std::log(range.t_hi) - log_lo) / static_cast<double>(n_samples - 1);
    std::vector<double> mags(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i)
        mags[i] = std::abs(kernel.lambda_inv_t(std::exp(log_lo + step * static_cast<double>(i))));

    for (std::size_t i = 1; i + 1 < n_samples; ++i) {
        if (!(mags[i] <= mags[i - 1] && mags[i] < mags[i + 1])) continue;
        const double a = log_lo + step * static_cast<double>(i - 1);
        const double b = log_lo + step * static_cast<double>(i + 1);
        const double t_star = detail::golden_min_log_t(kernel, a, b);
        const double depth = std::abs(kernel.lambda_inv_t(t_star));
        if (depth < threshold)
            out.push_back({std::exp(a), std::exp(b), t_star, depth});
    }
    return out;
}

} // namespace plasmaskin
