#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "plasmaskin/core.hpp"
#include "plasmaskin/dispersion.hpp"
#include "plasmaskin/impedance.hpp"
#include "plasmaskin/quadrature.hpp"

namespace plasmaskin {

/// E(k) = -2 e_s' / (k^2 lambda(k)).
inline Complex spectral_field(double k, const DispersionKernel& kernel, double e_s_prime = 1.0) {
    if (k == 0.0 || !std::isfinite(k)) throw DomainError("spectral_field requires finite k != 0");
    return -2.0 * e_s_prime / kernel.k2_lambda(k);
}

/// Phi(k, mu) = E(k) / (i k mu + z0).
inline Complex spectral_distribution(double k, double mu, const DispersionKernel& kernel,
                                     double e_s_prime = 1.0) {
    return spectral_field(k, kernel, e_s_prime) /
           (Complex(0.0, k * mu) + kernel.params().z0);
}

struct FieldProfile {
    std::vector<double> xs;
    std::vector<Complex> e_vals;
    std::vector<QuadratureResult> meta;

    bool all_converged() const {
        return std::all_of(meta.begin(), meta.end(),
                           [](const QuadratureResult& r) { return r.converged; });
    }
};

struct DistributionProfile {
    double x = 0.0;
    std::vector<double> mus;
    std::vector<Complex> h_vals;
    std::vector<QuadratureResult> meta;

    bool all_converged() const {
        return std::all_of(meta.begin(), meta.end(),
                           [](const QuadratureResult& r) { return r.converged; });
    }
};

/// Log-spaced depths in mean free paths, [1e-2, 1e2], 64 points.
inline std::vector<double> default_depth_grid() {
    std::vector<double> xs(64);
    for (std::size_t i = 0; i < xs.size(); ++i)
        xs[i] = std::pow(10.0, -2.0 + 4.0 * static_cast<double>(i) / 63.0);
    return xs;
}

/// k-space layout of 1/(k^2 lambda(k)) shared by all depth evaluations:
/// resonance breakpoints and the wavenumber past which lambda ~ 1.
class SpectralLayout {
public:
    explicit SpectralLayout(const DispersionKernel& kernel, const DecrementScan& scan = {})
        : kernel_(kernel) {
        brackets_ = scan_near_zeros(kernel, scan.range, scan.n_samples, scan.threshold);
        for (const auto& b : brackets_) {
            hot_k_.push_back(1.0 / b.t_hi);
            hot_k_.push_back(1.0 / b.t_min);
            hot_k_.push_back(1.0 / b.t_lo);
        }
        std::sort(hot_k_.begin(), hot_k_.end());
        // Largest sampled k with |lambda(k) - 1| > 1e-2.
        for (int i = 0; i <= 720; ++i) {
            const double k = std::pow(10.0, -6.0 + 18.0 * i / 720.0);
            if (std::abs(kernel.lambda_k(k) - 1.0) > 1e-2) tail_start_ = 2.0 * k;
        }
    }

    const DispersionKernel& kernel() const noexcept { return kernel_; }
    const std::vector<ZeroBracket>& brackets() const noexcept { return brackets_; }
    const std::vector<double>& hot_k() const noexcept { return hot_k_; }
    double tail_start() const noexcept { return tail_start_; }

private:
    DispersionKernel kernel_;
    std::vector<ZeroBracket> brackets_;
    std::vector<double> hot_k_;
    double tail_start_ = 0.0;
};

/// e(x) = -(2 e_s'/pi) * integral over k in (0, inf) of cos(kx)/(k^2 lambda(k)).
/// The returned QuadratureResult carries the field value itself.
inline QuadratureResult field_value(double x, const SpectralLayout& layout,
                                    const QuadratureConfig& cfg = {}, double e_s_prime = 1.0) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("field depth must be finite and >= 0");
    const auto& kernel = layout.kernel();
    auto g = [&kernel](double k) { return 1.0 / kernel.k2_lambda(k); };
    OscillatoryOptions opt;
    opt.min_extent = layout.tail_start();
    opt.hot_points = layout.hot_k();
    QuadratureResult r = integrate_oscillatory_cosine(g, x, cfg, opt);
    const double scale = -2.0 * e_s_prime / kPi;
    r.value *= scale;
    r.err_estimate *= std::abs(scale);
    return r;
}

inline FieldProfile field_profile(std::span<const double> xs, const DispersionKernel& kernel,
                                  const QuadratureConfig& cfg = {}, double e_s_prime = 1.0) {
    for (double x : xs)
        if (!(x >= 0.0) || !std::isfinite(x))
            throw DomainError("field_profile depths must be finite and non-negative");
    const SpectralLayout layout(kernel);
    FieldProfile out;
    out.xs.assign(xs.begin(), xs.end());
    for (double x : xs) {
        out.meta.push_back(field_value(x, layout, cfg, e_s_prime));
        out.e_vals.push_back(out.meta.back().value);
    }
    return out;
}

/// h(x, mu) from its Fourier representation, valid for any real x; the
/// physical half-space is x >= 0 and x < 0 gives the symmetric
/// continuation h(-x, -mu).
///
/// h = -(2 e_s'/pi) [ int G z0 cos(kx)/(z0^2 + k^2 mu^2) + int G k mu sin(kx)/(z0^2 + k^2 mu^2) ]
/// with G = 1/(k^2 lambda(k)).
inline QuadratureResult distribution_value(double x, double mu, const SpectralLayout& layout,
                                           const QuadratureConfig& cfg = {},
                                           double e_s_prime = 1.0) {
    if (!std::isfinite(x) || !std::isfinite(mu)) throw DomainError("non-finite x or mu");
    const auto& kernel = layout.kernel();
    const Complex z0 = kernel.params().z0;
    const Complex z0sq = z0 * z0;
    auto even = [&](double k) {
        return z0 / (kernel.k2_lambda(k) * (z0sq + k * k * mu * mu));
    };
    auto odd = [&](double k) {
        return k * mu / (kernel.k2_lambda(k) * (z0sq + k * k * mu * mu));
    };

    OscillatoryOptions opt;
    opt.min_extent = layout.tail_start();
    opt.hot_points = layout.hot_k();
    const double omega = kernel.params().Omega;
    if (mu != 0.0 && omega > 0.0) {
        const double k_res = omega / std::abs(mu);
        opt.hot_points.push_back(k_res);
        opt.min_extent = std::max(opt.min_extent, 2.0 * k_res);
    }

    const double ax = std::abs(x);
    QuadratureResult c = integrate_oscillatory_cosine(even, ax, cfg, opt);
    QuadratureResult s = integrate_oscillatory_sine(odd, ax, cfg, opt);
    const double sign = x < 0.0 ? -1.0 : 1.0;
    const double scale = -2.0 * e_s_prime / kPi;

    QuadratureResult out;
    out.value = scale * (c.value + sign * s.value);
    out.err_estimate = std::abs(scale) * (c.err_estimate + s.err_estimate);
    out.n_evals = c.n_evals + s.n_evals;
    out.n_panels = c.n_panels + s.n_panels;
    out.converged = c.converged && s.converged;
    out.worst_location = c.converged ? s.worst_location : c.worst_location;
    return out;
}

inline DistributionProfile distribution_profile(double x, std::span<const double> mus,
                                                const DispersionKernel& kernel,
                                                const QuadratureConfig& cfg = {},
                                                double e_s_prime = 1.0) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("distribution depth must be >= 0");
    const SpectralLayout layout(kernel);
    DistributionProfile out;
    out.x = x;
    out.mus.assign(mus.begin(), mus.end());
    for (double mu : mus) {
        out.meta.push_back(distribution_value(x, mu, layout, cfg, e_s_prime));
        out.h_vals.push_back(out.meta.back().value);
    }
    return out;
}

} // namespace plasmaskin
