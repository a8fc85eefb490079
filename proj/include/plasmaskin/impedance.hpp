#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "plasmaskin/core.hpp"
#include "plasmaskin/dispersion.hpp"
#include "plasmaskin/params.hpp"
#include "plasmaskin/quadrature.hpp"

namespace plasmaskin {

struct ImpedanceResult {
    DerivedParams params;
    Complex Lambda{};
    Complex Z0{};
    double abs_Z0 = 0.0;
    double arg_Z0 = 0.0;
    QuadratureResult quadrature;
    std::vector<ZeroBracket> brackets;

    bool converged() const noexcept { return quadrature.converged; }
};

/// Resonance diagnostics used to seed the decrement integral.
struct DecrementScan {
    ScanRange range{1e-8, 1e8};
    std::size_t n_samples = 2048;
    double threshold = 1e-2;
};

/// (2/pi) * integral over t in (0, inf) of dt / lambda(1/t), returned with
/// the raw quadrature metadata (value already scaled by 2/pi).
inline QuadratureResult decrement_integral(const DispersionKernel& kernel,
                                           const QuadratureConfig& cfg,
                                           std::span<const ZeroBracket> brackets) {
    auto integrand = [&kernel](double t) { return 1.0 / kernel.lambda_inv_t(t); };
    QuadratureResult r = integrate_half_line(integrand, cfg, brackets);
    r.value *= 2.0 / kPi;
    r.err_estimate *= 2.0 / kPi;
    return r;
}

/// Dimensionless decrement Lambda = -e(0)/e_s'. Throws ConvergenceError
/// when the integral does not reach the configured tolerance.
inline Complex decrement(const DispersionKernel& kernel, const QuadratureConfig& cfg = {},
                         const DecrementScan& scan = {}) {
    const auto brackets = scan_near_zeros(kernel, scan.range, scan.n_samples, scan.threshold);
    const QuadratureResult r = decrement_integral(kernel, cfg, brackets);
    if (!r.converged)
        throw ConvergenceError("decrement integral did not converge (err " +
                                   std::to_string(r.err_estimate) + ", worst panel near t = " +
                                   std::to_string(r.worst_location) + ")",
                               r.worst_location);
    return r.value;
}

/// Z0 = -i sqrt(alpha) Lambda without raising on non-convergence; the
/// flag lives in result.quadrature.
inline ImpedanceResult evaluate_impedance(const DerivedParams& d, const QuadratureConfig& cfg = {},
                                          const DecrementScan& scan = {}) {
    if (!(d.alpha > 0.0)) throw DomainError("impedance requires alpha > 0");
    const DispersionKernel kernel(d);
    ImpedanceResult out;
    out.params = d;
    out.brackets = scan_near_zeros(kernel, scan.range, scan.n_samples, scan.threshold);
    out.quadrature = decrement_integral(kernel, cfg, out.brackets);
    out.Lambda = out.quadrature.value;
    out.Z0 = Complex(0.0, -std::sqrt(d.alpha)) * out.Lambda;
    out.abs_Z0 = std::abs(out.Z0);
    out.arg_Z0 = std::arg(out.Z0);
    if (out.arg_Z0 == -kPi) out.arg_Z0 = kPi;
    return out;
}

inline ImpedanceResult impedance_dimensionless(const DerivedParams& d,
                                               const QuadratureConfig& cfg = {}) {
    ImpedanceResult r = evaluate_impedance(d, cfg);
    if (!r.converged())
        throw ConvergenceError("impedance did not converge (worst panel near t = " +
                                   std::to_string(r.quadrature.worst_location) + ")",
                               r.quadrature.worst_location);
    return r;
}

inline ImpedanceResult impedance_dimensionless(const ScenarioParams& s,
                                               bool include_displacement = true,
                                               const QuadratureConfig& cfg = {}) {
    return impedance_dimensionless(derive_dimensionless(s, include_displacement), cfg);
}

struct PhysicalImpedance {
    PhysicalScaling scaling;
    ImpedanceResult dimensionless;
    Complex Z{};        // R * Z0
    Complex Z_direct{}; // -i (4 pi omega l / c^2) Lambda
};

inline PhysicalImpedance impedance_physical(const PhysicalInputs& p, const QuadratureConfig& cfg = {},
                                            bool include_displacement = true) {
    PhysicalImpedance out;
    out.scaling = from_physical(p);
    out.dimensionless = impedance_dimensionless(out.scaling.scenario, include_displacement, cfg);
    out.Z = out.scaling.R * out.dimensionless.Z0;
    const double c = cgs::kSpeedOfLight;
    out.Z_direct = Complex(0.0, -4.0 * kPi * p.omega * out.scaling.mean_free_path / (c * c)) *
                   out.dimensionless.Lambda;
    return out;
}

/// Classical normal skin effect, Z0 = (1 - i)/sqrt(2).
inline Complex normal_limit() {
    const double r = 1.0 / std::sqrt(2.0);
    return {r, -r};
}

/// Anomalous low-frequency limit in the usual closed form,
/// (2 alpha^(1/6) / (3 sqrt 3)) (1 - i sqrt 3).
inline Complex anomalous_limit(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("anomalous_limit requires alpha > 0");
    const double s3 = std::sqrt(3.0);
    return 2.0 * std::cbrt(std::sqrt(alpha)) / (3.0 * s3) * Complex(1.0, -s3);
}

/// Leading-order asymptote of Z0 for alpha -> inf with t0(it) ~ i sqrt(pi):
/// the closed form above times pi^(-1/6).
inline Complex anomalous_limit_asymptotic(double alpha) {
    return std::pow(kPi, -1.0 / 6.0) * anomalous_limit(alpha);
}

} // namespace plasmaskin
