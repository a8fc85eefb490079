#pragma once

#include <cmath>
#include <string>

#include "plasmaskin/core.hpp"

namespace plasmaskin {

/// Resonance-region inputs: gamma = omega/omega_p, epsilon = nu/omega_p,
/// v_c = v_T/c.
struct ScenarioParams {
    double gamma = 1.0;
    double epsilon = 1e-3;
    double v_c = 1e-3;

    void validate() const {
        if (!(gamma > 0.0) || !std::isfinite(gamma))
            throw DomainError("gamma must be positive, got " + std::to_string(gamma));
        if (!(epsilon > 0.0) || !std::isfinite(epsilon))
            throw DomainError("epsilon must be positive, got " + std::to_string(epsilon));
        if (!(v_c > 0.0) || !(v_c < 1.0))
            throw DomainError("v_c must lie in (0, 1), got " + std::to_string(v_c));
    }
};

/// Solver-facing dimensionless set. z0 = 1 - i*Omega; Q is zero whenever
/// the displacement current is switched off.
struct DerivedParams {
    double alpha = 0.0;
    double Omega = 0.0;
    double Q = 0.0;
    Complex z0{1.0, 0.0};
    bool include_displacement = true;

    /// Q as seen by the kernels.
    double effective_q() const noexcept { return include_displacement ? Q : 0.0; }
};

/// Builds a DerivedParams from the (alpha, Omega, Q) triple directly.
/// alpha = 0 is accepted (the kernel degenerates to lambda == 1 - Q^2 t^2).
inline DerivedParams make_derived(double alpha, double Omega, double Q,
                                  bool include_displacement = true) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw DomainError("alpha must be non-negative, got " + std::to_string(alpha));
    if (!(Omega >= 0.0) || !std::isfinite(Omega))
        throw DomainError("Omega must be non-negative, got " + std::to_string(Omega));
    if (!(Q >= 0.0) || !std::isfinite(Q))
        throw DomainError("Q must be non-negative, got " + std::to_string(Q));
    DerivedParams d;
    d.alpha = alpha;
    d.Omega = Omega;
    d.include_displacement = include_displacement;
    d.Q = include_displacement ? Q : 0.0;
    d.z0 = Complex(1.0, -Omega);
    return d;
}

inline DerivedParams derive_dimensionless(const ScenarioParams& s,
                                          bool include_displacement = true) {
    s.validate();
    const double eps3 = s.epsilon * s.epsilon * s.epsilon;
    return make_derived(s.gamma * s.v_c * s.v_c / eps3, s.gamma / s.epsilon,
                        s.gamma * s.v_c / s.epsilon, include_displacement);
}

/// Dimensional inputs in Gaussian-CGS units.
struct PhysicalInputs {
    double n = 0.0;     // electron density, cm^-3
    double T = 0.0;     // temperature, K
    double nu = 0.0;    // collision frequency, s^-1
    double omega = 0.0; // field angular frequency, s^-1

    void validate() const {
        if (!(n > 0.0) || !(T > 0.0) || !(nu > 0.0) || !(omega > 0.0))
            throw DomainError("physical inputs n, T, nu, omega must all be positive");
    }
};

namespace cgs {
inline constexpr double kElectronCharge = 4.803204713e-10;  // statC
inline constexpr double kElectronMass = 9.109383702e-28;    // g
inline constexpr double kBoltzmann = 1.380649000e-16;       // erg/K
inline constexpr double kSpeedOfLight = 2.997924580e10;     // cm/s
} // namespace cgs

struct PhysicalScaling {
    ScenarioParams scenario;
    double R = 0.0;           // impedance scale sqrt(4 pi omega / (c^2 sigma0))
    double sigma0 = 0.0;      // static conductivity e^2 n / (m nu), s^-1
    double omega_p = 0.0;     // sqrt(4 pi e^2 n / m)
    double v_T = 0.0;         // sqrt(2 k_B T / m)
    double mean_free_path = 0.0;
};

inline PhysicalScaling from_physical(const PhysicalInputs& p) {
    p.validate();
    using namespace cgs;
    const double e2 = kElectronCharge * kElectronCharge;
    PhysicalScaling out;
    out.sigma0 = e2 * p.n / (kElectronMass * p.nu);
    out.omega_p = std::sqrt(4.0 * kPi * e2 * p.n / kElectronMass);
    out.v_T = std::sqrt(2.0 * kBoltzmann * p.T / kElectronMass);
    out.mean_free_path = out.v_T / p.nu;
    out.scenario.gamma = p.omega / out.omega_p;
    out.scenario.epsilon = p.nu / out.omega_p;
    out.scenario.v_c = out.v_T / kSpeedOfLight;
    out.R = std::sqrt(4.0 * kPi * p.omega /
                      (kSpeedOfLight * kSpeedOfLight * out.sigma0));
    out.scenario.validate();
    return out;
}

} // namespace plasmaskin
