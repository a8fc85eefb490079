#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "plasmaskin/core.hpp"
#include "plasmaskin/impedance.hpp"
#include "plasmaskin/params.hpp"
#include "plasmaskin/quadrature.hpp"

namespace plasmaskin {

struct SweepSpec {
    double gamma_lo = 0.5;
    double gamma_hi = 1.2;
    std::size_t n_points = 141;
    double epsilon = 1e-3;
    double v_c = 1e-3;
    bool include_displacement = true;
    QuadratureConfig cfg;

    void validate() const {
        if (!(gamma_lo >= 0.05)) throw ContractError("sweep gamma range must start at >= 0.05");
        if (!(gamma_lo < gamma_hi) || !std::isfinite(gamma_hi))
            throw ContractError("sweep gamma range must satisfy lo < hi");
        if (n_points < 2) throw ContractError("sweep needs at least 2 points");
        ScenarioParams{gamma_lo, epsilon, v_c}.validate();
        cfg.validate();
    }

    std::vector<double> gammas() const {
        std::vector<double> g(n_points);
        const double span = gamma_hi - gamma_lo;
        const double last = static_cast<double>(n_points - 1);
        for (std::size_t i = 0; i < n_points; ++i)
            g[i] = gamma_lo + span * static_cast<double>(i) / last;
        g.back() = gamma_hi;
        return g;
    }
};

/// One sweep point. gamma/epsilon/v_c are NaN when the point was specified
/// directly through (alpha, Omega, Q).
struct ImpedanceRecord {
    double gamma = std::numeric_limits<double>::quiet_NaN();
    double epsilon = std::numeric_limits<double>::quiet_NaN();
    double v_c = std::numeric_limits<double>::quiet_NaN();
    double alpha = 0.0;
    double Omega = 0.0;
    double Q = 0.0;
    double re_Z0 = 0.0;
    double im_Z0 = 0.0;
    double abs_Z0 = 0.0;
    double arg_Z0 = 0.0; // principal value in (-pi, pi]
    bool converged = false;
    std::size_t n_evals = 0;
    /// Continuous branch of arg Z0 along a sweep; not serialized.
    double arg_unwrapped = 0.0;

    friend bool operator==(const ImpedanceRecord&, const ImpedanceRecord&) = default;
};

inline ImpedanceRecord make_record(const ImpedanceResult& r) {
    ImpedanceRecord rec;
    rec.alpha = r.params.alpha;
    rec.Omega = r.params.Omega;
    rec.Q = r.params.Q;
    rec.re_Z0 = r.Z0.real();
    rec.im_Z0 = r.Z0.imag();
    rec.abs_Z0 = r.abs_Z0;
    rec.arg_Z0 = r.arg_Z0;
    rec.arg_unwrapped = r.arg_Z0;
    rec.converged = r.converged();
    rec.n_evals = r.quadrature.n_evals;
    return rec;
}

inline ImpedanceRecord make_record(const ScenarioParams& s, const ImpedanceResult& r) {
    ImpedanceRecord rec = make_record(r);
    rec.gamma = s.gamma;
    rec.epsilon = s.epsilon;
    rec.v_c = s.v_c;
    return rec;
}

/// Recomputes arg_unwrapped so that adjacent records differ by at most pi.
inline void unwrap_arguments(std::vector<ImpedanceRecord>& records) {
    double offset = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i > 0) {
            const double prev = records[i - 1].arg_unwrapped;
            double candidate = records[i].arg_Z0 + offset;
            while (candidate - prev > kPi) {
                candidate -= 2.0 * kPi;
                offset -= 2.0 * kPi;
            }
            while (candidate - prev < -kPi) {
                candidate += 2.0 * kPi;
                offset += 2.0 * kPi;
            }
        }
        records[i].arg_unwrapped = records[i].arg_Z0 + offset;
    }
}

/// Worker count: PLASMASKIN_THREADS if set and positive, else the number of
/// hardware threads.
inline unsigned worker_count() {
    if (const char* env = std::getenv("PLASMASKIN_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(i) for i in [0, n). Indices are striped across workers so the
/// result of each call depends only on i.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) body(i);
        });
}

inline std::vector<ImpedanceRecord> run_sweep(const SweepSpec& spec, unsigned workers = worker_count()) {
    spec.validate();
    const auto gammas = spec.gammas();
    std::vector<ImpedanceRecord> records(gammas.size());
    std::vector<std::string> failures(gammas.size());
    parallel_for(gammas.size(), workers, [&](std::size_t i) {
        const ScenarioParams s{gammas[i], spec.epsilon, spec.v_c};
        try {
            records[i] = make_record(
                s, evaluate_impedance(derive_dimensionless(s, spec.include_displacement), spec.cfg));
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (const auto& f : failures)
        if (!f.empty()) throw DomainError("sweep point failed: " + f);
    unwrap_arguments(records);
    return records;
}

struct PeakReport {
    double gamma_star = 0.0;
    double peak_value = 0.0;
    /// Largest |delta arg Z0| between adjacent samples with |gamma - gamma*| < window.
    double arg_jump = 0.0;
    /// max - min of the unwrapped argument over the same window.
    double arg_span = 0.0;
    std::size_t index = 0;
};

inline PeakReport find_peak(const std::vector<ImpedanceRecord>& records, double window = 0.05) {
    if (records.size() < 3) throw ContractError("find_peak needs at least 3 records");
    std::size_t imax = 0;
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].abs_Z0 > records[imax].abs_Z0) imax = i;
    if (imax == 0 || imax + 1 == records.size())
        throw ContractError("maximum of |Z0| sits on the sweep boundary; no bracket");
    for (std::size_t i = imax - 1; i <= imax + 1; ++i)
        if (!records[i].converged) throw ContractError("records around the maximum did not converge");

    // Parabola through the three samples (Newton divided differences).
    const double x0 = records[imax - 1].gamma, x1 = records[imax].gamma, x2 = records[imax + 1].gamma;
    const double y0 = records[imax - 1].abs_Z0, y1 = records[imax].abs_Z0, y2 = records[imax + 1].abs_Z0;
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    PeakReport rep;
    rep.index = imax;
    if (a < 0.0) {
        const double b = d01 - a * (x0 + x1);
        rep.gamma_star = std::clamp(-b / (2.0 * a), x0, x2);
        rep.peak_value = y0 + (rep.gamma_star - x0) * (d01 + a * (rep.gamma_star - x1));
    } else {
        rep.gamma_star = x1;
        rep.peak_value = y1;
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (std::abs(records[i].gamma - rep.gamma_star) >= window) continue;
        lo = std::min(lo, records[i].arg_unwrapped);
        hi = std::max(hi, records[i].arg_unwrapped);
        if (i > 0 && std::abs(records[i - 1].gamma - rep.gamma_star) < window)
            rep.arg_jump = std::max(rep.arg_jump,
                                    std::abs(records[i].arg_unwrapped - records[i - 1].arg_unwrapped));
    }
    rep.arg_span = hi >= lo ? hi - lo : 0.0;
    return rep;
}

} // namespace plasmaskin
