#pragma once

// Adaptive complex-valued quadrature.
//
// Every integral in the library funnels through a single global-adaptive
// Gauss-Kronrod (10/21) engine. The half-line form maps t = u/(1-u) onto
// [0, 1); the oscillatory forms integrate one half period per cycle and
// accelerate the partial sums with Wynn's epsilon algorithm.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "plasmaskin/core.hpp"

namespace plasmaskin {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_depth = 40;
    std::size_t max_evals = 10'000'000;

    void validate() const {
        if (!(rel_tol > 0.0)) throw ContractError("rel_tol must be positive");
        if (!(abs_tol > 0.0)) throw ContractError("abs_tol must be positive");
        if (max_depth < 4) throw ContractError("max_depth must be at least 4");
    }

    double tolerance(double magnitude) const noexcept {
        return std::max(abs_tol, rel_tol * magnitude);
    }
};

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double err_estimate = 0.0;
    std::size_t n_evals = 0;
    bool converged = false;
    std::size_t n_panels = 0;
    /// Midpoint (in the caller's variable) of the panel with the largest
    /// remaining error.
    double worst_location = 0.0;
};

/// Interval of t around a sharp dip of |lambda(1/t)|; consumed by the
/// half-line integrator as forced panel boundaries.
struct ZeroBracket {
    double t_lo = 0.0;
    double t_hi = 0.0;
    double t_min = 0.0;
    double min_abs_lambda = 0.0;
};

namespace detail {

inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980316688, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline constexpr std::size_t kEvalsPerPanel = 21;

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
public:
    void add(Complex v) noexcept {
        re_.add(v.real());
        im_.add(v.imag());
    }
    Complex value() const noexcept { return {re_.value(), im_.value()}; }

private:
    struct Real {
        double sum = 0.0;
        double comp = 0.0;
        void add(double v) noexcept {
            const double t = sum + v;
            if (std::abs(sum) >= std::abs(v))
                comp += (sum - t) + v;
            else
                comp += (v - t) + sum;
            sum = t;
        }
        double value() const noexcept { return sum + comp; }
    };
    Real re_;
    Real im_;
};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    Complex value{};
    double err = 0.0;
    int depth = 0;
};

template <class F>
Panel gauss_kronrod_21(F& f, double a, double b, int depth) {
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<Complex, 21> fv;
    fv[0] = Complex(f(center));
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        fv[1 + 2 * j] = Complex(f(center - dx));
        fv[2 + 2 * j] = Complex(f(center + dx));
    }

    Complex kronrod = fv[0] * kKronrodWeights[10];
    Complex gauss{0.0, 0.0};
    double abs_sum = std::abs(fv[0]) * kKronrodWeights[10];
    for (std::size_t j = 0; j < 10; ++j) {
        const Complex pair = fv[1 + 2 * j] + fv[2 + 2 * j];
        kronrod += kKronrodWeights[j] * pair;
        abs_sum += kKronrodWeights[j] * (std::abs(fv[1 + 2 * j]) + std::abs(fv[2 + 2 * j]));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    const Complex mean = 0.5 * kronrod;
    double asc = kKronrodWeights[10] * std::abs(fv[0] - mean);
    for (std::size_t j = 0; j < 10; ++j)
        asc += kKronrodWeights[j] *
               (std::abs(fv[1 + 2 * j] - mean) + std::abs(fv[2 + 2 * j] - mean));

    const double scale = std::abs(half);
    Panel p{a, b, kronrod * half, std::abs((kronrod - gauss) * half), depth};
    const double resasc = asc * scale;
    const double resabs = abs_sum * scale;
    if (resasc != 0.0 && p.err != 0.0)
        p.err = resasc * std::min(1.0, std::pow(200.0 * p.err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        p.err = std::max(50.0 * kEps * resabs, p.err);
    if (!std::isfinite(p.err)) p.err = std::numeric_limits<double>::infinity();
    return p;
}

struct ByError {
    bool operator()(const Panel& lhs, const Panel& rhs) const noexcept {
        return lhs.err < rhs.err;
    }
};

/// Global adaptive integration of f over the sorted breakpoint list
/// (first and last entries are the integration limits).
template <class F>
QuadratureResult adaptive(F&& f, std::vector<double> breaks, const QuadratureConfig& cfg) {
    cfg.validate();
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    QuadratureResult out;
    if (breaks.size() < 2) {
        out.converged = true;
        return out;
    }

    std::vector<Panel> active; // max-heap on err
    std::vector<Panel> settled;
    Complex running_value{0.0, 0.0};
    double running_err = 0.0;

    auto admit = [&](const Panel& p) {
        running_value += p.value;
        running_err += p.err;
        const double width = p.b - p.a;
        const double floor = 8.0 * std::numeric_limits<double>::epsilon() *
                             std::max(std::abs(p.a), std::abs(p.b));
        if (p.depth >= cfg.max_depth || width <= floor)
            settled.push_back(p);
        else {
            active.push_back(p);
            std::push_heap(active.begin(), active.end(), ByError{});
        }
    };

    bool budget_hit = false;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (out.n_evals + kEvalsPerPanel > cfg.max_evals) {
            budget_hit = true;
            break;
        }
        admit(gauss_kronrod_21(f, breaks[i], breaks[i + 1], 0));
        out.n_evals += kEvalsPerPanel;
    }

    auto exact_totals = [&]() {
        CompensatedSum sum;
        double err = 0.0;
        std::vector<const Panel*> all;
        all.reserve(settled.size() + active.size());
        for (const auto& p : settled) all.push_back(&p);
        for (const auto& p : active) all.push_back(&p);
        std::sort(all.begin(), all.end(),
                  [](const Panel* l, const Panel* r) { return l->a < r->a; });
        for (const Panel* p : all) {
            sum.add(p->value);
            err += p->err;
        }
        running_value = sum.value();
        running_err = err;
    };

    bool converged = false;
    while (!budget_hit) {
        if (running_err <= cfg.tolerance(std::abs(running_value))) {
            exact_totals();
            if (running_err <= cfg.tolerance(std::abs(running_value))) {
                converged = true;
                break;
            }
        }
        if (active.empty()) break;
        if (out.n_evals + 2 * kEvalsPerPanel > cfg.max_evals) {
            budget_hit = true;
            break;
        }
        std::pop_heap(active.begin(), active.end(), ByError{});
        const Panel worst = active.back();
        active.pop_back();
        running_value -= worst.value;
        running_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        admit(gauss_kronrod_21(f, worst.a, mid, worst.depth + 1));
        admit(gauss_kronrod_21(f, mid, worst.b, worst.depth + 1));
        out.n_evals += 2 * kEvalsPerPanel;
    }

    exact_totals();
    out.value = running_value;
    out.err_estimate = running_err;
    out.converged = converged && running_err <= cfg.tolerance(std::abs(running_value));
    out.n_panels = settled.size() + active.size();

    double worst_err = -1.0;
    for (const auto& p : settled)
        if (p.err > worst_err) {
            worst_err = p.err;
            out.worst_location = 0.5 * (p.a + p.b);
        }
    if (!active.empty() && active.front().err > worst_err)
        out.worst_location = 0.5 * (active.front().a + active.front().b);
    return out;
}

inline double half_line_to_unit(double t) noexcept { return t / (1.0 + t); }
inline double unit_to_half_line(double u) noexcept { return u / (1.0 - u); }

template <class F>
QuadratureResult half_line(F& f, const QuadratureConfig& cfg, std::span<const double> t_breaks) {
    std::vector<double> breaks{0.0, 1.0};
    for (int e = -8; e <= 8; ++e) breaks.push_back(half_line_to_unit(std::pow(10.0, e)));
    for (double t : t_breaks)
        if (t > 0.0 && std::isfinite(t)) breaks.push_back(half_line_to_unit(t));

    auto mapped = [&f](double u) -> Complex {
        const double one_minus = 1.0 - u;
        return Complex(f(u / one_minus)) / (one_minus * one_minus);
    };
    QuadratureResult r = adaptive(mapped, std::move(breaks), cfg);
    r.worst_location = unit_to_half_line(r.worst_location);
    return r;
}

/// Wynn epsilon extrapolation of a sequence of partial sums.
inline Complex wynn_epsilon(std::span<const Complex> sums) {
    const std::size_t n = sums.size();
    if (n == 0) return {};
    if (n < 3) return sums.back();
    // prev = column k-1, cur = column k; column k has n-k entries.
    std::vector<Complex> prev(n + 1, Complex{});
    std::vector<Complex> cur(sums.begin(), sums.end());
    Complex best = sums.back();
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<Complex> next(n - k);
        for (std::size_t i = 0; i + k < n; ++i) {
            const Complex diff = cur[i + 1] - cur[i];
            // Equal neighbours in an even column mean the sequence has settled.
            if (std::abs(diff) == 0.0) return (k - 1) % 2 == 0 ? cur[i + 1] : best;
            next[i] = prev[i + 1] + 1.0 / diff;
            if (!std::isfinite(next[i].real()) || !std::isfinite(next[i].imag())) return best;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0) best = cur.back();
    }
    return best;
}

} // namespace detail

/// Integral of f over [a, b] with optional interior breakpoints.
template <class F>
QuadratureResult integrate_interval(F&& f, double a, double b, const QuadratureConfig& cfg,
                                    std::span<const double> interior = {}) {
    if (!(a <= b)) throw ContractError("integrate_interval requires a <= b");
    std::vector<double> breaks{a, b};
    for (double x : interior)
        if (x > a && x < b) breaks.push_back(x);
    return detail::adaptive(f, std::move(breaks), cfg);
}

/// Integral of f over t in (0, inf). f must decay at least like 1/t^2.
/// Every bracket contributes t_lo, t_min and t_hi as forced panel
/// boundaries.
template <class F>
QuadratureResult integrate_half_line(F&& f, const QuadratureConfig& cfg,
                                     std::span<const ZeroBracket> hot_brackets = {}) {
    std::vector<double> t_breaks;
    for (const auto& b : hot_brackets) {
        t_breaks.push_back(b.t_lo);
        t_breaks.push_back(b.t_hi);
        if (b.t_min > b.t_lo && b.t_min < b.t_hi) t_breaks.push_back(b.t_min);
    }
    return detail::half_line(f, cfg, t_breaks);
}

struct OscillatoryOptions {
    /// Extrapolation is not trusted before the cycles reach this k.
    double min_extent = 0.0;
    /// Interior abscissae in k that must become panel boundaries.
    std::vector<double> hot_points;
    std::size_t max_cycles = 2'000'000;
};

namespace detail {

template <class G>
QuadratureResult oscillatory(G& g, double x, bool sine, const QuadratureConfig& cfg,
                             const OscillatoryOptions& opt) {
    cfg.validate();
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError("oscillatory transform requires finite x >= 0");
    if (x == 0.0) {
        if (sine) {
            QuadratureResult zero;
            zero.converged = true;
            return zero;
        }
        return half_line(g, cfg, opt.hot_points);
    }

    auto integrand = [&g, x, sine](double k) -> Complex {
        return Complex(g(k)) * (sine ? std::sin(k * x) : std::cos(k * x));
    };

    const double period = kPi / x;
    std::vector<double> hot = opt.hot_points;
    std::sort(hot.begin(), hot.end());

    constexpr std::size_t kWindow = 48;
    std::vector<Complex> partial;
    partial.reserve(kWindow);
    QuadratureResult out;
    CompensatedSum sum;
    double cycle_err = 0.0;
    double scale = 0.0;
    Complex prev_term{}, prev_prev_term{};
    Complex last_estimate{}, prev_estimate{};
    int stable = 0;
    std::size_t tail_cycles = 0;
    bool converged = false;

    double lo = 0.0;
    double hi = sine ? period : 0.5 * period;
    for (std::size_t cycle = 0; cycle < opt.max_cycles; ++cycle) {
        if (out.n_evals + kEvalsPerPanel > cfg.max_evals) break;

        QuadratureConfig local = cfg;
        local.abs_tol = std::max(cfg.abs_tol, 0.05 * cfg.rel_tol * scale);
        local.max_evals = cfg.max_evals - out.n_evals;
        std::vector<double> breaks{lo, hi};
        for (auto it = std::upper_bound(hot.begin(), hot.end(), lo);
             it != hot.end() && *it < hi; ++it)
            breaks.push_back(*it);
        const QuadratureResult piece = adaptive(integrand, std::move(breaks), local);
        out.n_evals += piece.n_evals;
        out.n_panels += piece.n_panels;
        cycle_err += piece.err_estimate;
        if (!piece.converged) {
            out.worst_location = piece.worst_location;
            break;
        }

        const Complex term = piece.value;
        sum.add(term);
        const Complex s = sum.value();
        scale = std::max(scale, std::abs(s));
        if (partial.size() == kWindow) partial.erase(partial.begin());
        partial.push_back(s);

        const bool past_extent = hi >= opt.min_extent && (hot.empty() || hi > hot.back());
        const Complex previous = prev_term;
        const bool alternating = cycle >= 2 &&
                                 (term * std::conj(prev_term)).real() < 0.0 &&
                                 (prev_term * std::conj(prev_prev_term)).real() < 0.0;
        prev_prev_term = prev_term;
        prev_term = term;

        if (past_extent) {
            const double tol = cfg.tolerance(std::abs(s));
            // Remaining terms negligible without any acceleration.
            if (cycle >= 2 && std::abs(term) <= 0.1 * tol && std::abs(previous) <= tol) {
                out.value = s;
                out.err_estimate = cycle_err + std::abs(term);
                converged = true;
                break;
            }
            if (alternating) ++tail_cycles;
            if (tail_cycles >= 4 && partial.size() >= 5) {
                const Complex estimate = wynn_epsilon(partial);
                const double tol_e = cfg.tolerance(std::abs(estimate));
                const double delta = std::abs(estimate - last_estimate);
                stable = (delta <= 0.5 * tol_e && tail_cycles >= 5) ? stable + 1 : 0;
                prev_estimate = last_estimate;
                last_estimate = estimate;
                if (stable >= 2) {
                    out.value = estimate;
                    out.err_estimate = cycle_err + delta + std::abs(estimate - prev_estimate);
                    converged = out.err_estimate <= tol_e;
                    if (converged) break;
                }
            }
        }
        lo = hi;
        hi += period;
    }

    if (!converged) {
        out.value = partial.empty() ? Complex{} : wynn_epsilon(partial);
        out.err_estimate = std::max(out.err_estimate, cycle_err +
                                    std::abs(last_estimate - prev_estimate));
        if (out.worst_location == 0.0) out.worst_location = lo;
    }
    out.converged = converged;
    return out;
}

} // namespace detail

/// Integral of g(k) cos(k x) over k in (0, inf). Panels never exceed half
/// an oscillation period.
template <class G>
QuadratureResult integrate_oscillatory_cosine(G&& g, double x, const QuadratureConfig& cfg,
                                              const OscillatoryOptions& opt = {}) {
    return detail::oscillatory(g, x, false, cfg, opt);
}

/// Integral of g(k) sin(k x) over k in (0, inf).
template <class G>
QuadratureResult integrate_oscillatory_sine(G&& g, double x, const QuadratureConfig& cfg,
                                            const OscillatoryOptions& opt = {}) {
    return detail::oscillatory(g, x, true, cfg, opt);
}

} // namespace plasmaskin
