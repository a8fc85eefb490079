// plasmaskin: command-line front end for the skin-effect library.
//
// Exit codes: 0 success, 1 usage error, 2 numerical non-convergence,
// 3 validation failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plasmaskin/plasmaskin.hpp"

namespace ps = plasmaskin;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitValidation = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Either the (gamma, epsilon, v_c) triple or the (alpha, Omega, Q) triple.
struct ParamFlags {
    std::optional<double> gamma, epsilon, vc;
    std::optional<double> alpha, omega_tau, q;
    bool no_displacement = false;
    double rel_tol = 1e-8;
    std::size_t max_evals = 10'000'000;

    void attach(CLI::App* cmd) {
        cmd->add_option("--gamma", gamma, "omega / omega_p")->check(CLI::PositiveNumber);
        cmd->add_option("--epsilon", epsilon, "nu / omega_p")->check(CLI::PositiveNumber);
        cmd->add_option("--vc", vc, "v_T / c")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--alpha", alpha, "anomaly parameter")->check(CLI::PositiveNumber);
        cmd->add_option("--omega-tau", omega_tau, "Omega = omega tau")->check(CLI::NonNegativeNumber);
        cmd->add_option("--q", q, "Q = omega l / c")->check(CLI::NonNegativeNumber);
        cmd->add_flag("--no-displacement", no_displacement, "drop the displacement current (Q = 0)");
        cmd->add_option("--rel-tol", rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--max-evals", max_evals, "quadrature evaluation budget per integral");
    }

    bool scenario_mode() const { return gamma || epsilon || vc; }

    ps::DerivedParams derived() const {
        const bool direct = alpha || omega_tau || q;
        if (scenario_mode() && direct)
            throw UsageError("--gamma/--epsilon/--vc cannot be combined with --alpha/--omega-tau/--q");
        if (scenario_mode()) {
            if (!gamma) throw UsageError("--gamma is required with --epsilon/--vc");
            if (!epsilon) throw UsageError("--epsilon is required with --gamma/--vc");
            if (!vc) throw UsageError("--vc is required with --gamma/--epsilon");
            return ps::derive_dimensionless(scenario(), !no_displacement);
        }
        if (!alpha) throw UsageError("--alpha is required (or use --gamma --epsilon --vc)");
        if (!omega_tau) throw UsageError("--omega-tau is required with --alpha");
        if (!q) throw UsageError("--q is required with --alpha");
        return ps::make_derived(*alpha, *omega_tau, *q, !no_displacement);
    }

    ps::ScenarioParams scenario() const { return {*gamma, *epsilon, *vc}; }

    ps::QuadratureConfig config() const {
        ps::QuadratureConfig cfg;
        cfg.rel_tol = rel_tol;
        cfg.max_evals = max_evals;
        return cfg;
    }
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_impedance(const ParamFlags& flags) {
    const auto d = flags.derived();
    const auto result = ps::evaluate_impedance(d, flags.config());
    ps::ImpedanceRecord rec = ps::make_record(result);
    if (flags.scenario_mode()) rec = ps::make_record(flags.scenario(), result);
    json j = ps::to_json(rec);
    j["re_Lambda"] = result.Lambda.real();
    j["im_Lambda"] = result.Lambda.imag();
    j["err_estimate"] = result.quadrature.err_estimate;
    std::cout << j.dump(2) << '\n';
    if (!result.converged()) {
        std::cerr << "impedance: quadrature did not converge (worst panel near t = "
                  << result.quadrature.worst_location << ")\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}

struct SweepFlags {
    std::vector<double> gamma_range{0.5, 1.2};
    std::size_t points = 141;
    double epsilon = 1e-3;
    double vc = 1e-3;
    bool no_displacement = false;
    double rel_tol = 1e-8;
    std::vector<std::string> out;
    std::string svg;
    std::string quantity = "abs";
    bool log_y = false;
};

void write_records(const std::vector<ps::ImpedanceRecord>& recs, const std::vector<std::string>& out) {
    if (out.empty()) return;
    std::string format;
    std::filesystem::path path;
    if (out.size() == 2) {
        format = out[0];
        path = out[1];
    } else {
        path = out[0];
        format = path.extension() == ".json" ? "json" : "csv";
    }
    if (format == "csv")
        ps::write_csv(recs, path);
    else if (format == "json")
        ps::write_json(recs, path);
    else
        throw UsageError("--out format must be csv or json, got '" + format + "'");
}

int cmd_sweep(const SweepFlags& f) {
    ps::SweepSpec spec;
    if (f.gamma_range.size() != 2) throw UsageError("--gamma-range takes exactly two values");
    spec.gamma_lo = f.gamma_range[0];
    spec.gamma_hi = f.gamma_range[1];
    spec.n_points = f.points;
    spec.epsilon = f.epsilon;
    spec.v_c = f.vc;
    spec.include_displacement = !f.no_displacement;
    spec.cfg.rel_tol = f.rel_tol;
    const auto quantity = ps::parse_quantity(f.quantity);

    const auto recs = ps::run_sweep(spec);
    write_records(recs, f.out);
    if (!f.svg.empty()) {
        ps::SvgOptions opt;
        opt.title = f.quantity == "abs" ? "|Z0|" : (f.quantity == "re_neg" ? "Re(-Z0)" : "arg Z0");
        ps::render_svg(recs, quantity, f.log_y, f.svg, opt);
    }

    std::size_t converged = 0;
    for (const auto& r : recs) converged += r.converged ? 1 : 0;
    json summary;
    summary["points"] = recs.size();
    summary["converged_points"] = converged;
    try {
        const auto peak = ps::find_peak(recs);
        summary["peak"] = {{"gamma_star", peak.gamma_star},
                           {"peak_value", peak.peak_value},
                           {"grid_gamma", recs[peak.index].gamma},
                           {"grid_abs_Z0", recs[peak.index].abs_Z0},
                           {"arg_jump", peak.arg_jump},
                           {"arg_span", peak.arg_span}};
    } catch (const ps::ContractError& e) {
        summary["peak"] = nullptr;
        summary["peak_error"] = e.what();
    }
    std::cout << summary.dump(2) << '\n';
    return converged == recs.size() ? kExitOk : kExitNoConvergence;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ps::IoError("cannot open '" + path + "' for writing");
    return out;
}

int cmd_field(const ParamFlags& flags, std::vector<double> xs, const std::string& out_path) {
    const ps::DispersionKernel kernel(flags.derived());
    if (xs.empty()) xs = ps::default_depth_grid();
    const auto profile = ps::field_profile(xs, kernel, flags.config());
    auto out = open_out(out_path);
    out << "x,re_e,im_e\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << fmt17(xs[i]) << ',' << fmt17(profile.e_vals[i].real()) << ','
            << fmt17(profile.e_vals[i].imag()) << '\n';
    if (!out) throw ps::IoError("write failed for '" + out_path + "'");
    std::size_t ok = 0;
    for (const auto& m : profile.meta) ok += m.converged ? 1 : 0;
    std::cout << json{{"points", xs.size()}, {"converged_points", ok}}.dump() << '\n';
    return profile.all_converged() ? kExitOk : kExitNoConvergence;
}

int cmd_distribution(const ParamFlags& flags, double x, const std::vector<double>& mus,
                     const std::string& out_path) {
    const ps::DispersionKernel kernel(flags.derived());
    const auto profile = ps::distribution_profile(x, mus, kernel, flags.config());
    auto out = open_out(out_path);
    out << "x,mu,re_h,im_h\n";
    for (std::size_t i = 0; i < mus.size(); ++i)
        out << fmt17(x) << ',' << fmt17(mus[i]) << ',' << fmt17(profile.h_vals[i].real()) << ','
            << fmt17(profile.h_vals[i].imag()) << '\n';
    if (!out) throw ps::IoError("write failed for '" + out_path + "'");
    std::size_t ok = 0;
    for (const auto& m : profile.meta) ok += m.converged ? 1 : 0;
    std::cout << json{{"points", mus.size()}, {"converged_points", ok}}.dump() << '\n';
    return profile.all_converged() ? kExitOk : kExitNoConvergence;
}

int cmd_validate(double rel_tol, std::size_t max_evals) {
    ps::validation::ValidationOptions opt;
    opt.cfg.rel_tol = rel_tol;
    opt.cfg.max_evals = max_evals;
    opt.workers = ps::worker_count();
    const auto results = ps::validation::run_validation(opt);
    std::cout << ps::validation::format_report(results);
    return ps::validation::all_passed(results) ? kExitOk : kExitValidation;
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& quantity, bool log_y,
             const std::string& out_path, const std::string& title) {
    std::vector<ps::ImpedanceRecord> all;
    for (const auto& in : inputs) {
        const std::filesystem::path p(in);
        auto recs = p.extension() == ".json" ? ps::read_json(p) : ps::read_csv(p);
        all.insert(all.end(), recs.begin(), recs.end());
    }
    ps::SvgOptions opt;
    opt.title = title;
    ps::render_svg(all, ps::parse_quantity(quantity), log_y, out_path, opt);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surface impedance and field profiles of a collisional Maxwell plasma half-space"};
    app.require_subcommand(1);

    ParamFlags imp_flags;
    auto* imp = app.add_subcommand("impedance", "single-point impedance, printed as JSON");
    imp_flags.attach(imp);

    SweepFlags sw;
    auto* sweep = app.add_subcommand("sweep", "impedance sweep over gamma");
    sweep->add_option("--gamma-range", sw.gamma_range, "LO HI (default 0.5 1.2)")
        ->expected(2)
        ->delimiter(',');
    sweep->add_option("--points", sw.points, "grid points (default 141)")->check(CLI::Range(2, 1000000));
    sweep->add_option("--epsilon", sw.epsilon, "nu / omega_p")->check(CLI::PositiveNumber);
    sweep->add_option("--vc", sw.vc, "v_T / c")->check(CLI::Range(0.0, 1.0));
    sweep->add_flag("--no-displacement", sw.no_displacement, "drop the displacement current");
    sweep->add_option("--rel-tol", sw.rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
    sweep->add_option("--out", sw.out, "[csv|json] PATH")->expected(1, 2);
    sweep->add_option("--svg", sw.svg, "also render an SVG chart to PATH");
    sweep->add_option("--quantity", sw.quantity, "abs | re_neg | arg")
        ->check(CLI::IsMember({"abs", "re_neg", "arg"}));
    sweep->add_flag("--log-y", sw.log_y, "logarithmic vertical axis");

    ParamFlags field_flags;
    std::vector<double> x_grid;
    std::string field_out;
    auto* field = app.add_subcommand("field", "electric-field profile e(x) to CSV");
    field_flags.attach(field);
    field->add_option("--x-grid", x_grid, "comma-separated depths (default: 64 log-spaced in [1e-2, 1e2])")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);
    field->add_option("--out", field_out, "CSV path")->required();

    ParamFlags dist_flags;
    double dist_x = 0.0;
    std::vector<double> mu_list;
    std::string dist_out;
    auto* dist = app.add_subcommand("distribution", "distribution perturbation h(x, mu) to CSV");
    dist_flags.attach(dist);
    dist->add_option("--x", dist_x, "depth")->check(CLI::NonNegativeNumber);
    dist->add_option("--mu-list", mu_list, "comma-separated mu values")->delimiter(',')->required();
    dist->add_option("--out", dist_out, "CSV path")->required();

    double val_rel_tol = 1e-8;
    std::size_t val_max_evals = 10'000'000;
    auto* val = app.add_subcommand("validate", "run the acceptance checks");
    val->add_option("--rel-tol", val_rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
    val->add_option("--max-evals", val_max_evals, "quadrature evaluation budget");

    std::vector<std::string> plot_in;
    std::string plot_quantity = "abs", plot_out, plot_title;
    bool plot_log = false;
    auto* plot = app.add_subcommand("plot", "render sweep files (CSV or JSON) as an SVG chart");
    plot->add_option("--in", plot_in, "sweep file; repeat for several curves")->required();
    plot->add_option("--quantity", plot_quantity, "abs | re_neg | arg")
        ->check(CLI::IsMember({"abs", "re_neg", "arg"}));
    plot->add_flag("--log-y", plot_log, "logarithmic vertical axis");
    plot->add_option("--out", plot_out, "SVG path")->required();
    plot->add_option("--title", plot_title, "chart title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*imp) return cmd_impedance(imp_flags);
        if (*sweep) return cmd_sweep(sw);
        if (*field) return cmd_field(field_flags, x_grid, field_out);
        if (*dist) return cmd_distribution(dist_flags, dist_x, mu_list, dist_out);
        if (*val) return cmd_validate(val_rel_tol, val_max_evals);
        if (*plot) return cmd_plot(plot_in, plot_quantity, plot_log, plot_out, plot_title);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ps::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ps::ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ps::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
