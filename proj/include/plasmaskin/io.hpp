#pragma once

// CSV / JSON serialization of sweep records and SVG line charts.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plasmaskin/core.hpp"
#include "plasmaskin/sweep.hpp"

namespace plasmaskin {

inline constexpr std::string_view kCsvHeader =
    "gamma,epsilon,v_c,alpha,Omega,Q,re_Z0,im_Z0,abs_Z0,arg_Z0,converged,n_evals";

namespace detail {

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& s, const std::string& context) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw IoError(context + ": bad number '" + s + "'");
    return v;
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

inline void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

inline nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

inline double json_to_double(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

} // namespace detail

inline std::string csv_row(const ImpedanceRecord& r) {
    using detail::format_double;
    std::string row;
    for (double v : {r.gamma, r.epsilon, r.v_c, r.alpha, r.Omega, r.Q, r.re_Z0, r.im_Z0,
                     r.abs_Z0, r.arg_Z0}) {
        row += format_double(v);
        row += ',';
    }
    row += r.converged ? "true" : "false";
    row += ',';
    row += std::to_string(r.n_evals);
    return row;
}

inline void write_csv(const std::vector<ImpedanceRecord>& records, const std::filesystem::path& path) {
    if (records.empty()) throw ContractError("write_csv: no records");
    auto out = detail::open_for_write(path);
    out << kCsvHeader << '\n';
    for (const auto& r : records) out << csv_row(r) << '\n';
    detail::finish(out, path);
}

inline std::vector<ImpedanceRecord> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw IoError(path.string() + ": missing or unexpected CSV header");
    std::vector<ImpedanceRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        const std::string ctx = path.string() + ":" + std::to_string(line_no);
        if (cells.size() != 12) throw IoError(ctx + ": expected 12 columns");
        ImpedanceRecord r;
        double* fields[] = {&r.gamma, &r.epsilon, &r.v_c, &r.alpha, &r.Omega,
                            &r.Q, &r.re_Z0, &r.im_Z0, &r.abs_Z0, &r.arg_Z0};
        for (std::size_t i = 0; i < 10; ++i) *fields[i] = detail::parse_double(cells[i], ctx);
        if (cells[10] != "true" && cells[10] != "false") throw IoError(ctx + ": bad converged flag");
        r.converged = cells[10] == "true";
        r.n_evals = std::stoull(cells[11]);
        records.push_back(r);
    }
    unwrap_arguments(records);
    return records;
}

inline nlohmann::json to_json(const ImpedanceRecord& r) {
    using detail::json_number;
    nlohmann::json j = nlohmann::json::object();
    j["gamma"] = json_number(r.gamma);
    j["epsilon"] = json_number(r.epsilon);
    j["v_c"] = json_number(r.v_c);
    j["alpha"] = json_number(r.alpha);
    j["Omega"] = json_number(r.Omega);
    j["Q"] = json_number(r.Q);
    j["re_Z0"] = json_number(r.re_Z0);
    j["im_Z0"] = json_number(r.im_Z0);
    j["abs_Z0"] = json_number(r.abs_Z0);
    j["arg_Z0"] = json_number(r.arg_Z0);
    j["converged"] = r.converged;
    j["n_evals"] = r.n_evals;
    return j;
}

inline ImpedanceRecord record_from_json(const nlohmann::json& j) {
    using detail::json_to_double;
    ImpedanceRecord r;
    r.gamma = json_to_double(j.at("gamma"));
    r.epsilon = json_to_double(j.at("epsilon"));
    r.v_c = json_to_double(j.at("v_c"));
    r.alpha = json_to_double(j.at("alpha"));
    r.Omega = json_to_double(j.at("Omega"));
    r.Q = json_to_double(j.at("Q"));
    r.re_Z0 = json_to_double(j.at("re_Z0"));
    r.im_Z0 = json_to_double(j.at("im_Z0"));
    r.abs_Z0 = json_to_double(j.at("abs_Z0"));
    r.arg_Z0 = json_to_double(j.at("arg_Z0"));
    r.converged = j.at("converged").get<bool>();
    r.n_evals = j.at("n_evals").get<std::size_t>();
    r.arg_unwrapped = r.arg_Z0;
    return r;
}

inline void write_json(const std::vector<ImpedanceRecord>& records, const std::filesystem::path& path) {
    if (records.empty()) throw ContractError("write_json: no records");
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    auto out = detail::open_for_write(path);
    out << arr.dump(2) << '\n';
    detail::finish(out, path);
}

inline std::vector<ImpedanceRecord> read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    nlohmann::json arr;
    try {
        in >> arr;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    if (!arr.is_array()) throw IoError(path.string() + ": expected a JSON array");
    std::vector<ImpedanceRecord> records;
    for (const auto& j : arr) records.push_back(record_from_json(j));
    unwrap_arguments(records);
    return records;
}

// ---------------------------------------------------------------------------
// SVG charts

enum class PlotQuantity { Abs, ReNeg, Arg };

inline PlotQuantity parse_quantity(std::string_view name) {
    if (name == "abs") return PlotQuantity::Abs;
    if (name == "re_neg") return PlotQuantity::ReNeg;
    if (name == "arg") return PlotQuantity::Arg;
    throw ContractError("unknown plot quantity '" + std::string(name) + "' (abs|re_neg|arg)");
}

inline double plot_value(const ImpedanceRecord& r, PlotQuantity q) {
    switch (q) {
    case PlotQuantity::Abs: return r.abs_Z0;
    case PlotQuantity::ReNeg: return -r.re_Z0;
    case PlotQuantity::Arg: return r.arg_unwrapped;
    }
    return 0.0;
}

namespace detail {

inline std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// Ticks at 1, 2, 5 x 10^n covering [lo, hi].
inline std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    if (!(span > 0.0)) return {lo};
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return ticks;
}

} // namespace detail

struct SvgOptions {
    int width = 720;
    int height = 480;
    std::string title;
};

/// Renders one polyline per (epsilon, v_c) group, in order of first
/// appearance. Under log_y, non-positive values are dropped and counted in
/// a leading SVG comment.
inline std::string render_svg_string(const std::vector<ImpedanceRecord>& records, PlotQuantity quantity,
                                     bool log_y, const SvgOptions& opt = {}) {
    if (records.empty()) throw ContractError("render_svg: no records");

    struct Series {
        double epsilon, v_c;
        std::vector<std::pair<double, double>> pts;
    };
    std::vector<Series> series;
    std::size_t dropped = 0;
    std::size_t skipped = 0;
    auto same = [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); };
    for (const auto& r : records) {
        auto it = std::find_if(series.begin(), series.end(), [&](const Series& s) {
            return same(s.epsilon, r.epsilon) && same(s.v_c, r.v_c);
        });
        if (it == series.end()) {
            series.push_back({r.epsilon, r.v_c, {}});
            it = std::prev(series.end());
        }
        if (!r.converged) {
            ++skipped;
            continue;
        }
        const double y = plot_value(r, quantity);
        if (!std::isfinite(y) || (log_y && !(y > 0.0))) {
            ++dropped;
            continue;
        }
        it->pts.emplace_back(r.gamma, log_y ? std::log10(y) : y);
    }

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (const auto& [x, y] : s.pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmin <= xmax)) {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (log_y) {
        ymin = std::floor(ymin);
        ymax = std::ceil(ymax);
    }
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }

    const double left = 80, right = 170, top = 40, bottom = 60;
    const double pw = opt.width - left - right;
    const double ph = opt.height - top - bottom;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    const char* ylabel = quantity == PlotQuantity::Abs     ? "|Z0|"
                         : quantity == PlotQuantity::ReNeg ? "Re(-Z0)"
                                                           : "arg Z0 (rad)";

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.width
        << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height
        << "\">\n";
    if (dropped > 0) svg << "<!-- dropped " << dropped << " non-positive points -->\n";
    if (skipped > 0) svg << "<!-- skipped " << skipped << " non-converged points -->\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << opt.width << "\" height=\"" << opt.height
        << "\" fill=\"white\"/>\n";
    if (!opt.title.empty())
        svg << "<text x=\"" << left + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
            << opt.title << "</text>\n";

    svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\""
        << top + ph << "\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
        << "\"/>\n";
    svg << "</g>\n";

    svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (double t : detail::linear_ticks(xmin, xmax)) {
        const double x = px(t);
        svg << "<line x1=\"" << x << "\" y1=\"" << top + ph << "\" x2=\"" << x << "\" y2=\""
            << top + ph + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << top + ph + 20 << "\" text-anchor=\"middle\">"
            << detail::fmt("%g", t) << "</text>\n";
    }
    std::vector<double> yticks;
    if (log_y)
        for (double e = ymin; e <= ymax + 1e-9; e += 1.0) yticks.push_back(e);
    else
        yticks = detail::linear_ticks(ymin, ymax);
    for (double t : yticks) {
        const double y = py(t);
        svg << "<line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
            << (log_y ? "1e" + detail::fmt("%g", t) : detail::fmt("%g", t)) << "</text>\n";
    }
    svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << opt.height - 15
        << "\" text-anchor=\"middle\">gamma = omega/omega_p</text>\n";
    svg << "<text x=\"20\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << top + ph / 2 << ")\">" << ylabel << (log_y ? " (log)" : "") << "</text>\n";
    svg << "</g>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kColors[s % std::size(kColors)];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[s].pts.size(); ++i) {
            if (i) svg << ' ';
            svg << detail::fmt("%.2f", px(series[s].pts[i].first)) << ','
                << detail::fmt("%.2f", py(series[s].pts[i].second));
        }
        svg << "\"/>\n";
        const double ly = top + 20 + 20.0 * static_cast<double>(s);
        svg << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 40
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << left + pw + 45 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">eps=" << detail::fmt("%.3g", series[s].epsilon)
            << ", v_c=" << detail::fmt("%.3g", series[s].v_c) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

inline void render_svg(const std::vector<ImpedanceRecord>& records, PlotQuantity quantity, bool log_y,
                       const std::filesystem::path& path, const SvgOptions& opt = {}) {
    const std::string doc = render_svg_string(records, quantity, log_y, opt);
    auto out = detail::open_for_write(path);
    out << doc;
    detail::finish(out, path);
}

} // namespace plasmaskin
