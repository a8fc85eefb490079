#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "plasmaskin/io.hpp"
#include "plasmaskin/sweep.hpp"

using namespace plasmaskin;
namespace fs = std::filesystem;

namespace {

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool same_record(const ImpedanceRecord& a, const ImpedanceRecord& b) {
    return same_bits(a.gamma, b.gamma) && same_bits(a.epsilon, b.epsilon) && same_bits(a.v_c, b.v_c) &&
           same_bits(a.alpha, b.alpha) && same_bits(a.Omega, b.Omega) && same_bits(a.Q, b.Q) &&
           same_bits(a.re_Z0, b.re_Z0) && same_bits(a.im_Z0, b.im_Z0) &&
           same_bits(a.abs_Z0, b.abs_Z0) && same_bits(a.arg_Z0, b.arg_Z0) &&
           a.converged == b.converged && a.n_evals == b.n_evals;
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("plasmaskin_test_" + name);
}

SweepSpec small_spec(std::size_t n) {
    SweepSpec s;
    s.gamma_lo = 0.9;
    s.gamma_hi = 1.1;
    s.n_points = n;
    return s;
}

ImpedanceRecord synthetic(double g, double abs_z, double arg) {
    ImpedanceRecord r;
    r.gamma = g;
    r.epsilon = 1e-3;
    r.v_c = 1e-3;
    r.abs_Z0 = abs_z;
    r.re_Z0 = abs_z * std::cos(arg);
    r.im_Z0 = abs_z * std::sin(arg);
    r.arg_Z0 = arg;
    r.arg_unwrapped = arg;
    r.converged = true;
    return r;
}

} // namespace

TEST_CASE("sweep grid endpoints are exact") {
    const auto g = SweepSpec{}.gammas();
    REQUIRE(g.size() == 141);
    CHECK(g.front() == 0.5);
    CHECK(g.back() == 1.2);
    CHECK(g[70] == Catch::Approx(0.85));
}

TEST_CASE("sweep spec validation") {
    SweepSpec s;
    s.gamma_lo = 0.01;
    CHECK_THROWS_AS(s.validate(), ContractError);
    s = {};
    s.gamma_hi = 0.4;
    CHECK_THROWS_AS(s.validate(), ContractError);
    s = {};
    s.n_points = 1;
    CHECK_THROWS_AS(s.validate(), ContractError);
    s = {};
    s.v_c = 1.5;
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("sweep results do not depend on the worker count") {
    const auto one = run_sweep(small_spec(9), 1);
    const auto three = run_sweep(small_spec(9), 3);
    REQUIRE(one.size() == three.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(same_record(one[i], three[i]));
}

TEST_CASE("doubling the grid reproduces the coarse points") {
    const auto coarse = run_sweep(small_spec(6), 1);
    const auto fine = run_sweep(small_spec(11), 1);
    for (std::size_t i = 0; i < coarse.size(); ++i) CHECK(same_record(coarse[i], fine[2 * i]));
}

TEST_CASE("unwrapping removes 2 pi jumps") {
    std::vector<ImpedanceRecord> recs{synthetic(1.0, 1.0, 3.0), synthetic(1.1, 1.0, -3.0),
                                      synthetic(1.2, 1.0, -2.5), synthetic(1.3, 1.0, 2.9)};
    unwrap_arguments(recs);
    CHECK(recs[0].arg_unwrapped == 3.0);
    CHECK(recs[1].arg_unwrapped == Catch::Approx(-3.0 + 2.0 * kPi));
    CHECK(recs[2].arg_unwrapped == Catch::Approx(-2.5 + 2.0 * kPi));
    CHECK(recs[3].arg_unwrapped == Catch::Approx(2.9));
}

TEST_CASE("peak finder on a synthetic parabola") {
    std::vector<ImpedanceRecord> recs;
    for (int i = 0; i <= 20; ++i) {
        const double g = 0.9 + 0.01 * i;
        recs.push_back(synthetic(g, 10.0 - 100.0 * (g - 1.003) * (g - 1.003), i < 11 ? -1.5 : 0.0));
    }
    const auto p = find_peak(recs);
    CHECK(p.gamma_star == Catch::Approx(1.003).margin(1e-12));
    CHECK(p.peak_value == Catch::Approx(10.0).epsilon(1e-12));
    CHECK(p.index == 10);
    CHECK(p.arg_jump == Catch::Approx(1.5));
    CHECK(p.arg_span == Catch::Approx(1.5));
}

TEST_CASE("peak finder contract") {
    std::vector<ImpedanceRecord> two{synthetic(1.0, 1.0, 0.0), synthetic(1.1, 2.0, 0.0)};
    CHECK_THROWS_AS(find_peak(two), ContractError);
    std::vector<ImpedanceRecord> rising{synthetic(1.0, 1.0, 0.0), synthetic(1.1, 2.0, 0.0),
                                        synthetic(1.2, 3.0, 0.0)};
    CHECK_THROWS_AS(find_peak(rising), ContractError);
    std::vector<ImpedanceRecord> bad{synthetic(1.0, 1.0, 0.0), synthetic(1.1, 5.0, 0.0),
                                     synthetic(1.2, 3.0, 0.0)};
    bad[1].converged = false;
    CHECK_THROWS_AS(find_peak(bad), ContractError);
}

TEST_CASE("resonance peak and argument step on a 140-point grid") {
    SweepSpec spec;
    spec.n_points = 140;
    const auto recs = run_sweep(spec);
    const auto p = find_peak(recs);
    CHECK(std::abs(p.gamma_star - 1.0) < 0.01);
    CHECK(p.arg_jump >= kPi / 4.0);
    CHECK(p.arg_span >= kPi / 4.0);
}

TEST_CASE("CSV round trip is bit exact") {
    auto recs = run_sweep(small_spec(5), 1);
    ImpedanceRecord direct = synthetic(1.0, 2.0, -0.5);
    direct.gamma = direct.epsilon = direct.v_c = std::numeric_limits<double>::quiet_NaN();
    direct.alpha = 1.0 / 3.0;
    direct.n_evals = 123456789;
    direct.converged = false;
    recs.push_back(direct);
    ImpedanceRecord odd = synthetic(2.0, std::numeric_limits<double>::infinity(), 0.1);
    odd.re_Z0 = -0.0;
    odd.im_Z0 = 5e-324;
    recs.push_back(odd);

    const auto path = temp_file("roundtrip.csv");
    write_csv(recs, path);
    const auto back = read_csv(path);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) CHECK(same_record(recs[i], back[i]));
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == kCsvHeader);
    fs::remove(path);
}

TEST_CASE("JSON round trip is bit exact") {
    auto recs = run_sweep(small_spec(5), 1);
    ImpedanceRecord direct = synthetic(1.0, 2.0, -0.5);
    direct.gamma = direct.epsilon = direct.v_c = std::numeric_limits<double>::quiet_NaN();
    recs.push_back(direct);
    const auto path = temp_file("roundtrip.json");
    write_json(recs, path);
    const auto back = read_json(path);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) CHECK(same_record(recs[i], back[i]));
    CHECK(to_json(direct)["gamma"].is_null());
    fs::remove(path);
}

TEST_CASE("malformed inputs are reported") {
    CHECK_THROWS_AS(write_csv({}, temp_file("empty.csv")), ContractError);
    CHECK_THROWS_AS(read_csv(temp_file("does_not_exist.csv")), IoError);
    const auto path = temp_file("bad.csv");
    {
        std::ofstream out(path);
        out << "gamma,alpha\n1,2\n";
    }
    CHECK_THROWS_AS(read_csv(path), IoError);
    {
        std::ofstream out(path);
        out << kCsvHeader << "\n1,2,3\n";
    }
    CHECK_THROWS_AS(read_csv(path), IoError);
    {
        std::ofstream out(path);
        out << "{not json";
    }
    CHECK_THROWS_AS(read_json(path), IoError);
    fs::remove(path);
}

TEST_CASE("SVG rendering") {
    std::vector<ImpedanceRecord> recs;
    for (int i = 0; i < 5; ++i) recs.push_back(synthetic(1.0 + 0.1 * i, 1.0 + i, -0.2 * i));
    auto other = recs;
    for (auto& r : other) r.epsilon = 1e-4;
    recs.insert(recs.end(), other.begin(), other.end());
    const auto svg = render_svg_string(recs, PlotQuantity::Abs, true);
    CHECK(svg.find("<svg") != std::string::npos);
    std::size_t lines = 0;
    for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1))
        ++lines;
    CHECK(lines == 2);
    CHECK(svg.find("eps=") != std::string::npos);

    const auto neg = render_svg_string(recs, PlotQuantity::ReNeg, true);
    CHECK(neg.find("dropped") != std::string::npos);

    CHECK(parse_quantity("arg") == PlotQuantity::Arg);
    CHECK_THROWS_AS(parse_quantity("phase"), ContractError);
    CHECK_THROWS_AS(render_svg_string({}, PlotQuantity::Abs, false), ContractError);
}
