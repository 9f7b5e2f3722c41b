// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.
// Expected values are computed here from closed forms, independently of the library.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "asdflow/analysis.hpp"
#include "asdflow/cli.hpp"
#include "asdflow/dynamics.hpp"
#include "asdflow/equilibria.hpp"
#include "asdflow/geometry.hpp"
#include "asdflow/io.hpp"
#include "asdflow/reduced.hpp"

using namespace asdflow;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

struct Line {
    int id;
    bool pass;
    std::string detail;
};

std::string render(const Line& l) {
    return "criterion " + std::to_string(l.id) + ": " + (l.pass ? "PASS" : "FAIL") + "  " + l.detail;
}

double mu_cylinder(double R, long k) { return double(k * k) * (1.0 / (R * R) - double(k * k)); }

// Largest distance when each expected value takes its nearest unused eigenvalue.
double match(const std::vector<std::complex<double>>& ev, const std::vector<double>& expected) {
    std::vector<bool> used(ev.size(), false);
    double worst = 0.0;
    for (double e : expected) {
        std::size_t best = ev.size();
        double d = INFINITY;
        for (std::size_t i = 0; i < ev.size(); ++i) {
            if (!used[i] && std::abs(ev[i] - e) < d) {
                d = std::abs(ev[i] - e);
                best = i;
            }
        }
        if (best == ev.size()) return INFINITY;
        used[best] = true;
        worst = std::max(worst, d);
    }
    return worst;
}

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& J) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(J, false);
    std::vector<std::complex<double>> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

// sqrt(mean of r^2): the cylinder with the same enclosed volume.
double volume_radius(const PeriodicProfile& r) {
    double s = 0.0;
    for (double v : r.values()) s += v * v;
    return std::sqrt(s / double(r.size()));
}

Line criterion1() {
    double worst = 0.0;
    for (std::size_t n : {32u, 128u}) {
        for (int i = 0; i < 20; ++i) {
            const double c = 0.1 * std::pow(100.0, i / 19.0);
            worst = std::max(worst, g_divergence(PeriodicProfile::constant(TorusGrid(n), c)).max_abs());
        }
    }
    return {1, worst <= 1e-11, "max |G(c)| = " + sci(worst) + " over 40 cylinders (tol 1e-11)"};
}

Line criterion2() {
    const TorusGrid g(128);
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
        const double base = 1.5 + 0.5 * u(rng);
        double a[6], b[6];
        for (int k = 1; k <= 5; ++k) {
            a[k] = 0.1 * u(rng) / k;
            b[k] = 0.1 * u(rng) / k;
        }
        const auto r = PeriodicProfile::sample(g, [&](double x) {
            double v = base;
            for (int k = 1; k <= 5; ++k) v += a[k] * std::cos(k * x) + b[k] * std::sin(k * x);
            return v;
        });
        const auto gd = g_divergence(r);
        worst = std::max(worst, max_abs_diff(gd, g_quasilinear(r)) / (1.0 + derivative(r, 4).max_abs()));
    }
    return {2, worst <= 1e-8, "max |G_div - G_ql| / (1 + |r_xxxx|) = " + sci(worst) + " over 50 profiles, n=128 (tol 1e-8)"};
}

Line criterion3() {
    double worst_tan = 0.0, worst_fd = 0.0;
    for (double R : {0.5, 1.0, 2.0}) {
        for (bool fd : {false, true}) {
            const std::size_t n = fd ? 16 : 64;
            const auto r = PeriodicProfile::constant(TorusGrid(n), R);
            const auto ev = eigenvalues(fd ? numerical_jacobian(r) : tangent_jacobian(r));
            std::vector<double> expected{0.0};
            for (long k = 1; k <= static_cast<long>(n / 4); ++k) expected.insert(expected.end(), 2, mu_cylinder(R, k));
            (fd ? worst_fd : worst_tan) = std::max(fd ? worst_fd : worst_tan, match(ev, expected));
        }
    }
    const bool ok = worst_tan <= 1e-6 && worst_fd <= 1e-6;
    return {3, ok, "tangent n=64 err " + sci(worst_tan) + ", central differences n=16 err " + sci(worst_fd) +
                       ", r* in {0.5,1,2}, k <= n/4 (tol 1e-6)"};
}

struct Runs {
    TrajectoryRecord decay;
    TrajectoryRecord growth;
    PeriodicProfile decay_r0;
};

Runs make_runs() {
    const TorusGrid g(256);
    SimConfig cfg;
    cfg.adapt_tol = 1e-8;
    Runs out{{}, {}, PeriodicProfile::sample(g, [](double x) { return 2.0 + 0.01 * std::cos(x); })};
    cfg.t_end = 8.0;
    out.decay = simulate(out.decay_r0, cfg);
    cfg.t_end = 5.0;
    out.growth = simulate(PeriodicProfile::sample(g, [](double x) { return 0.5 + 0.01 * std::cos(x); }), cfg);
    return out;
}

Line criterion4(const Runs& runs) {
    const double expected = mu_cylinder(2.0, 1);
    const double rate = fit_mode_rate(runs.decay, 1, 0.0, 8.0);
    const double R = volume_radius(runs.decay_r0);
    const auto& fin = runs.decay.final_profile();
    double dist = 0.0;
    for (double v : fin.values()) dist = std::max(dist, std::abs(v - R));
    const bool ok = runs.decay.termination == Termination::reached_t_end &&
                    std::abs(rate - expected) <= 0.05 * std::abs(expected) && dist <= 1e-4;
    return {4, ok, "mode-1 rate " + sci(rate) + " vs " + sci(expected) + " (5%), |r(8) - " + sci(R) +
                       "| = " + sci(dist) + " (tol 1e-4)"};
}

Line criterion5(const Runs& runs) {
    const auto& t = runs.growth;
    const double expected = mu_cylinder(0.5, 1);
    const double rate = fit_mode_rate(t, 1, 0.0, 0.2);
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < t.min_r.size(); ++i) {
        if (t.times[i] >= 0.2 && t.min_r[i + 1] > t.min_r[i]) monotone = false;
    }
    const bool pinched = t.termination == Termination::pinch_detected;
    const bool ok = std::abs(rate - expected) <= 0.05 * expected && monotone && pinched;
    return {5, ok, "mode-1 rate on [0,0.2] " + sci(rate) + " vs " + sci(expected) + " (5%), min r monotone after window: " +
                       (monotone ? "yes" : "no") + ", pinch at t = " + sci(t.times.back())};
}

Line criterion6(const Runs& runs) {
    double drift = 0.0, rise = 0.0;
    for (const auto* t : {&runs.decay, &runs.growth}) {
        for (std::size_t i = 0; i < t->volume.size(); ++i) {
            drift = std::max(drift, std::abs(t->volume[i] - t->volume[0]) / t->volume[0]);
            if (i + 1 < t->area.size()) rise = std::max(rise, (t->area[i + 1] - t->area[i]) / t->area[0]);
        }
    }
    return {6, drift <= 1e-7 && rise <= 1e-9,
            "max volume drift " + sci(drift) + " (tol 1e-7), max area increase " + sci(rise) + " (slack 1e-9)"};
}

Line criterion7() {
    const TorusGrid g(256);
    double worst = 0.0;
    for (double B : {-0.3, -0.2, -0.1, 0.1, 0.2, 0.3})
        for (int k : {1, 2}) worst = std::max(worst, g_divergence(unduloid_profile(B, k, g)).max_abs());
    return {7, worst <= 1e-6, "max |G(unduloid)| = " + sci(worst) + ", n=256 (tol 1e-6)"};
}

Line criterion8() {
    bool ok = true;
    std::string detail;
    for (int l : {1, 2}) {
        const auto f = fit_pitchfork(trace_branch(l, {-0.02, -0.01, 0.0, 0.01, 0.02}, 256, {false, false, 4}));
        ok = ok && std::abs(f.lambda0 - l) <= 1e-6 && std::abs(f.dlambda) <= 1e-4 && f.d2lambda < 0.0;
        detail += "l=" + std::to_string(l) + ": |lambda0-l| " + sci(std::abs(f.lambda0 - l)) + ", |dlambda| " +
                  sci(std::abs(f.dlambda)) + ", d2lambda " + sci(f.d2lambda) + "; ";
    }
    const auto hits = bifurcation_scan(0.1, 3.5, 0.01, 5);
    std::size_t spurious = 0;
    for (const auto& h : hits) {
        const double root = std::round(h.lambda_lo);
        if (!(h.lambda_lo <= h.k && h.k <= h.lambda_hi) && !(h.lambda_lo <= root && root <= h.lambda_hi)) ++spurious;
    }
    ok = ok && spurious == 0 && hits.size() == 3;
    detail += "scan hits " + std::to_string(hits.size()) + ", at non-integers " + std::to_string(spurious);
    return {8, ok, detail};
}

Line criterion9() {
    const TorusGrid g(64);
    bool ok = true;
    std::string detail = "leading Re(mu), n=64:";
    for (double B : {0.05, 0.1, 0.2}) {
        double lead = -INFINITY;
        for (const auto& e : eigenvalues(tangent_jacobian(unduloid_profile(B, 1, g)))) lead = std::max(lead, e.real());
        ok = ok && lead > 0.0;
        detail += " B=" + std::to_string(B).substr(0, 4) + " " + sci(lead);
    }
    return {9, ok, detail};
}

std::vector<Line> criteria_1_to_9() {
    std::vector<Line> lines{criterion1(), criterion2(), criterion3()};
    const auto runs = make_runs();
    lines.push_back(criterion4(runs));
    lines.push_back(criterion5(runs));
    lines.push_back(criterion6(runs));
    lines.push_back(criterion7());
    lines.push_back(criterion8());
    lines.push_back(criterion9());
    return lines;
}

std::string report(const std::vector<Line>& lines) {
    std::string s;
    for (const auto& l : lines) s += render(l) + "\n";
    return s;
}

// Runs a fixed CLI session into dir; returns false on a non-zero exit.
bool cli_session(const fs::path& dir) {
    const std::vector<std::vector<std::string>> cmds{
        {"simulate", "--perturbed", "r=0.5,k=1,eps=0.01", "--n", "64", "--t-end", "0.3", "--snapshot-every", "20"},
        {"spectrum", "--radius", "2", "--kmax", "5"},
        {"equilibrium", "--B", "0.2", "--k", "2", "--n", "128", "--svg"},
        {"branch", "--l", "1", "--B-grid", "0:0.1:0.4", "--n", "64", "--fit", "--threads", "4"},
        {"scan"},
    };
    for (auto args : cmds) {
        args.push_back("--out");
        args.push_back(dir.string());
        std::ostringstream out, err;
        if (run_cli(args, out, err) != exit_ok) return false;
    }
    return true;
}

Line criterion10(const std::string& first_report) {
    const bool same_report = report(criteria_1_to_9()) == first_report;
    const auto base = fs::temp_directory_path() / "asdflow_acceptance";
    fs::remove_all(base);
    const auto a = base / "a", b = base / "b";
    fs::create_directories(a);
    fs::create_directories(b);
    bool same_files = cli_session(a) && cli_session(b);
    std::size_t files = 0;
    for (const auto& e : fs::recursive_directory_iterator(a)) {
        if (!e.is_regular_file() || e.path().filename() == "timing.json") continue;
        const auto other = b / fs::relative(e.path(), a);
        if (!fs::exists(other) || read_text(e.path()) != read_text(other)) same_files = false;
        ++files;
    }
    fs::remove_all(base);
    return {10, same_report && same_files && files > 0,
            std::string("report rerun identical: ") + (same_report ? "yes" : "no") + ", " + std::to_string(files) +
                " CLI output files identical: " + (same_files ? "yes" : "no")};
}

}  // namespace

int main() {
    try {
        auto lines = criteria_1_to_9();
        for (const auto& l : lines) std::cout << render(l) << std::endl;
        const auto l10 = criterion10(report(lines));
        std::cout << render(l10) << std::endl;
        lines.push_back(l10);
        const auto passed = std::count_if(lines.begin(), lines.end(), [](const Line& l) { return l.pass; });
        std::cout << passed << "/" << lines.size() << " criteria passed" << std::endl;
        return passed == static_cast<long>(lines.size()) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "acceptance: " << e.what() << std::endl;
        return 2;
    }
}
