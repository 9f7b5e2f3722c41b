#include "asdflow/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <set>

#include "asdflow/analysis.hpp"
#include "asdflow/dynamics.hpp"
#include "asdflow/equilibria.hpp"
#include "asdflow/errors.hpp"
#include "asdflow/geometry.hpp"
#include "asdflow/io.hpp"
#include "asdflow/reduced.hpp"
#include "asdflow/svg.hpp"

namespace asdflow {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v))
        throw ArgumentError("'" + key + "': expected a finite number, got '" + text + "'");
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    const double v = to_number(key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ArgumentError("'" + key + "': expected an integer, got '" + text + "'");
    return static_cast<int>(v);
}

// "r=2,k=1,eps=0.01" with exactly the given keys.
std::map<std::string, std::string> parse_kv(const std::string& option, const std::string& text,
                                            const std::set<std::string>& keys) {
    std::map<std::string, std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = trim(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ArgumentError(option + ": expected key=value, got '" + item + "'");
        const auto k = trim(item.substr(0, eq));
        if (!keys.count(k)) throw ArgumentError(option + ": unknown key '" + k + "'");
        if (out.count(k)) throw ArgumentError(option + ": repeated key '" + k + "'");
        out[k] = trim(item.substr(eq + 1));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    for (const auto& k : keys)
        if (!out.count(k)) throw ArgumentError(option + ": missing key '" + k + "'");
    return out;
}

fs::path resolve_out(const std::string& flag) {
    fs::path dir = ".";
    if (!flag.empty()) {
        dir = flag;
    } else if (const char* env = std::getenv("ASDFLOW_OUT"); env && *env) {
        dir = env;
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

// Applies config-file keys to options not given on the command line.
void merge_config(CLI::App& sub, const std::string& path) {
    if (path.empty()) return;
    for (const auto& [key, value] : parse_config_text(read_text(path))) {
        auto* opt = sub.get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config" || key == "help")
            throw ArgumentError(path + ": unknown config key '" + key + "'");
        if (opt->count() == 0) {
            opt->add_result(value);
            opt->run_callback();
        }
    }
}

json resolved_config(const CLI::App& sub) {
    json cfg;
    for (const auto* opt : sub.get_options()) {
        const auto name = opt->get_single_name();
        if (name == "help" || name == "config" || name == "out") continue;
        if (opt->count() > 0) {
            const auto& r = opt->results();
            std::string joined;
            for (std::size_t i = 0; i < r.size(); ++i) joined += (i ? "," : "") + r[i];
            cfg[name] = joined;
        } else {
            cfg[name] = opt->get_default_str();
        }
    }
    return cfg;
}

void write_metadata(const fs::path& dir, const std::string& command, const CLI::App& sub, json extra) {
    json meta;
    meta["command"] = command;
    meta["config"] = resolved_config(sub);
    for (auto& [k, v] : extra.items()) meta[k] = v;
    write_text(dir / (command + "_metadata.json"), meta.dump(2) + "\n");
}

template <class T>
void require(const std::optional<T>& v, const std::string& key) {
    if (!v) throw ArgumentError("missing required key '" + key + "'");
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::optional<double> cylinder;
    std::string perturbed, unduloid, file;
    int n = 256;
    SimConfig cfg;
    std::string scheme = "euler";
    std::string out, config;
};

PeriodicProfile initial_profile(const SimulateArgs& a, const CLI::App& sub) {
    const int given = (a.cylinder ? 1 : 0) + !a.perturbed.empty() + !a.unduloid.empty() + !a.file.empty();
    if (given != 1)
        throw ArgumentError("simulate: give exactly one of --cylinder, --perturbed, --unduloid, --file");
    if (!a.file.empty()) {
        auto r = read_profile_csv(a.file);
        if (sub.get_option("--n")->count() > 0 && static_cast<std::size_t>(a.n) != r.size())
            throw ArgumentError("simulate: --n disagrees with the row count of --file");
        return r;
    }
    if (a.n < 8 || a.n % 2 != 0) throw ArgumentError("'n': must be even and >= 8");
    const TorusGrid grid(static_cast<std::size_t>(a.n));
    if (a.cylinder) {
        if (!(*a.cylinder > 0.0)) throw ArgumentError("'cylinder': radius must be positive");
        return PeriodicProfile::constant(grid, *a.cylinder);
    }
    if (!a.perturbed.empty()) {
        const auto kv = parse_kv("perturbed", a.perturbed, {"r", "k", "eps"});
        const double r = to_number("perturbed.r", kv.at("r"));
        const int k = to_int("perturbed.k", kv.at("k"));
        const double eps = to_number("perturbed.eps", kv.at("eps"));
        if (!(r > 0.0) || k < 0) throw ArgumentError("perturbed: need r > 0 and k >= 0");
        return PeriodicProfile::sample(grid, [=](double x) { return r + eps * std::cos(k * x); });
    }
    const auto kv = parse_kv("unduloid", a.unduloid, {"B", "k"});
    return unduloid_profile(to_number("unduloid.B", kv.at("B")), to_int("unduloid.k", kv.at("k")), grid);
}

int cmd_simulate(SimulateArgs& a, CLI::App& sub, std::ostream& out) {
    if (a.scheme == "euler") a.cfg.scheme = ImexScheme::euler;
    else if (a.scheme == "trapezoidal") a.cfg.scheme = ImexScheme::trapezoidal;
    else throw ArgumentError("'scheme': expected euler or trapezoidal");
    a.cfg.validate();
    const auto r0 = initial_profile(a, sub);
    require_positive(r0, "simulate");
    const auto dir = resolve_out(a.out);

    const auto t0 = std::chrono::steady_clock::now();
    const auto traj = simulate(r0, a.cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_trajectory_csv(dir / "trajectory.csv", traj);
    fs::create_directories(dir / "snapshots");
    json snaps = json::array();
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[40];
        std::snprintf(name, sizeof name, "snapshot_%05zu.csv", i);
        write_profile_csv(dir / "snapshots" / name, traj.snapshots[i].r);
        snaps.push_back(json{{"file", std::string("snapshots/") + name}, {"t", traj.snapshots[i].t}});
    }
    const auto rep = audit(traj.volume, traj.area);
    json extra;
    extra["n"] = r0.size();
    extra["termination"] = to_string(traj.termination);
    extra["t_final"] = traj.times.back();
    extra["accepted_steps"] = traj.accepted_steps;
    extra["rejected_steps"] = traj.rejected_steps;
    extra["max_volume_drift"] = rep.max_volume_drift;
    extra["max_area_increase"] = rep.max_area_increase;
    extra["snapshots"] = snaps;
    write_metadata(dir, "simulate", sub, extra);
    write_text(dir / "timing.json", json{{"command", "simulate"}, {"wall_time_s", wall}}.dump(2) + "\n");

    out << "termination=" << to_string(traj.termination) << " t=" << format_double(traj.times.back())
        << " steps=" << traj.accepted_steps << " rejected=" << traj.rejected_steps
        << " volume_drift=" << format_double(rep.max_volume_drift) << "\n";
    const bool clean = traj.termination == Termination::reached_t_end ||
                       traj.termination == Termination::pinch_detected;
    return clean ? exit_ok : exit_numeric;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
    std::optional<double> radius;
    int kmax = 5;
    bool reduced = false;
    std::string file;
    std::string jacobian = "tangent";
    std::string out, config;
};

int cmd_spectrum(SpectrumArgs& a, CLI::App& sub, std::ostream& out) {
    SpectrumReport rep;
    std::string values;
    if (!a.file.empty()) {
        if (a.radius) throw ArgumentError("spectrum: --radius and --file are exclusive");
        const auto r = read_profile_csv(a.file);
        if (a.jacobian == "tangent") rep = numerical_spectrum(tangent_jacobian(r));
        else if (a.jacobian == "central") rep = numerical_spectrum(numerical_jacobian(r));
        else throw ArgumentError("'jacobian': expected tangent or central");
        values = spectrum_values_json(rep);
    } else {
        require(a.radius, "radius");
        if (a.kmax < 1) throw ArgumentError("'kmax': must be >= 1");
        rep = cylinder_spectrum(*a.radius, static_cast<std::size_t>(a.kmax), a.reduced);
        SpectrumReport modes = rep;
        std::erase_if(modes.entries, [](const SpectrumEntry& e) { return e.index == 0; });
        values = spectrum_values_json(modes);
    }
    const auto dir = resolve_out(a.out);
    write_text(dir / "spectrum.json", spectrum_json(rep));
    write_metadata(dir, "spectrum", sub, json{{"leading_real", rep.leading_real()}});
    out << values << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------- equilibrium

struct EquilibriumArgs {
    std::optional<double> B;
    int k = 1;
    int n = 256;
    bool svg = false;
    std::string out, config;
};

int cmd_equilibrium(EquilibriumArgs& a, CLI::App& sub, std::ostream& out) {
    require(a.B, "B");
    if (a.n < 8 || a.n % 2 != 0) throw ArgumentError("'n': must be even and >= 8");
    const TorusGrid grid(static_cast<std::size_t>(a.n));
    const double H = unduloid_H(*a.B, a.k);
    const auto r = unduloid_profile(*a.B, a.k, grid);
    const double residual = g_divergence(r).max_abs();
    const auto dir = resolve_out(a.out);
    write_profile_csv(dir / "equilibrium.csv", r);
    if (a.svg) {
        SvgSeries s;
        s.label = "B = " + format_double(*a.B);
        s.x = grid.nodes();
        s.x.push_back(std::numbers::pi);
        s.y.assign(r.values().begin(), r.values().end());
        s.y.push_back(r[0]);
        SvgOptions opt;
        opt.title = "unduloid profile, k = " + std::to_string(a.k);
        emit_svg({s}, dir / "equilibrium.svg", opt);
    }
    json summary{{"B", *a.B}, {"k", a.k}, {"H", H}, {"residual", residual}};
    write_metadata(dir, "equilibrium", sub, summary);
    out << summary.dump() << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------- family

struct FamilyArgs {
    std::string grid = "-0.9:0.3:0.9";
    int k = 1;
    int m = 256;
    std::string out, config;
};

int cmd_family(FamilyArgs& a, CLI::App& sub, std::ostream& out) {
    const auto Bs = parse_grid_spec(a.grid);
    if (a.m < 64) throw ArgumentError("'m': must be >= 64");
    std::vector<SvgSeries> series;
    json curves = json::array();
    for (double B : Bs) {
        const auto spec = make_unduloid(B, a.k);
        const auto c = unduloid_parametric(spec, static_cast<std::size_t>(a.m));
        SvgSeries s;
        s.label = "B = " + format_double(B);
        // One period spans [-pi/k, pi/k]; tile k copies across [-pi, pi].
        for (int j = 0; j < a.k; ++j) {
            const double shift = -std::numbers::pi + (2 * j + 1) * std::numbers::pi / a.k;
            for (std::size_t i = 0; i < c.x.size(); ++i) {
                s.x.push_back(c.x[i] + shift);
                s.y.push_back(c.rho[i]);
            }
        }
        series.push_back(std::move(s));
        curves.push_back(json{{"B", B}, {"H", spec.H}});
    }
    SvgOptions opt;
    opt.title = "undulary curves, k = " + std::to_string(a.k);
    opt.y_label = "rho";
    const auto dir = resolve_out(a.out);
    emit_svg(series, dir / "family.svg", opt);
    write_metadata(dir, "family", sub, json{{"curves", curves}});
    out << curves.dump() << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
    std::optional<double> B;
    std::string out, config;
};

int cmd_classify(ClassifyArgs& a, CLI::App& sub, std::ostream& out) {
    require(a.B, "B");
    const auto line = classification_json(*a.B);
    const auto dir = resolve_out(a.out);
    write_text(dir / "classify.json", line + "\n");
    write_metadata(dir, "classify", sub, json::object());
    out << line << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------- branch

struct BranchArgs {
    int l = 1;
    std::string grid;
    int n = 128;
    bool fit = false;
    bool polish = false;
    bool no_spectrum = false;
    unsigned threads = 1;
    std::string out, config;
};

int cmd_branch(BranchArgs& a, CLI::App& sub, std::ostream& out) {
    if (a.grid.empty()) throw ArgumentError("missing required key 'B-grid'");
    auto Bs = parse_grid_spec(a.grid);
    if (a.fit) {
        // The fit needs a grid symmetric about 0; one-sided grids are mirrored.
        std::set<double> sym(Bs.begin(), Bs.end());
        for (double B : Bs) sym.insert(B == 0.0 ? 0.0 : -B);
        Bs.assign(sym.begin(), sym.end());
    }
    if (a.n < 8 || a.n % 2 != 0) throw ArgumentError("'n': must be even and >= 8");
    BranchOptions opt;
    opt.compute_spectrum = !a.no_spectrum;
    opt.polish = a.polish;
    opt.threads = std::max(1u, a.threads);
    const auto samples = trace_branch(a.l, Bs, static_cast<std::size_t>(a.n), opt);
    const auto dir = resolve_out(a.out);
    write_text(dir / "branch.csv", format_branch_csv(samples));

    json report;
    report["l"] = a.l;
    json arr = json::array();
    for (const auto& s : samples) {
        json row{{"B", s.B}, {"lambda", s.lambda}, {"amplitude", s.amplitude}, {"residual", s.residual}};
        row["leading_mu"] = std::isfinite(s.leading_mu) ? json(s.leading_mu) : json(nullptr);
        arr.push_back(row);
    }
    report["samples"] = arr;
    if (a.fit) {
        const auto f = fit_pitchfork(samples);
        report["fit"] = json{{"lambda0", f.lambda0}, {"dlambda", f.dlambda}, {"d2lambda", f.d2lambda}};
        out << "lambda0=" << format_double(f.lambda0) << " dlambda=" << format_double(f.dlambda)
            << " d2lambda=" << format_double(f.d2lambda) << "\n";
    }
    write_text(dir / "branch.json", report.dump(2) + "\n");
    write_metadata(dir, "branch", sub, json{{"B_values", Bs}});
    out << "samples=" << samples.size() << " written to " << (dir / "branch.csv").string() << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------- audit

struct AuditArgs {
    std::string trajectory;
    double volume_tol = 1e-7;
    double area_slack = 1e-9;
    std::string out, config;
};

int cmd_audit(AuditArgs& a, CLI::App& sub, std::ostream& out) {
    if (a.trajectory.empty()) throw ArgumentError("missing required key 'trajectory'");
    fs::path p = a.trajectory;
    if (fs::is_directory(p)) p /= "trajectory.csv";
    const auto traj = read_trajectory_csv(p);
    if (traj.times.empty()) throw IoError(p.string() + ": no samples");
    const auto rep = audit(traj.volume, traj.area, a.volume_tol, a.area_slack);
    json r{{"samples", traj.times.size()},
           {"max_volume_drift", rep.max_volume_drift},
           {"max_area_increase", rep.max_area_increase},
           {"volume_ok", rep.volume_ok},
           {"area_ok", rep.area_ok}};
    const auto dir = resolve_out(a.out);
    write_text(dir / "audit.json", r.dump(2) + "\n");
    write_metadata(dir, "audit", sub, json::object());
    out << r.dump() << "\n";
    return rep.volume_ok && rep.area_ok ? exit_ok : exit_numeric;
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
    double lambda_min = 0.1;
    double lambda_max = 3.5;
    double step = 0.01;
    int kmax = 5;
    std::string out, config;
};

int cmd_scan(ScanArgs& a, CLI::App& sub, std::ostream& out) {
    const auto hits = bifurcation_scan(a.lambda_min, a.lambda_max, a.step, a.kmax);
    json arr = json::array();
    for (const auto& h : hits) arr.push_back(json{{"lambda_lo", h.lambda_lo}, {"lambda_hi", h.lambda_hi}, {"k", h.k}});
    const auto dir = resolve_out(a.out);
    write_text(dir / "scan.json", arr.dump(2) + "\n");
    write_metadata(dir, "scan", sub, json::object());
    out << arr.dump() << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------- consistency

struct ConsistencyArgs {
    int samples = 50;
    std::uint64_t seed = 1;
    int n = 128;
    double tol = 1e-8;
    std::string out, config;
};

int cmd_consistency(ConsistencyArgs& a, CLI::App& sub, std::ostream& out) {
    if (a.samples < 1) throw ArgumentError("'samples': must be >= 1");
    if (a.n < 8 || a.n % 2 != 0) throw ArgumentError("'n': must be even and >= 8");
    const TorusGrid grid(static_cast<std::size_t>(a.n));
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < a.samples; ++s) {
        // Smooth positive profile: base radius in [1, 2], five modes with decaying amplitude.
        const double base = 1.5 + 0.5 * unit(rng);
        std::vector<double> ca(5), cb(5);
        for (std::size_t k = 0; k < 5; ++k) {
            ca[k] = 0.1 * unit(rng) / static_cast<double>(k + 1);
            cb[k] = 0.1 * unit(rng) / static_cast<double>(k + 1);
        }
        const auto r = PeriodicProfile::sample(grid, [&](double x) {
            double v = base;
            for (std::size_t k = 0; k < 5; ++k) {
                const double kk = static_cast<double>(k + 1);
                v += ca[k] * std::cos(kk * x) + cb[k] * std::sin(kk * x);
            }
            return v;
        });
        const auto gd = g_divergence(r);
        const auto gq = g_quasilinear(r);
        worst = std::max(worst, max_abs_diff(gd, gq) / (1.0 + derivative(r, 4).max_abs()));
    }
    const bool ok = worst <= a.tol;
    json r{{"samples", a.samples}, {"seed", a.seed}, {"max_scaled_error", worst}, {"pass", ok}};
    const auto dir = resolve_out(a.out);
    write_text(dir / "consistency.json", r.dump(2) + "\n");
    write_metadata(dir, "consistency", sub, json::object());
    out << r.dump() << "\n";
    return ok ? exit_ok : exit_numeric;
}

void common_options(CLI::App* sub, std::string& out, std::string& config) {
    sub->add_option("--out", out, "Output directory (default: $ASDFLOW_OUT, else .)");
    sub->add_option("--config", config, "Flat key = value file; flags override its keys");
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::set<std::string> seen;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        std::string line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ArgumentError("config line " + std::to_string(lineno) + ": expected key = value");
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ArgumentError("config line " + std::to_string(lineno) + ": empty key or value");
        if (!seen.insert(key).second) throw ArgumentError("config: repeated key '" + key + "'");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        const auto c1 = spec.find(':');
        const auto c2 = spec.find(':', c1 + 1);
        if (c2 == std::string::npos || spec.find(':', c2 + 1) != std::string::npos)
            throw ArgumentError("grid '" + spec + "': expected a:step:b");
        const double a = to_number("grid start", trim(spec.substr(0, c1)));
        const double step = to_number("grid step", trim(spec.substr(c1 + 1, c2 - c1 - 1)));
        const double b = to_number("grid end", trim(spec.substr(c2 + 1)));
        if (!(step > 0.0) || b < a) throw ArgumentError("grid '" + spec + "': need step > 0 and b >= a");
        const double count = std::floor((b - a) / step + 1e-9);
        if (count > 1e6) throw ArgumentError("grid '" + spec + "': too many points");
        for (long i = 0; i <= static_cast<long>(count); ++i) {
            double v = a + static_cast<double>(i) * step;
            if (std::abs(v) < 1e-12 * step) v = 0.0;
            out.push_back(v);
        }
    } else {
        std::size_t pos = 0;
        while (true) {
            const auto comma = spec.find(',', pos);
            out.push_back(to_number("grid value",
                                    trim(spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos))));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Axisymmetric surface diffusion: simulation and stability analysis"};
    app.name("asdflow");
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    SimulateArgs sim;
    auto* s_sim = app.add_subcommand("simulate", "Integrate the flow from an initial profile");
    s_sim->add_option("--cylinder", sim.cylinder, "Constant profile of this radius");
    s_sim->add_option("--perturbed", sim.perturbed, "r=..,k=..,eps=..: r + eps cos(k x)");
    s_sim->add_option("--unduloid", sim.unduloid, "B=..,k=..: unduloid profile");
    s_sim->add_option("--file", sim.file, "Profile CSV (x,r) to start from");
    s_sim->add_option("--n", sim.n, "Grid size");
    s_sim->add_option("--t-end", sim.cfg.t_end, "Final time");
    s_sim->add_option("--dt0", sim.cfg.dt0, "Initial step");
    s_sim->add_option("--stab-margin", sim.cfg.stab_margin, "Splitting constant multiplier (>= 1)");
    s_sim->add_option("--adapt-tol", sim.cfg.adapt_tol, "Relative step-doubling tolerance");
    s_sim->add_option("--pinch-frac", sim.cfg.pinch_frac, "Stop when min r < pinch-frac * initial min r");
    s_sim->add_option("--snapshot-every", sim.cfg.snapshot_every, "Accepted steps between snapshots");
    s_sim->add_option("--k-track", sim.cfg.k_track, "Number of tracked Fourier modes");
    s_sim->add_option("--scheme", sim.scheme, "euler | trapezoidal");
    s_sim->add_option("--dt-max", sim.cfg.dt_max, "Largest step (0: unlimited)");
    s_sim->add_option("--extrapolation", sim.cfg.local_extrapolation, "Accept the extrapolated step pair");
    common_options(s_sim, sim.out, sim.config);

    SpectrumArgs spec;
    auto* s_spec = app.add_subcommand("spectrum", "Cylinder spectrum or numerical Jacobian spectrum");
    s_spec->add_option("--radius", spec.radius, "Cylinder radius (analytic spectrum)");
    s_spec->add_option("--kmax", spec.kmax, "Largest mode for the analytic spectrum");
    s_spec->add_flag("--reduced", spec.reduced, "Omit the k = 0 entry from the report");
    s_spec->add_option("--file", spec.file, "Profile CSV for a numerical spectrum");
    s_spec->add_option("--jacobian", spec.jacobian, "tangent | central");
    common_options(s_spec, spec.out, spec.config);

    EquilibriumArgs eq;
    auto* s_eq = app.add_subcommand("equilibrium", "Unduloid profile on the grid");
    s_eq->add_option("--B", eq.B, "Unduloid parameter, |B| <= 0.95");
    s_eq->add_option("--k", eq.k, "Number of periods on [-pi, pi)");
    s_eq->add_option("--n", eq.n, "Grid size");
    s_eq->add_flag("--svg", eq.svg, "Also write equilibrium.svg");
    common_options(s_eq, eq.out, eq.config);

    FamilyArgs fa;
    auto* s_fa = app.add_subcommand("family", "Plot undulary curves (x, rho) for several B");
    s_fa->add_option("--B-grid", fa.grid, "a:step:b or a comma list, each |B| <= 0.95");
    s_fa->add_option("--k", fa.k, "Number of periods on [-pi, pi]");
    s_fa->add_option("--m", fa.m, "Samples per period (>= 64)");
    common_options(s_fa, fa.out, fa.config);

    ClassifyArgs cl;
    auto* s_cl = app.add_subcommand("classify", "Classify the CMC curve with parameter B");
    s_cl->add_option("--B", cl.B, "Curve parameter");
    common_options(s_cl, cl.out, cl.config);

    BranchArgs br;
    auto* s_br = app.add_subcommand("branch", "Trace the unduloid branch bifurcating at lambda = l");
    s_br->add_option("--l", br.l, "Branch index");
    s_br->add_option("--B-grid", br.grid, "a:step:b or a comma list, within [-0.5, 0.5]");
    s_br->add_option("--n", br.n, "Grid size");
    s_br->add_flag("--fit", br.fit, "Fit the pitchfork (mirrors one-sided grids)");
    s_br->add_flag("--polish", br.polish, "Newton-polish each profile on the reduced operator");
    s_br->add_flag("--no-spectrum", br.no_spectrum, "Skip the leading eigenvalue");
    s_br->add_option("--threads", br.threads, "Worker threads over B");
    common_options(s_br, br.out, br.config);

    AuditArgs au;
    auto* s_au = app.add_subcommand("audit", "Re-check volume and area on a stored trajectory");
    s_au->add_option("--trajectory,trajectory", au.trajectory, "trajectory.csv or its directory");
    s_au->add_option("--volume-tol", au.volume_tol, "Relative volume drift bound");
    s_au->add_option("--area-slack", au.area_slack, "Allowed relative area increase per step");
    common_options(s_au, au.out, au.config);

    ScanArgs sc;
    auto* s_sc = app.add_subcommand("scan", "Flag sign changes of the reduced symbol over lambda");
    s_sc->add_option("--lambda-min", sc.lambda_min, "Scan start");
    s_sc->add_option("--lambda-max", sc.lambda_max, "Scan end (exclusive)");
    s_sc->add_option("--step", sc.step, "Scan step");
    s_sc->add_option("--kmax", sc.kmax, "Largest mode");
    common_options(s_sc, sc.out, sc.config);

    ConsistencyArgs co;
    auto* s_co = app.add_subcommand("consistency", "Compare divergence and quasilinear forms of G");
    s_co->add_option("--samples", co.samples, "Number of random profiles");
    s_co->add_option("--seed", co.seed, "Random seed");
    s_co->add_option("--n", co.n, "Grid size");
    s_co->add_option("--tol", co.tol, "Bound on the scaled max difference");
    common_options(s_co, co.out, co.config);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_ok;
        }
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (s_sim->parsed()) {
            merge_config(*s_sim, sim.config);
            return cmd_simulate(sim, *s_sim, out);
        }
        if (s_spec->parsed()) {
            merge_config(*s_spec, spec.config);
            return cmd_spectrum(spec, *s_spec, out);
        }
        if (s_eq->parsed()) {
            merge_config(*s_eq, eq.config);
            return cmd_equilibrium(eq, *s_eq, out);
        }
        if (s_fa->parsed()) {
            merge_config(*s_fa, fa.config);
            return cmd_family(fa, *s_fa, out);
        }
        if (s_cl->parsed()) {
            merge_config(*s_cl, cl.config);
            return cmd_classify(cl, *s_cl, out);
        }
        if (s_br->parsed()) {
            merge_config(*s_br, br.config);
            return cmd_branch(br, *s_br, out);
        }
        if (s_au->parsed()) {
            merge_config(*s_au, au.config);
            return cmd_audit(au, *s_au, out);
        }
        if (s_sc->parsed()) {
            merge_config(*s_sc, sc.config);
            return cmd_scan(sc, *s_sc, out);
        }
        if (s_co->parsed()) {
            merge_config(*s_co, co.config);
            return cmd_consistency(co, *s_co, out);
        }
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const fs::filesystem_error& e) {
        err << "i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const ArgumentError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ClassificationError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const UnsupportedParameterError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const NoLiftError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DomainError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return exit_numeric;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return exit_numeric;
    }
    err << "usage error: no command\n";
    return exit_usage;
}

}  // namespace asdflow
