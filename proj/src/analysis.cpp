#include "asdflow/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "asdflow/equilibria.hpp"
#include "asdflow/errors.hpp"
#include "asdflow/geometry.hpp"
#include "asdflow/reduced.hpp"

namespace asdflow {

const char* to_string(SpectrumSource s) {
    return s == SpectrumSource::analytic_cylinder ? "analytic_cylinder" : "numerical_jacobian";
}

double SpectrumReport::leading_real() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& e : entries) m = std::max(m, e.mu.real());
    return m;
}

SpectrumReport cylinder_spectrum(double radius, std::size_t k_max, bool reduced) {
    if (!(radius > 0.0)) throw ArgumentError("cylinder_spectrum: radius must be positive");
    SpectrumReport rep;
    rep.source = SpectrumSource::analytic_cylinder;
    rep.radius = radius;
    if (!reduced) rep.entries.push_back({0, {0.0, 0.0}, 1});
    const double inv2 = 1.0 / (radius * radius);
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double kk = static_cast<double>(k) * static_cast<double>(k);
        rep.entries.push_back({static_cast<long>(k), {kk * (inv2 - kk), 0.0}, 2});
    }
    return rep;
}

double reduced_symbol(double lambda, long k) {
    const double kk = static_cast<double>(k) * static_cast<double>(k);
    return kk * (lambda * lambda - kk);
}

double default_jacobian_step(const PeriodicProfile& r_eq) {
    return std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + r_eq.max_abs());
}

namespace {

Eigen::MatrixXd central_difference(const PeriodicProfile& r, double h) {
    const std::size_t n = r.size();
    Eigen::MatrixXd J(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        auto plus = r;
        auto minus = r;
        plus[j] += h;
        minus[j] -= h;
        const auto gp = g_divergence(plus);
        const auto gm = g_divergence(minus);
        for (std::size_t i = 0; i < n; ++i) J(i, j) = (gp[i] - gm[i]) / (2.0 * h);
    }
    return J;
}

}  // namespace

Eigen::MatrixXd numerical_jacobian(const PeriodicProfile& r_eq, std::optional<double> h) {
    const double residual = g_divergence(r_eq).max_abs();
    if (!(residual <= 1e-5))
        throw ArgumentError("numerical_jacobian: profile is not an approximate equilibrium (|G| > 1e-5)");
    const double step = h.value_or(default_jacobian_step(r_eq));
    if (!(step > 0.0)) throw ArgumentError("numerical_jacobian: step must be positive");
    try {
        return central_difference(r_eq, step);
    } catch (const DomainError&) {
        return central_difference(r_eq, step / 10.0);
    }
}

Eigen::MatrixXd tangent_jacobian(const PeriodicProfile& r) {
    const std::size_t n = r.size();
    Eigen::MatrixXd J(n, n);
    PeriodicProfile e(r.grid());
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const auto col = g_linearized(r, e);
        for (std::size_t i = 0; i < n; ++i) J(i, j) = col[i];
        e[j] = 0.0;
    }
    return J;
}

SpectrumReport numerical_spectrum(const Eigen::MatrixXd& jacobian) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(jacobian, false);
    if (solver.info() != Eigen::Success) throw NumericError("numerical_spectrum: eigen-solve failed");
    std::vector<std::complex<double>> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    SpectrumReport rep;
    rep.source = SpectrumSource::numerical_jacobian;
    for (std::size_t i = 0; i < ev.size(); ++i) rep.entries.push_back({static_cast<long>(i), ev[i], 1});
    return rep;
}

double multiset_match_error(const SpectrumReport& numerical, const std::vector<double>& expected) {
    if (expected.size() > numerical.entries.size())
        throw ArgumentError("multiset_match_error: more expected values than eigenvalues");
    std::vector<bool> used(numerical.entries.size(), false);
    double worst = 0.0;
    for (double target : expected) {
        std::size_t best = numerical.entries.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < numerical.entries.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(numerical.entries[i].mu - std::complex<double>(target, 0.0));
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        used[best] = true;
        worst = std::max(worst, best_d);
    }
    return worst;
}

std::vector<double> cylinder_multiset(double radius, std::size_t k_max) {
    std::vector<double> out{0.0};
    for (const auto& e : cylinder_spectrum(radius, k_max, true).entries) {
        out.push_back(e.mu.real());
        out.push_back(e.mu.real());
    }
    return out;
}

double fit_mode_rate(const TrajectoryRecord& traj, std::size_t k, double t_a, double t_b) {
    if (k < 1 || k > traj.mode_amps.size())
        throw ArgumentError("fit_mode_rate: mode index not tracked in this trajectory");
    const auto& amps = traj.mode_amps[k - 1];
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        if (t < t_a || t > t_b) continue;
        if (!(amps[i] > 0.0)) throw ArgumentError("fit_mode_rate: non-positive amplitude in window");
        const double y = std::log(amps[i]);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++m;
    }
    if (m < 5) throw ArgumentError("fit_mode_rate: fewer than 5 samples in the window");
    const double dm = static_cast<double>(m);
    const double denom = dm * sxx - sx * sx;
    if (!(denom > 0.0)) throw ArgumentError("fit_mode_rate: degenerate time window");
    return (dm * sxy - sx * sy) / denom;
}

namespace {

BranchSample branch_point(int l, double B, const TorusGrid& grid, const BranchOptions& opt) {
    auto r = unduloid_profile(B, l, grid);
    if (opt.polish && B != 0.0) r = polish_equilibrium(r).profile;
    BranchSample s;
    s.B = B;
    s.lambda = 1.0 / equivalent_cylinder_radius(r);
    s.amplitude = cosine_coefficient(mean_project(r), static_cast<std::size_t>(l));
    s.residual = g_divergence(r).max_abs();
    s.leading_mu = opt.compute_spectrum ? numerical_spectrum(tangent_jacobian(r)).leading_real()
                                        : std::numeric_limits<double>::quiet_NaN();
    return s;
}

}  // namespace

std::vector<BranchSample> trace_branch(int l, const std::vector<double>& B_grid, std::size_t n,
                                       const BranchOptions& options) {
    if (l < 1) throw ArgumentError("trace_branch: l must be >= 1");
    if (B_grid.empty()) throw ArgumentError("trace_branch: empty B grid");
    bool has_zero = false;
    for (double B : B_grid) {
        if (!(std::abs(B) <= 0.5)) throw ArgumentError("trace_branch: B values must lie in [-0.5, 0.5]");
        has_zero = has_zero || B == 0.0;
    }
    if (!has_zero) throw ArgumentError("trace_branch: B grid must include 0");

    const TorusGrid grid(n);
    std::vector<BranchSample> out(B_grid.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(B_grid.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < B_grid.size(); ++i) out[i] = branch_point(l, B_grid[i], grid, options);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < B_grid.size(); i += workers)
                    out[i] = branch_point(l, B_grid[i], grid, options);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

PitchforkFit fit_pitchfork(const std::vector<BranchSample>& samples) {
    if (samples.size() < 5) throw ArgumentError("fit_pitchfork: need at least 5 samples");
    std::vector<double> Bs;
    for (const auto& s : samples) Bs.push_back(s.B);
    std::sort(Bs.begin(), Bs.end());
    for (std::size_t i = 0; i < Bs.size(); ++i) {
        if (std::abs(Bs[i] + Bs[Bs.size() - 1 - i]) > 1e-12)
            throw ArgumentError("fit_pitchfork: samples must be symmetric about B = 0");
    }
    const auto m = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd A(m, 3);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double s = samples[static_cast<std::size_t>(i)].amplitude;
        A(i, 0) = 1.0;
        A(i, 1) = s;
        A(i, 2) = 0.5 * s * s;
        y(i) = samples[static_cast<std::size_t>(i)].lambda;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-12);
    if (qr.rank() < 3) throw ArgumentError("fit_pitchfork: degenerate design (amplitudes not distinct)");
    const Eigen::VectorXd c = qr.solve(y);
    return PitchforkFit{c(0), c(1), c(2)};
}

std::vector<BifurcationHit> bifurcation_scan(double lambda_min, double lambda_max, double step,
                                             long k_max) {
    if (!(step > 0.0) || !(lambda_max > lambda_min) || !(lambda_min > 0.0) || k_max < 1)
        throw ArgumentError("bifurcation_scan: need 0 < lambda_min < lambda_max, step > 0, k_max >= 1");
    std::vector<double> lam;
    for (long i = 0;; ++i) {
        const double v = lambda_min + static_cast<double>(i) * step;
        if (v >= lambda_max) break;
        lam.push_back(v);
    }
    std::vector<BifurcationHit> hits;
    for (std::size_t i = 0; i + 1 < lam.size(); ++i) {
        for (long k = 1; k <= k_max; ++k) {
            const double a = reduced_symbol(lam[i], k);
            const double b = reduced_symbol(lam[i + 1], k);
            // A zero exactly on a grid point is reported once, on the interval it opens.
            if (a == 0.0 || (b != 0.0 && (a > 0.0) != (b > 0.0))) hits.push_back({lam[i], lam[i + 1], k});
        }
    }
    return hits;
}

PolishResult polish_equilibrium(const PeriodicProfile& r, double tol, int max_iter) {
    const double r_star = equivalent_cylinder_radius(r);
    const std::size_t n = r.size();
    ReducedState state{mean_project(r + (-r_star)), 0.0, r_star};
    PeriodicProfile current = reconstruct(state);
    auto resid = reduced_G(state);
    PolishResult out{current, g_divergence(r).max_abs(), 0.0, 0};
    double norm = resid.max_abs();

    for (int it = 0; it < max_iter && norm > tol; ++it) {
        // d psi(h) = h - (sum r h / sum r) 1, then P0 DG.
        const Eigen::MatrixXd T = tangent_jacobian(current);
        Eigen::VectorXd w(n);
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            w(static_cast<Eigen::Index>(j)) = current[j];
            total += current[j];
        }
        Eigen::MatrixXd dpsi = Eigen::MatrixXd::Identity(n, n) - Eigen::VectorXd::Ones(n) * (w.transpose() / total);
        Eigen::MatrixXd P0 = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
        const Eigen::MatrixXd J = P0 * T * dpsi;
        Eigen::VectorXd rhs(n);
        for (std::size_t j = 0; j < n; ++j) rhs(static_cast<Eigen::Index>(j)) = -resid[j];
        Eigen::BDCSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-10);
        const Eigen::VectorXd delta = svd.solve(rhs);

        PeriodicProfile d(r.grid());
        for (std::size_t j = 0; j < n; ++j) d[j] = delta(static_cast<Eigen::Index>(j));
        ReducedState trial{mean_project(state.rho_tilde + d), 0.0, r_star};
        const auto trial_resid = reduced_G(trial);
        const double trial_norm = trial_resid.max_abs();
        if (!(trial_norm < norm)) break;
        state = std::move(trial);
        resid = trial_resid;
        norm = trial_norm;
        current = reconstruct(state);
        out.iterations = it + 1;
    }
    out.profile = current;
    out.residual_after = g_divergence(current).max_abs();
    return out;
}

}  // namespace asdflow
