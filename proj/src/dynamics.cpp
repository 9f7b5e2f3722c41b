#include "asdflow/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "asdflow/errors.hpp"
#include "asdflow/geometry.hpp"
#include "fft.hpp"

namespace asdflow {

using cplx = std::complex<double>;

const char* to_string(Termination t) {
    switch (t) {
        case Termination::reached_t_end: return "reached_t_end";
        case Termination::pinch_detected: return "pinch_detected";
        case Termination::diverged: return "diverged";
        case Termination::step_underflow: return "step_underflow";
    }
    return "unknown";
}

const char* to_string(ImexScheme s) {
    return s == ImexScheme::euler ? "euler" : "trapezoidal";
}

void SimConfig::validate() const {
    if (!(dt0 > 0.0)) throw ArgumentError("SimConfig: dt0 must be positive");
    if (!(t_end > 0.0)) throw ArgumentError("SimConfig: t_end must be positive");
    if (!(stab_margin >= 1.0)) throw ArgumentError("SimConfig: stab_margin must be >= 1");
    if (!(adapt_tol >= 1e-10 && adapt_tol <= 1e-2))
        throw ArgumentError("SimConfig: adapt_tol must lie in [1e-10, 1e-2]");
    if (!(pinch_frac > 0.0 && pinch_frac < 1.0))
        throw ArgumentError("SimConfig: pinch_frac must lie in (0, 1)");
    if (snapshot_every == 0) throw ArgumentError("SimConfig: snapshot_every must be positive");
    if (k_track == 0) throw ArgumentError("SimConfig: k_track must be positive");
    if (dt_max < 0.0) throw ArgumentError("SimConfig: dt_max must be >= 0");
}

double stabilisation_constant(const PeriodicProfile& r, double stab_margin) {
    const auto rx = derivative(r, 1);
    double m = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double q = 1.0 + rx[j] * rx[j];
        m = std::max(m, 1.0 / (q * q));
    }
    return stab_margin * m;
}

namespace {

std::vector<cplx> fft(const PeriodicProfile& u) {
    std::vector<cplx> h(u.size() / 2 + 1);
    detail::forward_fft(u.values(), h);
    return h;
}

PeriodicProfile ifft(std::vector<cplx> h, const TorusGrid& grid) {
    PeriodicProfile out(grid);
    detail::inverse_fft(h, out.values());
    out *= 1.0 / static_cast<double>(grid.size());
    if (!out.all_finite()) throw NumericError("IMEX step produced a non-finite value");
    return out;
}

double k4(std::size_t k) {
    const double kk = static_cast<double>(k);
    return kk * kk * kk * kk;
}

}  // namespace

PeriodicProfile step_imex(const PeriodicProfile& r, double dt, double stab) {
    const auto g = fft(g_divergence(r));
    auto h = fft(r);
    for (std::size_t k = 0; k < h.size(); ++k) {
        const double s = dt * stab * k4(k);
        h[k] = (h[k] + dt * g[k] + s * h[k]) / (1.0 + s);
    }
    return ifft(std::move(h), r.grid());
}

PeriodicProfile step_imex_trapezoidal(const PeriodicProfile& r, double dt, double stab) {
    const auto r_hat = fft(r);
    const auto g0 = fft(g_divergence(r));
    // Explicit part N(r) = G(r) + S r; predictor is the Euler step.
    std::vector<cplx> pred(r_hat.size());
    for (std::size_t k = 0; k < pred.size(); ++k) {
        const double s = dt * stab * k4(k);
        pred[k] = (r_hat[k] + dt * g0[k] + s * r_hat[k]) / (1.0 + s);
    }
    const auto r_pred = ifft(pred, r.grid());
    const auto p_hat = fft(r_pred);
    const auto g1 = fft(g_divergence(r_pred));
    std::vector<cplx> out(r_hat.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double s = dt * stab * k4(k);
        // (1 + s/2) r_new = r + (dt/2)(N(r) + N(r_pred)) - (s/2) r; the S r part of N(r) cancels the last term.
        const cplx n1 = g1[k] + stab * k4(k) * p_hat[k];
        out[k] = (r_hat[k] + 0.5 * dt * (g0[k] + n1)) / (1.0 + 0.5 * s);
    }
    return ifft(std::move(out), r.grid());
}

namespace {

struct Recorder {
    TrajectoryRecord& rec;
    std::size_t k_track;

    void sample(double t, const PeriodicProfile& r) {
        rec.times.push_back(t);
        rec.volume.push_back(volume_functional(r));
        rec.area.push_back(surface_area(r));
        rec.min_r.push_back(r.min());
        rec.max_r.push_back(r.max());
        const auto amps = mode_amplitudes(r, k_track);
        for (std::size_t k = 0; k < rec.mode_amps.size(); ++k)
            rec.mode_amps[k].push_back(k < amps.size() ? amps[k] : 0.0);
    }
};

}  // namespace

TrajectoryRecord simulate(const PeriodicProfile& r0, const SimConfig& cfg) {
    cfg.validate();
    require_positive(r0, "simulate");

    TrajectoryRecord rec;
    rec.mode_amps.assign(cfg.k_track, {});
    Recorder recorder{rec, cfg.k_track};

    const int order = cfg.scheme == ImexScheme::euler ? 1 : 2;
    const auto step = [&](const PeriodicProfile& u, double dt) {
        const double stab = stabilisation_constant(u, cfg.stab_margin);
        return cfg.scheme == ImexScheme::euler ? step_imex(u, dt, stab)
                                               : step_imex_trapezoidal(u, dt, stab);
    };

    constexpr double kMinDt = 1e-14;
    constexpr double kDivergence = 1e6;
    const double pinch_level = cfg.pinch_frac * r0.min();

    PeriodicProfile r = r0;
    double t = 0.0;
    double dt = cfg.dt0;
    if (cfg.dt_max > 0.0) dt = std::min(dt, cfg.dt_max);
    recorder.sample(t, r);
    rec.snapshots.push_back({t, r});

    rec.termination = Termination::reached_t_end;
    while (t < cfg.t_end) {
        // Avoid a sliver of a final step.
        double h = dt;
        if (t + 1.01 * h >= cfg.t_end) h = cfg.t_end - t;

        bool ok = true;
        double err = 0.0;
        PeriodicProfile fine(r.grid());
        try {
            const auto coarse = step(r, h);
            fine = step(step(r, 0.5 * h), 0.5 * h);
            err = max_abs_diff(coarse, fine);
            if (cfg.local_extrapolation) {
                // Richardson: fine + (fine - coarse) / (2^p - 1).
                const double w = 1.0 / ((1 << order) - 1);
                auto corr = fine - coarse;
                corr *= w;
                fine += corr;
            }
        } catch (const DomainError&) {
            ok = false;
        } catch (const NumericError&) {
            ok = false;
        }
        const double tol = cfg.adapt_tol * r.max_abs();
        if (!ok || !(err <= tol)) {
            ++rec.rejected_steps;
            const double factor =
                ok ? std::clamp(0.9 * std::pow(tol / err, 1.0 / (order + 1)), 0.1, 0.5) : 0.25;
            dt = h * factor;
            if (dt < kMinDt) {
                rec.termination = Termination::step_underflow;
                break;
            }
            continue;
        }

        r = std::move(fine);
        // Land exactly on t_end.
        t = (h == cfg.t_end - t) ? cfg.t_end : t + h;
        ++rec.accepted_steps;

        if (!r.all_finite() || r.max_abs() > kDivergence) {
            rec.termination = Termination::diverged;
            break;
        }
        recorder.sample(t, r);
        if (rec.accepted_steps % cfg.snapshot_every == 0) rec.snapshots.push_back({t, r});

        if (r.min() < pinch_level) {
            rec.termination = Termination::pinch_detected;
            break;
        }

        const double grow = err > 0.0 ? std::clamp(0.9 * std::pow(tol / err, 1.0 / (order + 1)), 0.2, 2.0)
                                      : 2.0;
        dt = std::max(h, dt) * grow;
        if (cfg.dt_max > 0.0) dt = std::min(dt, cfg.dt_max);
    }

    if (rec.snapshots.back().t != rec.times.back()) rec.snapshots.push_back({rec.times.back(), r});
    return rec;
}

AuditReport audit(const std::vector<double>& volume, const std::vector<double>& area,
                  double volume_tol, double area_slack) {
    if (volume.empty() || volume.size() != area.size())
        throw ArgumentError("audit: volume and area series must be non-empty and of equal length");
    AuditReport a;
    const double v0 = volume.front();
    const double s0 = area.front();
    for (double v : volume) a.max_volume_drift = std::max(a.max_volume_drift, std::abs(v - v0) / std::abs(v0));
    for (std::size_t i = 1; i < area.size(); ++i)
        a.max_area_increase = std::max(a.max_area_increase, (area[i] - area[i - 1]) / s0);
    a.volume_ok = a.max_volume_drift <= volume_tol;
    a.area_ok = a.max_area_increase <= area_slack;
    return a;
}

}  // namespace asdflow
