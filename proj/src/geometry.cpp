#include "asdflow/geometry.hpp"

#include <cmath>
#include <vector>

#include "asdflow/errors.hpp"

namespace asdflow {

void require_positive(const PeriodicProfile& r, const char* where) {
    for (std::size_t j = 0; j < r.size(); ++j) {
        if (!(r[j] > 0.0) || !std::isfinite(r[j])) throw DomainError(j, r[j], where);
    }
}

CurvatureFields curvatures(const PeriodicProfile& r) {
    require_positive(r, "curvatures");
    const auto d = derivatives(r, 2);
    const auto& rx = d[0];
    const auto& rxx = d[1];
    const auto& grid = r.grid();
    CurvatureFields c{PeriodicProfile(grid), PeriodicProfile(grid), PeriodicProfile(grid)};
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double q = 1.0 + rx[j] * rx[j];
        const double sq = std::sqrt(q);
        c.kappa1[j] = 1.0 / (r[j] * sq);
        c.kappa2[j] = -rxx[j] / (q * sq);
        c.H[j] = c.kappa1[j] + c.kappa2[j];
    }
    return c;
}

PeriodicProfile mean_curvature(const PeriodicProfile& r) { return curvatures(r).H; }

double surface_area(const PeriodicProfile& r) {
    require_positive(r, "surface_area");
    const auto rx = derivative(r, 1);
    PeriodicProfile integrand(r.grid());
    for (std::size_t j = 0; j < r.size(); ++j) integrand[j] = r[j] * std::sqrt(1.0 + rx[j] * rx[j]);
    return integrate(integrand);
}

double volume_functional(const PeriodicProfile& r) { return integrate(hadamard(r, r)); }

namespace {

// (1/(w r sqrt(1+r_x^2))) d/dx[ r/sqrt(1+r_x^2) du/dx ] with w = 1 (Laplace-Beltrami)
// or w = 1/sqrt(1+r_x^2) (the G form), given r_x.
PeriodicProfile flux_divergence(const PeriodicProfile& r, const PeriodicProfile& rx,
                                const PeriodicProfile& u, bool beltrami) {
    const auto ux = derivative(u, 1);
    PeriodicProfile flux(r.grid());
    for (std::size_t j = 0; j < r.size(); ++j)
        flux[j] = r[j] / std::sqrt(1.0 + rx[j] * rx[j]) * ux[j];
    auto out = derivative(flux, 1);
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double denom = beltrami ? r[j] * std::sqrt(1.0 + rx[j] * rx[j]) : r[j];
        out[j] /= denom;
    }
    return out;
}

}  // namespace

PeriodicProfile laplace_beltrami(const PeriodicProfile& r, const PeriodicProfile& u) {
    require_positive(r, "laplace_beltrami");
    return flux_divergence(r, derivative(r, 1), u, true);
}

PeriodicProfile g_divergence(const PeriodicProfile& r) {
    require_positive(r, "g_divergence");
    const auto d = derivatives(r, 2);
    const auto& rx = d[0];
    const auto& rxx = d[1];
    PeriodicProfile H(r.grid());
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double q = 1.0 + rx[j] * rx[j];
        const double sq = std::sqrt(q);
        H[j] = 1.0 / (r[j] * sq) - rxx[j] / (q * sq);
    }
    return flux_divergence(r, rx, H, false);
}

// Differentiates each stage of g_divergence along v; every spectral derivative is linear.
PeriodicProfile g_linearized(const PeriodicProfile& r, const PeriodicProfile& v) {
    require_positive(r, "g_linearized");
    const auto dr = derivatives(r, 2);
    const auto dv = derivatives(v, 2);
    const std::size_t n = r.size();
    PeriodicProfile H(r.grid()), dH(r.grid());
    std::vector<double> sq(n), dsq(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double rx = dr[0][j], rxx = dr[1][j];
        const double q = 1.0 + rx * rx;
        const double dq = 2.0 * rx * dv[0][j];
        sq[j] = std::sqrt(q);
        dsq[j] = dq / (2.0 * sq[j]);
        const double a = r[j] * sq[j];              // kappa1 = 1/a
        const double da = v[j] * sq[j] + r[j] * dsq[j];
        const double b = q * sq[j];                 // kappa2 = -rxx/b
        const double db = dq * sq[j] + q * dsq[j];
        H[j] = 1.0 / a - rxx / b;
        dH[j] = -da / (a * a) - (dv[1][j] * b - rxx * db) / (b * b);
    }
    const auto Hx = derivative(H, 1);
    const auto dHx = derivative(dH, 1);
    PeriodicProfile flux(r.grid()), dflux(r.grid());
    for (std::size_t j = 0; j < n; ++j) {
        const double w = r[j] / sq[j];
        const double dw = v[j] / sq[j] - r[j] * dsq[j] / (sq[j] * sq[j]);
        flux[j] = w * Hx[j];
        dflux[j] = dw * Hx[j] + w * dHx[j];
    }
    const auto div = derivative(flux, 1);
    auto out = derivative(dflux, 1);
    for (std::size_t j = 0; j < n; ++j) out[j] = out[j] / r[j] - div[j] * v[j] / (r[j] * r[j]);
    return out;
}

QuasilinearCoeffs quasilinear_coeffs(const PeriodicProfile& r) {
    require_positive(r, "quasilinear_coeffs");
    const auto d = derivatives(r, 2);
    const auto& grid = r.grid();
    QuasilinearCoeffs c{PeriodicProfile(grid), PeriodicProfile(grid), PeriodicProfile(grid)};
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double p = r[j];
        const double px = d[0][j];
        const double pxx = d[1][j];
        const double px2 = px * px;
        const double q = 1.0 + px2;
        const double q2 = q * q;
        const double q3 = q2 * q;
        c.b4[j] = 1.0 / q2;
        c.b3[j] = 2.0 * px * (q - 5.0 * p * pxx) / (p * q3);
        c.fval[j] = (px2 - 1.0) / (p * p * q2) * pxx
                  + (6.0 * px2 - 1.0) / (p * q3) * pxx * pxx
                  + (3.0 - 15.0 * px2) / (q2 * q2) * pxx * pxx * pxx
                  + px2 / (p * p * p * q);
    }
    return c;
}

PeriodicProfile g_quasilinear(const PeriodicProfile& r) {
    const auto c = quasilinear_coeffs(r);
    const auto d = derivatives(r, 4);
    PeriodicProfile out(r.grid());
    for (std::size_t j = 0; j < r.size(); ++j)
        out[j] = -(c.b4[j] * d[3][j] + c.b3[j] * d[2][j]) + c.fval[j];
    return out;
}

PeriodicProfile normal_velocity(const PeriodicProfile& r, const PeriodicProfile& r_t) {
    require_positive(r, "normal_velocity");
    const auto rx = derivative(r, 1);
    PeriodicProfile v(r.grid());
    for (std::size_t j = 0; j < r.size(); ++j) v[j] = r_t[j] / std::sqrt(1.0 + rx[j] * rx[j]);
    return v;
}

double area_dissipation(const PeriodicProfile& r) {
    const auto Hx = derivative(mean_curvature(r), 1);
    const auto rx = derivative(r, 1);
    PeriodicProfile integrand(r.grid());
    for (std::size_t j = 0; j < r.size(); ++j)
        integrand[j] = r[j] / std::sqrt(1.0 + rx[j] * rx[j]) * Hx[j] * Hx[j];
    return -integrate(integrand);
}

}  // namespace asdflow
