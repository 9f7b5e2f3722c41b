#include "asdflow/equilibria.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "asdflow/errors.hpp"

namespace asdflow {

namespace {

constexpr double pi = std::numbers::pi;

double profile_integrand(double B, double t) {
    const double sn = std::sin(t);
    return (1.0 + B * sn) / std::sqrt(1.0 + B * B + 2.0 * B * sn);
}

double radius_at(double B, double H, double u) {
    return std::sqrt(1.0 + B * B + 2.0 * B * std::sin(u)) / H;
}

// int_a^b integrand by bisection over a fixed 31-point Gauss-Kronrod rule.
// Boost's error estimate for a single panel has an absolute floor near 1e-15,
// so the acceptance test is absolute as well.
double segment_rec(double B, double a, double b, int depth) {
    double err = 0.0;
    const double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [B](double t) { return profile_integrand(B, t); }, a, b, 0, 0.0, &err);
    if (err <= 1e-14 * (1.0 + std::abs(val))) return val;
    if (depth == 0) throw NumericError("unduloid quadrature did not converge");
    const double m = 0.5 * (a + b);
    return segment_rec(B, a, m, depth - 1) + segment_rec(B, m, b, depth - 1);
}

double segment(double B, double a, double b) {
    if (a == b) return 0.0;
    return segment_rec(B, a, b, 20);
}

// phi(u) = int_{pi/2}^{u} integrand.
double phi(double B, double u) { return segment(B, pi / 2, u); }

void validate(double B, int k) {
    if (!std::isfinite(B)) throw ArgumentError("unduloid: B must be finite");
    if (k < 1) throw ArgumentError("unduloid: k must be >= 1");
    if (std::abs(B) >= 1.0)
        throw ClassificationError("unduloid: |B| >= 1 is a sphere chain or nodary, not a periodic graph");
    if (std::abs(B) > kUnduloidBMax)
        throw UnsupportedParameterError("unduloid: |B| exceeds the supported maximum 0.95");
}

// Solve phi(u) = target for u in [anchor, 3pi/2], given phi(anchor) = phi_anchor <= target.
// phi' = integrand >= (1-|B|)/(1+|B|) > 0.  Returns u and phi(u).
std::pair<double, double> invert_phi(double B, double target, double anchor, double phi_anchor,
                                     double u_guess) {
    double lo = anchor;
    double hi = 3 * pi / 2;
    double u = std::clamp(u_guess, lo, hi);
    for (int it = 0; it < 60; ++it) {
        const double value = phi_anchor + segment(B, anchor, u);
        const double f = value - target;
        if (f == 0.0) return {u, value};
        if (f > 0.0) hi = u; else lo = u;
        double next = u - f / profile_integrand(B, u);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - u);
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(u)) return {u, value};
        u = next;
    }
    throw NumericError("unduloid inversion did not converge");
}

}  // namespace

double unduloid_H(double B, int k) {
    validate(B, k);
    if (B == 0.0) return static_cast<double>(k);
    return static_cast<double>(k) / pi * phi(B, 3 * pi / 2);
}

UnduloidSpec make_unduloid(double B, int k) { return UnduloidSpec{B, k, unduloid_H(B, k)}; }

ParametricCurve unduloid_parametric(const UnduloidSpec& spec, std::size_t m) {
    validate(spec.B, spec.k);
    if (m < 64) throw ArgumentError("unduloid_parametric: need at least 64 samples per period");
    const double H = spec.H;
    const double s0 = pi / (2 * H);
    const double span = 2 * pi / H;
    ParametricCurve c;
    c.s.resize(m + 1);
    c.x.resize(m + 1);
    c.rho.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        const double s = s0 - 0.5 * span + span * static_cast<double>(i) / static_cast<double>(m);
        const double u = H * s;
        c.s[i] = s;
        c.x[i] = phi(spec.B, u) / H;
        c.rho[i] = radius_at(spec.B, H, u);
    }
    return c;
}

PeriodicProfile unduloid_profile(double B, int k, const TorusGrid& grid) {
    const double H = unduloid_H(B, k);
    const std::size_t n = grid.size();
    const double period = 2 * pi / k;
    PeriodicProfile out(grid);
    if (B == 0.0) {
        for (std::size_t j = 0; j < n; ++j) out[j] = 1.0 / H;
        return out;
    }
    // |x_j| depends only on the integer offset |j - n/2|, so r_j == r_{n-j} bit for bit.
    // Distinct reduced abscissae are solved in increasing order, each Newton
    // solve integrating only from the previous root.
    std::vector<std::pair<double, std::size_t>> ys;
    for (std::size_t t = 0; t <= n / 2; ++t) {
        const double ax = static_cast<double>(t) * grid.spacing();
        ys.emplace_back(std::abs(ax - period * std::round(ax / period)), t);  // in [0, pi/k]
    }
    std::sort(ys.begin(), ys.end());
    std::vector<double> by_offset(n / 2 + 1);
    double anchor = pi / 2;
    double phi_anchor = 0.0;
    for (const auto& [y, t] : ys) {
        const auto [u, value] = invert_phi(B, H * y, anchor, phi_anchor, pi / 2 + y * k);
        anchor = u;
        phi_anchor = value;
        by_offset[t] = radius_at(B, H, u);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const long t = static_cast<long>(j) - static_cast<long>(n / 2);
        out[j] = by_offset[static_cast<std::size_t>(t < 0 ? -t : t)];
    }
    return out;
}

CmcClassification classify_cmc(double B) {
    const double a = std::abs(B);
    if (B == 0.0) return {CmcKind::cylinder, true};
    if (a < 1.0) return {CmcKind::undulary, true};
    if (a == 1.0) return {CmcKind::sphere_chain, false};
    return {CmcKind::nodary, false};
}

const char* to_string(CmcKind kind) {
    switch (kind) {
        case CmcKind::cylinder: return "cylinder";
        case CmcKind::undulary: return "undulary";
        case CmcKind::sphere_chain: return "sphere-chain";
        case CmcKind::nodary: return "nodary";
    }
    return "unknown";
}

std::string classification_json(double B) {
    const auto c = classify_cmc(B);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "{\"B\": %.17g, \"class\": \"%s\", \"representable_as_periodic_graph\": %s}", B,
                  to_string(c.kind), c.representable_as_periodic_graph ? "true" : "false");
    return buf;
}

}  // namespace asdflow
