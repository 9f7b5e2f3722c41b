#include "asdflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "asdflow/errors.hpp"
#include "fft.hpp"

namespace asdflow {

using cplx = std::complex<double>;

TorusGrid::TorusGrid(std::size_t n) : n_(n), spacing_(0.0) {
    if (n < 8 || n % 2 != 0) throw ArgumentError("TorusGrid: n must be even and >= 8");
    spacing_ = 2.0 * std::numbers::pi / static_cast<double>(n);
}

double TorusGrid::node(std::size_t j) const noexcept {
    return -std::numbers::pi + static_cast<double>(j) * spacing_;
}

std::vector<double> TorusGrid::nodes() const {
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = node(j);
    return x;
}

PeriodicProfile::PeriodicProfile(TorusGrid grid) : grid_(grid), values_(grid.size(), 0.0) {}

PeriodicProfile::PeriodicProfile(TorusGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw ArgumentError("PeriodicProfile: value count does not match grid size");
}

PeriodicProfile PeriodicProfile::constant(TorusGrid grid, double c) {
    return PeriodicProfile(grid, std::vector<double>(grid.size(), c));
}

PeriodicProfile PeriodicProfile::sample(TorusGrid grid, const std::function<double(double)>& f) {
    PeriodicProfile p(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) p.values_[j] = f(grid.node(j));
    return p;
}

double PeriodicProfile::min() const { return *std::min_element(values_.begin(), values_.end()); }
double PeriodicProfile::max() const { return *std::max_element(values_.begin(), values_.end()); }

double PeriodicProfile::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool PeriodicProfile::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

PeriodicProfile& PeriodicProfile::operator+=(const PeriodicProfile& o) {
    if (!(grid_ == o.grid_)) throw ArgumentError("PeriodicProfile: grid mismatch");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += o.values_[j];
    return *this;
}

PeriodicProfile& PeriodicProfile::operator-=(const PeriodicProfile& o) {
    if (!(grid_ == o.grid_)) throw ArgumentError("PeriodicProfile: grid mismatch");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= o.values_[j];
    return *this;
}

PeriodicProfile& PeriodicProfile::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

PeriodicProfile& PeriodicProfile::operator+=(double c) {
    for (double& v : values_) v += c;
    return *this;
}

PeriodicProfile hadamard(const PeriodicProfile& a, const PeriodicProfile& b) {
    if (!(a.grid() == b.grid())) throw ArgumentError("hadamard: grid mismatch");
    PeriodicProfile out(a.grid());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
    return out;
}

double max_abs_diff(const PeriodicProfile& a, const PeriodicProfile& b) {
    if (!(a.grid() == b.grid())) throw ArgumentError("max_abs_diff: grid mismatch");
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

SpectralCoeffs::SpectralCoeffs(TorusGrid grid, std::vector<cplx> half)
    : grid_(grid), half_(std::move(half)) {
    if (half_.size() != grid_.size() / 2 + 1)
        throw ArgumentError("SpectralCoeffs: expected n/2 + 1 coefficients");
}

cplx SpectralCoeffs::operator()(long k) const {
    const auto kk = static_cast<std::size_t>(k < 0 ? -k : k);
    if (kk >= half_.size()) throw ArgumentError("SpectralCoeffs: |k| exceeds n/2");
    return k < 0 ? std::conj(half_[kk]) : half_[kk];
}

// The grid starts at -pi, so c(k) = (-1)^k F_k / n with F the raw DFT.
SpectralCoeffs to_spectral(const PeriodicProfile& u) {
    const std::size_t n = u.size();
    std::vector<cplx> half(n / 2 + 1);
    detail::forward_fft(u.values(), half);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < half.size(); ++k) half[k] *= (k % 2 == 0 ? inv_n : -inv_n);
    return SpectralCoeffs(u.grid(), std::move(half));
}

PeriodicProfile from_spectral(const SpectralCoeffs& c) {
    std::vector<cplx> half(c.half().begin(), c.half().end());
    for (std::size_t k = 1; k < half.size(); k += 2) half[k] = -half[k];
    PeriodicProfile out(c.grid());
    detail::inverse_fft(half, out.values());
    return out;
}

namespace {

// (ik)^p as a complex multiplier.
cplx ik_power(double k, int p) {
    switch (p % 4) {
        case 0: return {std::pow(k, p), 0.0};
        case 1: return {0.0, std::pow(k, p)};
        case 2: return {-std::pow(k, p), 0.0};
        default: return {0.0, -std::pow(k, p)};
    }
}

PeriodicProfile apply_multiplier(const std::vector<cplx>& raw, const TorusGrid& grid, int order) {
    const std::size_t n = grid.size();
    const std::size_t nyq = n / 2;
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<cplx> work(raw.size());
    work[0] = 0.0;
    for (std::size_t k = 1; k < nyq; ++k) work[k] = raw[k] * ik_power(static_cast<double>(k), order) * inv_n;
    work[nyq] = (order % 2 == 1) ? cplx{0.0, 0.0}
                                 : raw[nyq] * ik_power(static_cast<double>(nyq), order) * inv_n;
    PeriodicProfile out(grid);
    detail::inverse_fft(work, out.values());
    return out;
}

}  // namespace

std::vector<PeriodicProfile> derivatives(const PeriodicProfile& u, int max_order) {
    if (max_order < 1 || max_order > 4) throw ArgumentError("derivatives: order must be in 1..4");
    std::vector<cplx> raw(u.size() / 2 + 1);
    detail::forward_fft(u.values(), raw);
    std::vector<PeriodicProfile> out;
    out.reserve(static_cast<std::size_t>(max_order));
    for (int p = 1; p <= max_order; ++p) out.push_back(apply_multiplier(raw, u.grid(), p));
    return out;
}

PeriodicProfile derivative(const PeriodicProfile& u, int order) {
    if (order < 1 || order > 4) throw ArgumentError("derivative: order must be in 1..4");
    std::vector<cplx> raw(u.size() / 2 + 1);
    detail::forward_fft(u.values(), raw);
    return apply_multiplier(raw, u.grid(), order);
}

double integrate(const PeriodicProfile& u) {
    double s = 0.0;
    for (double v : u.values()) s += v;
    return u.grid().spacing() * s;
}

double mean(const PeriodicProfile& u) {
    double s = 0.0;
    for (double v : u.values()) s += v;
    return s / static_cast<double>(u.size());
}

PeriodicProfile mean_project(const PeriodicProfile& u) { return u + (-mean(u)); }

PeriodicProfile translate(const PeriodicProfile& u, long m) {
    const long n = static_cast<long>(u.size());
    const long shift = ((m % n) + n) % n;
    PeriodicProfile out(u.grid());
    for (long j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>((j + shift) % n)];
    return out;
}

std::vector<double> mode_amplitudes(const PeriodicProfile& u, std::size_t k_max) {
    const auto c = to_spectral(u);
    k_max = std::min(k_max, c.max_mode());
    std::vector<double> a(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) a[k - 1] = std::abs(c.half()[k]);
    return a;
}

double cosine_coefficient(const PeriodicProfile& u, std::size_t k) {
    const auto c = to_spectral(u);
    if (k > c.max_mode()) throw ArgumentError("cosine_coefficient: k exceeds n/2");
    if (k == 0 || k == c.max_mode()) return c.half()[k].real();
    return 2.0 * c.half()[k].real();
}

}  // namespace asdflow
