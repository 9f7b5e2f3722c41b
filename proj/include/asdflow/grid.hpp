#pragma once

// Uniform collocation grid on the torus [-pi, pi) and the Fourier-spectral
// kernel used by every other module.  Collocation values are the primary
// representation; Fourier coefficients are computed on demand.
//
// Nonlinear products are not dealiased; the grid size n is the accuracy knob.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace asdflow {

class TorusGrid {
public:
    /// n must be even and at least 8.
    explicit TorusGrid(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return spacing_; }
    /// x_j = -pi + j * 2pi/n
    double node(std::size_t j) const noexcept;
    std::vector<double> nodes() const;

    friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

private:
    std::size_t n_;
    double spacing_;
};

/// Real samples of a 2pi-periodic function on a TorusGrid.
class PeriodicProfile {
public:
    explicit PeriodicProfile(TorusGrid grid);  // zero-filled
    PeriodicProfile(TorusGrid grid, std::vector<double> values);

    static PeriodicProfile constant(TorusGrid grid, double c);
    static PeriodicProfile sample(TorusGrid grid, const std::function<double(double)>& f);

    const TorusGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    double operator[](std::size_t j) const noexcept { return values_[j]; }
    double& operator[](std::size_t j) noexcept { return values_[j]; }

    double min() const;
    double max() const;
    double max_abs() const;
    bool all_finite() const;

    PeriodicProfile& operator+=(const PeriodicProfile& o);
    PeriodicProfile& operator-=(const PeriodicProfile& o);
    PeriodicProfile& operator*=(double s);
    PeriodicProfile& operator+=(double c);

    friend PeriodicProfile operator+(PeriodicProfile a, const PeriodicProfile& b) { return a += b; }
    friend PeriodicProfile operator-(PeriodicProfile a, const PeriodicProfile& b) { return a -= b; }
    friend PeriodicProfile operator*(double s, PeriodicProfile a) { return a *= s; }
    friend PeriodicProfile operator+(PeriodicProfile a, double c) { return a += c; }

private:
    TorusGrid grid_;
    std::vector<double> values_;
};

/// Pointwise product.
PeriodicProfile hadamard(const PeriodicProfile& a, const PeriodicProfile& b);

/// Max-norm of a - b.
double max_abs_diff(const PeriodicProfile& a, const PeriodicProfile& b);

/// Half spectrum of a real signal, k = 0..n/2, normalised so that
///   u(x) = sum_{|k| <= n/2} c(k) e^{ikx},  c(-k) = conj(c(k)).
/// The Nyquist entry carries the full cos(n x / 2) content.
class SpectralCoeffs {
public:
    SpectralCoeffs(TorusGrid grid, std::vector<std::complex<double>> half);

    const TorusGrid& grid() const noexcept { return grid_; }
    std::size_t max_mode() const noexcept { return half_.size() - 1; }
    /// Any k with |k| <= n/2; negative k via conjugate symmetry.
    std::complex<double> operator()(long k) const;
    std::span<const std::complex<double>> half() const noexcept { return half_; }
    std::span<std::complex<double>> half() noexcept { return half_; }

private:
    TorusGrid grid_;
    std::vector<std::complex<double>> half_;
};

SpectralCoeffs to_spectral(const PeriodicProfile& u);
PeriodicProfile from_spectral(const SpectralCoeffs& c);

/// Spectral derivative of order 1..4.  The Nyquist mode is dropped for odd orders.
PeriodicProfile derivative(const PeriodicProfile& u, int order);

/// All derivatives of order 1..max_order from a single forward transform.
std::vector<PeriodicProfile> derivatives(const PeriodicProfile& u, int max_order);

/// Trapezoid rule (2pi/n) sum_j u_j; exact for trig polynomials of degree < n.
double integrate(const PeriodicProfile& u);

double mean(const PeriodicProfile& u);

/// u - mean(u).
PeriodicProfile mean_project(const PeriodicProfile& u);

/// Grid-aligned shift: result represents u(x + 2 pi m / n).
PeriodicProfile translate(const PeriodicProfile& u, long m);

/// |c(k)| for k = 1..k_max (k_max clipped to n/2).
std::vector<double> mode_amplitudes(const PeriodicProfile& u, std::size_t k_max);

/// Coefficient a_k of cos(kx) in the real Fourier expansion (2 Re c(k), or c(n/2) at Nyquist).
double cosine_coefficient(const PeriodicProfile& u, std::size_t k);

}  // namespace asdflow
