#pragma once

// Linear stability and bifurcation analysis around cylinders and unduloids.
//
// Around the cylinder of radius R the linearisation of G is the Fourier
// multiplier mu_k = k^2 (1/R^2 - k^2); every k != 0 has multiplicity two
// (cos and sin).  With lambda = 1/R the zero-mean symbol is
// M_k(lambda) = k^2 (lambda^2 - k^2), which vanishes only at lambda = k.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "asdflow/dynamics.hpp"
#include "asdflow/grid.hpp"

namespace asdflow {

enum class SpectrumSource { analytic_cylinder, numerical_jacobian };

const char* to_string(SpectrumSource s);

struct SpectrumEntry {
    long index;                 // Fourier mode k (analytic) or eigen-index (numerical)
    std::complex<double> mu;
    int multiplicity;
};

struct SpectrumReport {
    SpectrumSource source = SpectrumSource::analytic_cylinder;
    std::vector<SpectrumEntry> entries;
    double radius = 0.0;        // cylinder radius for analytic reports, 0 otherwise

    /// Largest real part over all entries.
    double leading_real() const;
};

/// mu_k = k^2 (1/radius^2 - k^2), k = 1..k_max; k = 0 (mu = 0) is prepended unless `reduced`.
SpectrumReport cylinder_spectrum(double radius, std::size_t k_max, bool reduced);

/// Zero-mean symbol k^2 (lambda^2 - k^2).
double reduced_symbol(double lambda, long k);

/// Default central-difference step: cbrt(eps) * (1 + |r|_inf).
double default_jacobian_step(const PeriodicProfile& r_eq);

/// Collocation matrix of DG(r_eq) by central differences along unit node bumps.
/// Requires |G(r_eq)|_inf <= 1e-5.  If a perturbed profile loses positivity the
/// step is reduced tenfold once; a second failure rethrows the DomainError.
Eigen::MatrixXd numerical_jacobian(const PeriodicProfile& r_eq, std::optional<double> h = std::nullopt);

/// Collocation matrix of DG(r) assembled from the exact linearisation g_linearized.
Eigen::MatrixXd tangent_jacobian(const PeriodicProfile& r);

/// Dense nonsymmetric eigen-solve; entries sorted by descending real part.
SpectrumReport numerical_spectrum(const Eigen::MatrixXd& jacobian);

/// Largest distance when each expected value is matched to its nearest unused
/// eigenvalue (greedy, in the given order).  Used to compare a numerical
/// spectrum with an analytic multiset that covers only part of it.
double multiset_match_error(const SpectrumReport& numerical, const std::vector<double>& expected);

/// Analytic multiset {0} u {mu_k x2 : 1 <= k <= k_max} for a cylinder.
std::vector<double> cylinder_multiset(double radius, std::size_t k_max);

/// Least-squares slope of log |c_k(t)| over samples with t in [t_a, t_b].
/// Throws ArgumentError with fewer than 5 samples or non-positive amplitudes.
double fit_mode_rate(const TrajectoryRecord& traj, std::size_t k, double t_a, double t_b);

struct BranchSample {
    double B = 0.0;
    double lambda = 0.0;        // 1 / equivalent cylinder radius
    double amplitude = 0.0;     // cos(l x) coefficient of the zero-mean part
    double residual = 0.0;      // |G|_inf
    double leading_mu = 0.0;    // largest real part of the Jacobian spectrum
};

struct BranchOptions {
    bool compute_spectrum = true;
    bool polish = false;        // Newton on the reduced operator before measuring
    unsigned threads = 1;       // worker threads over B; results are order-independent
};

/// One sample per B on the 2pi/l-periodic unduloid branch.
/// Requires every B in [-0.5, 0.5] and B = 0 present.
std::vector<BranchSample> trace_branch(int l, const std::vector<double>& B_grid, std::size_t n,
                                       const BranchOptions& options = {});

struct PitchforkFit {
    double lambda0 = 0.0;
    double dlambda = 0.0;
    double d2lambda = 0.0;
};

/// Quadratic least squares lambda(s) ~ lambda0 + dlambda s + d2lambda s^2 / 2 in the
/// amplitude coordinate.  Needs >= 5 samples whose B values are symmetric about 0.
PitchforkFit fit_pitchfork(const std::vector<BranchSample>& samples);

struct BifurcationHit {
    double lambda_lo;
    double lambda_hi;
    long k;                     // mode whose symbol changes sign (root at lambda = k)
};

/// Scans lambda = lambda_min + i*step (< lambda_max) and flags every grid
/// interval on which some M_k, 1 <= k <= k_max, vanishes or changes sign.
std::vector<BifurcationHit> bifurcation_scan(double lambda_min, double lambda_max, double step,
                                             long k_max);

struct PolishResult {
    PeriodicProfile profile;
    double residual_before;
    double residual_after;
    int iterations;
};

/// Newton iteration on the reduced operator P0 G(psi(rho_tilde, 0) + r_star) at the
/// profile's own volume (r_star = equivalent radius).  Minimum-norm updates
/// handle the translation kernel.
PolishResult polish_equilibrium(const PeriodicProfile& r, double tol = 1e-11, int max_iter = 8);

}  // namespace asdflow
