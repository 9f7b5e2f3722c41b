#pragma once

// Pointwise geometry of the axisymmetric surface Gamma(r) generated by a
// positive profile r, and the surface diffusion operator G in both its
// divergence form and its quasilinear split G(r) = -A(r) r + f(r).
//
// All nonlinear algebra is evaluated on collocation values; every derivative
// goes through the spectral kernel.  Functions requiring r > 0 throw
// DomainError naming the first offending node.

#include "asdflow/grid.hpp"

namespace asdflow {

struct CurvatureFields {
    PeriodicProfile kappa1;  // azimuthal, 1/(r sqrt(1+r_x^2))
    PeriodicProfile kappa2;  // axial, -r_xx/(1+r_x^2)^{3/2}
    PeriodicProfile H;       // kappa1 + kappa2
};

/// Coefficients of A(r) = b4 d^4/dx^4 + b3 d^3/dx^3 and the lower-order term f(r).
struct QuasilinearCoeffs {
    PeriodicProfile b4;
    PeriodicProfile b3;
    PeriodicProfile fval;
};

/// Throws DomainError if some r_j <= 0 (or is not finite).
void require_positive(const PeriodicProfile& r, const char* where);

CurvatureFields curvatures(const PeriodicProfile& r);

/// Mean curvature kappa1 + kappa2.
PeriodicProfile mean_curvature(const PeriodicProfile& r);

/// S(r) = int r sqrt(1 + r_x^2) dx (surface area / 2pi).
double surface_area(const PeriodicProfile& r);

/// F(r) = int r^2 dx (enclosed volume / pi).  No positivity requirement.
double volume_functional(const PeriodicProfile& r);

/// Axisymmetric Laplace-Beltrami operator on Gamma(r) applied to theta-independent u.
PeriodicProfile laplace_beltrami(const PeriodicProfile& r, const PeriodicProfile& u);

/// G(r) = (1/r) d/dx[ r/sqrt(1+r_x^2) dH/dx ] -- the right-hand side of r_t = G(r).
PeriodicProfile g_divergence(const PeriodicProfile& r);

/// Exact directional derivative DG(r)[v] (forward-mode linearisation of g_divergence).
PeriodicProfile g_linearized(const PeriodicProfile& r, const PeriodicProfile& v);

QuasilinearCoeffs quasilinear_coeffs(const PeriodicProfile& r);

/// -A(r) r + f(r), evaluated from the closed-form coefficients.
PeriodicProfile g_quasilinear(const PeriodicProfile& r);

/// V = r_t / sqrt(1 + r_x^2).
PeriodicProfile normal_velocity(const PeriodicProfile& r, const PeriodicProfile& r_t);

/// dS/dt along the flow: -int r/sqrt(1+r_x^2) (H_x)^2 dx  (always <= 0).
double area_dissipation(const PeriodicProfile& r);

}  // namespace asdflow
