#pragma once

// Zero-mean reduction of the flow around a reference cylinder r_star.
//
// A positive profile r is represented by its zero-mean part rho_tilde = P0(r - r_star)
// and a volume offset eta, where r_star + eta is the radius of the cylinder with
// the same volume functional.  The lift psi re-adds the unique constant that
// restores that volume:
//   psi(rho_tilde, eta) = rho_tilde + c,   int (rho_tilde + c + r_star)^2 = 2pi (eta + r_star)^2
//   c = sqrt((eta + r_star)^2 - |rho_tilde|_2^2 / 2pi) - r_star
// (the cross term vanishes because rho_tilde has zero mean).

#include "asdflow/grid.hpp"

namespace asdflow {

struct ReducedState {
    PeriodicProfile rho_tilde;
    double eta = 0.0;
    double r_star = 1.0;
};

/// Admissibility tolerance for "zero mean": |int u| <= 1e-12 |u|_inf + 1e-14.
bool has_zero_mean(const PeriodicProfile& u);

/// psi(rho_tilde, eta); throws ArgumentError for non-zero-mean input or
/// eta + r_star <= 0, NoLiftError when the perturbation is too large for the volume.
PeriodicProfile lift_psi(const PeriodicProfile& rho_tilde, double eta, double r_star);

/// P0 G(psi(rho_tilde, eta) + r_star).
PeriodicProfile reduced_G(const ReducedState& state);

/// sqrt(F(r0) / 2pi): radius of the cylinder enclosing the same volume.
double equivalent_cylinder_radius(const PeriodicProfile& r0);

/// (P0(r - r_star), equivalent_cylinder_radius(r) - r_star, r_star).
ReducedState reduce(const PeriodicProfile& r, double r_star);

/// psi(state) + r_star.
PeriodicProfile reconstruct(const ReducedState& state);

}  // namespace asdflow
