#include "asdflow/reduced.hpp"

#include <cmath>
#include <numbers>

#include "asdflow/errors.hpp"
#include "asdflow/geometry.hpp"

namespace asdflow {

bool has_zero_mean(const PeriodicProfile& u) {
    return std::abs(integrate(u)) <= 1e-12 * u.max_abs() + 1e-14;
}

PeriodicProfile lift_psi(const PeriodicProfile& rho_tilde, double eta, double r_star) {
    if (!has_zero_mean(rho_tilde)) throw ArgumentError("lift_psi: rho_tilde must have zero mean");
    const double a = eta + r_star;
    if (!(a > 0.0) || !(r_star > 0.0))
        throw ArgumentError("lift_psi: need r_star > 0 and eta + r_star > 0");
    const double q = volume_functional(rho_tilde) / (2.0 * std::numbers::pi);
    const double radicand = a * a - q;
    if (!(radicand > 0.0))
        throw NoLiftError("lift_psi: perturbation too large for the target volume");
    // sqrt(a^2 - q) - r_star, rearranged so that q = 0 gives exactly eta.
    const double c = eta - q / (std::sqrt(radicand) + a);
    return rho_tilde + c;
}

PeriodicProfile reduced_G(const ReducedState& state) {
    auto r = reconstruct(state);
    return mean_project(g_divergence(r));
}

double equivalent_cylinder_radius(const PeriodicProfile& r0) {
    return std::sqrt(volume_functional(r0) / (2.0 * std::numbers::pi));
}

ReducedState reduce(const PeriodicProfile& r, double r_star) {
    return ReducedState{mean_project(r + (-r_star)), equivalent_cylinder_radius(r) - r_star, r_star};
}

PeriodicProfile reconstruct(const ReducedState& state) {
    return lift_psi(state.rho_tilde, state.eta, state.r_star) + state.r_star;
}

}  // namespace asdflow
