#pragma once

// Delaunay/Kenmotsu constant-mean-curvature profile curves and their
// 2pi/k-periodic even graph presentations on the torus grid.
//
// The undulary curve with parameters (H, B) is parametrised by arc length s:
//   x(s)   = int_{pi/2H}^{s} (1 + B sin Ht) / sqrt(1 + B^2 + 2B sin Ht) dt
//   rho(s) = sqrt(1 + B^2 + 2B sin Hs) / H
// and is 2pi/k periodic in x exactly when
//   pi H / k = int_{pi/2}^{3pi/2} (1 + B sin t) / sqrt(1 + B^2 + 2B sin t) dt.
//
// Presentation: x = 0 sits at s = pi/(2H), so the profile is even, with its
// maximum radius at x = 0 for B > 0 and its minimum there for B < 0.

#include <cstddef>
#include <string>
#include <vector>

#include "asdflow/grid.hpp"

namespace asdflow {

/// Largest |B| accepted by the generators; the integrand degenerates as |B| -> 1.
inline constexpr double kUnduloidBMax = 0.95;

struct UnduloidSpec {
    double B = 0.0;
    int k = 1;
    double H = 1.0;  // determined by (B, k)
};

struct ParametricCurve {
    std::vector<double> s;
    std::vector<double> x;
    std::vector<double> rho;
};

enum class CmcKind { cylinder, undulary, sphere_chain, nodary };

struct CmcClassification {
    CmcKind kind;
    bool representable_as_periodic_graph;
};

/// Mean curvature H(B, k) = (k/pi) I(B) making the undulary 2pi/k periodic.
/// Throws ClassificationError for |B| >= 1, UnsupportedParameterError for 0.95 < |B| < 1.
double unduloid_H(double B, int k);

/// Validated (B, k, H(B, k)).
UnduloidSpec make_unduloid(double B, int k);

/// m + 1 samples covering one x-period [-pi/k, pi/k]; requires m >= 64.
ParametricCurve unduloid_parametric(const UnduloidSpec& spec, std::size_t m);

/// Even 2pi/k-periodic profile sampled on the grid by inverting x(s) node by node.
PeriodicProfile unduloid_profile(double B, int k, const TorusGrid& grid);

CmcClassification classify_cmc(double B);

const char* to_string(CmcKind kind);

/// One-line JSON object describing classify_cmc(B).
std::string classification_json(double B);

}  // namespace asdflow
