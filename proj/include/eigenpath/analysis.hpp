#pragma once

#include <optional>
#include <stdexcept>

#include "eigenpath/paths.hpp"

namespace eigenpath {

/// Two continuation candidates were indistinguishable at some r.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

/// Quadrature could not reach the requested accuracy at this resolution.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct EigenpathSample {
  double r = 0.0;
  StateVector state;
  double eigenvalue = 0.0;
  double gap = 0.0;
  std::optional<double> velocity;
};

/// Tracked eigenstate at r. Extremal tracks select by eigenvalue index;
/// overlap-continuation projects `previous` (or the path seed) onto the
/// nearest eigenspace and fails with DegeneracyError when two eigenspaces
/// are equally good. The returned phase makes <previous|state> real >= 0.
EigenpathSample tracked_eigenstate(const HamiltonianPath& path, double r,
                                   const EigenpathSample* previous = nullptr);

/// Distance from the tracked eigenvalue to the rest of the spectrum. Clock
/// paths measure to the +delta/2 branch (the only branch coupled to the
/// active subspace).
double local_gap(const HamiltonianPath& path, double r);

struct VelocityResult {
  double value = 0.0;
  bool one_sided = false;   // breakpoint or interval edge: interior-sided stencil
  bool fd_warning = false;  // step-halving check disagreed beyond 1e-4 relative
};

/// Gauge-invariant norm of the eigenpath derivative, by finite differences of
/// the tracked state (step 1e-5/segments, halved-step cross-check).
VelocityResult path_velocity(const HamiltonianPath& path, double r,
                             const EigenpathSample* previous = nullptr);

struct PathLengthResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Integral of path_velocity over [0,1], per-segment composite Simpson with
/// `resolution` intervals per segment (>= 64). The error estimate comes from
/// comparing against the half-resolution rule; beyond 1e-3 relative it throws
/// QuadratureError.
PathLengthResult path_length(const HamiltonianPath& path, int resolution = 64);

/// max_r ||dH/dr|| / min_gap; finite differences on a 256-point grid with
/// golden-section refinement near the max.
double path_length_upper_bound(const HamiltonianPath& path);

/// Minimum of local_gap over a grid (>= 128 points) with golden-section
/// refinement around the grid minimum.
double min_gap(const HamiltonianPath& path, int resolution = 128);

}  // namespace eigenpath
