#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "eigenpath/circuit.hpp"
#include "eigenpath/linalg.hpp"

namespace eigenpath {

/// Hidden n-bit input for the ordered-search construction. Bit 0 is the most
/// significant, so prefixes order numerically.
struct SecretWord {
  int n = 0;
  std::uint32_t x = 0;

  SecretWord(int bits, std::uint32_t value);
  int bit(int j) const { return int((x >> (n - 1 - j)) & 1u); }
  /// Integer value of the first l bits [x_0 ... x_{l-1}]; prefix(0) = 0.
  std::uint32_t prefix(int l) const;
  std::uint32_t domain_size() const { return std::uint32_t(1) << n; }
};

/// Positive multiplier q(r) applied pointwise to a path's Hamiltonians.
class GapProfile {
 public:
  static GapProfile constant(double value);
  static GapProfile linear_ramp();  // q(r) = 1 + r
  static GapProfile from_table(std::vector<std::pair<double, double>> samples);

  double operator()(double r) const { return q_(r); }

 private:
  explicit GapProfile(std::function<double(double)> q) : q_(std::move(q)) {}
  std::function<double(double)> q_;
};

enum class PathKind { grover, clock, ordered_search, scaled, custom };
enum class TrackRule { extremal_bottom, extremal_top, continuation };

/// A continuous family {H(r)}, r in [0,1], with its tracked-branch selector
/// and segment structure. Immutable after construction; evaluator calls are
/// pure, so paths can be shared across threads. Operators are generated
/// lazily per r, never tabulated.
class HamiltonianPath {
 public:
  std::size_t dim() const;
  PathKind kind() const;
  TrackRule track() const;
  double delta() const;              // nominal gap scale
  int segment_count() const;
  /// Interior breakpoints l/n (ascending); empty for single-segment paths.
  const std::vector<double>& breakpoints() const;
  /// 1-based segment index; segments are [(l-1)/n, l/n), r = 1 maps to n.
  int segment_of(double r) const;

  void evaluate_into(double r, ComplexMatrix& out) const;
  HermitianOperator evaluate(double r) const;

  /// Known eigenvalue of the tracked branch, when the construction fixes it
  /// (clock paths: -delta/2 for all r).
  std::optional<double> tracked_eigenvalue_hint() const;
  /// Start state for overlap-continuation tracking (clock: |psi>|0>).
  const std::vector<cplx>* continuation_seed() const;

  /// H <- -H; extremal tracking flips top<->bottom, eigenvectors unchanged.
  HamiltonianPath negated() const;

  struct Impl;
  explicit HamiltonianPath(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  const Impl& impl() const { return *impl_; }
  std::shared_ptr<const Impl> share_impl() const { return impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

/// H(r) = (1-r)(1 - |phi><phi|) + r(1 - |m><m|), tracked on the bottom branch.
HamiltonianPath make_grover_path(std::size_t n_items, std::size_t marked);

/// n-segment clock-register path through |gamma_l> = (U_l...U_1|psi>)|l>;
/// tracked branch has eigenvalue -delta/2 throughout.
HamiltonianPath make_clock_path(const CircuitSpec& circuit, double delta,
                                const StateVector& seed);

/// n-segment prefix-projector path with endpoint eigenstates |x(l),+,...,+>;
/// tracked on the top (delta) branch, which carries the constant gap delta.
HamiltonianPath make_ordered_search_path(const SecretWord& word, double delta);

/// H(r) <- q(r) H(r) on an ordered-search path; local gap becomes q(r) delta.
HamiltonianPath apply_gap_profile(const HamiltonianPath& path, const GapProfile& profile);

/// Escape hatch for callers assembling their own families (tests, wrappers).
HamiltonianPath make_custom_path(std::size_t dim,
                                 std::function<void(double, ComplexMatrix&)> evaluator,
                                 std::vector<double> interior_breakpoints,
                                 TrackRule track, double delta);

/// Analytic tracked eigenstate at r, gauge-fixed continuously in r.
/// Supported for grover, clock, ordered-search and scaled paths.
StateVector reference_eigenpath(const HamiltonianPath& path, double r);

/// Prefix state |a,+,...,+> on n qubits: first l qubits pinned to the bits of
/// `prefix_value` (MSB first), the rest in |+>.
std::vector<cplx> prefix_plus_state(int n, int l, std::uint32_t prefix_value);

/// Weight and normalized system state on the clock-n subspace of a clock-path
/// vector; weight is the probability of finding the clock at |n>.
std::pair<double, StateVector> clock_extract_system(const HamiltonianPath& path,
                                                    const StateVector& state);

}  // namespace eigenpath
