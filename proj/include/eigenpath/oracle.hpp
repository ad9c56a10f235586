#pragma once

#include "eigenpath/paths.hpp"

// Phase queries for ordered search, modeled at phase-kickback level on
// computational basis values: R_x marks positions at or past the secret word,
// Q_x^l marks prefix matches, and the two-R_x pipeline realizes Q from R via
// the binary-subtraction trick.
namespace eigenpath::oracle {

using Phase = int;  // +1 or -1

inline constexpr long kSentinel = -1;  // the "[0...0] - 1" underflow marker

/// R_x on an n-bit register value: phase (-1)^{alpha_x^a}, i.e. -1 iff
/// a >= x. The sentinel always gets +1 (x > -1 for every input).
Phase r_query_phase(const SecretWord& x, long value);

/// Q_x^l on an l-bit prefix: -1 iff the prefix equals x(l).
Phase q_query_phase(const SecretWord& x, int l, std::uint32_t a_prefix);

/// Workspace registers for the U R V R W pipeline.
struct OracleRegisterState {
  std::uint32_t system = 0;  // the l-bit prefix a(l)
  int l = 0;
  int n = 0;
  long ancilla = 0;          // n-bit value, or kSentinel
  Phase phase = +1;
};

/// W^l: load the ancilla with c(a) = [a_0..a_{l-1}, 1, ..., 1].
OracleRegisterState w_load(const SecretWord& x, int l, std::uint32_t a_prefix);
/// R_x on the ancilla register.
void r_on_ancilla(const SecretWord& x, OracleRegisterState& st);
/// V^l: ancilla <- [a_0..a_{l-1}, 0, ..., 0] - 1 (sentinel on underflow).
void v_transform(OracleRegisterState& st);
/// U^l: uncompute the ancilla back to zero; throws std::logic_error when the
/// register does not hold the value the construction predicts.
void u_uncompute(OracleRegisterState& st);

/// Full pipeline; must agree with q_query_phase on every input.
Phase q_via_double_r(const SecretWord& x, int l, std::uint32_t a_prefix);

struct QueryEquivalenceReport {
  bool all_match = false;
  double worst_fidelity = 0.0;  // min |<expected|evolved>|^2, sign included
  int cases_checked = 0;
};

/// Evolves |a(l),+,...,+> under Delta |x(l),+..+><x(l),+..+| for time
/// pi/Delta and compares with the phase predicted by q_query_phase.
QueryEquivalenceReport hamiltonian_query_equivalence(const SecretWord& x, int l,
                                                     double delta);

}  // namespace eigenpath::oracle
