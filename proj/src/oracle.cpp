#include "eigenpath/oracle.hpp"

#include <cmath>
#include <numbers>

namespace eigenpath::oracle {

Phase r_query_phase(const SecretWord& x, long value) {
  if (value == kSentinel) return +1;
  if (value < 0 || value >= long(x.domain_size())) {
    throw ValidationError("r_query_phase: register value out of range");
  }
  return value >= long(x.x) ? -1 : +1;
}

Phase q_query_phase(const SecretWord& x, int l, std::uint32_t a_prefix) {
  if (l < 1 || l > x.n) throw ValidationError("q_query_phase: l out of range");
  if (a_prefix >= (std::uint32_t(1) << l)) {
    throw ValidationError("q_query_phase: prefix does not fit in l bits");
  }
  return a_prefix == x.prefix(l) ? -1 : +1;
}

OracleRegisterState w_load(const SecretWord& x, int l, std::uint32_t a_prefix) {
  if (l < 1 || l > x.n) throw ValidationError("w_load: l out of range");
  if (a_prefix >= (std::uint32_t(1) << l)) {
    throw ValidationError("w_load: prefix does not fit in l bits");
  }
  OracleRegisterState st;
  st.system = a_prefix;
  st.l = l;
  st.n = x.n;
  const int rest = x.n - l;
  st.ancilla = (long(a_prefix) << rest) | ((1L << rest) - 1);  // [a(l), 1, ..., 1]
  st.phase = +1;
  return st;
}

void r_on_ancilla(const SecretWord& x, OracleRegisterState& st) {
  st.phase *= r_query_phase(x, st.ancilla);
}

void v_transform(OracleRegisterState& st) {
  const int rest = st.n - st.l;
  st.ancilla = (long(st.system) << rest) - 1;  // sentinel when a(l) = 0...0
}

void u_uncompute(OracleRegisterState& st) {
  const int rest = st.n - st.l;
  const long expect = (long(st.system) << rest) - 1;
  if (st.ancilla != expect) {
    throw std::logic_error("oracle pipeline: ancilla not in the predicted state");
  }
  st.ancilla = 0;
}

Phase q_via_double_r(const SecretWord& x, int l, std::uint32_t a_prefix) {
  OracleRegisterState st = w_load(x, l, a_prefix);
  r_on_ancilla(x, st);       // first query at c(a) = [a(l), 1...1]
  v_transform(st);
  r_on_ancilla(x, st);       // second query at b(a) = [a(l), 0...0] - 1
  u_uncompute(st);
  if (st.ancilla != 0) {
    throw std::logic_error("oracle pipeline: ancilla not restored to zero");
  }
  return st.phase == -1 ? -1 : +1;
}

QueryEquivalenceReport hamiltonian_query_equivalence(const SecretWord& x, int l,
                                                     double delta) {
  if (x.n > 8) throw ValidationError("query equivalence check supports n <= 8");
  if (l < 1 || l > x.n) throw ValidationError("query equivalence: l out of range");
  if (!(delta > 0.0)) throw ValidationError("query equivalence: delta must be positive");

  const std::size_t dim = x.domain_size();
  auto target = prefix_plus_state(x.n, l, x.prefix(l));
  ComplexMatrix h(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      h.at(i, j) = delta * target[i] * std::conj(target[j]);
    }
  }
  const auto op = HermitianOperator::trusted(std::move(h));
  const double tau = std::numbers::pi / delta;

  QueryEquivalenceReport rep;
  rep.all_match = true;
  rep.worst_fidelity = 1.0;
  for (std::uint32_t a = 0; a < (std::uint32_t(1) << l); ++a) {
    const StateVector in = trusted_state(prefix_plus_state(x.n, l, a));
    const StateVector out = propagate(op, tau, in);
    const double sign = q_query_phase(x, l, a);
    cplx ov = kernels::dot_conj(dim, in.data(), out.data()) * sign;
    const double fid = (ov.real() > 0.0) ? std::norm(ov) : 0.0;
    rep.worst_fidelity = std::min(rep.worst_fidelity, fid);
    if (fid < 1.0 - 1e-9) rep.all_match = false;
    ++rep.cases_checked;
  }
  return rep;
}

}  // namespace eigenpath::oracle
