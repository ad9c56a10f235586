#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "eigenpath/analysis.hpp"
#include "eigenpath/paths.hpp"
#include "test_util.hpp"

using namespace eigenpath;
using testutil::uniform_state;

namespace {

constexpr double kPi = std::numbers::pi;

// analytic Grover gap g(r) = sqrt(1 - 4(1 - 1/N) r (1-r))
double grover_gap_formula(std::size_t n, double r) {
  return std::sqrt(1.0 - 4.0 * (1.0 - 1.0 / double(n)) * r * (1.0 - r));
}

std::vector<cplx> apply_matrix(const ComplexMatrix& m, const std::vector<cplx>& v) {
  std::vector<cplx> out(v.size());
  kernels::matvec(v.size(), m.data(), v.data(), out.data());
  return out;
}

CircuitSpec bell_circuit() {
  std::istringstream src("GATE H 0\nGATE CNOT 0 1\n");
  return parse_circuit(src, 2);
}

}  // namespace

TEST_CASE("secret word bit and prefix conventions (MSB first)") {
  SecretWord w(4, 0b1010);
  CHECK(w.bit(0) == 1);
  CHECK(w.bit(1) == 0);
  CHECK(w.bit(2) == 1);
  CHECK(w.bit(3) == 0);
  CHECK(w.prefix(0) == 0);
  CHECK(w.prefix(1) == 1);
  CHECK(w.prefix(2) == 0b10);
  CHECK(w.prefix(4) == 0b1010);
  CHECK_THROWS_AS(SecretWord(0, 0), ValidationError);
  CHECK_THROWS_AS(SecretWord(17, 0), ValidationError);
  CHECK_THROWS_AS(SecretWord(3, 8), ValidationError);
}

TEST_CASE("prefix states overlap by exactly 1/sqrt(2) between levels") {
  for (int n : {2, 4, 6}) {
    for (std::uint32_t x : {0u, 1u, (1u << n) - 1, (1u << n) / 3}) {
      SecretWord w(n, x);
      for (int l = 1; l <= n; ++l) {
        auto u = prefix_plus_state(n, l - 1, w.prefix(l - 1));
        auto v = prefix_plus_state(n, l, w.prefix(l));
        const cplx ov = kernels::dot_conj(u.size(), u.data(), v.data());
        CHECK(std::abs(std::abs(ov) - 1.0 / std::sqrt(2.0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("grover path endpoints annihilate their eigenstates") {
  for (std::size_t n : {2u, 8u}) {
    auto path = make_grover_path(n, n / 2);
    auto phi = uniform_state(n);
    auto h0 = path.evaluate(0.0);
    auto r0 = apply_matrix(h0.matrix(), phi.amplitudes());
    CHECK(std::sqrt(kernels::norm_sq(n, r0.data())) <= 1e-12);

    auto h1 = path.evaluate(1.0);
    std::vector<cplx> m(n, cplx{0, 0});
    m[n / 2] = 1.0;
    auto r1 = apply_matrix(h1.matrix(), m);
    CHECK(std::sqrt(kernels::norm_sq(n, r1.data())) <= 1e-12);
  }
}

TEST_CASE("grover path gap matches the analytic profile") {
  auto path = make_grover_path(2, 0);
  auto w = eigenvalues_of(path.evaluate(0.5));
  CHECK(w[1] - w[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));

  auto p4 = make_grover_path(4, 3);
  for (double r : {0.0, 0.21, 0.5, 0.77, 1.0}) {
    auto ww = eigenvalues_of(p4.evaluate(r));
    CHECK(ww[1] - ww[0] == doctest::Approx(grover_gap_formula(4, r)).epsilon(1e-9));
  }
}

TEST_CASE("grover spectrum is symmetric under r -> 1-r") {
  auto path = make_grover_path(8, 5);
  for (double r : {0.1, 0.33, 0.47}) {
    auto a = eigenvalues_of(path.evaluate(r));
    auto b = eigenvalues_of(path.evaluate(1.0 - r));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-10);
  }
}

TEST_CASE("grover path validates its arguments") {
  CHECK_THROWS_AS(make_grover_path(6, 0), ValidationError);   // not a power of two
  CHECK_THROWS_AS(make_grover_path(8, 8), ValidationError);   // marked out of range
}

TEST_CASE("clock path: single identity gate at s = 0") {
  const double delta = 1.3;
  CircuitSpec idc(1, {ComplexMatrix::identity(2)});
  auto seed = testutil::basis_state(2, 0);
  auto path = make_clock_path(idc, delta, seed);
  CHECK(path.dim() == 4);  // 2 system x 2 clock

  auto h = path.evaluate(0.0);
  // expect -delta/2 (1 (x) (|0><0| - |1><1|)): diagonal -d/2, +d/2, -d/2, +d/2
  CHECK(h.at(0, 0).real() == doctest::Approx(-delta / 2));
  CHECK(h.at(1, 1).real() == doctest::Approx(delta / 2));
  CHECK(h.at(2, 2).real() == doctest::Approx(-delta / 2));
  CHECK(h.at(3, 3).real() == doctest::Approx(delta / 2));
  CHECK(hermiticity_deviation(h.matrix()) <= 1e-15);

  // tracked branch: |psi>|0> with eigenvalue -delta/2
  auto sample = tracked_eigenstate(path, 0.0);
  CHECK(sample.eigenvalue == doctest::Approx(-delta / 2));
  auto gamma0 = *path.continuation_seed();
  CHECK(std::norm(kernels::dot_conj(4, gamma0.data(), sample.state.data())) ==
        doctest::Approx(1.0));
}

TEST_CASE("clock path: active subspace carries eigenvalues +-delta/2 for all s") {
  const double delta = 0.9;
  auto path = make_clock_path(bell_circuit(), delta, uniform_state(4));
  for (double r : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95}) {
    auto w = eigenvalues_of(path.evaluate(r));
    CHECK(w.front() == doctest::Approx(-delta / 2).epsilon(1e-10));
    CHECK(w.back() == doctest::Approx(delta / 2).epsilon(1e-10));
  }
}

TEST_CASE("clock path leaves the active two-dimensional subspace invariant") {
  const double delta = 1.0;
  auto path = make_clock_path(bell_circuit(), delta, uniform_state(4));
  const auto& impl = path.impl();
  const std::size_t d = path.dim();

  for (int l = 1; l <= path.segment_count(); ++l) {
    const double r = (l - 0.6) / path.segment_count();
    auto ref_lo = reference_eigenpath(path, double(l - 1) / path.segment_count());
    auto ref_hi = reference_eigenpath(path, double(l) / path.segment_count());
    (void)impl;
    auto h = path.evaluate(r);

    // A = (1 - P) H P with P the projector on span{gamma_{l-1}, gamma_l}
    for (const auto& g : {ref_lo.amplitudes(), ref_hi.amplitudes()}) {
      auto hg = apply_matrix(h.matrix(), g);
      // subtract the components inside the span
      const cplx c1 = kernels::dot_conj(d, ref_lo.data(), hg.data());
      const cplx c2 = kernels::dot_conj(d, ref_hi.data(), hg.data());
      kernels::axpy(d, -c1, ref_lo.data(), hg.data());
      kernels::axpy(d, -c2, ref_hi.data(), hg.data());
      CHECK(std::sqrt(kernels::norm_sq(d, hg.data())) <= 1e-12);
    }
  }
}

TEST_CASE("clock path final tracked state is the circuit output with clock n") {
  auto circuit = bell_circuit();
  auto seed = testutil::basis_state(4, 0);
  auto path = make_clock_path(circuit, 1.0, seed);
  auto final = tracked_eigenstate(path, 1.0);

  auto want_sys = apply_circuit(circuit, seed);
  const std::size_t clock = 3;
  std::vector<cplx> want(path.dim(), cplx{0, 0});
  for (std::size_t i = 0; i < 4; ++i) want[i * clock + 2] = want_sys[i];
  CHECK(std::norm(kernels::dot_conj(want.size(), want.data(), final.state.data())) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("clock path rejects empty circuits and bad seeds") {
  CHECK_THROWS_AS(CircuitSpec(1, {}), ValidationError);
  CircuitSpec idc(1, {ComplexMatrix::identity(2)});
  CHECK_THROWS_AS(make_clock_path(idc, 1.0, uniform_state(4)), ValidationError);
  CHECK_THROWS_AS(make_clock_path(idc, 0.0, uniform_state(2)), ValidationError);
  ComplexMatrix not_unitary(2);
  not_unitary.at(0, 0) = 2.0;
  CHECK_THROWS_AS(CircuitSpec(1, {not_unitary}), ValidationError);
}

TEST_CASE("ordered-search path endpoints and tracked branch") {
  const double delta = 0.7;
  SecretWord w(3, 5);
  auto path = make_ordered_search_path(w, delta);
  CHECK(path.track() == TrackRule::extremal_top);

  for (int l = 0; l <= 3; ++l) {
    const double r = double(l) / 3;
    auto sample = tracked_eigenstate(path, r);
    CHECK(sample.eigenvalue == doctest::Approx(delta).epsilon(1e-10));
    auto want = prefix_plus_state(3, l, w.prefix(l));
    CHECK(std::norm(kernels::dot_conj(8, want.data(), sample.state.data())) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("ordered-search path n=1 midpoint matches the dense diagonalization") {
  SecretWord w(1, 1);
  auto path = make_ordered_search_path(w, 1.0);
  auto dec = eigendecompose(path.evaluate(0.5));
  auto ref = reference_eigenpath(path, 0.5);
  auto top = dec.eigenvector(1);
  CHECK(std::norm(kernels::dot_conj(2, top.data(), ref.data())) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("path evaluators are Lipschitz on a grid") {
  SecretWord w(3, 2);
  auto ordered = make_ordered_search_path(w, 1.0);
  auto clock = make_clock_path(bell_circuit(), 1.0, uniform_state(4));
  auto grover = make_grover_path(8, 1);
  const double dr = 1e-4;
  for (const auto& path : {ordered, clock, grover}) {
    const double lip = kPi * path.segment_count() * std::max(path.delta(), 1.0);
    ComplexMatrix a(path.dim()), b(path.dim());
    for (int k = 0; k < 40; ++k) {
      const double r = 0.012 + 0.97 * k / 39.0;
      path.evaluate_into(r, a);
      path.evaluate_into(r + dr, b);
      const std::size_t nn = path.dim() * path.dim();
      for (std::size_t i = 0; i < nn; ++i) b.data()[i] -= a.data()[i];
      CHECK(operator_norm(b) <= lip * dr * (1 + 1e-6));
    }
  }
}

TEST_CASE("reference eigenpath solves the eigenproblem for every kind") {
  SecretWord w(3, 6);
  auto ordered = make_ordered_search_path(w, 0.8);
  auto clock = make_clock_path(bell_circuit(), 1.1, uniform_state(4));
  auto grover = make_grover_path(16, 11);
  for (const auto& path : {ordered, clock, grover}) {
    for (int k = 0; k <= 24; ++k) {
      const double r = double(k) / 24;
      auto psi = reference_eigenpath(path, r);
      auto h = path.evaluate(r);
      auto hpsi = apply_matrix(h.matrix(), psi.amplitudes());
      const double lam =
          kernels::dot_conj(psi.dim(), psi.data(), hpsi.data()).real();
      kernels::axpy(psi.dim(), cplx{-lam, 0.0}, psi.data(), hpsi.data());
      const double resid = std::sqrt(kernels::norm_sq(psi.dim(), hpsi.data()));
      CHECK(resid <= 1e-8 * path.delta());
    }
  }
}

TEST_CASE("reference eigenpath is gauge-continuous in r") {
  SecretWord w(2, 1);
  auto ordered = make_ordered_search_path(w, 1.0);
  auto clock = make_clock_path(bell_circuit(), 1.0, uniform_state(4));
  auto grover = make_grover_path(8, 0);
  for (const auto& path : {ordered, clock, grover}) {
    StateVector prev = reference_eigenpath(path, 0.0);
    for (int k = 1; k <= 64; ++k) {
      auto cur = reference_eigenpath(path, double(k) / 64);
      const cplx ov = kernels::dot_conj(prev.dim(), prev.data(), cur.data());
      CHECK(ov.real() > 0.0);
      prev = cur;
    }
  }
}

TEST_CASE("clock reference hits the segment endpoints and midpoints") {
  auto circuit = bell_circuit();
  auto seed = testutil::basis_state(4, 1);
  auto path = make_clock_path(circuit, 1.0, seed);
  // r = 1/2 is the start of segment 2: |gamma_1>
  auto g1 = reference_eigenpath(path, 0.5);
  auto s1 = apply_matrix(circuit.gates[0], seed.amplitudes());
  std::vector<cplx> want(path.dim(), cplx{0, 0});
  for (std::size_t i = 0; i < 4; ++i) want[i * 3 + 1] = s1[i];
  CHECK(std::norm(kernels::dot_conj(want.size(), want.data(), g1.data())) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // mid-segment: (|gamma_0> + |gamma_1>)/sqrt(2)
  auto mid = reference_eigenpath(path, 0.25);
  std::vector<cplx> g0(path.dim(), cplx{0, 0});
  for (std::size_t i = 0; i < 4; ++i) g0[i * 3 + 0] = seed[i];
  const double a0 = std::abs(kernels::dot_conj(g0.size(), g0.data(), mid.data()));
  const double a1 = std::abs(kernels::dot_conj(want.size(), want.data(), mid.data()));
  CHECK(a0 == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(a1 == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("gap profile scaling") {
  SecretWord w(2, 3);
  auto base = make_ordered_search_path(w, 1.4);

  auto same = apply_gap_profile(base, GapProfile::constant(1.0));
  ComplexMatrix a(base.dim()), b(base.dim());
  for (double r : {0.0, 0.3, 0.8, 1.0}) {
    base.evaluate_into(r, a);
    same.evaluate_into(r, b);
    for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(a.data()[i] - b.data()[i]) <= 1e-15);
  }

  auto doubled = apply_gap_profile(base, GapProfile::constant(2.0));
  for (double r : {0.1, 0.6}) {
    CHECK(local_gap(doubled, r) == doctest::Approx(2 * local_gap(base, r)).epsilon(1e-10));
  }

  auto ramp = apply_gap_profile(base, GapProfile::linear_ramp());
  for (double r : {0.0, 0.25, 0.5, 0.9}) {
    CHECK(local_gap(ramp, r) == doctest::Approx((1 + r) * 1.4).epsilon(1e-8));
  }

  // eigenvectors invariant under the scaling
  auto s0 = tracked_eigenstate(ramp, 0.37);
  auto s1 = tracked_eigenstate(base, 0.37);
  CHECK(fidelity(s0.state, s1.state) == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(apply_gap_profile(base, GapProfile::constant(-1.0)), ValidationError);
  CHECK_THROWS_AS(apply_gap_profile(make_grover_path(4, 0), GapProfile::constant(1.0)),
                  ValidationError);
}

TEST_CASE("negated path flips the spectrum and the tracked branch") {
  SecretWord w(2, 0);
  auto path = make_ordered_search_path(w, 1.0);
  auto neg = path.negated();
  CHECK(neg.track() == TrackRule::extremal_bottom);
  auto wpos = eigenvalues_of(path.evaluate(0.4));
  auto wneg = eigenvalues_of(neg.evaluate(0.4));
  for (std::size_t i = 0; i < wpos.size(); ++i) {
    CHECK(wneg[i] == doctest::Approx(-wpos[wpos.size() - 1 - i]).epsilon(1e-12));
  }
  auto a = tracked_eigenstate(path, 0.4);
  auto b = tracked_eigenstate(neg, 0.4);
  CHECK(fidelity(a.state, b.state) == doctest::Approx(1.0));
  CHECK(b.eigenvalue == doctest::Approx(-a.eigenvalue));
}

TEST_CASE("circuit parser: bell circuit and diagnostics") {
  auto c = bell_circuit();
  CHECK(c.gate_count() == 2);
  auto out = apply_circuit(c, testutil::basis_state(4, 0));
  // (|00> + |11>)/sqrt(2)
  CHECK(std::abs(out[0]) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(out[3]) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(out[1]) <= 1e-14);

  std::istringstream bad1("GATE H 0\nGATE FOO 1\n");
  try {
    parse_circuit(bad1, 2);
    FAIL("expected CircuitParseError");
  } catch (const CircuitParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream bad2("GATE U3 0 1.0 2.0\n");
  CHECK_THROWS_AS(parse_circuit(bad2, 2), CircuitParseError);
  std::istringstream bad3("GATE H 5\n");
  CHECK_THROWS_AS(parse_circuit(bad3, 2), CircuitParseError);
  std::istringstream empty("# nothing\n\n");
  CHECK_THROWS_AS(parse_circuit(empty, 2), CircuitParseError);

  std::istringstream u3ok("GATE U3 1 0.4 0.2 0.1 # comment\nGATE T 0\nGATE Z 1\nGATE X 0\n");
  auto c2 = parse_circuit(u3ok, 2);
  CHECK(c2.gate_count() == 4);
  for (const auto& g : c2.gates) CHECK(unitarity_deviation(g) <= 1e-12);
}

TEST_CASE("clock_extract_system recovers the system part on the final clock") {
  auto circuit = bell_circuit();
  auto seed = testutil::basis_state(4, 0);
  auto path = make_clock_path(circuit, 1.0, seed);
  auto final = tracked_eigenstate(path, 1.0);
  auto [weight, sys] = clock_extract_system(path, final.state);
  CHECK(weight == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fidelity(sys, apply_circuit(circuit, seed)) == doctest::Approx(1.0).epsilon(1e-9));
}
