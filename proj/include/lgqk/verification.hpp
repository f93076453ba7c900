#ifndef LGQK_VERIFICATION_HPP
#define LGQK_VERIFICATION_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lgqk/kernels.hpp"
#include "lgqk/quantum.hpp"
#include "lgqk/rng.hpp"

namespace lgqk {

/// One oracle cross-check: a closed form and an exact-simulation route
/// evaluated on random inputs, with the worst observed deviation.
struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double worst_error = 0.0;
  bool passed = false;
};

namespace detail {

inline std::vector<double> random_point(Rng& rng, int d) {
  std::vector<double> x(d);
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  return x;
}

inline StateVector encoded_state(const GateProgram& p) { return apply_program(p, StateVector::zero_state(p.num_qubits)); }

}  // namespace detail

/// Closed-form angle kernel against statevector fidelity, d in {1,2,3}.
inline CheckResult check_angle_closed_form(Rng& rng, int pairs = 20, double tol = 1e-10) {
  CheckResult r{"angle closed form vs statevector fidelity", tol, 0.0, false};
  for (int i = 0; i < pairs; ++i) {
    const int d = 1 + i % 3;
    const double c = rng.uniform(0.3, 3.0);
    const auto x = detail::random_point(rng, d);
    const auto z = detail::random_point(rng, d);
    const double closed = angle_base_kernel(c, x, z);
    const double sim = fidelity(detail::encoded_state(angle_encoding_program(c, x)),
                                detail::encoded_state(angle_encoding_program(c, z)));
    r.worst_error = std::max(r.worst_error, std::abs(closed - sim));
  }
  r.passed = r.worst_error <= tol;
  return r;
}

/// Closed-form Fourier kernel against statevector fidelity, d in {1,2},
/// s in {1,2,3}.
inline CheckResult check_fourier_closed_form(Rng& rng, int pairs = 20, double tol = 1e-10) {
  CheckResult r{"fourier closed form vs statevector fidelity", tol, 0.0, false};
  for (int i = 0; i < pairs; ++i) {
    const int d = 1 + i % 2;
    const int s = 1 + i % 3;
    const double c = rng.uniform(0.3, 3.0);
    const auto lam = harmonic_eigenvalues(s);
    const auto x = detail::random_point(rng, d);
    const auto z = detail::random_point(rng, d);

    KernelSpec spec;
    spec.family = KernelFamily::fourier;
    spec.bandwidth = c;
    spec.subsystem_qubits = s;
    spec.fourier_eigenvalues = lam;
    const double closed = fourier_base_kernel(spec, x, z);
    const double sim = fidelity(detail::encoded_state(fourier_encoding_program(c, x, s, lam)),
                                detail::encoded_state(fourier_encoding_program(c, z, s, lam)));
    r.worst_error = std::max(r.worst_error, std::abs(closed - sim));
  }
  r.passed = r.worst_error <= tol;
  return r;
}

/// Measuring O = l_L O_L + l_G O_G on sigma_tilde^{⊗q} against the
/// classical combination l_L k + l_G k^q, s = 1, q in {2, 3}.
inline CheckResult check_circuit_observable_identity(Rng& rng, int pairs = 10, double tol = 1e-10) {
  CheckResult r{"circuit observable vs weighted kernel sum", tol, 0.0, false};
  const double lambda_local = 1.0, lambda_global = 0.1;
  for (int i = 0; i < pairs; ++i) {
    const int q = 2 + i % 2;
    const double c = rng.uniform(0.3, 3.0);
    const auto x = detail::random_point(rng, 1);
    const auto z = detail::random_point(rng, 1);

    const auto encoder = [&](std::span<const double> v) {
      return replicate_blocks(angle_encoding_program(c, v), q);
    };
    const DensityMatrix sigma_tilde = partial_trace(sigma_xz(encoder, x, z, zero_projector(1)), 1);
    const DensityMatrix sigma_q = DensityMatrix::from_matrix(q, kron_power(sigma_tilde.entries, q));
    const double measured = expectation(sigma_q, local_global_observable(lambda_local, lambda_global, 1, q));

    const double k = angle_base_kernel(c, x, z);
    const double combined = lambda_local * k + lambda_global * std::pow(k, q);
    r.worst_error = std::max(r.worst_error, std::abs(measured - combined));
  }
  r.passed = r.worst_error <= tol;
  return r;
}

/// Local kernel via full-system matrices against the partial-trace
/// route, all t <= 4 and s < t.
inline CheckResult check_partial_trace_identity(Rng& rng, double tol = 1e-12) {
  CheckResult r{"local kernel: full-system trace vs partial-trace route", tol, 0.0, false};
  for (int t = 2; t <= 4; ++t) {
    for (int s = 1; s < t; ++s) {
      const double c = rng.uniform(0.3, 3.0);
      const auto x = detail::random_point(rng, t);
      const auto z = detail::random_point(rng, t);
      const auto encoder = [&](std::span<const double> v) { return angle_encoding_program(c, v); };

      const ComplexMatrix projector = zero_projector(s);
      const ComplexMatrix ux = program_unitary(encoder(x));
      const ComplexMatrix uz = program_unitary(encoder(z));
      const ComplexMatrix mixed = local_mixed_state(projector, t).entries;
      const ComplexMatrix rho_x = ux * mixed * ux.adjoint();
      const ComplexMatrix rho_z = uz * mixed * uz.adjoint();
      const double full = (rho_x * rho_z).trace().real();

      const DensityMatrix sigma_tilde = partial_trace(sigma_xz(encoder, x, z, projector), s);
      const double scale = 1.0 / static_cast<double>(std::size_t{1} << (t - s));
      const double reduced = scale * (sigma_tilde.entries * projector).trace().real();

      r.worst_error = std::max(r.worst_error, std::abs(full - reduced));
    }
  }
  r.passed = r.worst_error <= tol;
  return r;
}

/// Under separable encoding the reduced sigma equals the single-block
/// conjugation, s in {1,2,3}.
inline CheckResult check_separable_reduction(Rng& rng, double tol = 1e-12) {
  CheckResult r{"separable encoding: reduced sigma vs block formula", tol, 0.0, false};
  for (int s = 1; s <= 3; ++s) {
    const int q = 2;
    const double c = rng.uniform(0.3, 3.0);
    const auto x = detail::random_point(rng, s);
    const auto z = detail::random_point(rng, s);
    const auto block = [&](std::span<const double> v) { return angle_encoding_program(c, v); };
    const auto encoder = [&](std::span<const double> v) { return replicate_blocks(block(v), q); };

    const DensityMatrix reduced = partial_trace(sigma_xz(encoder, x, z, zero_projector(s)), s);
    const ComplexMatrix w = program_unitary(block(z)).adjoint() * program_unitary(block(x));
    const ComplexMatrix direct = w * zero_projector(s) * w.adjoint();
    r.worst_error = std::max(r.worst_error, max_abs_diff(reduced.entries, direct));
  }
  r.passed = r.worst_error <= tol;
  return r;
}

/// Global kernel of the separable encoding against the closed form k^q,
/// s = 1, q <= 3.
inline CheckResult check_separable_global(Rng& rng, int pairs = 10, double tol = 1e-10) {
  CheckResult r{"separable global kernel vs k^q", tol, 0.0, false};
  for (int i = 0; i < pairs; ++i) {
    const int q = 1 + i % 3;
    const double c = rng.uniform(0.3, 3.0);
    const auto x = detail::random_point(rng, 1);
    const auto z = detail::random_point(rng, 1);
    const auto program = [&](std::span<const double> v) {
      return replicate_blocks(angle_encoding_program(c, v), q);
    };
    const double sim = fidelity(detail::encoded_state(program(x)), detail::encoded_state(program(z)));
    const double closed = std::pow(angle_base_kernel(c, x, z), q);
    r.worst_error = std::max(r.worst_error, std::abs(sim - closed));
  }
  r.passed = r.worst_error <= tol;
  return r;
}

/// Programs preserve inner products.
inline CheckResult check_unitarity(Rng& rng, int trials = 10, double tol = 1e-10) {
  CheckResult r{"gate programs preserve inner products", tol, 0.0, false};
  const int t = 4;
  for (int i = 0; i < trials; ++i) {
    GateProgram p;
    p.num_qubits = t;
    for (int g = 0; g < 6; ++g) {
      const int kind = static_cast<int>(rng.next_u64() % 3);
      const int qubit = static_cast<int>(rng.next_u64() % t);
      if (kind == 0)
        p.gates.push_back(RxGate{qubit, rng.uniform(-3.0, 3.0)});
      else if (kind == 1)
        p.gates.push_back(HadamardGate{qubit});
      else
        p.gates.push_back(DiagonalBlockGate{0, 2, rng.uniform(-2.0, 2.0), harmonic_eigenvalues(2)});
    }

    auto random_state = [&] {
      std::vector<cdouble> amps(std::size_t{1} << t);
      double norm2 = 0.0;
      for (cdouble& a : amps) {
        a = cdouble{rng.normal(), rng.normal()};
        norm2 += std::norm(a);
      }
      const double inv = 1.0 / std::sqrt(norm2);
      for (cdouble& a : amps) a *= inv;
      return StateVector::from_amplitudes(t, std::move(amps));
    };
    const StateVector a = random_state();
    const StateVector b = random_state();

    auto inner = [](const StateVector& u, const StateVector& v) {
      cdouble ip{0.0, 0.0};
      for (std::size_t k = 0; k < u.amplitudes.size(); ++k) ip += std::conj(u.amplitudes[k]) * v.amplitudes[k];
      return ip;
    };
    const cdouble before = inner(a, b);
    const cdouble after = inner(apply_program(p, a), apply_program(p, b));
    r.worst_error = std::max(r.worst_error, std::abs(after - before));
  }
  r.passed = r.worst_error <= tol;
  return r;
}

/// The full oracle-equivalence suite on one seed.
inline std::vector<CheckResult> run_verification(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> results;
  results.push_back(check_angle_closed_form(rng));
  results.push_back(check_fourier_closed_form(rng));
  results.push_back(check_circuit_observable_identity(rng));
  results.push_back(check_partial_trace_identity(rng));
  results.push_back(check_separable_reduction(rng));
  results.push_back(check_separable_global(rng));
  results.push_back(check_unitarity(rng));
  return results;
}

}  // namespace lgqk

#endif  // LGQK_VERIFICATION_HPP
