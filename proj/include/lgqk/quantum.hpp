#ifndef LGQK_QUANTUM_HPP
#define LGQK_QUANTUM_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lgqk/complex_matrix.hpp"
#include "lgqk/errors.hpp"
#include "lgqk/rng.hpp"

namespace lgqk {

/// Dense simulation cap: states and operators live in at most 2^12
/// dimensions. Enough for every oracle cross-check in the suite.
inline constexpr int kMaxQubits = 12;

inline int checked_qubit_count(int t) {
  if (t < 1) throw value_error("qubit count must be >= 1");
  if (t > kMaxQubits)
    throw capacity_error("dense simulation capped at " + std::to_string(kMaxQubits) + " qubits, got " +
                         std::to_string(t));
  return t;
}

inline std::size_t state_dim(int t) { return std::size_t{1} << checked_qubit_count(t); }

/// Pure state of t qubits. Qubit 0 is the most significant bit of the
/// basis index, so "the first s qubits" are the leading index bits.
struct StateVector {
  int num_qubits = 0;
  std::vector<cdouble> amplitudes;

  static StateVector zero_state(int t) {
    StateVector s;
    s.num_qubits = checked_qubit_count(t);
    s.amplitudes.assign(state_dim(t), cdouble{0.0, 0.0});
    s.amplitudes[0] = 1.0;
    return s;
  }

  static StateVector from_amplitudes(int t, std::vector<cdouble> amps) {
    if (amps.size() != state_dim(t)) throw dimension_error("StateVector: amplitude count does not match 2^t");
    double norm2 = 0.0;
    for (const cdouble& a : amps) norm2 += std::norm(a);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
      throw value_error("StateVector: norm deviates from 1 by more than 1e-12");
    StateVector s;
    s.num_qubits = t;
    s.amplitudes = std::move(amps);
    return s;
  }
};

/// Mixed state of t qubits. Construction checks Hermiticity and unit
/// trace at 1e-12; positivity is an invariant checked where it matters
/// (see min_eigenvalue).
struct DensityMatrix {
  int num_qubits = 0;
  ComplexMatrix entries;

  static DensityMatrix from_matrix(int t, ComplexMatrix m) {
    const int dim = static_cast<int>(state_dim(t));
    if (m.rows() != dim || m.cols() != dim) throw dimension_error("DensityMatrix: shape does not match 2^t");
    if (!is_hermitian(m, 1e-12)) throw symmetry_error("DensityMatrix: not Hermitian within 1e-12");
    if (std::abs(m.trace() - cdouble{1.0, 0.0}) > 1e-12) throw value_error("DensityMatrix: trace deviates from 1");
    DensityMatrix d;
    d.num_qubits = t;
    d.entries = std::move(m);
    return d;
  }

  double min_eigenvalue() const {
    const std::vector<double> lam = hermitian_eigenvalues(entries);
    double m = lam.front();
    for (double l : lam) m = std::min(m, l);
    return m;
  }
};

struct Observable {
  int num_qubits = 0;
  ComplexMatrix entries;

  static Observable from_matrix(int t, ComplexMatrix m) {
    const int dim = static_cast<int>(state_dim(t));
    if (m.rows() != dim || m.cols() != dim) throw dimension_error("Observable: shape does not match 2^t");
    if (!is_hermitian(m, 1e-12)) throw symmetry_error("Observable: not Hermitian within 1e-12");
    Observable o;
    o.num_qubits = t;
    o.entries = std::move(m);
    return o;
  }
};

/// R_X(theta) = [[cos(theta/2), i sin(theta/2)], [i sin(theta/2), cos(theta/2)]].
struct RxGate {
  int qubit = 0;
  double theta = 0.0;
};

struct HadamardGate {
  int qubit = 0;
};

/// Diagonal unitary exp(-i * angle * D) on a contiguous block of qubits,
/// with D given by its eigenvalue list (length 2^block_qubits).
struct DiagonalBlockGate {
  int first_qubit = 0;
  int block_qubits = 1;
  double angle = 0.0;
  std::vector<double> eigenvalues;
};

using Gate = std::variant<RxGate, HadamardGate, DiagonalBlockGate>;

struct GateProgram {
  int num_qubits = 0;
  std::vector<Gate> gates;
};

namespace detail {

inline void check_qubit(int qubit, int t) {
  if (qubit < 0 || qubit >= t)
    throw value_error("gate targets qubit " + std::to_string(qubit) + " outside [0, " + std::to_string(t) + ")");
}

inline void apply_single_qubit(std::vector<cdouble>& amps, int t, int qubit, cdouble u00, cdouble u01, cdouble u10,
                               cdouble u11) {
  check_qubit(qubit, t);
  const std::size_t mask = std::size_t{1} << (t - 1 - qubit);
  const std::size_t dim = amps.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const cdouble a0 = amps[i];
    const cdouble a1 = amps[i | mask];
    amps[i] = u00 * a0 + u01 * a1;
    amps[i | mask] = u10 * a0 + u11 * a1;
  }
}

inline void apply_diagonal_block(std::vector<cdouble>& amps, int t, const DiagonalBlockGate& g) {
  check_qubit(g.first_qubit, t);
  if (g.block_qubits < 1 || g.first_qubit + g.block_qubits > t)
    throw value_error("diagonal block spans qubits outside the register");
  const std::size_t block_dim = std::size_t{1} << g.block_qubits;
  if (g.eigenvalues.size() != block_dim)
    throw dimension_error("diagonal block needs 2^s eigenvalues, got " + std::to_string(g.eigenvalues.size()));

  std::vector<cdouble> phase(block_dim);
  for (std::size_t a = 0; a < block_dim; ++a)
    phase[a] = std::polar(1.0, -g.angle * g.eigenvalues[a]);

  const int shift = t - g.first_qubit - g.block_qubits;
  const std::size_t sel = block_dim - 1;
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= phase[(i >> shift) & sel];
}

}  // namespace detail

/// Runs the program on an initial state; unitary, so the norm is
/// preserved.
inline StateVector apply_program(const GateProgram& p, const StateVector& init) {
  if (p.num_qubits != init.num_qubits) throw dimension_error("apply_program: qubit count mismatch");
  const int t = checked_qubit_count(p.num_qubits);
  StateVector out = init;
  for (const Gate& gate : p.gates) {
    if (const auto* rx = std::get_if<RxGate>(&gate)) {
      const cdouble c = std::cos(rx->theta / 2.0);
      const cdouble is = cdouble{0.0, 1.0} * std::sin(rx->theta / 2.0);
      detail::apply_single_qubit(out.amplitudes, t, rx->qubit, c, is, is, c);
    } else if (const auto* h = std::get_if<HadamardGate>(&gate)) {
      const double r = 1.0 / std::sqrt(2.0);
      detail::apply_single_qubit(out.amplitudes, t, h->qubit, r, r, r, -r);
    } else {
      detail::apply_diagonal_block(out.amplitudes, t, std::get<DiagonalBlockGate>(gate));
    }
  }
  return out;
}

/// Full 2^t x 2^t unitary of a program, built column by column.
inline ComplexMatrix program_unitary(const GateProgram& p) {
  const int t = checked_qubit_count(p.num_qubits);
  const std::size_t dim = state_dim(t);
  ComplexMatrix u(static_cast<int>(dim), static_cast<int>(dim));
  StateVector basis;
  basis.num_qubits = t;
  for (std::size_t j = 0; j < dim; ++j) {
    basis.amplitudes.assign(dim, cdouble{0.0, 0.0});
    basis.amplitudes[j] = 1.0;
    const StateVector col = apply_program(p, basis);
    for (std::size_t i = 0; i < dim; ++i) u(static_cast<int>(i), static_cast<int>(j)) = col.amplitudes[i];
  }
  return u;
}

/// |<a|b>|^2, clamped into [0, 1].
inline double fidelity(const StateVector& a, const StateVector& b) {
  if (a.num_qubits != b.num_qubits) throw dimension_error("fidelity: qubit count mismatch");
  cdouble ip{0.0, 0.0};
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) ip += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return std::clamp(std::norm(ip), 0.0, 1.0);
}

inline DensityMatrix density_from_state(const StateVector& a) {
  const std::size_t dim = a.amplitudes.size();
  ComplexMatrix m(static_cast<int>(dim), static_cast<int>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = a.amplitudes[i] * std::conj(a.amplitudes[j]);
  return DensityMatrix::from_matrix(a.num_qubits, std::move(m));
}

/// Reduced state on the first s qubits (trace over the trailing t-s).
inline DensityMatrix partial_trace(const DensityMatrix& rho, int keep_first_s) {
  const int t = rho.num_qubits;
  if (keep_first_s < 1 || keep_first_s >= t)
    throw value_error("partial_trace: keep_first_s must satisfy 1 <= s < t");
  const std::size_t keep_dim = std::size_t{1} << keep_first_s;
  const std::size_t rest_dim = std::size_t{1} << (t - keep_first_s);
  ComplexMatrix red(static_cast<int>(keep_dim), static_cast<int>(keep_dim));
  for (std::size_t a = 0; a < keep_dim; ++a)
    for (std::size_t ap = 0; ap < keep_dim; ++ap) {
      cdouble acc{0.0, 0.0};
      for (std::size_t b = 0; b < rest_dim; ++b)
        acc += rho.entries(static_cast<int>(a * rest_dim + b), static_cast<int>(ap * rest_dim + b));
      red(static_cast<int>(a), static_cast<int>(ap)) = acc;
    }
  return DensityMatrix::from_matrix(keep_first_s, std::move(red));
}

/// Tr(rho O). The imaginary residue must stay below 1e-8 or the inputs
/// were not Hermitian to working precision.
inline double expectation(const DensityMatrix& rho, const Observable& obs) {
  if (rho.num_qubits != obs.num_qubits) throw dimension_error("expectation: qubit count mismatch");
  cdouble acc{0.0, 0.0};
  const int dim = rho.entries.rows();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) acc += rho.entries(i, j) * obs.entries(j, i);
  if (std::abs(acc.imag()) > 1e-8)
    throw symmetry_error("expectation: imaginary residue " + std::to_string(acc.imag()) + " exceeds 1e-8");
  return acc.real();
}

/// |0^s><0^s| on s qubits.
inline ComplexMatrix zero_projector(int s) {
  ComplexMatrix m(static_cast<int>(state_dim(s)), static_cast<int>(state_dim(s)));
  m(0, 0) = 1.0;
  return m;
}

/// L_s tensored with the maximally mixed state on the trailing t-s qubits.
inline DensityMatrix local_mixed_state(const ComplexMatrix& local_projector, int t) {
  const int s = [&] {
    int bits = 0;
    while ((1 << bits) < local_projector.rows()) ++bits;
    if ((1 << bits) != local_projector.rows() || local_projector.rows() != local_projector.cols())
      throw dimension_error("local_mixed_state: projector dimension is not a power of two");
    return bits;
  }();
  if (s < 1 || s >= t) throw dimension_error("local_mixed_state: projector must act on 1 <= s < t qubits");
  const double w = 1.0 / static_cast<double>(std::size_t{1} << (t - s));
  const ComplexMatrix mixed = cdouble{w, 0.0} * ComplexMatrix::identity(static_cast<int>(state_dim(t - s)));
  return DensityMatrix::from_matrix(t, kron(local_projector, mixed));
}

using EncodingFactory = std::function<GateProgram(std::span<const double>)>;

/// sigma_{x,z} = U^†(z) U(x) (L_s ⊗ I/2^{t-s}) U^†(x) U(z), by exact
/// matrix algebra.
inline DensityMatrix sigma_xz(const EncodingFactory& encoder, std::span<const double> x, std::span<const double> z,
                              const ComplexMatrix& local_projector) {
  if (x.size() != z.size()) throw dimension_error("sigma_xz: input dimension mismatch");
  const GateProgram px = encoder(x);
  const GateProgram pz = encoder(z);
  if (px.num_qubits != pz.num_qubits) throw dimension_error("sigma_xz: encoder changed qubit count");
  const int t = px.num_qubits;
  const DensityMatrix base = local_mixed_state(local_projector, t);
  const ComplexMatrix w = program_unitary(pz).adjoint() * program_unitary(px);
  return DensityMatrix::from_matrix(t, w * base.entries * w.adjoint());
}

/// Mean of m Bernoulli(p) draws from the caller's generator.
inline double estimate_prob_shots(double p, long m, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw value_error("estimate_prob_shots: p must lie in [0, 1]");
  if (m < 1) throw value_error("estimate_prob_shots: shot count must be >= 1");
  long hits = 0;
  for (long i = 0; i < m; ++i)
    if (rng.uniform() < p) ++hits;
  return static_cast<double>(hits) / static_cast<double>(m);
}

/// Angle encoding: one qubit per component, R_X(c x_j) on qubit j.
inline GateProgram angle_encoding_program(double c, std::span<const double> x) {
  GateProgram p;
  p.num_qubits = checked_qubit_count(static_cast<int>(x.size()));
  for (int j = 0; j < p.num_qubits; ++j) p.gates.push_back(RxGate{j, c * x[j]});
  return p;
}

/// Fourier encoding: each component gets an s-qubit block prepared by
/// Hadamards and phased by exp(-i c x_j D).
inline GateProgram fourier_encoding_program(double c, std::span<const double> x, int s,
                                            std::span<const double> eigenvalues) {
  if (s < 1) throw value_error("fourier_encoding_program: block size must be >= 1");
  if (eigenvalues.size() != (std::size_t{1} << s))
    throw dimension_error("fourier_encoding_program: eigenvalue list must have length 2^s");
  GateProgram p;
  p.num_qubits = checked_qubit_count(static_cast<int>(x.size()) * s);
  for (int j = 0; j < static_cast<int>(x.size()); ++j) {
    for (int k = 0; k < s; ++k) p.gates.push_back(HadamardGate{j * s + k});
    p.gates.push_back(DiagonalBlockGate{j * s, s, c * x[j],
                                        std::vector<double>(eigenvalues.begin(), eigenvalues.end())});
  }
  return p;
}

/// q copies of an s-qubit block program on q*s qubits (separable global
/// encoding V^{⊗q}).
inline GateProgram replicate_blocks(const GateProgram& block, int q) {
  if (q < 1) throw value_error("replicate_blocks: copy count must be >= 1");
  GateProgram p;
  p.num_qubits = checked_qubit_count(block.num_qubits * q);
  for (int r = 0; r < q; ++r) {
    const int offset = r * block.num_qubits;
    for (const Gate& gate : block.gates) {
      Gate shifted = gate;
      std::visit(
          [offset](auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, DiagonalBlockGate>)
              g.first_qubit += offset;
            else
              g.qubit += offset;
          },
          shifted);
      p.gates.push_back(std::move(shifted));
    }
  }
  return p;
}

/// |0^s><0^s| ⊗ I on the remaining (q-1) blocks.
inline Observable local_observable(int s, int q) {
  const int t = checked_qubit_count(s * q);
  ComplexMatrix m = zero_projector(s);
  if (q > 1) m = kron(m, ComplexMatrix::identity(static_cast<int>(state_dim(t - s))));
  return Observable::from_matrix(t, std::move(m));
}

/// (|0^s><0^s|)^{⊗q}, i.e. the full-register zero projector.
inline Observable global_observable(int s, int q) {
  const int t = checked_qubit_count(s * q);
  return Observable::from_matrix(t, zero_projector(t));
}

/// O = lambda_local_tilde * O_L + lambda_global * O_G.
inline Observable local_global_observable(double lambda_local_tilde, double lambda_global, int s, int q) {
  const Observable ol = local_observable(s, q);
  const Observable og = global_observable(s, q);
  return Observable::from_matrix(ol.num_qubits, cdouble{lambda_local_tilde, 0.0} * ol.entries +
                                                    cdouble{lambda_global, 0.0} * og.entries);
}

}  // namespace lgqk

#endif  // LGQK_QUANTUM_HPP
