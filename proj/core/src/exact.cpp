#include "vqelab/exact.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "vqelab/errors.hpp"
#include "vqelab/rng.hpp"

namespace vqelab {

namespace {

constexpr int kDenseMaxQubits = 10;

void apply_hamiltonian(const Hamiltonian& h, const std::vector<Complex>& in,
                       std::vector<Complex>& out) {
  const std::uint64_t dim = in.size();
  const double offset = h.identity_offset();
  for (std::uint64_t i = 0; i < dim; ++i) out[i] = offset * in[i];
  for (const auto& t : h.masked_terms()) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      out[i ^ t.flip_mask] += t.coefficient * t.phase(i) * in[i];
    }
  }
}

GroundState dense_ground_state(const Hamiltonian& h) {
  const std::uint64_t dim = 1ull << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t i = 0; i < dim; ++i) m(i, i) = h.identity_offset();
  for (const auto& t : h.masked_terms()) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      m(i ^ t.flip_mask, i) += t.coefficient * t.phase(i);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  GroundState gs{solver.eigenvalues()(0), Statevector(h.n_qubits())};
  const auto vec = solver.eigenvectors().col(0);
  for (std::uint64_t i = 0; i < dim; ++i) gs.state[i] = vec(i);
  return gs;
}

GroundState lanczos_ground_state(const Hamiltonian& h) {
  const std::uint64_t dim = 1ull << h.n_qubits();
  const int max_iter = 320;

  RngStream rng(0xE16E57A7Eull);
  std::vector<std::vector<Complex>> basis;
  basis.reserve(max_iter);
  std::vector<Complex> v(dim), w(dim);
  for (auto& a : v) a = Complex{rng.next_normal(), rng.next_normal()};
  double nrm = 0.0;
  for (const auto& a : v) nrm += std::norm(a);
  nrm = std::sqrt(nrm);
  for (auto& a : v) a /= nrm;

  std::vector<double> alpha, beta;
  double prev_e0 = 0.0;
  int m = 0;
  for (int k = 0; k < max_iter; ++k) {
    basis.push_back(v);
    apply_hamiltonian(h, v, w);
    Complex a_k = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) a_k += std::conj(v[i]) * w[i];
    alpha.push_back(a_k.real());
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        Complex ov = 0.0;
        for (std::uint64_t i = 0; i < dim; ++i) ov += std::conj(b[i]) * w[i];
        for (std::uint64_t i = 0; i < dim; ++i) w[i] -= ov * b[i];
      }
    }
    double b_k = 0.0;
    for (const auto& a : w) b_k += std::norm(a);
    b_k = std::sqrt(b_k);
    m = k + 1;

    if (k >= 8 && (k % 4 == 0 || b_k < 1e-13)) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) t(i, i) = alpha[i];
      for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      const double e0 = es.eigenvalues()(0);
      const double scale = std::max(1.0, std::abs(e0));
      const double resid = b_k * std::abs(es.eigenvectors()(m - 1, 0));
      if ((std::abs(e0 - prev_e0) < 1e-12 * scale && resid < 1e-9 * scale) || b_k < 1e-13) {
        GroundState gs{e0, Statevector(h.n_qubits())};
        std::vector<Complex> gvec(dim, Complex{0.0, 0.0});
        for (int i = 0; i < m; ++i) {
          const double c = es.eigenvectors()(i, 0);
          for (std::uint64_t j = 0; j < dim; ++j) gvec[j] += c * basis[i][j];
        }
        double gn = 0.0;
        for (const auto& a : gvec) gn += std::norm(a);
        gn = std::sqrt(gn);
        for (std::uint64_t j = 0; j < dim; ++j) gs.state[j] = gvec[j] / gn;
        return gs;
      }
      prev_e0 = e0;
    }
    if (b_k < 1e-13) break;  // invariant subspace without convergence flag yet
    beta.push_back(b_k);
    for (std::uint64_t i = 0; i < dim; ++i) v[i] = w[i] / b_k;
  }

  // Fall back to the best estimate from the final subspace.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) t(i, i) = alpha[i];
  for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  GroundState gs{es.eigenvalues()(0), Statevector(h.n_qubits())};
  std::vector<Complex> gvec(dim, Complex{0.0, 0.0});
  for (int i = 0; i < m; ++i) {
    const double c = es.eigenvectors()(i, 0);
    for (std::uint64_t j = 0; j < dim; ++j) gvec[j] += c * basis[i][j];
  }
  double gn = 0.0;
  for (const auto& a : gvec) gn += std::norm(a);
  gn = std::sqrt(gn);
  for (std::uint64_t j = 0; j < dim; ++j) gs.state[j] = gvec[j] / gn;
  return gs;
}

}  // namespace

GroundState exact_ground_energy(const Hamiltonian& h) {
  if (h.n_qubits() > kExactDiagMaxQubits)
    throw CapabilityError("exact diagonalization limited to " +
                          std::to_string(kExactDiagMaxQubits) + " qubits, got " +
                          std::to_string(h.n_qubits()));
  if (h.terms().empty()) {
    return GroundState{h.identity_offset(), Statevector(h.n_qubits())};
  }
  if (h.n_qubits() <= kDenseMaxQubits) return dense_ground_state(h);
  return lanczos_ground_state(h);
}

}  // namespace vqelab
