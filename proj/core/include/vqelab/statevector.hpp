#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "vqelab/errors.hpp"
#include "vqelab/rng.hpp"

namespace vqelab {

using Complex = std::complex<double>;

/// Dense state of n qubits; amplitude index uses qubit 0 as the most
/// significant bit (matching the leftmost character of a Pauli string).
class Statevector {
 public:
  explicit Statevector(int n_qubits) : n_qubits_(n_qubits), amps_(dim_checked(n_qubits)) {
    amps_[0] = 1.0;
  }

  static Statevector basis_state(int n_qubits, std::uint64_t index) {
    Statevector s(n_qubits);
    if (index >= s.dim()) throw ConfigError("basis state index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
  }

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dim() const { return amps_.size(); }

  Complex* data() { return amps_.data(); }
  const Complex* data() const { return amps_.data(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex& operator[](std::uint64_t i) { return amps_[i]; }
  const Complex& operator[](std::uint64_t i) const { return amps_[i]; }

  /// Bit mask of qubit q in the amplitude index (qubit 0 = MSB).
  std::uint64_t qubit_bit(int q) const { return 1ull << (n_qubits_ - 1 - q); }

  double squared_norm() const {
    double s = 0.0;
    for (const Complex& a : amps_) s += std::norm(a);
    return s;
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
  }

  /// Draw one basis index from |amplitudes|^2 given a cumulative table.
  static std::uint64_t sample_index(std::span<const double> cumulative, RngStream& rng) {
    const double u = rng.next_double() * cumulative.back();
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cumulative[mid] <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  std::vector<double> cumulative_probabilities() const {
    std::vector<double> c(amps_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      acc += std::norm(amps_[i]);
      c[i] = acc;
    }
    return c;
  }

 private:
  static std::size_t dim_checked(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 28) throw ConfigError("qubit count out of range [1, 28]");
    return std::size_t{1} << n_qubits;
  }

  int n_qubits_;
  std::vector<Complex> amps_;
};

}  // namespace vqelab
