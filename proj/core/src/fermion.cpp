#include "vqelab/fermion.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "vqelab/errors.hpp"

namespace vqelab {

namespace {

// Single-qubit Pauli products: (phase, letter) = left * right.
std::pair<Complex, char> letter_mul(char a, char b) {
  if (a == 'I') return {1.0, b};
  if (b == 'I') return {1.0, a};
  if (a == b) return {1.0, 'I'};
  const Complex i{0.0, 1.0};
  switch (a) {
    case 'X':
      return b == 'Y' ? std::pair<Complex, char>{i, 'Z'} : std::pair<Complex, char>{-i, 'Y'};
    case 'Y':
      return b == 'Z' ? std::pair<Complex, char>{i, 'X'} : std::pair<Complex, char>{-i, 'Z'};
    default:  // 'Z'
      return b == 'X' ? std::pair<Complex, char>{i, 'Y'} : std::pair<Complex, char>{-i, 'X'};
  }
}

std::pair<Complex, std::string> string_mul(const std::string& a, const std::string& b) {
  Complex phase = 1.0;
  std::string out(a.size(), 'I');
  for (std::size_t q = 0; q < a.size(); ++q) {
    auto [ph, c] = letter_mul(a[q], b[q]);
    phase *= ph;
    out[q] = c;
  }
  return {phase, out};
}

using PauliSum = std::map<std::string, Complex>;

// JW image of one ladder operator as a two-string sum.
PauliSum ladder_image(const LadderOp& op, int n_modes) {
  std::string x(n_modes, 'I'), y(n_modes, 'I');
  for (int k = 0; k < op.mode; ++k) {
    x[k] = 'Z';
    y[k] = 'Z';
  }
  x[op.mode] = 'X';
  y[op.mode] = 'Y';
  const Complex yc = op.dagger ? Complex{0.0, -0.5} : Complex{0.0, 0.5};
  return {{x, Complex{0.5, 0.0}}, {y, yc}};
}

}  // namespace

Hamiltonian jordan_wigner(const FermionOperator& op, int n_modes) {
  if (n_modes < 1) throw ConfigError("n_modes must be positive");
  PauliSum total;
  for (const auto& term : op.terms) {
    PauliSum acc{{std::string(n_modes, 'I'), Complex{term.coefficient, 0.0}}};
    for (const auto& l : term.ops) {
      if (l.mode < 0 || l.mode >= n_modes)
        throw ConfigError("fermionic mode index " + std::to_string(l.mode) +
                          " out of range for " + std::to_string(n_modes) + " modes");
      const PauliSum img = ladder_image(l, n_modes);
      PauliSum next;
      for (const auto& [s1, c1] : acc) {
        for (const auto& [s2, c2] : img) {
          auto [ph, s3] = string_mul(s1, s2);
          next[s3] += c1 * c2 * ph;
        }
      }
      acc = std::move(next);
    }
    for (const auto& [s, c] : acc) total[s] += c;
  }

  std::vector<PauliTerm> terms;
  double identity = 0.0;
  const std::string id(n_modes, 'I');
  for (const auto& [s, c] : total) {
    if (std::abs(c.imag()) > 1e-12)
      throw ConfigError("non-Hermitian fermion operator: Pauli string \"" + s +
                        "\" has imaginary coefficient " + std::to_string(c.imag()));
    if (std::abs(c.real()) < 1e-12) continue;
    if (s == id)
      identity += c.real();
    else
      terms.push_back({s, c.real()});
  }
  return Hamiltonian(n_modes, std::move(terms), identity);
}

}  // namespace vqelab
