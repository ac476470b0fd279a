// Copyright 2026 The donorqca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DONORQCA_CHAIN_STATE_HPP
#define DONORQCA_CHAIN_STATE_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "donorqca/cell.hpp"
#include "donorqca/kernels.hpp"

namespace donorqca {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxPureSites = 12;
inline constexpr int kMaxDensitySites = 8;

// Single-site operators in the (|0>, |1>) = (down, up) basis. sigma_z has
// eigenvalue -1 on '0' and +1 on '1'; sigma_y = [[0, i], [-i, 0]] keeps
// sigma_x sigma_y = i sigma_z.
namespace pauli {
kernels::Mat2 identity();
kernels::Mat2 x();
kernels::Mat2 y();
kernels::Mat2 z();
}  // namespace pauli

// R(theta, phi) = exp(-i theta/2 (cos phi sigma_x + sin phi sigma_y)).
kernels::Mat2 rotation(double theta, double phi);
// Rz(alpha) = exp(-i alpha sigma_z / 2) = diag(e^{i alpha/2}, e^{-i alpha/2}).
kernels::Mat2 z_rotation(double alpha);
Matrix to_matrix(const kernels::Mat2& m);

// Tensor product of single-site Pauli labels, one character per site.
class Observable {
 public:
  Observable() = default;
  explicit Observable(std::string labels);

  // Accepts a full label string ("IZZI") for an n-site chain, or a sparse
  // product such as "Z3", "X0*Z1" or "Z0 Z1".
  static Observable parse(std::string_view text, size_t n_sites);
  static Observable single(char pauli, int site, size_t n_sites);

  const std::string& labels() const { return labels_; }
  size_t size() const { return labels_.size(); }
  bool is_diagonal() const;
  // Sparse form used in reports, e.g. "Z0*Z1"; "I" for the identity.
  std::string str() const;

  friend bool operator==(const Observable&, const Observable&) = default;

 private:
  std::string labels_;
};

// State of a typed chain. Site k is bit k of the basis index; bit value 1 is
// spin up, logical '1'.
class ChainState {
 public:
  ChainState() = default;

  static ChainState pure(Pattern pattern, StateVector amplitudes);
  static ChainState mixed(Pattern pattern, DensityMatrix rho);

  bool is_pure() const { return pure_; }
  const Pattern& pattern() const { return pattern_; }
  int num_sites() const { return static_cast<int>(pattern_.size()); }
  size_t dim() const { return size_t{1} << pattern_.size(); }

  const StateVector& amplitudes() const;
  StateVector& amplitudes();
  const DensityMatrix& density() const;
  DensityMatrix& density();

  // Density-matrix copy (|psi><psi| for a pure state).
  ChainState to_density() const;
  DensityMatrix density_matrix() const;

  double expect(const Observable& obs) const;
  // <sigma_z> of every site.
  std::vector<double> site_z() const;

  // U (row-major or Eigen) on the listed sites; throws SpecError unless U is
  // unitary within 1e-9.
  void apply_unitary(const Matrix& u, std::span<const int> sites);
  // Single-site unitary on `site`, applied only where the sites in
  // cond_mask hold the bits in cond_value. No unitarity check.
  void apply_1q(const kernels::Mat2& u, int site, std::uint64_t cond_mask = 0, std::uint64_t cond_value = 0);
  // Multiply amplitudes (or rho_ij by d_i conj(d_j)) by a diagonal unitary.
  void apply_diagonal(const std::vector<Complex>& d);
  // Kraus channel on `sites`; requires a density matrix and sum K^dag K = I.
  void apply_channel(const std::vector<Matrix>& kraus, std::span<const int> sites);
  // Scale single-site coherences (phase damping) of a density matrix.
  void scale_coherences(int site, double factor);

  double norm() const;   // ||psi||^2 or Tr rho
  // Throws SpecError naming the violated invariant.
  void check_invariants() const;

  nlohmann::json to_json() const;

 private:
  Pattern pattern_;
  bool pure_ = true;
  StateVector psi_;
  DensityMatrix rho_;
};

// Computational basis state from a bit string; character k is site k.
ChainState new_chain(const Pattern& pattern, std::string_view bits);
ChainState new_chain(std::string_view pattern, std::string_view bits);
size_t basis_index(std::string_view bits);
std::string basis_bits(size_t index, size_t n_sites);

double expect(const ChainState& state, const Observable& obs);
ChainState apply_unitary(ChainState state, const Matrix& u, std::span<const int> sites);
ChainState apply_channel(ChainState state, const std::vector<Matrix>& kraus, std::span<const int> sites);

}  // namespace donorqca

#endif  // DONORQCA_CHAIN_STATE_HPP
