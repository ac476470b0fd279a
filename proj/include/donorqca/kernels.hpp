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

#ifndef DONORQCA_KERNELS_HPP
#define DONORQCA_KERNELS_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

// Amplitude-array kernels. Qubit q is bit q of the array index. A density
// matrix stored column-major is handled as a 2N-qubit array: bits 0..N-1 are
// the row (ket) index and bits N..2N-1 the column (bra) index.
//
// Every kernel exists twice: the OpenMP version in `kernels` and a plain
// serial version in `kernels::reference` that the tests and the benchmark
// compare against.

namespace donorqca::kernels {

using Complex = std::complex<double>;
// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

// Arrays shorter than this run serially even in the OpenMP kernels; small
// chains are parallelised one level up, over molecules.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

// psi <- (u on qubit q) psi, restricted to indices i with (i & cond_mask) ==
// cond_value. cond_mask must not contain bit q.
void apply_1q(Complex* psi, int n_qubits, int q, const Mat2& u, std::uint64_t cond_mask = 0,
              std::uint64_t cond_value = 0);

// psi <- M psi where M (row-major, 2^k x 2^k) acts on `qubits` (qubits[j] is
// bit j of M's index).
void apply_matrix(Complex* psi, int n_qubits, std::span<const int> qubits, const Complex* m);

// psi[i] *= d[i].
void multiply_diagonal(Complex* psi, std::size_t dim, const Complex* d);

// out = H in, H = diag(d) + sum_k (c sigma_+^k + conj(c) sigma_-^k) where the
// off-diagonal element <1|H|0> on each site is conj(c) and <0|H|1> is c.
void apply_hamiltonian(const Complex* in, Complex* out, int n_sites, const double* d, Complex c);

// sum_i |psi_i|^2 prod_{q in mask} z_q(i), z = -1 for bit 0 and +1 for bit 1.
double expect_z_product(const Complex* psi, std::size_t dim, std::uint64_t mask);

// Multiply density-matrix entries whose row and column differ on `site` by
// `factor` (single-site phase damping). rho is dim x dim column-major.
void scale_coherences(Complex* rho, int n_sites, int site, double factor);

namespace reference {

void apply_1q(Complex* psi, int n_qubits, int q, const Mat2& u, std::uint64_t cond_mask = 0,
              std::uint64_t cond_value = 0);
void apply_matrix(Complex* psi, int n_qubits, std::span<const int> qubits, const Complex* m);
void multiply_diagonal(Complex* psi, std::size_t dim, const Complex* d);
void apply_hamiltonian(const Complex* in, Complex* out, int n_sites, const double* d, Complex c);
double expect_z_product(const Complex* psi, std::size_t dim, std::uint64_t mask);
void scale_coherences(Complex* rho, int n_sites, int site, double factor);

}  // namespace reference

}  // namespace donorqca::kernels

#endif  // DONORQCA_KERNELS_HPP
