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

#include "donorqca/kernels.hpp"

#include <bit>
#include <vector>

namespace donorqca::kernels {

namespace {

// Spread the bits of `j` over the positions not occupied by `hole` (a single
// bit), i.e. insert a zero at that position.
inline std::uint64_t insert_zero(std::uint64_t j, std::uint64_t hole) {
  const std::uint64_t low = j & (hole - 1);
  return ((j - low) << 1) | low;
}

}  // namespace

void apply_1q(Complex* psi, int n_qubits, int q, const Mat2& u, std::uint64_t cond_mask, std::uint64_t cond_value) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  const std::int64_t half = std::int64_t{1} << (n_qubits - 1);
  if (static_cast<std::size_t>(half) < kParallelThreshold) return reference::apply_1q(psi, n_qubits, q, u, cond_mask, cond_value);
  const Complex u00 = u[0], u01 = u[1], u10 = u[2], u11 = u[3];
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < half; ++j) {
    const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(j), bit);
    if ((i0 & cond_mask) != cond_value) continue;
    const std::uint64_t i1 = i0 | bit;
    const Complex a = psi[i0], b = psi[i1];
    psi[i0] = u00 * a + u01 * b;
    psi[i1] = u10 * a + u11 * b;
  }
}

void apply_matrix(Complex* psi, int n_qubits, std::span<const int> qubits, const Complex* m) {
  const int k = static_cast<int>(qubits.size());
  const std::size_t sub = std::size_t{1} << k;
  std::vector<std::uint64_t> offsets(sub, 0);
  std::uint64_t support = 0;
  for (std::size_t a = 0; a < sub; ++a) {
    for (int j = 0; j < k; ++j) {
      if (a >> j & 1) offsets[a] |= std::uint64_t{1} << qubits[j];
    }
  }
  for (int q : qubits) support |= std::uint64_t{1} << q;
  // Sorted holes, so zeros can be inserted from the lowest position up.
  std::vector<std::uint64_t> holes;
  for (int b = 0; b < n_qubits; ++b) {
    if (support >> b & 1) holes.push_back(std::uint64_t{1} << b);
  }
  const std::int64_t outer = std::int64_t{1} << (n_qubits - k);
#pragma omp parallel if (static_cast<std::size_t>(outer) * sub >= kParallelThreshold)
  {
    std::vector<Complex> in(sub), out(sub);
#pragma omp for schedule(static)
    for (std::int64_t j = 0; j < outer; ++j) {
      std::uint64_t base = static_cast<std::uint64_t>(j);
      for (std::uint64_t h : holes) base = insert_zero(base, h);
      for (std::size_t a = 0; a < sub; ++a) in[a] = psi[base | offsets[a]];
      for (std::size_t r = 0; r < sub; ++r) {
        Complex acc = 0.0;
        const Complex* row = m + r * sub;
        for (std::size_t c = 0; c < sub; ++c) acc += row[c] * in[c];
        out[r] = acc;
      }
      for (std::size_t a = 0; a < sub; ++a) psi[base | offsets[a]] = out[a];
    }
  }
}

void multiply_diagonal(Complex* psi, std::size_t dim, const Complex* d) {
  if (dim < kParallelThreshold) return reference::multiply_diagonal(psi, dim, d);
  const auto n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) psi[i] *= d[i];
}

void apply_hamiltonian(const Complex* in, Complex* out, int n_sites, const double* d, Complex c) {
  const std::int64_t dim = std::int64_t{1} << n_sites;
  if (static_cast<std::size_t>(dim) < kParallelThreshold) return reference::apply_hamiltonian(in, out, n_sites, d, c);
  const Complex cc = std::conj(c);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < dim; ++i) {
    Complex acc = d[i] * in[i];
    for (int k = 0; k < n_sites; ++k) {
      const std::int64_t bit = std::int64_t{1} << k;
      // Bit set: row is |1>, partner column |0>, element conj(c).
      acc += ((i & bit) ? cc : c) * in[i ^ bit];
    }
    out[i] = acc;
  }
}

double expect_z_product(const Complex* psi, std::size_t dim, std::uint64_t mask) {
  if (dim < kParallelThreshold) return reference::expect_z_product(psi, dim, mask);
  const auto n = static_cast<std::int64_t>(dim);
  const int width = std::popcount(mask);
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc)
  for (std::int64_t i = 0; i < n; ++i) {
    const int zeros = width - std::popcount(static_cast<std::uint64_t>(i) & mask);
    const double p = std::norm(psi[i]);
    acc += (zeros & 1) ? -p : p;
  }
  return acc;
}

void scale_coherences(Complex* rho, int n_sites, int site, double factor) {
  const std::int64_t dim = std::int64_t{1} << n_sites;
  if (static_cast<std::size_t>(dim * dim) < kParallelThreshold) return reference::scale_coherences(rho, n_sites, site, factor);
  const std::int64_t bit = std::int64_t{1} << site;
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < dim; ++c) {
    Complex* col = rho + c * dim;
    const std::int64_t cb = c & bit;
    for (std::int64_t r = 0; r < dim; ++r) {
      if ((r & bit) != cb) col[r] *= factor;
    }
  }
}

namespace reference {

void apply_1q(Complex* psi, int n_qubits, int q, const Mat2& u, std::uint64_t cond_mask, std::uint64_t cond_value) {
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    if ((i & cond_mask) != cond_value) continue;
    const Complex a = psi[i], b = psi[i | bit];
    psi[i] = u[0] * a + u[1] * b;
    psi[i | bit] = u[2] * a + u[3] * b;
  }
}

void apply_matrix(Complex* psi, int n_qubits, std::span<const int> qubits, const Complex* m) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  const std::size_t sub = std::size_t{1} << qubits.size();
  std::vector<Complex> out(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    // Column index of M from the support bits of i, rest of i kept fixed.
    std::size_t col = 0, rest = i;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      const std::size_t bit = std::size_t{1} << qubits[j];
      if (i & bit) col |= std::size_t{1} << j;
      rest &= ~bit;
    }
    for (std::size_t row = 0; row < sub; ++row) {
      std::size_t target = rest;
      for (std::size_t j = 0; j < qubits.size(); ++j) {
        if (row >> j & 1) target |= std::size_t{1} << qubits[j];
      }
      out[target] += m[row * sub + col] * psi[i];
    }
  }
  for (std::size_t i = 0; i < dim; ++i) psi[i] = out[i];
}

void multiply_diagonal(Complex* psi, std::size_t dim, const Complex* d) {
  for (std::size_t i = 0; i < dim; ++i) psi[i] *= d[i];
}

void apply_hamiltonian(const Complex* in, Complex* out, int n_sites, const double* d, Complex c) {
  const std::size_t dim = std::size_t{1} << n_sites;
  for (std::size_t i = 0; i < dim; ++i) out[i] = d[i] * in[i];
  for (int k = 0; k < n_sites; ++k) {
    const std::size_t bit = std::size_t{1} << k;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      out[i] += c * in[i | bit];
      out[i | bit] += std::conj(c) * in[i];
    }
  }
}

double expect_z_product(const Complex* psi, std::size_t dim, std::uint64_t mask) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    double sign = 1.0;
    for (int q = 0; q < 64; ++q) {
      if (mask >> q & 1) sign *= (i >> q & 1) ? 1.0 : -1.0;
    }
    acc += sign * std::norm(psi[i]);
  }
  return acc;
}

void scale_coherences(Complex* rho, int n_sites, int site, double factor) {
  const std::size_t dim = std::size_t{1} << n_sites;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (((r ^ c) >> site) & 1) rho[r + c * dim] *= factor;
    }
  }
}

}  // namespace reference

}  // namespace donorqca::kernels
