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

#include <gtest/gtest.h>

#include <random>
#include <vector>

using namespace donorqca::kernels;

namespace {

std::vector<Complex> random_vector(size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Mat2 random_mat2(unsigned seed) {
  auto v = random_vector(4, seed);
  return {v[0], v[1], v[2], v[3]};
}

// Small (serial path) and large (parallel path) registers.
constexpr int kSizes[] = {3, 13};

}  // namespace

TEST(kernels, apply_1q_matches_reference) {
  for (int n : kSizes) {
    for (int q : {0, n / 2, n - 1}) {
      auto a = random_vector(size_t{1} << n, 7 + q);
      auto b = a;
      const Mat2 u = random_mat2(3);
      apply_1q(a.data(), n, q, u);
      reference::apply_1q(b.data(), n, q, u);
      EXPECT_LT(max_diff(a, b), 1e-12);
    }
  }
}

TEST(kernels, conditional_apply_1q_matches_reference) {
  for (int n : kSizes) {
    auto a = random_vector(size_t{1} << n, 11);
    auto b = a;
    const Mat2 u = random_mat2(5);
    const std::uint64_t mask = 0b101, value = 0b001;
    apply_1q(a.data(), n, 1, u, mask, value);
    reference::apply_1q(b.data(), n, 1, u, mask, value);
    EXPECT_LT(max_diff(a, b), 1e-12);
  }
}

TEST(kernels, conditional_apply_leaves_unmatched_amplitudes) {
  auto a = random_vector(8, 2);
  const auto before = a;
  const Mat2 x{0.0, 1.0, 1.0, 0.0};
  apply_1q(a.data(), 3, 1, x, 0b001, 0b001);
  for (size_t i = 0; i < 8; ++i) {
    if ((i & 1) == 0) {
      EXPECT_EQ(a[i], before[i]);
    } else {
      EXPECT_EQ(a[i], before[i ^ 2]);
    }
  }
}

TEST(kernels, apply_matrix_matches_reference) {
  for (int n : kSizes) {
    const std::vector<int> qubits{n - 1, 0};
    auto m = random_vector(16, 21);
    auto a = random_vector(size_t{1} << n, 4);
    auto b = a;
    apply_matrix(a.data(), n, qubits, m.data());
    reference::apply_matrix(b.data(), n, qubits, m.data());
    EXPECT_LT(max_diff(a, b), 1e-11);
  }
}

TEST(kernels, apply_matrix_single_qubit_equals_apply_1q) {
  auto a = random_vector(16, 8);
  auto b = a;
  const Mat2 u = random_mat2(9);
  const std::vector<int> q{2};
  apply_matrix(a.data(), 4, q, u.data());
  apply_1q(b.data(), 4, 2, u);
  EXPECT_LT(max_diff(a, b), 1e-12);
}

TEST(kernels, multiply_diagonal_matches_reference) {
  for (int n : kSizes) {
    auto a = random_vector(size_t{1} << n, 1);
    auto b = a;
    auto d = random_vector(a.size(), 2);
    multiply_diagonal(a.data(), a.size(), d.data());
    reference::multiply_diagonal(b.data(), b.size(), d.data());
    EXPECT_LT(max_diff(a, b), 1e-12);
  }
}

TEST(kernels, apply_hamiltonian_matches_reference) {
  for (int n : kSizes) {
    auto in = random_vector(size_t{1} << n, 12);
    std::vector<double> d(in.size());
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5, 5);
    for (auto& x : d) x = u(rng);
    std::vector<Complex> a(in.size()), b(in.size());
    const Complex c{0.3, -0.7};
    apply_hamiltonian(in.data(), a.data(), n, d.data(), c);
    reference::apply_hamiltonian(in.data(), b.data(), n, d.data(), c);
    EXPECT_LT(max_diff(a, b), 1e-11);
  }
}

TEST(kernels, apply_hamiltonian_is_hermitian) {
  const int n = 3;
  std::vector<double> d{1, -2, 3, 0.5, -1, 2, 0, 4};
  const Complex c{0.2, 0.9};
  // <e_i|H|e_j> == conj(<e_j|H|e_i>)
  std::vector<std::vector<Complex>> cols;
  for (size_t j = 0; j < 8; ++j) {
    std::vector<Complex> e(8, 0.0), out(8);
    e[j] = 1.0;
    apply_hamiltonian(e.data(), out.data(), n, d.data(), c);
    cols.push_back(out);
  }
  for (size_t i = 0; i < 8; ++i) {
    for (size_t j = 0; j < 8; ++j) EXPECT_LT(std::abs(cols[j][i] - std::conj(cols[i][j])), 1e-15);
  }
  // <0|H|1> on site 0 is c.
  EXPECT_EQ(cols[1][0], c);
}

TEST(kernels, expect_z_product_matches_reference) {
  for (int n : kSizes) {
    auto a = random_vector(size_t{1} << n, 30);
    for (std::uint64_t mask : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{0b1011}}) {
      EXPECT_NEAR(expect_z_product(a.data(), a.size(), mask), reference::expect_z_product(a.data(), a.size(), mask),
                  1e-8 * a.size());
    }
  }
}

TEST(kernels, expect_z_sign_convention) {
  std::vector<Complex> down{1.0, 0.0}, up{0.0, 1.0};
  EXPECT_EQ(expect_z_product(down.data(), 2, 1), -1.0);
  EXPECT_EQ(expect_z_product(up.data(), 2, 1), 1.0);
}

TEST(kernels, scale_coherences_matches_reference) {
  for (int n : {2, 7}) {
    auto a = random_vector(size_t{1} << (2 * n), 40);
    auto b = a;
    scale_coherences(a.data(), n, n - 1, 0.3);
    reference::scale_coherences(b.data(), n, n - 1, 0.3);
    EXPECT_LT(max_diff(a, b), 1e-12);
  }
}
