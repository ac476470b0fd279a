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

#include "donorqca/chain_state.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cctype>
#include <cmath>

#include "donorqca/errors.hpp"

namespace donorqca {

using kernels::Mat2;

namespace pauli {
Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
Mat2 x() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2 y() { return {0.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 0.0}; }
Mat2 z() { return {-1.0, 0.0, 0.0, 1.0}; }
}  // namespace pauli

Mat2 rotation(double theta, double phi) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const Complex mi(0.0, -1.0);
  // cos phi sigma_x + sin phi sigma_y = [[0, e^{i phi}], [e^{-i phi}, 0]].
  return {c, mi * s * std::polar(1.0, phi), mi * s * std::polar(1.0, -phi), c};
}

Mat2 z_rotation(double alpha) { return {std::polar(1.0, alpha / 2.0), 0.0, 0.0, std::polar(1.0, -alpha / 2.0)}; }

Matrix to_matrix(const Mat2& m) {
  Matrix out(2, 2);
  out << m[0], m[1], m[2], m[3];
  return out;
}

namespace {

Mat2 pauli_of(char c) {
  switch (c) {
    case 'I':
      return pauli::identity();
    case 'X':
      return pauli::x();
    case 'Y':
      return pauli::y();
    case 'Z':
      return pauli::z();
    default:
      throw ParseError(std::string("unknown Pauli label '") + c + "'");
  }
}

Mat2 conj(const Mat2& m) { return {std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])}; }

void check_size(const Pattern& p, bool pure) {
  const int limit = pure ? kMaxPureSites : kMaxDensitySites;
  if (static_cast<int>(p.size()) > limit) {
    throw SpecError("chain of " + std::to_string(p.size()) + " sites exceeds the " + (pure ? "pure-state" : "density") +
                    " limit of " + std::to_string(limit));
  }
}

}  // namespace

Observable::Observable(std::string labels) : labels_(std::move(labels)) {
  for (char c : labels_) pauli_of(c);
}

Observable Observable::parse(std::string_view text, size_t n_sites) {
  bool full = text.size() == n_sites;
  for (char c : text) full = full && (c == 'I' || c == 'X' || c == 'Y' || c == 'Z');
  if (full) return Observable(std::string(text));
  std::string labels(n_sites, 'I');
  size_t pos = 0;
  auto fail = [&](const std::string& why) -> void {
    throw ParseError("cannot parse observable '" + std::string(text) + "': " + why);
  };
  while (pos < text.size()) {
    char c = text[pos];
    if (c == ' ' || c == '*') {
      ++pos;
      continue;
    }
    if (c != 'X' && c != 'Y' && c != 'Z' && c != 'I') fail("expected a Pauli label");
    ++pos;
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("missing site index");
    size_t site = std::stoul(std::string(text.substr(start, pos - start)));
    if (site >= n_sites) fail("site " + std::to_string(site) + " outside the chain");
    if (labels[site] != 'I') fail("site " + std::to_string(site) + " given twice");
    labels[site] = c;
  }
  return Observable(labels);
}

Observable Observable::single(char p, int site, size_t n_sites) {
  std::string labels(n_sites, 'I');
  labels.at(static_cast<size_t>(site)) = p;
  return Observable(labels);
}

bool Observable::is_diagonal() const {
  for (char c : labels_) {
    if (c != 'I' && c != 'Z') return false;
  }
  return true;
}

std::string Observable::str() const {
  std::string out;
  for (size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k] == 'I') continue;
    if (!out.empty()) out += '*';
    out += labels_[k];
    out += std::to_string(k);
  }
  return out.empty() ? "I" : out;
}

ChainState ChainState::pure(Pattern pattern, StateVector amplitudes) {
  check_size(pattern, true);
  ChainState s;
  s.pattern_ = std::move(pattern);
  if (static_cast<size_t>(amplitudes.size()) != s.dim()) throw SpecError("amplitude vector has the wrong length");
  s.pure_ = true;
  s.psi_ = std::move(amplitudes);
  s.check_invariants();
  return s;
}

ChainState ChainState::mixed(Pattern pattern, DensityMatrix rho) {
  check_size(pattern, false);
  ChainState s;
  s.pattern_ = std::move(pattern);
  if (static_cast<size_t>(rho.rows()) != s.dim() || rho.rows() != rho.cols()) {
    throw SpecError("density matrix has the wrong shape");
  }
  s.pure_ = false;
  s.rho_ = std::move(rho);
  s.check_invariants();
  return s;
}

const StateVector& ChainState::amplitudes() const {
  if (!pure_) throw SpecError("state is a density matrix");
  return psi_;
}

StateVector& ChainState::amplitudes() {
  if (!pure_) throw SpecError("state is a density matrix");
  return psi_;
}

const DensityMatrix& ChainState::density() const {
  if (pure_) throw SpecError("state is pure");
  return rho_;
}

DensityMatrix& ChainState::density() {
  if (pure_) throw SpecError("state is pure");
  return rho_;
}

DensityMatrix ChainState::density_matrix() const { return pure_ ? DensityMatrix(psi_ * psi_.adjoint()) : rho_; }

ChainState ChainState::to_density() const {
  check_size(pattern_, false);
  ChainState s;
  s.pattern_ = pattern_;
  s.pure_ = false;
  s.rho_ = density_matrix();
  return s;
}

double ChainState::expect(const Observable& obs) const {
  if (obs.size() != pattern_.size()) throw SpecError("observable length does not match the chain");
  const int n = num_sites();
  if (obs.is_diagonal()) {
    std::uint64_t mask = 0;
    for (int k = 0; k < n; ++k) {
      if (obs.labels()[k] == 'Z') mask |= std::uint64_t{1} << k;
    }
    if (pure_) return kernels::expect_z_product(psi_.data(), dim(), mask);
    double acc = 0.0;
    for (size_t i = 0; i < dim(); ++i) {
      const int zeros = std::popcount(mask) - std::popcount(i & mask);
      const double p = rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
      acc += (zeros & 1) ? -p : p;
    }
    return acc;
  }
  if (pure_) {
    StateVector o = psi_;
    for (int k = 0; k < n; ++k) {
      if (obs.labels()[k] != 'I') kernels::apply_1q(o.data(), n, k, pauli_of(obs.labels()[k]));
    }
    return psi_.dot(o).real();
  }
  DensityMatrix o = rho_;
  for (int k = 0; k < n; ++k) {
    if (obs.labels()[k] != 'I') kernels::apply_1q(o.data(), 2 * n, k, pauli_of(obs.labels()[k]));
  }
  return o.trace().real();
}

std::vector<double> ChainState::site_z() const {
  std::vector<double> out;
  for (int k = 0; k < num_sites(); ++k) out.push_back(expect(Observable::single('Z', k, pattern_.size())));
  return out;
}

void ChainState::apply_unitary(const Matrix& u, std::span<const int> sites) {
  const Eigen::Index sub = Eigen::Index{1} << sites.size();
  if (u.rows() != sub || u.cols() != sub) throw SpecError("unitary size does not match its support");
  for (int s : sites) {
    if (s < 0 || s >= num_sites()) throw SpecError("support site outside the chain");
  }
  if ((u.adjoint() * u - Matrix::Identity(sub, sub)).cwiseAbs().maxCoeff() > 1e-9) {
    throw SpecError("operator is not unitary within 1e-9");
  }
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = u;
  const int n = num_sites();
  if (pure_) {
    kernels::apply_matrix(psi_.data(), n, sites, rm.data());
    return;
  }
  kernels::apply_matrix(rho_.data(), 2 * n, sites, rm.data());
  std::vector<int> cols;
  for (int s : sites) cols.push_back(s + n);
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rc = rm.conjugate();
  kernels::apply_matrix(rho_.data(), 2 * n, cols, rc.data());
}

void ChainState::apply_1q(const Mat2& u, int site, std::uint64_t cond_mask, std::uint64_t cond_value) {
  const int n = num_sites();
  if (pure_) {
    kernels::apply_1q(psi_.data(), n, site, u, cond_mask, cond_value);
    return;
  }
  kernels::apply_1q(rho_.data(), 2 * n, site, u, cond_mask, cond_value);
  kernels::apply_1q(rho_.data(), 2 * n, site + n, conj(u), cond_mask << n, cond_value << n);
}

void ChainState::apply_diagonal(const std::vector<Complex>& d) {
  if (d.size() != dim()) throw SpecError("diagonal has the wrong length");
  if (pure_) {
    kernels::multiply_diagonal(psi_.data(), dim(), d.data());
    return;
  }
  const auto n = static_cast<Eigen::Index>(dim());
  for (Eigen::Index c = 0; c < n; ++c) {
    const Complex dc = std::conj(d[static_cast<size_t>(c)]);
    for (Eigen::Index r = 0; r < n; ++r) rho_(r, c) *= d[static_cast<size_t>(r)] * dc;
  }
}

void ChainState::apply_channel(const std::vector<Matrix>& kraus, std::span<const int> sites) {
  if (pure_) throw SpecError("channels require a density matrix");
  if (kraus.empty()) throw SpecError("empty Kraus set");
  const Eigen::Index sub = Eigen::Index{1} << sites.size();
  Matrix completeness = Matrix::Zero(sub, sub);
  for (const Matrix& k : kraus) {
    if (k.rows() != sub || k.cols() != sub) throw SpecError("Kraus operator size does not match its support");
    completeness += k.adjoint() * k;
  }
  if ((completeness - Matrix::Identity(sub, sub)).cwiseAbs().maxCoeff() > 1e-9) {
    throw SpecError("Kraus operators are not trace preserving within 1e-9");
  }
  const int n = num_sites();
  std::vector<int> cols;
  for (int s : sites) cols.push_back(s + n);
  DensityMatrix acc = DensityMatrix::Zero(rho_.rows(), rho_.cols());
  for (const Matrix& k : kraus) {
    DensityMatrix term = rho_;
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rk = k;
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rc = k.conjugate();
    kernels::apply_matrix(term.data(), 2 * n, sites, rk.data());
    kernels::apply_matrix(term.data(), 2 * n, cols, rc.data());
    acc += term;
  }
  rho_ = std::move(acc);
}

void ChainState::scale_coherences(int site, double factor) {
  if (pure_) throw SpecError("coherence scaling requires a density matrix");
  kernels::scale_coherences(rho_.data(), num_sites(), site, factor);
}

double ChainState::norm() const { return pure_ ? psi_.squaredNorm() : rho_.trace().real(); }

void ChainState::check_invariants() const {
  if (pure_) {
    if (std::fabs(psi_.squaredNorm() - 1.0) > 1e-9) {
      throw SpecError("state norm " + std::to_string(psi_.squaredNorm()) + " differs from 1 by more than 1e-9");
    }
    return;
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-9) throw SpecError("density matrix is not Hermitian");
  if (std::fabs(rho_.trace().real() - 1.0) > 1e-9) throw SpecError("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-7) throw SpecError("density matrix is not positive semidefinite");
}

nlohmann::json ChainState::to_json() const {
  nlohmann::json j;
  j["pattern"] = pattern_.str();
  j["representation"] = pure_ ? "pure" : "density";
  auto pair = [](Complex c) { return nlohmann::json::array({c.real(), c.imag()}); };
  if (pure_) {
    auto& a = j["amplitudes"] = nlohmann::json::array();
    for (Eigen::Index i = 0; i < psi_.size(); ++i) a.push_back(pair(psi_[i]));
  } else {
    auto& rows = j["density"] = nlohmann::json::array();
    for (Eigen::Index r = 0; r < rho_.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < rho_.cols(); ++c) row.push_back(pair(rho_(r, c)));
      rows.push_back(std::move(row));
    }
  }
  return j;
}

size_t basis_index(std::string_view bits) {
  size_t index = 0;
  for (size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') {
      index |= size_t{1} << k;
    } else if (bits[k] != '0') {
      throw ParseError("basis string '" + std::string(bits) + "' may only contain 0 and 1");
    }
  }
  return index;
}

std::string basis_bits(size_t index, size_t n_sites) {
  std::string out(n_sites, '0');
  for (size_t k = 0; k < n_sites; ++k) {
    if (index >> k & 1) out[k] = '1';
  }
  return out;
}

ChainState new_chain(const Pattern& pattern, std::string_view bits) {
  if (bits.size() != pattern.size()) {
    throw SpecError("basis string of length " + std::to_string(bits.size()) + " for a " +
                    std::to_string(pattern.size()) + "-site chain");
  }
  check_size(pattern, true);
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(size_t{1} << pattern.size()));
  psi[static_cast<Eigen::Index>(basis_index(bits))] = 1.0;
  return ChainState::pure(pattern, std::move(psi));
}

ChainState new_chain(std::string_view pattern, std::string_view bits) { return new_chain(Pattern::parse(pattern), bits); }

double expect(const ChainState& state, const Observable& obs) { return state.expect(obs); }

ChainState apply_unitary(ChainState state, const Matrix& u, std::span<const int> sites) {
  state.apply_unitary(u, sites);
  return state;
}

ChainState apply_channel(ChainState state, const std::vector<Matrix>& kraus, std::span<const int> sites) {
  state.apply_channel(kraus, sites);
  return state;
}

}  // namespace donorqca
