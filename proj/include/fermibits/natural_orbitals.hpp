// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file natural_orbitals.hpp
 * @brief Base change to natural orbitals (eigenvectors of the 1-RDM).
 *
 * Requires Eigen for the hermitian eigensolver. Works on complex double
 * states only.
 */

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fermibits/fock.hpp"
#include "fermibits/matrix.hpp"
#include "fermibits/ops.hpp"

namespace fermibits {

struct NaturalOrbitals {
  Matrix<Complex> unitary;            // columns are eigenvectors of rdm(psi, 1)
  std::vector<double> occupations;    // ascending eigenvalues
  FermiState<Complex> transformed;    // tensor_op(U, N)^dagger psi
  Matrix<Complex> transformed_rdm1;   // rdm(transformed, 1)
  double offdiag_norm = 0.0;          // Frobenius norm of its off-diagonal part
};

[[nodiscard]] inline double offdiagonal_norm(const Matrix<Complex>& m) {
  double acc = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c) acc += std::norm(m(r, c));
  return std::sqrt(acc);
}

[[nodiscard]] inline NaturalOrbitals natural_orbitals(const FermiState<Complex>& psi) {
  if (psi.particles() < 1) throw std::domain_error("natural orbitals need at least one particle");
  const auto g = rdm(psi, 1);
  const auto n = static_cast<Eigen::Index>(g.matrix().rows());
  Eigen::MatrixXcd dense(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) dense(r, c) = g(r, c);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");

  NaturalOrbitals out;
  out.unitary = Matrix<Complex>(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) out.unitary(r, c) = solver.eigenvectors()(r, c);
  for (Eigen::Index k = 0; k < n; ++k) out.occupations.push_back(solver.eigenvalues()(k));

  const FermiState<Complex> full =
      psi.config().is_single_group() ? psi : embed(psi, psi.config().to_full());
  // tensor_op(U, N)^dagger = tensor_op(U^dagger, N)
  out.transformed = tensor_apply(out.unitary.adjoint(), full);
  out.transformed_rdm1 = rdm(out.transformed, 1).matrix();
  out.offdiag_norm = offdiagonal_norm(out.transformed_rdm1);
  return out;
}

}  // namespace fermibits
