// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fermibits/natural_orbitals.hpp"
#include "support/test_scalars.hpp"

namespace fb = fermibits;
namespace ft = fermibits::testing;
using fb::Complex;
using fb::OrbitalConfig;

namespace {

fb::FermiState<Complex> normalized(fb::FermiState<Complex> psi) {
  return fb::scale(psi, Complex(1.0 / std::sqrt(fb::norm_squared(psi).real())));
}

}  // namespace

TEST(NaturalOrbitals, DiagonalizeRandomStates) {
  std::mt19937_64 rng(5);
  const auto cfg = OrbitalConfig::full(6, 4);
  for (int k = 0; k < 10; ++k) {
    const auto psi = normalized(ft::random_state<Complex>(cfg, rng));
    const auto no = fb::natural_orbitals(psi);
    EXPECT_LE(no.offdiag_norm, 1e-12) << "k=" << k;
    EXPECT_NEAR(std::accumulate(no.occupations.begin(), no.occupations.end(), 0.0), 4.0, 1e-12);
    for (std::size_t i = 0; i < no.occupations.size(); ++i) {
      EXPECT_GE(no.occupations[i], -1e-12);
      EXPECT_LE(no.occupations[i], 1.0 + 1e-12);  // Pauli bound
      EXPECT_NEAR(no.transformed_rdm1(i, i).real(), no.occupations[i], 1e-12);
      if (i > 0) {
        EXPECT_LE(no.occupations[i - 1], no.occupations[i]);
      }
    }
    // the change of basis is unitary, so the norm survives
    EXPECT_NEAR(fb::norm_squared(no.transformed).real(), 1.0, 1e-12);
  }
}

TEST(NaturalOrbitals, SingleDeterminantIsAlreadyDiagonal) {
  const auto psi = fb::FermiState<Complex>::basis_state(OrbitalConfig::full(5, 2), 0b10010);
  const auto no = fb::natural_orbitals(psi);
  EXPECT_LE(no.offdiag_norm, 1e-15);
  EXPECT_EQ(no.occupations.size(), 5u);
  EXPECT_NEAR(no.occupations[4], 1.0, 1e-14);
  EXPECT_NEAR(no.occupations[0], 0.0, 1e-14);
}

TEST(NaturalOrbitals, ConfiguredInputIsEmbedded) {
  std::mt19937_64 rng(6);
  const OrbitalConfig cfg({3, 3}, {1, 2});
  const auto no = fb::natural_orbitals(normalized(ft::random_state<Complex>(cfg, rng)));
  EXPECT_LE(no.offdiag_norm, 1e-12);
  EXPECT_EQ(no.transformed.config(), OrbitalConfig::full(6, 3));
}

TEST(NaturalOrbitals, RejectsEmptyState) {
  const auto psi = fb::FermiState<Complex>::basis_state(OrbitalConfig::full(3, 0), 0);
  EXPECT_THROW((void)fb::natural_orbitals(psi), std::domain_error);
}

TEST(NaturalOrbitals, OffdiagonalNorm) {
  fb::Matrix<Complex> m(2, 2);
  m(0, 0) = Complex(5.0);
  m(0, 1) = Complex(3.0, 0.0);
  m(1, 0) = Complex(0.0, 4.0);
  EXPECT_DOUBLE_EQ(fb::offdiagonal_norm(m), 5.0);
}
