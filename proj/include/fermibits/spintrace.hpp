// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spintrace.hpp
 * @brief Spin-tracing of two-body density matrices into Coulomb integral
 *        symbols <ab|cd> over spatial orbitals.
 *
 * Spin-orbitals alternate spin: 2k-1 is spatial orbital k with spin up, 2k is
 * spatial orbital k with spin down. The symbol <ab|cd> denotes
 * int a*(x1) b(x1) |x1-x2|^-1 c*(x2) d(x2), so for spin-orbitals
 * chi_i = phi_i alpha_i the antisymmetrized two-electron element is
 *
 *   <chi1 chi2|V|chi3 chi4> = <phi1 phi3|phi2 phi4> <a1|a3><a2|a4>
 *                           - <phi1 phi4|phi2 phi3> <a1|a4><a2|a3>.
 */

#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <utility>

#include "fermibits/bitops.hpp"
#include "fermibits/config.hpp"
#include "fermibits/fock.hpp"
#include "fermibits/scalar.hpp"

namespace fermibits {

enum class Spin { up, down };

struct SpinOrbital {
  int spatial = 1;  // 1-based
  Spin spin = Spin::up;

  friend bool operator==(const SpinOrbital&, const SpinOrbital&) = default;
};

/// Spatial orbital and spin of 1-based spin-orbital index i.
[[nodiscard]] constexpr SpinOrbital spin_orbital(int i) {
  if (i < 1) throw std::domain_error("spin-orbital indices are 1-based");
  return {(i + 1) / 2, (i % 2 == 1) ? Spin::up : Spin::down};
}

/// 1-based spin-orbital index of (spatial orbital k, spin).
[[nodiscard]] constexpr int spin_orbital_index(int spatial, Spin spin) {
  if (spatial < 1) throw std::domain_error("spatial orbital indices are 1-based");
  return 2 * spatial - (spin == Spin::up ? 1 : 0);
}

/// Number of spin-orbitals for `spatial_count` spatial orbitals.
[[nodiscard]] constexpr int spin_orbital_count(int spatial_count) {
  if (spatial_count < 1) throw std::domain_error("need at least one spatial orbital");
  return 2 * spatial_count;
}

/// <ab|cd> with 1-based spatial indices, stored canonicalized.
struct CoulombSymbol {
  int a = 1;
  int b = 1;
  int c = 1;
  int d = 1;

  friend auto operator<=>(const CoulombSymbol&, const CoulombSymbol&) = default;
};

/**
 * Canonical representative under exchange <ab|cd> = <cd|ab>: the smaller
 * pair comes first. With `real_orbitals` each pair is additionally sorted,
 * identifying <ab|cd> with <ba|cd> and <ab|dc>.
 */
[[nodiscard]] constexpr CoulombSymbol canonical_symbol(int a, int b, int c, int d,
                                                       bool real_orbitals = false) {
  if (real_orbitals) {
    if (b < a) std::swap(a, b);
    if (d < c) std::swap(c, d);
  }
  if (std::pair{c, d} < std::pair{a, b}) {
    std::swap(a, c);
    std::swap(b, d);
  }
  return {a, b, c, d};
}

template <Scalar S>
using SymbolTable = std::map<CoulombSymbol, S>;

struct SpinTraceOptions {
  bool real_orbitals = false;
};

/**
 * Coefficients of <psi2|V_ee psi1> in Coulomb symbols, given the two-body
 * density matrix gamma = rdm(psi1, psi2, 2) over alternating spin-orbitals.
 *
 * The entry at row |chi3 chi4>, column |chi1 chi2> pairs with the Coulomb
 * element <chi1 chi2|V|chi3 chi4>, since <psi2|B psi1> = tr(b gamma).
 */
template <Scalar S>
[[nodiscard]] SymbolTable<S> spin_trace_coulomb(const FermiOp<S>& gamma,
                                                SpinTraceOptions options = {}) {
  const OrbitalConfig& rows = gamma.to_config();
  const OrbitalConfig& cols = gamma.from_config();
  if (!rows.is_single_group() || !cols.is_single_group() || rows.particles() != 2 ||
      cols.particles() != 2)
    throw std::domain_error("spin_trace_coulomb expects a two-body density matrix");
  if (rows.orbitals() % 2 != 0)
    throw std::domain_error("spin_trace_coulomb needs an even number of spin-orbitals");

  SymbolTable<S> table;
  const auto accumulate = [&](int a, int b, int c, int d, const S& w) {
    const CoulombSymbol key = canonical_symbol(a, b, c, d, options.real_orbitals);
    auto [it, inserted] = table.try_emplace(key, w);
    if (!inserted) it->second += w;
  };

  const auto row_basis = rows.enumerate_basis();
  const auto col_basis = cols.enumerate_basis();
  for (std::size_t r = 0; r < row_basis.size(); ++r) {
    const auto ket = fermi_to_coords(row_basis[r]);
    const SpinOrbital x3 = spin_orbital(ket[0]);
    const SpinOrbital x4 = spin_orbital(ket[1]);
    for (std::size_t c = 0; c < col_basis.size(); ++c) {
      const S& w = gamma(r, c);
      if (is_zero(w)) continue;
      const auto bra = fermi_to_coords(col_basis[c]);
      const SpinOrbital x1 = spin_orbital(bra[0]);
      const SpinOrbital x2 = spin_orbital(bra[1]);
      if (x1.spin == x3.spin && x2.spin == x4.spin)
        accumulate(x1.spatial, x3.spatial, x2.spatial, x4.spatial, w);
      if (x1.spin == x4.spin && x2.spin == x3.spin)
        accumulate(x1.spatial, x4.spatial, x2.spatial, x3.spatial, S(-w));
    }
  }
  std::erase_if(table, [](const auto& kv) { return is_zero(kv.second); });
  return table;
}

/**
 * Serialized pair key: the boson encoding of the multiset {a, b} over
 * `spatial_count` modes. Repeated orbitals (a == b) become a double
 * occupation.
 */
[[nodiscard]] inline Bitfield pair_multiset_key(int a, int b, int spatial_count) {
  if (a < 1 || b < 1 || a > spatial_count || b > spatial_count)
    throw std::domain_error("spatial orbital index out of range");
  std::vector<int> occ(spatial_count, 0);
  ++occ[a - 1];
  ++occ[b - 1];
  return boson_encode(occ);
}

/// Spatial orbitals (with multiplicity) of a pair key, ascending.
[[nodiscard]] inline std::vector<int> boson_to_coords(Bitfield key, int spatial_count) {
  const auto occ = boson_decode(key, spatial_count);
  std::vector<int> coords;
  for (int k = 0; k < spatial_count; ++k)
    for (int n = 0; n < occ[k]; ++n) coords.push_back(k + 1);
  return coords;
}

}  // namespace fermibits
