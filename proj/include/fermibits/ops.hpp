// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file ops.hpp
 * @brief Annihilation with sign factors, reduced density matrices and
 *        operator lifts between particle sectors.
 *
 * Conventions:
 *  - a_{|i1..ip>} = a_{ip} ... a_{i1}, each a_i removing orbital i with the
 *    sign (-1)^(number of occupied orbitals below i).
 *  - rdm(psi1, psi2, p) maps wedge^{p2} H to wedge^p H with entries
 *    <t1|gamma|t2> = <a_{t2} psi2 | a_{t1} psi1>, where p2 = N2 - N1 + p.
 *  - p2N(b, N1) lifts b : wedge^{p1} H -> wedge^{p2} H to
 *    B = sum_ij b_ij a^dagger_{t_i} a_{t_j}. Then <psi2|B psi1> = tr(b gamma).
 *
 * All routines are single-threaded and accumulate in a fixed order, so float
 * results are reproducible run to run.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fermibits/bitops.hpp"
#include "fermibits/config.hpp"
#include "fermibits/fock.hpp"
#include "fermibits/matrix.hpp"
#include "fermibits/scalar.hpp"

namespace fermibits {

struct Annihilated {
  int sign = 1;
  Bitfield rest = 0;

  friend bool operator==(const Annihilated&, const Annihilated&) = default;
};

/// a_{|t>}|s>: std::nullopt when t is not contained in s.
[[nodiscard]] inline std::optional<Annihilated> annihilate(Bitfield s, Bitfield t) {
  if ((t & s) != t) return std::nullopt;
  const Bitfield a_mask = annihil_sign_mask(s) << 1;
  const int sign = rev_sign(popcount(t)) * ((popcount(a_mask & t) & 1) ? -1 : 1);
  return Annihilated{sign, s - t};
}

/// Signed ket-bra term sign * |ket><bra|.
struct KetBra {
  int sign = 1;
  Bitfield ket = 0;
  Bitfield bra = 0;

  friend bool operator==(const KetBra&, const KetBra&) = default;
};

/**
 * All nonzero <a_{t2} s2 | a_{t1} s1> with |t1| = p1, as ket-bra terms
 * sign |t1><t2|.
 *
 * Orbitals occupied in exactly one of s1, s2 ("force" orbitals) must be
 * annihilated; orbitals occupied in both ("choice" orbitals) are annihilated
 * in matching subsets, enumerated with next_fermi and deposited onto the
 * choice mask.
 */
[[nodiscard]] inline std::vector<KetBra> slater_rdm(Bitfield s1, Bitfield s2, int p1) {
  std::vector<KetBra> out;
  if (p1 < 0) return out;
  const Bitfield f_mask = s1 ^ s2;
  const Bitfield force1 = f_mask & s1;
  const Bitfield force2 = f_mask & s2;
  const int n_choice = p1 - popcount(force1);
  if (n_choice < 0) return out;
  const int p2 = popcount(s2) - popcount(s1) + p1;
  const Bitfield a_mask1 = annihil_sign_mask(s1) << 1;
  const Bitfield a_mask2 = annihil_sign_mask(s2) << 1;
  const auto parity = [](Bitfield x) { return (popcount(x) & 1) ? -1 : 1; };
  const int zeta = rev_sign(p1) * rev_sign(p2) * parity(a_mask1 & force1) * parity(a_mask2 & force2);
  if (n_choice == 0) {
    out.push_back({zeta, force1, force2});
    return out;
  }
  const Bitfield c_mask = s1 & s2;
  const int k_choice = popcount(c_mask);
  if (n_choice > k_choice) return out;
  out.reserve(binomial(k_choice, n_choice));
  Bitfield t = low_mask(n_choice);
  const std::uint64_t count = binomial(k_choice, n_choice);
  for (std::uint64_t i = 0; i < count; ++i) {
    const Bitfield choice = bit_distribute(t, c_mask);
    const int sign = zeta * parity(a_mask1 & choice) * parity(a_mask2 & choice);
    out.push_back({sign, force1 + choice, force2 + choice});
    if (i + 1 < count) t = next_fermi(t);
  }
  return out;
}

namespace detail {

inline void require_same_orbitals(const OrbitalConfig& a, const OrbitalConfig& b) {
  if (a.orbitals() != b.orbitals())
    throw std::domain_error("states live over different orbital counts");
}

}  // namespace detail

/**
 * Reduced density matrix gamma_{|psi1><psi2|} : wedge^{p2} H -> wedge^p H over
 * the full single-group bases, for states in any configuration. p = 0 gives
 * the 1x1 matrix [<psi2|psi1>].
 */
template <Scalar S>
[[nodiscard]] FermiOp<S> rdm(const FermiState<S>& psi1, const FermiState<S>& psi2, int p) {
  detail::require_same_orbitals(psi1.config(), psi2.config());
  const int orbs = psi1.orbitals();
  const int n1 = psi1.particles();
  const int n2 = psi2.particles();
  if (p < 0 || p > n1)
    throw std::domain_error("rdm: p must lie in 0..N1 (got " + std::to_string(p) + ")");
  const int p2 = n2 - n1 + p;
  if (p2 < 0 || p2 > n2)
    throw std::domain_error("rdm: particle numbers leave no valid partner sector");
  const OrbitalConfig row_cfg = OrbitalConfig::full(orbs, p);
  const OrbitalConfig col_cfg = OrbitalConfig::full(orbs, p2);
  FermiOp<S> gamma(col_cfg, row_cfg);
  const auto terms1 = psi1.terms();
  const auto terms2 = psi2.terms();
  for (const auto& [s1, c1] : terms1) {
    for (const auto& [s2, c2] : terms2) {
      if (popcount(s1 & ~s2) > p) continue;
      const S w = conjugate(c2) * c1;
      for (const KetBra& kb : slater_rdm(s1, s2, p))
        gamma(combination_rank(kb.ket), combination_rank(kb.bra)) += signed_value(kb.sign, w);
    }
  }
  return gamma;
}

template <Scalar S>
[[nodiscard]] FermiOp<S> rdm(const FermiState<S>& psi, int p) {
  return rdm(psi, psi, p);
}

/**
 * Lift b : wedge^{p1} H -> wedge^{p2} H to wedge^{N1} H -> wedge^{N2} H with
 * N2 = N1 - p1 + p2, by annihilating t_j from each source determinant and
 * matching the remainder against t_i in the target.
 */
template <Scalar S>
[[nodiscard]] FermiOp<S> p2N(const FermiOp<S>& b, int n1) {
  const int orbs = b.orbitals();
  const int p1 = b.from_config().particles();
  const int p2 = b.to_config().particles();
  if (!b.from_config().is_single_group() || !b.to_config().is_single_group())
    throw std::domain_error("p2N expects an operator over full single-group sectors");
  const int n2 = n1 - p1 + p2;
  // N1 < p1 is allowed: nothing can be annihilated and the lift is zero.
  if (n1 < 0 || n1 > orbs || n2 < 0 || n2 > orbs)
    throw std::domain_error("p2N: particle number outside 0..orbs");
  const OrbitalConfig from = OrbitalConfig::full(orbs, n1);
  const OrbitalConfig to = OrbitalConfig::full(orbs, n2);
  FermiOp<S> lifted(from, to);
  const Bitfield all = low_mask(orbs);
  const auto basis = from.enumerate_basis();
  for (std::size_t vi = 0; vi < basis.size(); ++vi) {
    const Bitfield v = basis[vi];
    for_each_subset(v, p1, [&](Bitfield tj) {
      const Annihilated aj = *annihilate(v, tj);
      const std::size_t col = combination_rank(tj);
      for_each_subset(all & ~aj.rest, p2, [&](Bitfield ti) {
        const S& bij = b(combination_rank(ti), col);
        if (is_zero(bij)) return;
        const Bitfield u = aj.rest | ti;
        const int sign = annihilate(u, ti)->sign * aj.sign;
        lifted(combination_rank(u), vi) += signed_value(sign, bij);
      });
    });
  }
  return lifted;
}

/**
 * A (x) ... (x) A restricted to wedge^N H: the entry for determinants u, v is
 * the determinant of the N x N minor of A with rows occ(u) and columns occ(v).
 */
template <Scalar S>
[[nodiscard]] FermiOp<S> tensor_op(const Matrix<S>& a, int n) {
  if (!a.is_square()) throw std::domain_error("tensor_op: matrix must be square");
  const int orbs = static_cast<int>(a.rows());
  if (orbs < 1 || orbs > kMaxOrbitals) throw std::domain_error("tensor_op: dimension out of range");
  if (n < 0 || n > orbs) throw std::domain_error("tensor_op: N must lie in 0..dim(H)");
  const OrbitalConfig cfg = OrbitalConfig::full(orbs, n);
  FermiOp<S> out(cfg, cfg);
  const auto basis = cfg.enumerate_basis();
  std::vector<std::vector<int>> occ;
  occ.reserve(basis.size());
  for (Bitfield s : basis) occ.push_back(fermi_to_coords(s));
  Matrix<S> minor(n, n);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) {
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) minor(k, l) = a(occ[r][k] - 1, occ[c][l] - 1);
      out(r, c) = determinant(minor);
    }
  }
  return out;
}

/**
 * tensor_op(a, N) * psi without forming the operator: only the columns of
 * nonzero coefficients are visited, so large sectors stay cheap for sparse
 * states. psi must live on the full configuration over dim(a) orbitals.
 */
template <Scalar S>
[[nodiscard]] FermiState<S> tensor_apply(const Matrix<S>& a, const FermiState<S>& psi) {
  if (!a.is_square() || static_cast<int>(a.rows()) != psi.orbitals())
    throw std::domain_error("tensor_apply: matrix dimension must equal the orbital count");
  if (!psi.config().is_single_group())
    throw std::domain_error("tensor_apply: state must use the full configuration");
  const int n = psi.particles();
  const OrbitalConfig& cfg = psi.config();
  const auto basis = cfg.enumerate_basis();
  std::vector<std::pair<std::vector<int>, S>> terms;
  for (const auto& [t, c] : psi.terms()) terms.emplace_back(fermi_to_coords(t), c);
  std::vector<S> out(basis.size(), scalar_traits<S>::zero());
  Matrix<S> minor(n, n);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto occ = fermi_to_coords(basis[r]);
    for (const auto& [cols, c] : terms) {
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) minor(k, l) = a(occ[k] - 1, cols[l] - 1);
      out[r] += determinant(minor) * c;
    }
  }
  return FermiState<S>(cfg, std::move(out));
}

/// Matrix of a_{|t>} : wedge^N H -> wedge^{N-p} H with p = popcount(t).
template <Scalar S>
[[nodiscard]] FermiOp<S> annihilation_op(Bitfield t, int orbs, int n) {
  const int p = popcount(t);
  if (orbs < 1 || orbs > kMaxOrbitals || n < p || n > orbs || (t & ~low_mask(orbs)) != 0)
    throw std::domain_error("annihilation_op: invalid sector");
  const OrbitalConfig from = OrbitalConfig::full(orbs, n);
  const OrbitalConfig to = OrbitalConfig::full(orbs, n - p);
  FermiOp<S> op(from, to);
  const auto basis = from.enumerate_basis();
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (const auto r = annihilate(basis[i], t))
      op(combination_rank(r->rest), i) = signed_value(r->sign, scalar_traits<S>::one());
  return op;
}

}  // namespace fermibits
