// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Fermi states and operators over configuration-indexed Slater bases.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fermibits/bitops.hpp"
#include "fermibits/config.hpp"
#include "fermibits/matrix.hpp"
#include "fermibits/scalar.hpp"

namespace fermibits {

/**
 * Vector in a configuration subspace of the N-particle Fock space. The
 * coefficient at index i belongs to config().unrank(i).
 */
template <Scalar S>
class FermiState {
 public:
  FermiState() = default;

  /// Zero state.
  explicit FermiState(OrbitalConfig config)
      : config_(std::move(config)), coeffs_(config_.dimension(), scalar_traits<S>::zero()) {}

  FermiState(OrbitalConfig config, std::vector<S> coeffs)
      : config_(std::move(config)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != config_.dimension())
      throw std::domain_error("coefficient vector length does not match the basis dimension");
  }

  /// Single Slater determinant with coefficient one.
  static FermiState basis_state(OrbitalConfig config, Bitfield s) {
    FermiState psi(std::move(config));
    psi.coeffs_[psi.config_.rank(s)] = scalar_traits<S>::one();
    return psi;
  }

  [[nodiscard]] const OrbitalConfig& config() const noexcept { return config_; }
  [[nodiscard]] const std::vector<S>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
  [[nodiscard]] int orbitals() const noexcept { return config_.orbitals(); }
  [[nodiscard]] int particles() const noexcept { return config_.particles(); }

  S& operator[](std::size_t i) { return coeffs_[i]; }
  const S& operator[](std::size_t i) const { return coeffs_[i]; }

  /// Coefficient of determinant s (zero when s is outside the configuration).
  [[nodiscard]] S coefficient(Bitfield s) const {
    if (!config_.admissible(s)) return scalar_traits<S>::zero();
    return coeffs_[config_.rank(s)];
  }

  /// Add c to the coefficient of determinant s.
  void add(Bitfield s, const S& c) { coeffs_[config_.rank(s)] += c; }

  /// Nonzero (determinant, coefficient) pairs in basis order.
  [[nodiscard]] std::vector<std::pair<Bitfield, S>> terms() const {
    std::vector<std::pair<Bitfield, S>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!is_zero(coeffs_[i])) out.emplace_back(config_.unrank(i), coeffs_[i]);
    return out;
  }

  [[nodiscard]] FermiState with_names(std::vector<std::string> names) const {
    return FermiState(config_.with_names(std::move(names)), coeffs_);
  }

 private:
  OrbitalConfig config_;
  std::vector<S> coeffs_;
};

/**
 * Linear map between two Slater-basis sectors. Rows are indexed by the
 * target basis, columns by the source basis.
 */
template <Scalar S>
class FermiOp {
 public:
  FermiOp() = default;
  FermiOp(OrbitalConfig from, OrbitalConfig to)
      : from_(std::move(from)), to_(std::move(to)), matrix_(to_.dimension(), from_.dimension()) {}
  FermiOp(OrbitalConfig from, OrbitalConfig to, Matrix<S> matrix)
      : from_(std::move(from)), to_(std::move(to)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != to_.dimension() || matrix_.cols() != from_.dimension())
      throw std::domain_error("operator matrix does not match the basis dimensions");
    if (from_.orbitals() != to_.orbitals())
      throw std::domain_error("operator sectors must share the orbital count");
  }

  [[nodiscard]] const OrbitalConfig& from_config() const noexcept { return from_; }
  [[nodiscard]] const OrbitalConfig& to_config() const noexcept { return to_; }
  [[nodiscard]] const Matrix<S>& matrix() const noexcept { return matrix_; }
  [[nodiscard]] Matrix<S>& matrix() noexcept { return matrix_; }
  [[nodiscard]] int orbitals() const noexcept { return from_.orbitals(); }

  S& operator()(std::size_t r, std::size_t c) { return matrix_(r, c); }
  const S& operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

  [[nodiscard]] FermiOp adjoint() const { return FermiOp(to_, from_, matrix_.adjoint()); }

  friend FermiOp operator*(const FermiOp& a, const FermiOp& b) {
    if (!a.from_.same_groups(b.to_)) throw std::domain_error("operator product: sectors differ");
    return FermiOp(b.from_, a.to_, a.matrix_ * b.matrix_);
  }

 private:
  OrbitalConfig from_;
  OrbitalConfig to_;
  Matrix<S> matrix_;
};

/// Re-express psi over `target`, which must contain every nonzero determinant.
template <Scalar S>
[[nodiscard]] FermiState<S> embed(const FermiState<S>& psi, const OrbitalConfig& target) {
  if (!psi.config().compatible(target))
    throw std::domain_error("cannot embed a state into a configuration with other totals");
  FermiState<S> out(target);
  const auto basis = psi.config().enumerate_basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (is_zero(psi[i])) continue;
    if (!target.admissible(basis[i]))
      throw std::domain_error("state has weight outside the target configuration");
    out.add(basis[i], psi[i]);
  }
  return out;
}

/**
 * Sum of two states with compatible totals. Identical group structures are
 * added in place; otherwise both are lifted to the full single-group
 * configuration first.
 */
template <Scalar S>
[[nodiscard]] FermiState<S> merge_states(const FermiState<S>& psi, const FermiState<S>& phi) {
  if (!psi.config().compatible(phi.config()))
    throw std::domain_error("states have different orbital or particle totals");
  if (psi.config().same_groups(phi.config())) {
    std::vector<S> c = psi.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += phi[i];
    return FermiState<S>(psi.config(), std::move(c));
  }
  const OrbitalConfig full = psi.config().to_full();
  FermiState<S> out = embed(psi, full);
  const auto basis = phi.config().enumerate_basis();
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!is_zero(phi[i])) out.add(basis[i], phi[i]);
  return out;
}

template <Scalar S>
[[nodiscard]] FermiState<S> operator+(const FermiState<S>& psi, const FermiState<S>& phi) {
  return merge_states(psi, phi);
}

template <Scalar S>
[[nodiscard]] FermiState<S> scale(const FermiState<S>& psi, const S& c) {
  std::vector<S> out = psi.coeffs();
  for (auto& x : out) x *= c;
  return FermiState<S>(psi.config(), std::move(out));
}

/// <psi|phi>, conjugate-linear in psi.
template <Scalar S>
[[nodiscard]] S inner(const FermiState<S>& psi, const FermiState<S>& phi) {
  if (!psi.config().same_groups(phi.config()))
    throw std::domain_error("inner product of states with different configurations");
  S acc = scalar_traits<S>::zero();
  for (std::size_t i = 0; i < psi.size(); ++i) acc += conjugate(psi[i]) * phi[i];
  return acc;
}

template <Scalar S>
[[nodiscard]] S norm_squared(const FermiState<S>& psi) {
  return inner(psi, psi);
}

/// |psi><phi|, entries psi_i conj(phi_j).
template <Scalar S>
[[nodiscard]] FermiOp<S> outer(const FermiState<S>& psi, const FermiState<S>& phi) {
  if (!psi.config().same_groups(phi.config()))
    throw std::domain_error("outer product of states with different configurations");
  FermiOp<S> op(phi.config(), psi.config());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < phi.size(); ++j) op(i, j) = psi[i] * conjugate(phi[j]);
  return op;
}

/// Apply an operator; the state is first embedded into the operator's source sector.
template <Scalar S>
[[nodiscard]] FermiState<S> apply(const FermiOp<S>& op, const FermiState<S>& psi) {
  const FermiState<S> src = op.from_config().same_groups(psi.config())
                                ? psi
                                : embed(psi, op.from_config());
  OrbitalConfig to = op.to_config();
  if (to.orbital_names().empty() && !psi.config().orbital_names().empty())
    to = to.with_names(psi.config().orbital_names());
  return FermiState<S>(std::move(to), op.matrix() * src.coeffs());
}

template <Scalar S>
[[nodiscard]] FermiState<S> operator*(const FermiOp<S>& op, const FermiState<S>& psi) {
  return fermibits::apply(op, psi);
}

}  // namespace fermibits
