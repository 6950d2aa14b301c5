// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file config.hpp
 * @brief Orbital configurations: groups of orbitals with fixed particle counts.
 *
 * Group j spans orbitals b_{j-1}+1 .. b_j where b_j is the running sum of the
 * group sizes, and holds exactly N_j particles. The basis of a configuration
 * is the sequence produced by next_fermi_config from the lowest admissible
 * pattern: within a group patterns increase as integers, and group 0 is the
 * fastest-varying digit. Ranking composes the combinatorial number system per
 * group with a mixed radix over groups.
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fermibits/bitops.hpp"

namespace fermibits {

namespace detail {

struct BinomialTable {
  // Saturates at UINT64_MAX; only entries with n <= 64 are stored.
  std::array<std::array<std::uint64_t, kMaxOrbitals + 1>, kMaxOrbitals + 1> c{};
  BinomialTable() {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    for (int n = 0; n <= kMaxOrbitals; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) {
        const std::uint64_t a = c[n - 1][k - 1];
        const std::uint64_t b = k <= n - 1 ? c[n - 1][k] : 0;
        c[n][k] = (a > kMax - b) ? kMax : a + b;
      }
    }
  }
};

inline const BinomialTable& binomials() {
  static const BinomialTable table;
  return table;
}

}  // namespace detail

/// C(n, k) for 0 <= n <= 64; zero when k is out of range.
[[nodiscard]] inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > kMaxOrbitals) throw std::domain_error("binomial: n out of range");
  if (k < 0 || k > n) return 0;
  return detail::binomials().c[n][k];
}

/// Position of s among all words with popcount(s) bits in increasing order.
[[nodiscard]] inline std::uint64_t combination_rank(Bitfield s) {
  std::uint64_t r = 0;
  int k = 1;
  while (s != 0) {
    r += binomial(std::countr_zero(s), k++);
    s &= s - 1;
  }
  return r;
}

/// Inverse of combination_rank for k-bit words below 2^n.
[[nodiscard]] inline Bitfield combination_unrank(std::uint64_t index, int n, int k) {
  Bitfield s = 0;
  for (int j = k; j >= 1; --j) {
    int pos = j - 1;
    while (pos + 1 < n && binomial(pos + 1, j) <= index) ++pos;
    index -= binomial(pos, j);
    s |= Bitfield{1} << pos;
  }
  return s;
}

/**
 * Calls f(sub) for every k-element subset `sub` of the 1-bits of mask, in
 * increasing order of the compressed pattern.
 */
template <class F>
void for_each_subset(Bitfield mask, int k, F&& f) {
  const int n = popcount(mask);
  if (k < 0 || k > n) return;
  const std::uint64_t count = binomial(n, k);
  Bitfield t = low_mask(k);
  for (std::uint64_t i = 0; i < count; ++i) {
    f(bit_distribute(t, mask));
    if (i + 1 < count) t = next_fermi(t);
  }
}

/**
 * Subdivision of the orbitals into groups with fixed particle numbers, plus
 * optional display names for the orbitals. Names never affect computation.
 */
class OrbitalConfig {
 public:
  OrbitalConfig() = default;

  OrbitalConfig(std::vector<int> group_sizes, std::vector<int> group_particles,
                std::vector<std::string> orbital_names = {})
      : sizes_(std::move(group_sizes)),
        particles_(std::move(group_particles)),
        names_(std::move(orbital_names)) {
    if (sizes_.empty()) throw std::domain_error("configuration needs at least one orbital group");
    if (sizes_.size() != particles_.size())
      throw std::domain_error("group sizes and particle counts differ in length");
    int offset = 0;
    std::uint64_t dim = 1;
    for (std::size_t j = 0; j < sizes_.size(); ++j) {
      if (sizes_[j] < 1) throw std::domain_error("orbital group sizes must be positive");
      if (particles_[j] < 0 || particles_[j] > sizes_[j])
        throw std::domain_error("group particle count must lie in 0..group size");
      offsets_.push_back(offset);
      offset += sizes_[j];
      if (offset > kMaxOrbitals)
        throw std::domain_error("more than 64 orbitals are not supported");
      const std::uint64_t d = binomial(sizes_[j], particles_[j]);
      if (d != 0 && dim > std::numeric_limits<std::size_t>::max() / d)
        throw std::domain_error("configuration dimension overflows size_t");
      dim *= d;
      group_dims_.push_back(d);
    }
    orbs_ = offset;
    particles_total_ = std::accumulate(particles_.begin(), particles_.end(), 0);
    dimension_ = static_cast<std::size_t>(dim);
    if (!names_.empty() && static_cast<int>(names_.size()) != orbs_)
      throw std::domain_error("orbital name list length must equal the orbital count");
  }

  /// Single-group configuration holding `particles` in `orbs` orbitals.
  static OrbitalConfig full(int orbs, int particles, std::vector<std::string> names = {}) {
    return OrbitalConfig({orbs}, {particles}, std::move(names));
  }

  [[nodiscard]] const std::vector<int>& group_sizes() const noexcept { return sizes_; }
  [[nodiscard]] const std::vector<int>& group_particles() const noexcept { return particles_; }
  [[nodiscard]] const std::vector<std::string>& orbital_names() const noexcept { return names_; }
  [[nodiscard]] int orbitals() const noexcept { return orbs_; }
  [[nodiscard]] int particles() const noexcept { return particles_total_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::size_t group_count() const noexcept { return sizes_.size(); }
  [[nodiscard]] bool is_single_group() const noexcept { return sizes_.size() == 1; }

  [[nodiscard]] OrbitalConfig with_names(std::vector<std::string> names) const {
    return OrbitalConfig(sizes_, particles_, std::move(names));
  }

  /// Single-group configuration with the same totals and names.
  [[nodiscard]] OrbitalConfig to_full() const { return full(orbs_, particles_total_, names_); }

  /// Same totals (orbitals and particles), so states can be combined.
  [[nodiscard]] bool compatible(const OrbitalConfig& o) const noexcept {
    return orbs_ == o.orbs_ && particles_total_ == o.particles_total_;
  }

  /// Same group structure; names are ignored.
  [[nodiscard]] bool same_groups(const OrbitalConfig& o) const noexcept {
    return sizes_ == o.sizes_ && particles_ == o.particles_;
  }

  [[nodiscard]] Bitfield group_mask(std::size_t j) const {
    return low_mask(sizes_.at(j)) << offsets_.at(j);
  }

  [[nodiscard]] bool admissible(Bitfield s) const noexcept {
    if ((s & ~low_mask(orbs_)) != 0) return false;
    for (std::size_t j = 0; j < sizes_.size(); ++j)
      if (popcount(s & (low_mask(sizes_[j]) << offsets_[j])) != particles_[j]) return false;
    return true;
  }

  /// Lowest admissible pattern: each group filled from its bottom orbital.
  [[nodiscard]] Bitfield first() const noexcept {
    Bitfield s = 0;
    for (std::size_t j = 0; j < sizes_.size(); ++j) s |= low_mask(particles_[j]) << offsets_[j];
    return s;
  }

  [[nodiscard]] std::size_t rank(Bitfield s) const {
    if (!admissible(s))
      throw std::domain_error("determinant is not admissible for this configuration");
    std::uint64_t index = 0;
    std::uint64_t radix = 1;
    for (std::size_t j = 0; j < sizes_.size(); ++j) {
      const Bitfield local = (s >> offsets_[j]) & low_mask(sizes_[j]);
      index += combination_rank(local) * radix;
      radix *= group_dims_[j];
    }
    return static_cast<std::size_t>(index);
  }

  [[nodiscard]] Bitfield unrank(std::size_t index) const {
    if (index >= dimension_) throw std::domain_error("basis index out of range");
    std::uint64_t rest = index;
    Bitfield s = 0;
    for (std::size_t j = 0; j < sizes_.size(); ++j) {
      const std::uint64_t digit = rest % group_dims_[j];
      rest /= group_dims_[j];
      s |= combination_unrank(digit, sizes_[j], particles_[j]) << offsets_[j];
    }
    return s;
  }

  /// All admissible determinants in configuration order.
  [[nodiscard]] std::vector<Bitfield> enumerate_basis() const {
    std::vector<Bitfield> basis;
    basis.reserve(dimension_);
    Bitfield s = first();
    for (std::size_t i = 0; i < dimension_; ++i) {
      basis.push_back(s);
      if (i + 1 < dimension_) s = *next_fermi_config(s, sizes_);
    }
    return basis;
  }

  friend bool operator==(const OrbitalConfig& a, const OrbitalConfig& b) {
    return a.same_groups(b) && a.names_ == b.names_;
  }

 private:
  std::vector<int> sizes_;
  std::vector<int> particles_;
  std::vector<std::string> names_;
  std::vector<int> offsets_;
  std::vector<std::uint64_t> group_dims_;
  int orbs_ = 0;
  int particles_total_ = 0;
  std::size_t dimension_ = 0;
};

}  // namespace fermibits
