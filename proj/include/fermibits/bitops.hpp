// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bitops.hpp
 * @brief Word-level kernels on bit-encoded Slater determinants.
 *
 * A determinant over at most 64 orbitals is one unsigned 64-bit word; bit
 * i-1 is set iff orbital i is occupied (orbital 1 sits in the LSB). The
 * kernels here enumerate determinants in popcount-preserving order, compute
 * annihilation sign masks and encode bosonic occupations as stars-and-bars
 * patterns.
 */

#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fermibits {

using Bitfield = std::uint64_t;

inline constexpr int kMaxOrbitals = 64;

[[nodiscard]] constexpr int popcount(Bitfield x) noexcept {
  return std::popcount(x);
}

/// Mask with the lowest n bits set; n may be 64.
[[nodiscard]] constexpr Bitfield low_mask(int n) noexcept {
  if (n <= 0) return 0;
  if (n >= kMaxOrbitals) return ~Bitfield{0};
  return (Bitfield{1} << n) - 1;
}

/**
 * Least significant 1-bit of x, extracted with the two's-complement
 * identity x & (-x).
 */
[[nodiscard]] constexpr Bitfield last_bit(Bitfield x) {
  if (x == 0) throw std::domain_error("last_bit: argument must be nonzero");
  return x & (~x + 1);
}

/**
 * Next larger word with the same popcount.
 *
 * The lowest block of ones has its leading bit carried one position up and
 * the remaining bits of the block are moved down to bit 0. The division by
 * last_bit(s) is a right shift by its trailing-zero count. Callers are
 * responsible for detecting when the result leaves their orbital range.
 */
[[nodiscard]] constexpr Bitfield next_fermi(Bitfield s) {
  if (s == 0) throw std::domain_error("next_fermi: argument must be nonzero");
  const Bitfield t = (s | (s - 1)) + 1;
  if (t == 0) return 0;  // block reached bit 63, no successor in one word
  const int shift = std::countr_zero(s) + 1;
  return t | ((last_bit(t) - 1) >> shift);
}

/**
 * Next pattern in configuration order: group 0 (the least significant
 * `orbs[0]` bits) iterates fastest. Returns std::nullopt once the last
 * pattern of the configuration has been passed.
 */
[[nodiscard]] inline std::optional<Bitfield> next_fermi_config(
    Bitfield s, std::span<const int> orbs) {
  if (orbs.empty()) return std::nullopt;
  const int width = orbs.front();
  const Bitfield mask = low_mask(width);
  if ((((s | (s - 1)) & mask) != mask)) return next_fermi(s);
  if (orbs.size() == 1) return std::nullopt;
  const Bitfield rest = width >= kMaxOrbitals ? 0 : s >> width;
  const auto t = next_fermi_config(rest, orbs.subspan(1));
  if (!t) return std::nullopt;
  // Reset group 0 to its lowest pattern. When the group is empty its
  // lowest set bit lies above the mask and the reset is 0.
  const Bitfield low = s & mask;
  const Bitfield reset = low == 0 ? 0 : mask >> std::countr_zero(low);
  return reset | (*t << width);
}

/**
 * Bit i of the result is the parity of the number of 1-bits of s at
 * positions 0..i. Runs in O(popcount(s)).
 */
[[nodiscard]] constexpr Bitfield annihil_sign_mask(Bitfield s) noexcept {
  Bitfield m = 0;
  while (s != 0) {
    const Bitfield t = s & (~s + 1);
    m ^= ~t + 1;
    s -= t;
  }
  return m;
}

/// Sign of the order-reversing permutation on n elements, (-1)^(n(n-1)/2).
/// rev_sign(0) is +1.
[[nodiscard]] constexpr int rev_sign(int n) noexcept {
  const int r = n & 3;
  return (r == 0 || r == 1) ? 1 : -1;
}

/**
 * Parallel bit deposit: the i-th lowest bit of t is moved to the position of
 * the i-th lowest 1-bit of mask.
 */
[[nodiscard]] constexpr Bitfield bit_distribute(Bitfield t, Bitfield mask) {
  const int k = popcount(mask);
  if (k < kMaxOrbitals && (t >> k) != 0)
    throw std::domain_error("bit_distribute: t has bits beyond popcount(mask)");
  Bitfield out = 0;
  while (t != 0) {
    const Bitfield m = mask & (~mask + 1);
    if (t & 1) out |= m;
    mask ^= m;
    t >>= 1;
  }
  return out;
}

/// Occupied orbitals of s as a strictly increasing, 1-based list.
[[nodiscard]] inline std::vector<int> fermi_to_coords(Bitfield s) {
  std::vector<int> coords;
  coords.reserve(popcount(s));
  while (s != 0) {
    coords.push_back(std::countr_zero(s) + 1);
    s &= s - 1;
  }
  return coords;
}

/// Inverse of fermi_to_coords. Orbitals must be strictly increasing in 1..64.
[[nodiscard]] inline Bitfield coords_to_fermi(std::span<const int> coords) {
  Bitfield s = 0;
  int prev = 0;
  for (int c : coords) {
    if (c <= prev || c > kMaxOrbitals)
      throw std::domain_error("orbital list must be strictly increasing within 1.." +
                              std::to_string(kMaxOrbitals));
    s |= Bitfield{1} << (c - 1);
    prev = c;
  }
  return s;
}

[[nodiscard]] inline Bitfield coords_to_fermi(std::initializer_list<int> coords) {
  return coords_to_fermi(std::span<const int>(coords.begin(), coords.size()));
}

/// Width in bits of the boson encoding of N particles in m modes.
[[nodiscard]] constexpr int boson_width(int modes, int particles) noexcept {
  return modes + particles - 1;
}

/**
 * Stars-and-bars encoding of bosonic occupations. Mode 1 occupies the least
 * significant bits: each mode contributes occ consecutive 1-bits followed by
 * a single 0-bit delimiter (none after the last mode).
 */
[[nodiscard]] inline Bitfield boson_encode(std::span<const int> occupations) {
  if (occupations.empty())
    throw std::domain_error("boson_encode: at least one mode required");
  int width = static_cast<int>(occupations.size()) - 1;
  for (int n : occupations) {
    if (n < 0) throw std::domain_error("boson_encode: negative occupation");
    width += n;
    if (width > kMaxOrbitals)
      throw std::domain_error("boson_encode: encoding exceeds 64 bits");
  }
  Bitfield b = 0;
  int pos = 0;
  for (int n : occupations) {
    b |= low_mask(n) << pos;
    pos += n + 1;
  }
  return b;
}

[[nodiscard]] inline std::vector<int> boson_decode(Bitfield b, int modes) {
  if (modes < 1) throw std::domain_error("boson_decode: at least one mode required");
  const int width = boson_width(modes, popcount(b));
  if (width > kMaxOrbitals)
    throw std::domain_error("boson_decode: encoding exceeds 64 bits");
  if ((b & ~low_mask(width)) != 0)
    throw std::domain_error("boson_decode: pattern does not match mode count");
  std::vector<int> occ(modes, 0);
  int mode = 0;
  for (int pos = 0; pos < width; ++pos) {
    if ((b >> pos) & 1)
      ++occ[mode];
    else
      ++mode;
  }
  return occ;
}

}  // namespace fermibits
