// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file scalar.hpp
 * @brief Coefficient types: complex double and exact Gaussian rationals.
 *
 * All library algorithms are templates over a scalar type S satisfying the
 * `Scalar` concept: a commutative ring with conjugation. `scalar_traits<S>`
 * supplies the pieces that are not plain operators.
 */

#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fermibits {

using Complex = std::complex<double>;

/// Exact rational parsed from "p", "-p" or "p/q".
[[nodiscard]] inline mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
          c == '/'))
      throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
  if (s.front() == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

/**
 * Exact complex number with rational real and imaginary parts.
 */
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long n) : re_(n), im_(0) {}  // NOLINT(implicit)
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational ratio(long p, long q) {
    if (q == 0) throw std::domain_error("zero denominator");
    mpq_class r(p, q);
    r.canonicalize();
    return {r, 0};
  }

  [[nodiscard]] const mpq_class& real() const noexcept { return re_; }
  [[nodiscard]] const mpq_class& imag() const noexcept { return im_; }

  [[nodiscard]] bool is_zero() const noexcept { return re_ == 0 && im_ == 0; }

  [[nodiscard]] GaussianRational conj() const { return {re_, mpq_class(-im_)}; }

  [[nodiscard]] mpq_class norm() const { return mpq_class(re_ * re_ + im_ * im_); }

  [[nodiscard]] Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    const mpq_class d = o.norm();
    if (d == 0) throw std::domain_error("division by zero");
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) {
    return {mpq_class(-a.re_), mpq_class(-a.im_)};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    os << z.re_.get_str();
    if (z.im_ != 0) os << (z.im_ > 0 ? "+" : "") << z.im_.get_str() << "i";
    return os;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return {}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static bool is_zero(const Complex& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static Complex from_ratio(long p, long q) {
    return {static_cast<double>(p) / static_cast<double>(q), 0.0};
  }
  static Complex to_complex(const Complex& x) { return x; }
};

template <>
struct scalar_traits<GaussianRational> {
  static constexpr bool exact = true;
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return {1}; }
  static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
  static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
  static GaussianRational from_ratio(long p, long q) { return GaussianRational::ratio(p, q); }
  static Complex to_complex(const GaussianRational& x) { return x.to_complex(); }
};

template <class S>
concept Scalar = std::copyable<S> && requires(const S& a, const S& b, long n) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { a == b } -> std::convertible_to<bool>;
  { scalar_traits<S>::zero() } -> std::convertible_to<S>;
  { scalar_traits<S>::one() } -> std::convertible_to<S>;
  { scalar_traits<S>::conj(a) } -> std::convertible_to<S>;
  { scalar_traits<S>::is_zero(a) } -> std::convertible_to<bool>;
  { scalar_traits<S>::from_ratio(n, n) } -> std::convertible_to<S>;
};

template <Scalar S>
[[nodiscard]] S conjugate(const S& x) {
  return scalar_traits<S>::conj(x);
}

template <Scalar S>
[[nodiscard]] bool is_zero(const S& x) {
  return scalar_traits<S>::is_zero(x);
}

/// Multiply by a sign in {+1, -1}.
template <Scalar S>
[[nodiscard]] S signed_value(int sign, const S& x) {
  return sign < 0 ? S(-x) : x;
}

static_assert(Scalar<Complex>);
static_assert(Scalar<GaussianRational>);

}  // namespace fermibits
