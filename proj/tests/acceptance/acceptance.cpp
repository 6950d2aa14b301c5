// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion A1..A8, non-zero exit if
// any fails. Tolerances and time limits are pinned below.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fermibits/fermibits.hpp"
#include "fermibits/natural_orbitals.hpp"
#include "support/chromium.hpp"
#include "support/oracle_sweep.hpp"
#include "support/test_scalars.hpp"
#include "support/valuation.hpp"

namespace fb = fermibits;
namespace ft = fermibits::testing;
using fb::Bitfield;
using fb::Complex;
using fb::FermiOp;
using fb::FermiState;
using fb::OrbitalConfig;
using Q = fb::GaussianRational;

namespace {

constexpr double kGoldenTol = 1e-12;      // A1
constexpr double kOffdiagTol = 1e-12;     // A4
constexpr double kHermitianTol = 1e-12;   // A8, float RDMs
constexpr double kPsdTol = 1e-10;         // A8, smallest eigenvalue

/// Collects failures for one criterion; the first few are reported.
class Check {
 public:
  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (failures_++ < 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& info) { info_ += (info_.empty() ? "" : ", ") + info; }
  [[nodiscard]] bool ok() const { return failures_ == 0; }
  [[nodiscard]] std::string summary() const {
    if (ok()) return info_;
    return std::to_string(failures_) + " failure(s): " + notes_;
  }

 private:
  int failures_ = 0;
  std::string notes_;
  std::string info_;
};

Bitfield ket(const std::vector<int>& coords) { return fb::coords_to_fermi(coords); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ------------------------------------------------------------------ A1

void golden_rdm(Check& chk) {
  const auto cfg = OrbitalConfig::full(6, 4);
  const double h = 1.0 / std::sqrt(2.0);
  FermiState<Complex> psi(cfg);
  psi.add(ket({1, 2, 3, 4}), Complex(h, 0.0));
  psi.add(ket({1, 2, 3, 5}), Complex(0.0, h));
  const auto g = fb::rdm(psi, 2);
  const auto two = OrbitalConfig::full(6, 2);
  const std::vector<Bitfield> labels = {ket({1, 2}), ket({1, 3}), ket({1, 4}), ket({1, 5})};
  const Complex i(0.0, 1.0);
  const Complex expected[4][4] = {
      {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0.5, -0.5 * i}, {0, 0, 0.5 * i, 0.5}};
  double worst = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      worst = std::max(worst,
                       std::abs(g(two.rank(labels[r]), two.rank(labels[c])) - expected[r][c]));
  chk.require(worst <= kGoldenTol, "block deviation " + fmt(worst));
  const double trace_err = std::abs(g.matrix().trace() - 6.0);
  chk.require(trace_err <= kGoldenTol, "trace deviation " + fmt(trace_err));
  chk.note("max block deviation " + fmt(worst));
}

// ------------------------------------------------------------------ A2

void slater_example(Check& chk) {
  const auto terms = fb::slater_rdm(ket({5, 6, 7, 9}), ket({1, 2, 4, 5, 6, 9}), 3);
  const std::vector<fb::KetBra> expected = {
      {+1, ket({5, 6, 7}), ket({1, 2, 4, 5, 6})},
      {-1, ket({5, 7, 9}), ket({1, 2, 4, 5, 9})},
      {-1, ket({6, 7, 9}), ket({1, 2, 4, 6, 9})},
  };
  chk.require(terms == expected, "term list differs");
}

// ------------------------------------------------------------------ A3

void sign_goldens(Check& chk) {
  const Bitfield s = ket({2, 4, 5, 6, 8});
  chk.require(fb::annihilate(s, ket({6})) == fb::Annihilated{-1, ket({2, 4, 5, 8})},
              "a_6 |24568>");
  chk.require(fb::annihilate(s, ket({4, 5, 8})) == fb::Annihilated{+1, ket({2, 6})},
              "a_458 |24568>");
}

// ------------------------------------------------------------------ A4

void natural_orbitals(Check& chk) {
  std::mt19937_64 rng(2024);
  const auto cfg = OrbitalConfig::full(6, 4);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    auto psi = ft::random_state<Complex>(cfg, rng);
    psi = fb::scale(psi, Complex(1.0 / std::sqrt(fb::norm_squared(psi).real())));
    const auto no = fb::natural_orbitals(psi);
    worst = std::max(worst, no.offdiag_norm);
    chk.require(no.offdiag_norm <= kOffdiagTol, "state " + std::to_string(k) + ": " +
                                                    fmt(no.offdiag_norm));
  }
  chk.note("worst off-diagonal norm " + fmt(worst));
}

// ------------------------------------------------------------------ A5

void configurations(Check& chk) {
  const OrbitalConfig c1({5, 4}, {2, 1});
  const OrbitalConfig c2({2, 7}, {1, 2});
  chk.require(c1.dimension() == 40, "dim [5,4]/[2,1]");
  chk.require(c2.dimension() == 42, "dim [2,7]/[1,2]");
  const auto merged = FermiState<Q>::basis_state(c1, ket({1, 2, 6})) +
                      FermiState<Q>::basis_state(c2, ket({1, 3, 4}));
  chk.require(merged.size() == 84, "merged dimension");
  const auto terms = merged.terms();
  chk.require(terms.size() == 2 && merged.coefficient(ket({1, 2, 6})) == Q(1) &&
                  merged.coefficient(ket({1, 3, 4})) == Q(1),
              "merged content");
  const std::vector<int> groups = {6, 5};
  const std::vector<Bitfield> sequence = {0b0'01010'110110, 0b0'01010'111001, 0b0'01010'111010,
                                          0b0'01010'111100, 0b0'01100'001111};
  Bitfield s = sequence.front();
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    const auto next = fb::next_fermi_config(s, groups);
    chk.require(next && *next == sequence[i], "enumeration step " + std::to_string(i));
    if (!next) break;
    s = *next;
  }
}

// ------------------------------------------------------------------ A6

void oracle_sweep(Check& chk) {
  constexpr int kMaxOrbs = 6;
  constexpr int kSamples = 5;
  for (const auto& [name, result] :
       {std::pair{"rdm", ft::sweep_rdm(kMaxOrbs, kSamples, 601)},
        std::pair{"p2N", ft::sweep_p2n(kMaxOrbs, kSamples, 602, true)},
        std::pair{"tensor_op", ft::sweep_tensor_op(kMaxOrbs, kSamples, 603)}}) {
    chk.require(result.ok(), std::string(name) + " " + std::to_string(result.mismatches) + "/" +
                                 std::to_string(result.cases) + " first " + result.first_failure);
    chk.note(std::string(name) + " " + std::to_string(result.cases) + " cases");
  }
}

// ------------------------------------------------------------------ A7

void spin_trace(Check& chk) {
  namespace cr = ft::chromium;
  // exact norms 10 and 21 make the normalized fixtures orthonormal
  const auto u1 = cr::psi1_unnormalized();
  const auto u2 = cr::psi2_unnormalized();
  chk.require(fb::norm_squared(u1) == ft::Surd3(10), "<psi1|psi1> != 10");
  chk.require(fb::norm_squared(u2) == ft::Surd3(21), "<psi2|psi2> != 21");
  chk.require(ft::overlap(u1, u2) == ft::Surd3(0), "<psi1|psi2> != 0");

  std::mt19937_64 rng(701);
  const auto gamma = fb::rdm(u1, u2, 2);
  const auto table = fb::spin_trace_coulomb(gamma);
  chk.require(!table.empty(), "empty chromium table");
  for (int k = 0; k < 3; ++k) {
    const auto v = ft::Valuation::random(14, rng);
    chk.require(ft::evaluate_symbols(table, v) == ft::direct_contraction(gamma, v),
                "chromium valuation " + std::to_string(k));
  }
  chk.note("chromium table " + std::to_string(table.size()) + " symbols");

  for (int k = 0; k < 20; ++k) {
    const int m = 2 + k % 3;
    const int n = 2 + k % 3;
    const auto cfg = OrbitalConfig::full(fb::spin_orbital_count(m), n);
    const auto psi1 = ft::random_state<Q>(cfg, rng, 0.6);
    const auto psi2 = ft::random_state<Q>(cfg, rng, 0.6);
    const auto g = fb::rdm(psi1, psi2, 2);
    const auto t = fb::spin_trace_coulomb(g);
    for (int j = 0; j < 3; ++j) {
      const auto v = ft::Valuation::random(m, rng);
      chk.require(ft::evaluate_symbols(t, v) == ft::direct_contraction(g, v),
                  "random state " + std::to_string(k) + " valuation " + std::to_string(j));
    }
  }
}

// ------------------------------------------------------------------ A8

void properties(Check& chk) {
  std::mt19937_64 rng(801);

  // trace normalization
  for (int orbs = 1; orbs <= 6; ++orbs)
    for (int n = 0; n <= orbs; ++n) {
      const auto psi = ft::random_state<Q>(OrbitalConfig::full(orbs, n), rng);
      for (int p = 0; p <= n; ++p)
        chk.require(fb::rdm(psi, p).matrix().trace() ==
                        Q(static_cast<long>(fb::binomial(n, p))) * fb::norm_squared(psi),
                    "trace orbs=" + std::to_string(orbs) + " n=" + std::to_string(n));
    }

  // hermitian and positive semidefinite
  for (int k = 0; k < 10; ++k) {
    const auto psi = ft::random_state<Complex>(OrbitalConfig::full(6, 2 + k % 3), rng);
    for (int p = 1; p <= 2; ++p) {
      const auto g = fb::rdm(psi, p).matrix();
      const auto dim = static_cast<Eigen::Index>(g.rows());
      Eigen::MatrixXcd m(dim, dim);
      double asym = 0.0;
      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) {
          asym = std::max(asym, std::abs(g(r, c) - std::conj(g(c, r))));
          m(r, c) = g(r, c);
        }
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
      chk.require(asym <= kHermitianTol, "hermiticity " + fmt(asym));
      chk.require(es.eigenvalues().minCoeff() >= -kPsdTol,
                  "negative eigenvalue " + fmt(es.eigenvalues().minCoeff()));
    }
    const auto q = ft::random_state<Q>(OrbitalConfig::full(5, 3), rng);
    const auto gq = fb::rdm(q, 2).matrix();
    chk.require(gq.adjoint() == gq, "exact hermiticity");
  }

  // canonical anticommutation for single orbitals
  for (int orbs = 1; orbs <= 5; ++orbs)
    for (int n = 1; n <= orbs; ++n)
      for (int i = 1; i <= orbs; ++i)
        for (int j = 1; j <= orbs; ++j) {
          const Bitfield ti = Bitfield{1} << (i - 1);
          const Bitfield tj = Bitfield{1} << (j - 1);
          fb::Matrix<Q> acc =
              (fb::annihilation_op<Q>(tj, orbs, n).adjoint() * fb::annihilation_op<Q>(ti, orbs, n))
                  .matrix();
          if (n < orbs)
            acc += (fb::annihilation_op<Q>(ti, orbs, n + 1) *
                    fb::annihilation_op<Q>(tj, orbs, n + 1).adjoint())
                       .matrix();
          const auto dim = fb::binomial(orbs, n);
          chk.require(acc == (i == j ? fb::Matrix<Q>::identity(dim) : fb::Matrix<Q>(dim, dim)),
                      "CAR orbs=" + std::to_string(orbs) + " i=" + std::to_string(i) +
                          " j=" + std::to_string(j));
        }

  // duality tr(b gamma) = <psi2| p2N(b) psi1>
  int triples = 0;
  while (triples < 50) {
    const int orbs = std::uniform_int_distribution<int>(2, 6)(rng);
    const int n1 = std::uniform_int_distribution<int>(0, orbs)(rng);
    const int p1 = std::uniform_int_distribution<int>(0, n1)(rng);
    const int p2 = std::uniform_int_distribution<int>(0, orbs)(rng);
    const int n2 = n1 - p1 + p2;
    if (n2 > orbs) continue;
    const auto psi1 = ft::random_state<Q>(OrbitalConfig::full(orbs, n1), rng);
    const auto psi2 = ft::random_state<Q>(OrbitalConfig::full(orbs, n2), rng);
    const auto from = OrbitalConfig::full(orbs, p1);
    const auto to = OrbitalConfig::full(orbs, p2);
    const FermiOp<Q> b(from, to, ft::random_matrix<Q>(to.dimension(), from.dimension(), rng));
    chk.require(fb::inner(psi2, fb::p2N(b, n1) * psi1) ==
                    (b.matrix() * fb::rdm(psi1, psi2, p1).matrix()).trace(),
                "duality triple " + std::to_string(triples));
    ++triples;
  }

  // Cauchy-Binet
  for (int dim = 1; dim <= 5; ++dim)
    for (int n = 0; n <= dim; ++n) {
      const auto a = ft::random_matrix<Q>(dim, dim, rng);
      const auto b = ft::random_matrix<Q>(dim, dim, rng);
      chk.require(fb::tensor_op(a * b, n).matrix() ==
                      fb::tensor_op(a, n).matrix() * fb::tensor_op(b, n).matrix(),
                  "Cauchy-Binet dim=" + std::to_string(dim) + " n=" + std::to_string(n));
    }

  // boson encoding is a bijection onto popcount-N patterns
  for (int m = 1; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) {
      std::set<std::vector<int>> seen;
      const int width = fb::boson_width(m, n);
      for (Bitfield x = 0; x < (Bitfield{1} << width); ++x) {
        if (fb::popcount(x) != n) continue;
        const auto occ = fb::boson_decode(x, m);
        chk.require(fb::boson_encode(occ) == x, "boson round trip");
        seen.insert(occ);
      }
      chk.require(seen.size() == fb::binomial(m + n - 1, n),
                  "boson count m=" + std::to_string(m) + " n=" + std::to_string(n));
    }
}

struct Criterion {
  const char* id;
  const char* title;
  double limit_seconds;  // 0: no limit
  std::function<void(Check&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"A1", "golden two-body RDM", 1.0, golden_rdm},
      {"A2", "SlaterRdm force/choice example", 1e-3, slater_example},
      {"A3", "annihilation sign goldens", 0.0, sign_goldens},
      {"A4", "natural orbitals diagonalize the 1-RDM", 5.0, natural_orbitals},
      {"A5", "configuration dimensions, merge, enumeration", 0.0, configurations},
      {"A6", "oracle equivalence sweep (orbs <= 6)", 60.0, oracle_sweep},
      {"A7", "spin-trace valuation oracle", 30.0, spin_trace},
      {"A8", "property suite", 0.0, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Check chk;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(chk);
    } catch (const std::exception& e) {
      chk.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0)
      chk.require(secs < c.limit_seconds, "took " + fmt(secs) + " s, limit " + fmt(c.limit_seconds));
    if (!chk.ok()) ++failed;
    std::printf("[%s] %s %s (%.3f s)%s%s\n", chk.ok() ? "PASS" : "FAIL", c.id, c.title, secs,
                chk.summary().empty() ? "" : " - ", chk.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
