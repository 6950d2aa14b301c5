// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

// fermitool: command-line front end for fermibits.
//
//   fermitool enumerate --orbs 5,4 --n 2,1
//   fermitool rdm psi.json --p 2
//   fermitool expect psi.json op.json --p 2 --via-lift
//   fermitool tensor-op u.json --n 3
//   fermitool p2n op.json --p 1 --n 3 --orbs 6
//   fermitool spintrace psi1.json psi2.json
//   fermitool norbs psi.json
//
// Exit codes: 0 success, 2 usage or input error, 1 internal error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fermibits/fermibits.hpp"
#include "fermibits/io.hpp"
#include "fermibits/natural_orbitals.hpp"

namespace fb = fermibits;
using fb::json;
using Q = fb::GaussianRational;

namespace {

/// Bad input detected after parsing the command line; exits with code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string format = "text";
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
  }
  void write(const json& doc) const { write(doc.dump() + "\n"); }
  [[nodiscard]] bool json_format() const { return format == "json"; }
};

void add_output_options(CLI::App* cmd, Output& out, const std::string& default_format) {
  out.format = default_format;
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", out.path, "Write output to this file instead of stdout");
}

std::vector<json> read_all(const std::vector<std::string>& paths) {
  std::vector<json> docs;
  for (const auto& p : paths) docs.push_back(fb::read_json_file(p));
  return docs;
}

/// Exact arithmetic is only possible when every coefficient is rational.
void require_exact_states(const std::vector<json>& docs, const std::vector<std::string>& paths) {
  for (std::size_t i = 0; i < docs.size(); ++i)
    if (!fb::state_json_is_exact(docs[i]))
      throw UsageError("--exact: '" + paths[i] +
                       "' has floating-point coefficients; use integers or \"p/q\" strings");
}

template <fb::Scalar S>
std::vector<fb::FermiState<S>> parse_states(const std::vector<json>& docs) {
  std::vector<fb::FermiState<S>> out;
  for (const auto& d : docs) out.push_back(fb::state_from_json<S>(d));
  return out;
}

template <fb::Scalar S>
void emit_operator(const fb::FermiOp<S>& op, const std::vector<std::string>& names,
                   const Output& out) {
  if (out.json_format())
    out.write(fb::operator_to_json(op));
  else
    out.write(fb::operator_to_text(op, names));
}

// ---------------------------------------------------------------- enumerate

struct EnumerateArgs {
  std::vector<int> orbs;
  std::vector<int> n;
  std::size_t limit = 20;
  Output out;
};

int run_enumerate(const EnumerateArgs& a) {
  const fb::OrbitalConfig cfg(a.orbs, a.n);
  std::vector<std::vector<int>> kets;
  if (cfg.dimension() > 0) {
    fb::Bitfield s = cfg.first();
    for (std::size_t i = 0; i < std::min(a.limit, cfg.dimension()); ++i) {
      kets.push_back(fb::fermi_to_coords(s));
      if (const auto next = fb::next_fermi_config(s, cfg.group_sizes())) s = *next;
    }
  }
  if (a.out.json_format()) {
    a.out.write(json{{"dim", cfg.dimension()}, {"basis", kets}});
    return 0;
  }
  std::string text = "dim " + std::to_string(cfg.dimension()) + "\n";
  for (const auto& k : kets) text += json(k).dump() + "\n";
  a.out.write(text);
  return 0;
}

// ---------------------------------------------------------------- rdm

struct RdmArgs {
  std::vector<std::string> states;
  int p = 1;
  bool exact = false;
  Output out;
};

template <fb::Scalar S>
void rdm_impl(const std::vector<json>& docs, const RdmArgs& a) {
  const auto psi = parse_states<S>(docs);
  const auto& psi2 = psi.size() > 1 ? psi[1] : psi[0];
  emit_operator(fb::rdm(psi[0], psi2, a.p), psi[0].config().orbital_names(), a.out);
}

int run_rdm(const RdmArgs& a) {
  const auto docs = read_all(a.states);
  if (a.exact) {
    require_exact_states(docs, a.states);
    rdm_impl<Q>(docs, a);
  } else {
    rdm_impl<fb::Complex>(docs, a);
  }
  return 0;
}

// ---------------------------------------------------------------- expect

struct ExpectArgs {
  std::vector<std::string> files;  // state [state2] op
  int p = 1;
  bool exact = false;
  bool via_lift = false;
  Output out;
};

template <fb::Scalar S>
bool close_enough(const S& x, const S& y) {
  if constexpr (fb::scalar_traits<S>::exact)
    return x == y;
  else
    return std::abs(x - y) <= 1e-10 * std::max(1.0, std::abs(x));
}

template <fb::Scalar S>
int expect_impl(const std::vector<json>& docs, const json& op_doc, const ExpectArgs& a) {
  const auto psi = parse_states<S>(docs);
  const auto& psi1 = psi[0];
  const auto& psi2 = psi.size() > 1 ? psi[1] : psi[0];
  const auto gamma = fb::rdm(psi1, psi2, a.p);
  const auto b = fb::matrix_from_json<S>(op_doc);
  // b maps wedge^p H to wedge^p2 H, the reverse of gamma
  if (b.rows() != gamma.matrix().cols() || b.cols() != gamma.matrix().rows())
    throw UsageError("operator is " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                     " but the RDM pairing needs " + std::to_string(gamma.matrix().cols()) + "x" +
                     std::to_string(gamma.matrix().rows()));
  const S value = (b * gamma.matrix()).trace();
  if (!a.via_lift) {
    if (a.out.json_format())
      a.out.write(json{{"value", fb::scalar_to_json(value)}});
    else
      a.out.write(fb::format_scalar(value) + "\n");
    return 0;
  }
  // the lift is a dense matrix on the full N-particle sector
  constexpr std::size_t kMaxLiftDim = 20000;
  if (psi1.config().to_full().dimension() > kMaxLiftDim)
    throw UsageError("--via-lift: sector dimension " +
                     std::to_string(psi1.config().to_full().dimension()) + " exceeds " +
                     std::to_string(kMaxLiftDim));
  const fb::FermiOp<S> op(gamma.to_config(), gamma.from_config(), b);
  const auto full1 = psi1.config().is_single_group() ? psi1 : fb::embed(psi1, psi1.config().to_full());
  const auto full2 = psi2.config().is_single_group() ? psi2 : fb::embed(psi2, psi2.config().to_full());
  const S lifted = fb::inner(full2, fb::p2N(op, psi1.particles()) * full1);
  const bool agree = close_enough(value, lifted);
  if (a.out.json_format()) {
    a.out.write(json{{"value", fb::scalar_to_json(value)},
                     {"lifted", fb::scalar_to_json(lifted)},
                     {"agree", agree}});
  } else {
    a.out.write("trace(b gamma)   " + fb::format_scalar(value) + "\n" +
                "<psi2|B psi1>    " + fb::format_scalar(lifted) + "\n" +
                "difference       " + fb::format_scalar(S(value - lifted)) + "\n");
  }
  return agree ? 0 : 1;
}

int run_expect(const ExpectArgs& a) {
  const std::vector<std::string> state_paths(a.files.begin(), a.files.end() - 1);
  const auto docs = read_all(state_paths);
  const json op_doc = fb::read_json_file(a.files.back());
  if (a.exact) {
    require_exact_states(docs, state_paths);
    if (!fb::matrix_json_is_exact(op_doc))
      throw UsageError("--exact: '" + a.files.back() + "' has floating-point entries");
    return expect_impl<Q>(docs, op_doc, a);
  }
  return expect_impl<fb::Complex>(docs, op_doc, a);
}

// ---------------------------------------------------------------- tensor-op

struct TensorArgs {
  std::string matrix;
  int n = 1;
  bool exact = false;
  Output out;
};

template <fb::Scalar S>
void tensor_impl(const json& doc, const TensorArgs& a) {
  emit_operator(fb::tensor_op(fb::matrix_from_json<S>(doc), a.n), {}, a.out);
}

int run_tensor(const TensorArgs& a) {
  const json doc = fb::read_json_file(a.matrix);
  if (a.exact) {
    if (!fb::matrix_json_is_exact(doc))
      throw UsageError("--exact: '" + a.matrix + "' has floating-point entries");
    tensor_impl<Q>(doc, a);
  } else {
    tensor_impl<fb::Complex>(doc, a);
  }
  return 0;
}

// ---------------------------------------------------------------- p2n

struct P2nArgs {
  std::string op;
  int p = 1;
  std::optional<int> q;
  int n = 1;
  std::optional<int> orbs;
  bool exact = false;
  Output out;
};

template <fb::Scalar S>
void p2n_impl(const json& doc, const P2nArgs& a) {
  int orbs = 0;
  if (a.orbs)
    orbs = *a.orbs;
  else if (doc.contains("orbs") && doc.at("orbs").is_number_integer())
    orbs = doc.at("orbs").get<int>();
  else
    throw UsageError("p2n: give --orbs or an integer \"orbs\" field in the operator file");
  if (orbs < 1 || orbs > fb::kMaxOrbitals) throw UsageError("p2n: orbs must lie in 1..64");
  const int q = a.q.value_or(a.p);
  if (a.p < 0 || a.p > orbs || q < 0 || q > orbs)
    throw UsageError("p2n: ranks --p and --q must lie in 0..orbs");
  const auto from = fb::OrbitalConfig::full(orbs, a.p);
  const auto to = fb::OrbitalConfig::full(orbs, q);
  auto m = fb::matrix_from_json<S>(doc);
  if (m.rows() != to.dimension() || m.cols() != from.dimension())
    throw UsageError("p2n: operator is " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", expected " + std::to_string(to.dimension()) +
                     "x" + std::to_string(from.dimension()) + " for orbs=" + std::to_string(orbs));
  const fb::FermiOp<S> b(from, to, std::move(m));
  emit_operator(fb::p2N(b, a.n), {}, a.out);
}

int run_p2n(const P2nArgs& a) {
  const json doc = fb::read_json_file(a.op);
  if (a.exact) {
    if (!fb::matrix_json_is_exact(doc))
      throw UsageError("--exact: '" + a.op + "' has floating-point entries");
    p2n_impl<Q>(doc, a);
  } else {
    p2n_impl<fb::Complex>(doc, a);
  }
  return 0;
}

// ---------------------------------------------------------------- spintrace

struct SpinTraceArgs {
  std::vector<std::string> states;
  bool exact = false;
  bool real_orbitals = false;
  Output out;
};

template <fb::Scalar S>
void spintrace_impl(const std::vector<json>& docs, const SpinTraceArgs& a) {
  const auto psi = parse_states<S>(docs);
  const auto& psi2 = psi.size() > 1 ? psi[1] : psi[0];
  if (psi[0].particles() != psi2.particles() || psi[0].particles() < 2)
    throw UsageError("spintrace: both states need the same particle number, at least 2");
  if (psi[0].orbitals() % 2 != 0)
    throw UsageError("spintrace: states need an even number of spin-orbitals");
  const auto table =
      fb::spin_trace_coulomb(fb::rdm(psi[0], psi2, 2), {.real_orbitals = a.real_orbitals});
  if (a.out.json_format())
    a.out.write(fb::symbols_to_json(table, psi[0].orbitals() / 2));
  else
    a.out.write(fb::symbols_to_text(table));
}

int run_spintrace(const SpinTraceArgs& a) {
  const auto docs = read_all(a.states);
  if (a.exact) {
    require_exact_states(docs, a.states);
    spintrace_impl<Q>(docs, a);
  } else {
    spintrace_impl<fb::Complex>(docs, a);
  }
  return 0;
}

// ---------------------------------------------------------------- norbs

struct NorbsArgs {
  std::string state;
  Output out;
};

int run_norbs(const NorbsArgs& a) {
  const auto psi = fb::state_from_json<fb::Complex>(fb::read_json_file(a.state));
  const auto no = fb::natural_orbitals(psi);
  if (a.out.json_format()) {
    json occ = json::array();
    for (double x : no.occupations) occ.push_back(fb::round15(x));
    a.out.write(json{{"occupations", occ}, {"offdiag_norm", fb::round15(no.offdiag_norm)}});
    return 0;
  }
  std::string text = "occupations";
  for (double x : no.occupations) text += " " + fb::format_real(x);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", no.offdiag_norm);
  text += "\noffdiag_norm " + std::string(buf) + "\n";
  a.out.write(text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fermibits: Slater determinants, reduced density matrices, operator lifts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fermitool 1.0.0");

  EnumerateArgs enum_args;
  auto* enumerate = app.add_subcommand("enumerate", "List basis determinants of a configuration");
  enumerate->add_option("--orbs", enum_args.orbs, "Orbital group sizes, e.g. 5,4")
      ->required()
      ->delimiter(',');
  enumerate->add_option("--n", enum_args.n, "Particles per group, e.g. 2,1")
      ->required()
      ->delimiter(',');
  enumerate->add_option("--limit", enum_args.limit, "Number of determinants to print")
      ->capture_default_str();
  add_output_options(enumerate, enum_args.out, "text");

  RdmArgs rdm_args;
  auto* rdm = app.add_subcommand("rdm", "p-body reduced density matrix of one or two states");
  rdm->add_option("states", rdm_args.states, "State file(s): psi [psi2]")
      ->required()
      ->expected(1, 2)
      ->check(CLI::ExistingFile);
  rdm->add_option("--p", rdm_args.p, "Order of the density matrix")->required();
  rdm->add_flag("--exact", rdm_args.exact, "Exact rational arithmetic");
  add_output_options(rdm, rdm_args.out, "text");

  ExpectArgs expect_args;
  auto* expect = app.add_subcommand("expect", "<psi2|B psi1> = tr(b gamma) for a p-body operator b");
  expect->add_option("files", expect_args.files, "psi [psi2] operator")
      ->required()
      ->expected(2, 3)
      ->check(CLI::ExistingFile);
  expect->add_option("--p", expect_args.p, "Rank of the operator's source space")->required();
  expect->add_flag("--exact", expect_args.exact, "Exact rational arithmetic");
  expect->add_flag("--via-lift", expect_args.via_lift,
                   "Also evaluate <psi2|p2N(b) psi1> and compare (exit 1 on mismatch)");
  add_output_options(expect, expect_args.out, "text");

  TensorArgs tensor_args;
  auto* tensor = app.add_subcommand("tensor-op", "A (x) ... (x) A restricted to wedge^N H");
  tensor->add_option("matrix", tensor_args.matrix, "Single-particle matrix file")
      ->required()
      ->check(CLI::ExistingFile);
  tensor->add_option("--n", tensor_args.n, "Particle number N")->required();
  tensor->add_flag("--exact", tensor_args.exact, "Exact rational arithmetic");
  add_output_options(tensor, tensor_args.out, "text");

  P2nArgs p2n_args;
  auto* p2n = app.add_subcommand("p2n", "Lift a p-body operator to N particles");
  p2n->add_option("op", p2n_args.op, "Operator file (wedge^p H -> wedge^q H)")
      ->required()
      ->check(CLI::ExistingFile);
  p2n->add_option("--p", p2n_args.p, "Source rank p")->required();
  p2n->add_option("--q", p2n_args.q, "Target rank q (default p)");
  p2n->add_option("--n", p2n_args.n, "Source particle number N")->required();
  p2n->add_option("--orbs", p2n_args.orbs, "Orbital count (else the file's \"orbs\" field)");
  p2n->add_flag("--exact", p2n_args.exact, "Exact rational arithmetic");
  add_output_options(p2n, p2n_args.out, "text");

  SpinTraceArgs st_args;
  auto* spintrace =
      app.add_subcommand("spintrace", "Coulomb integral symbols of <psi2|V_ee psi1>");
  spintrace->add_option("states", st_args.states, "State file(s): psi1 [psi2]")
      ->required()
      ->expected(1, 2)
      ->check(CLI::ExistingFile);
  spintrace->add_flag("--exact", st_args.exact, "Exact rational arithmetic");
  spintrace->add_flag("--real-orbitals", st_args.real_orbitals,
                      "Also identify <ab|cd> with <ba|cd> and <ab|dc>");
  add_output_options(spintrace, st_args.out, "json");

  NorbsArgs norbs_args;
  auto* norbs = app.add_subcommand("norbs", "Transform a state to natural orbitals");
  norbs->add_option("state", norbs_args.state, "State file")->required()->check(CLI::ExistingFile);
  add_output_options(norbs, norbs_args.out, "text");

  try {
    app.parse(argc, argv);
    if (*enumerate) return run_enumerate(enum_args);
    if (*rdm) return run_rdm(rdm_args);
    if (*expect) return run_expect(expect_args);
    if (*tensor) return run_tensor(tensor_args);
    if (*p2n) return run_p2n(p2n_args);
    if (*spintrace) return run_spintrace(st_args);
    if (*norbs) return run_norbs(norbs_args);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const fb::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
