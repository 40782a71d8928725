#pragma once

// The command-line front end, callable in-process.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmperiodica/report.hpp"

namespace cmperiodica::cli {

inline constexpr int kDefaultDegreeBound = 24;
inline constexpr int kDefaultSteps = 12;

/// The default degree bound, overridden by CMPERIODICA_DEGREE_BOUND.
inline int default_degree_bound() {
  if (const char* e = std::getenv("CMPERIODICA_DEGREE_BOUND")) {
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end != e && *end == '\0' && v > 0 && v < 10000) return static_cast<int>(v);
  }
  return kDefaultDegreeBound;
}

inline std::string corpus_dir() {
#ifdef CMPERIODICA_CORPUS_DIR
  return CMPERIODICA_CORPUS_DIR;
#else
  return "corpus";
#endif
}

struct Options {
  std::string format = "json";
  int degree_bound = 0;
  bool no_timings = false;
  std::string field;  // "", "rational", "prime", "prime:p"
  std::string base_dir;

  // per command
  std::string kind, ring, module, module_u, module_v, complex, psi, out, elems, I, J;
  int steps = -1, bound = -1;
  bool check = false;
};

class UsageError : public InputError {
 public:
  using InputError::InputError;
};

struct Context {
  Options opt;
  Report rep;
  std::ostream& out;
  std::ostream& err;

  std::string path(const std::string& p) const {
    if (p.empty() || opt.base_dir.empty() || std::filesystem::path(p).is_absolute()) return p;
    return (std::filesystem::path(opt.base_dir) / p).string();
  }
  int bound() const { return opt.bound >= 0 ? opt.bound : opt.degree_bound; }
  int steps() const { return opt.steps >= 0 ? opt.steps : kDefaultSteps; }
};

inline FieldSpec apply_field_override(FieldSpec f, const std::string& o) {
  if (o.empty()) return f;
  if (o == "rational") return FieldSpec{true, 32003};
  if (o == "prime") return FieldSpec{false, 32003};
  if (o.rfind("prime:", 0) == 0) {
    try {
      return FieldSpec{false, static_cast<std::uint32_t>(std::stoul(o.substr(6)))};
    } catch (const std::exception&) {
    }
  }
  throw UsageError("--field must be rational, prime or prime:<p>");
}

template <class K>
void describe_ring(Context& c, const QuotientRing<K>& A) {
  c.rep.config["field"] = A.field().name();
  c.rep.config["order"] = A.base().order() == MonomialOrder::grevlex ? "grevlex" : "glex";
  c.rep.config["ring"] = ring_to_json(A);
  c.rep.config["degree_bound"] = c.opt.degree_bound;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

template <class K>
std::vector<Poly<K>> parse_list(const QuotientRing<K>& A, const std::string& s, const std::string& flag) {
  std::vector<Poly<K>> out;
  for (const auto& e : split_list(s)) {
    try {
      out.push_back(A.base().parse(e));
    } catch (const ParseError& pe) {
      throw UsageError(flag + " '" + e + "': " + pe.what() + " at column " + std::to_string(pe.column()));
    }
  }
  return out;
}

inline void write_artifact(Context& c, const json& j) {
  const std::string p = c.path(c.opt.out);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw UsageError("cannot write " + p);
  f << dump(j);
  c.rep.results["written"] = c.opt.out;
}

/// Runs fn<K>(ring) with the ring from --ring, or from the given fallback source.
template <class Fn>
void with_ring(Context& c, const std::optional<Source>& fallback, Fn&& fn) {
  RingSpec spec;
  if (!c.opt.ring.empty()) {
    Source s = read_source(c.path(c.opt.ring));
    spec = ring_spec_from_json(s, s.value);
  } else if (fallback && fallback->value.is_object() && fallback->value.contains("ring")) {
    spec = ring_reference(*fallback, fallback->value["ring"]);
  } else {
    throw UsageError("a ring is required (--ring)");
  }
  spec.field = apply_field_override(spec.field, c.opt.field);
  with_field(spec.field, [&](auto k) {
    using K = decltype(k);
    RingPtr<K> A = build_ring<K>(spec, k);
    describe_ring(c, *A);
    fn(A);
    return 0;
  });
}

template <class K>
ModulePresentation<K> load_module(Context& c, RingPtr<K> A, const std::string& file, const std::string& flag) {
  if (file.empty()) throw UsageError(flag + " is required");
  return module_from_json(A, read_source(c.path(file)));
}

// ---------------------------------------------------------------- commands

template <class K>
void emit_bundle(Context& c, const VerificationBundle<K>& b) {
  c.rep.checks.insert(c.rep.checks.end(), b.checks.begin(), b.checks.end());
  c.rep.results["verification"] = bundle_to_json(b);
}

inline void cmd_construct(Context& c) {
  const std::string kind = c.opt.kind;
  if (kind.empty()) throw UsageError("--kind is required (dim1, dim2, dim3, 2d, koszul)");
  c.rep.config["kind"] = kind;
  with_ring(c, std::nullopt, [&](auto A) {
    using K = typename std::remove_cvref_t<decltype(*A)>::Field;
    FreeComplex<K> F;
    if (kind == "dim1" || kind == "dim3" || kind == "koszul") {
      std::string e = c.opt.elems;
      if (e.empty())
        for (const auto& v : A->base().variables()) e += (e.empty() ? "" : ",") + v.name;
      auto x = parse_list(*A, e, "--elems");
      c.rep.config["elems"] = e;
      if (kind == "dim1") {
        if (x.size() != 1) throw UsageError("dim1 takes one element");
        F = construct_dim1(A, x[0]);
      } else if (kind == "dim3") {
        F = construct_dim3(A, x);
      } else {
        F = koszul(A, x);
      }
    } else if (kind == "dim2") {
      std::string defaults;
      for (const auto& v : A->base().variables()) defaults += (defaults.empty() ? "" : ",") + v.name;
      const std::string si = c.opt.I.empty() ? defaults : c.opt.I, sj = c.opt.J.empty() ? defaults : c.opt.J;
      c.rep.config["I"] = si;
      c.rep.config["J"] = sj;
      F = construct_dim2(A, parse_list(*A, si, "--I"), parse_list(*A, sj, "--J"));
    } else if (kind == "2d") {
      TwoToTheD<K> T = construct_2d(A);
      F = T.complex;
      c.rep.checks.insert(c.rep.checks.end(), T.checks.begin(), T.checks.end());
      c.rep.results["betti_B"] = longs(T.betti_B);
      c.rep.results["betti_C"] = longs(T.betti_C);
      c.rep.results["split_index"] = T.split_index;
      c.rep.results["binomial_sum"] = T.binomial_sum;
      c.rep.results["verification"] = bundle_to_json(T.bundle);
      for (const auto& ch : T.bundle.checks) c.rep.checks.push_back(ch);
    } else {
      throw UsageError("unknown --kind '" + kind + "'");
    }
    if (kind == "koszul") {
      c.rep.checks.push_back(check_complex(F));
      c.rep.results["cohomology"] = cohomology_to_json(cohomology_report(F));
    } else if (kind != "2d") {
      emit_bundle(c, verify_periodic_package(F));
    }
    if (!c.opt.out.empty())
      write_artifact(c, complex_to_json(F));
    else
      c.rep.results["complex"] = complex_to_json(F);
  });
}

inline void cmd_verify(Context& c) {
  if (c.opt.complex.empty()) throw UsageError("--complex is required");
  Source src = read_source(c.path(c.opt.complex));
  with_ring(c, src, [&](auto A) {
    auto F = complex_from_json(A, src);
    emit_bundle(c, verify_periodic_package(F));
  });
}

inline void cmd_resolve(Context& c, bool with_tor) {
  std::optional<Source> msrc;
  if (!c.opt.module.empty()) msrc = read_source(c.path(c.opt.module));
  with_ring(c, msrc, [&](auto A) {
    if (!msrc) throw UsageError("--module is required");
    auto M = module_from_json(A, *msrc);
    const int n = c.steps();
    c.rep.config["steps"] = n;
    auto res = minimal_free_resolution(M, n);
    c.rep.checks.push_back(check_resolution(res));
    c.rep.results["betti"] = longs(res.betti());
    c.rep.results["graded_betti"] = betti_table(res);
    if (with_tor) {
      auto tor = tor_dimensions(res);
      std::vector<long> b = res.betti();
      b.pop_back();
      c.rep.checks.push_back(tor == b ? Check::passed("Tor dimensions", "dim Tor_i(M,k) = beta_i for i < " +
                                                                            std::to_string(n))
                                      : Check::failed("Tor dimensions", "differs from the ranks"));
      c.rep.results["tor"] = longs(tor);
    }
    if (!c.opt.out.empty()) write_artifact(c, complex_to_json(res.as_complex()));
  });
}

inline void cmd_cx(Context& c) {
  std::optional<Source> msrc;
  if (!c.opt.module.empty()) msrc = read_source(c.path(c.opt.module));
  with_ring(c, msrc, [&](auto A) {
    if (!msrc) throw UsageError("--module is required");
    auto M = module_from_json(A, *msrc);
    const int n = c.steps();
    c.rep.config["steps"] = n;
    auto b = betti_numbers(M, n);
    c.rep.results["betti"] = longs(b);
    auto g = curvature_estimate(b);
    c.rep.results["growth"] = growth_to_json(g);
    c.rep.checks.push_back(g.complexity ? Check::passed("complexity", g.diagnostics)
                                        : Check{"complexity", Status::provisional, g.diagnostics});
  });
}

inline void cmd_eisenbud(Context& c) {
  std::optional<Source> msrc;
  if (!c.opt.module.empty()) msrc = read_source(c.path(c.opt.module));
  with_ring(c, msrc, [&](auto A) {
    if (!msrc) throw UsageError("--module is required");
    auto M = module_from_json(A, *msrc);
    Check ci = check_complete_intersection(*A);
    c.rep.checks.push_back(ci);
    if (!ci.ok()) return;
    const int n = c.opt.steps >= 0 ? c.opt.steps : 8;
    c.rep.config["steps"] = n;
    auto res = minimal_free_resolution(M, n);
    auto op = eisenbud_operators(res);
    c.rep.checks.push_back(check_operator_identity(op));
    c.rep.checks.push_back(check_operator_commutation(op));
    auto E = is_residue_field(M) ? ext_window_residue(op, n - 1) : ext_window(op, residue_field_module(A), n - 1);
    c.rep.checks.push_back(check_ext_commutation(E));
    c.rep.results["betti"] = longs(res.betti());
    c.rep.results["operator_degrees"] = E.op_degrees;
    c.rep.results["ext_dims"] = longs(E.dims);
    json ops = json::array();
    for (int j = 0; j < op.codim(); ++j) {
      json per = json::object();
      for (const auto& [i, m] : op.operators[j]) per[std::to_string(i)] = matrix_to_json(*A, m);
      ops.push_back(per);
    }
    c.rep.results["operators"] = ops;
  });
}

inline void cmd_slice(Context& c) {
  std::optional<Source> msrc;
  if (!c.opt.module.empty()) msrc = read_source(c.path(c.opt.module));
  with_ring(c, msrc, [&](auto A) {
    if (!msrc) throw UsageError("--module is required");
    auto M = module_from_json(A, *msrc);
    const int b = c.bound();
    c.rep.config["bound"] = b;
    auto cert = slice(M, b);
    c.rep.checks.insert(c.rep.checks.end(), cert.checks.begin(), cert.checks.end());
    c.rep.checks.insert(c.rep.checks.end(), cert.sequence_report.checks.begin(), cert.sequence_report.checks.end());
    c.rep.results["certificate"] = slice_to_json(cert);
  });
}

inline void cmd_variety(Context& c) {
  std::optional<Source> usrc;
  if (!c.opt.module_u.empty()) usrc = read_source(c.path(c.opt.module_u));
  with_ring(c, usrc, [&](auto A) {
    auto U = load_module(c, A, c.opt.module_u, "--module-U");
    auto V = c.opt.module_v.empty() ? residue_field_module(A) : load_module(c, A, c.opt.module_v, "--module-V");
    const int b = c.bound();
    c.rep.config["bound"] = b;
    auto rep = variety_identities_check(U, V, b);
    c.rep.checks.insert(c.rep.checks.end(), rep.checks.begin(), rep.checks.end());
    for (const auto* r : {&rep.uv, &rep.uk, &rep.vk, &rep.uu})
      if (r->provisional) {
        c.rep.checks.push_back(Check{"annihilator stabilized", Status::provisional, r->diagnostics});
        break;
      }
    c.rep.results["V(U,V)"] = variety_to_json(rep.uv);
    c.rep.results["V(U,k)"] = variety_to_json(rep.uk);
    c.rep.results["V(V,k)"] = variety_to_json(rep.vk);
    c.rep.results["V(U,U)"] = variety_to_json(rep.uu);
  });
}

inline void cmd_circularize(Context& c) {
  if (c.opt.complex.empty()) throw UsageError("--complex is required");
  if (c.opt.psi.empty()) throw UsageError("--psi is required");
  Source src = read_source(c.path(c.opt.complex));
  Source psrc = read_source(c.path(c.opt.psi));
  with_ring(c, src, [&](auto A) {
    auto F = complex_from_json(A, src);
    auto psi = chain_map_from_json(F, psrc);
    auto G = circularize(F, psi);
    c.rep.checks.push_back(check_chain_map(F, F, psi));
    auto b = verify_periodic_package(G);
    emit_bundle(c, b);
    // H_Y = H^1(F), H_X = H^2(F) by length and Hilbert function
    for (int i : {1, 2}) {
      auto eF = cohomology_entry(F, i);
      const auto* eG = b.cohomology.at(i);
      const bool same = eG && eF.finite_length == eG->finite_length && eF.length == eG->length &&
                        eF.hilbert == eG->hilbert && eF.hilbert_start == eG->hilbert_start;
      const std::string nm = i == 1 ? "H_Y = H^1(F)" : "H_X = H^2(F)";
      c.rep.checks.push_back(same ? Check::passed(nm) : Check::failed(nm, "cohomology differs"));
    }
    if (!c.opt.out.empty())
      write_artifact(c, complex_to_json(G));
    else
      c.rep.results["complex"] = complex_to_json(G);
  });
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

inline std::vector<std::string> corpus_files(const std::string& dir, const std::string& sub) {
  std::vector<std::string> out;
  const auto p = std::filesystem::path(dir) / sub;
  if (!std::filesystem::exists(p)) return out;
  for (const auto& e : std::filesystem::directory_iterator(p))
    if (e.path().extension() == ".json") out.push_back((std::filesystem::path(sub) / e.path().filename()).string());
  std::sort(out.begin(), out.end());
  return out;
}

/// Lists the shipped files; with --check verifies every complex and compares
/// golden reports with a fresh run.
inline void cmd_corpus(Context& c) {
  const std::string dir = c.opt.base_dir.empty() ? corpus_dir() : c.opt.base_dir;
  json listing;
  for (const char* sub : {"rings", "modules", "complexes", "circularize", "golden"}) listing[sub] = corpus_files(dir, sub);
  c.rep.results["files"] = listing;
  if (!c.opt.check) return;
  for (const auto& f : listing["complexes"]) {
    std::ostringstream o, e;
    const int code = run({"verify", "--complex", f.get<std::string>(), "--no-timings", "--base-dir", dir}, o, e);
    c.rep.checks.push_back(code == 0 ? Check::passed("verify " + f.get<std::string>())
                                     : Check::failed("verify " + f.get<std::string>(), "exit " + std::to_string(code)));
  }
  for (const auto& f : listing["golden"]) {
    const std::string name = f.get<std::string>();
    Source g = read_source((std::filesystem::path(dir) / name).string());
    std::vector<std::string> argv;
    for (const auto& a : g.value["args"]["argv"]) argv.push_back(a.get<std::string>());
    argv.push_back("--base-dir");
    argv.push_back(dir);
    std::ostringstream o, e;
    run(argv, o, e);
    json fresh;
    try {
      fresh = json::parse(o.str());
    } catch (const std::exception&) {
      c.rep.checks.push_back(Check::failed("golden " + name, "rerun produced no JSON"));
      continue;
    }
    const bool same = dump(without_timings(fresh)) == dump(without_timings(g.value));
    c.rep.checks.push_back(same ? Check::passed("golden " + name)
                                : Check::failed("golden " + name, "report differs from the recorded one"));
  }
}

// ---------------------------------------------------------------- entry point

inline int run(const std::vector<std::string>& argv_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic complexes and cohomology operators over graded rings", "cmperiodica"};
  app.require_subcommand(1);
  Options opt;
  opt.degree_bound = default_degree_bound();
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--degree-bound", opt.degree_bound, "Default window bound")->check(CLI::PositiveNumber);
  app.add_flag("--no-timings", opt.no_timings, "Omit timings from the report");
  app.add_option("--field", opt.field, "Override the coefficient field: rational, prime, prime:<p>");
  app.add_option("--base-dir", opt.base_dir, "Resolve relative paths against this directory");
  app.set_help_flag("-h,--help");
  app.fallthrough();

  auto* construct = app.add_subcommand("construct", "Build a periodic complex");
  construct->add_option("--kind", opt.kind, "dim1, dim2, dim3, 2d or koszul");
  construct->add_option("--ring", opt.ring, "Ring descriptor file");
  construct->add_option("--elems", opt.elems, "Comma separated elements (dim1, dim3, koszul)");
  construct->add_option("--I", opt.I, "Two elements generating I (dim2)");
  construct->add_option("--J", opt.J, "Two elements generating J (dim2)");
  construct->add_option("--out", opt.out, "Write the complex to this file");

  auto* verify = app.add_subcommand("verify", "Verify a periodic complex");
  verify->add_option("--complex", opt.complex, "Complex file");
  verify->add_option("--ring", opt.ring, "Ring descriptor overriding the one in the file");

  auto add_module_cmd = [&](const std::string& name, const std::string& desc) {
    auto* s = app.add_subcommand(name, desc);
    s->add_option("--ring", opt.ring, "Ring descriptor file");
    s->add_option("--module", opt.module, "Module file");
    s->add_option("--steps", opt.steps, "Resolution length")->check(CLI::NonNegativeNumber);
    return s;
  };
  auto* resolve = add_module_cmd("resolve", "Minimal free resolution");
  resolve->add_option("--out", opt.out, "Write the resolution window as a complex file");
  auto* betti = add_module_cmd("betti", "Betti numbers and Tor dimensions");
  auto* cx = add_module_cmd("cx", "Complexity and curvature evidence");
  auto* eis = add_module_cmd("eisenbud", "Eisenbud operators and their identities");
  auto* sl = app.add_subcommand("slice", "Complexity-lowering short exact sequence");
  sl->add_option("--ring", opt.ring, "Ring descriptor file");
  sl->add_option("--module", opt.module, "Module file");
  sl->add_option("--bound", opt.bound, "Ext window bound")->check(CLI::NonNegativeNumber);
  auto* var = app.add_subcommand("variety", "Support varieties and their identities");
  var->add_option("--ring", opt.ring, "Ring descriptor file");
  var->add_option("--module-U", opt.module_u, "Module file for U");
  var->add_option("--module-V", opt.module_v, "Module file for V (default k)");
  var->add_option("--bound", opt.bound, "Ext window bound")->check(CLI::NonNegativeNumber);
  auto* circ = app.add_subcommand("circularize", "Strictly periodic complex from F = F[2]");
  circ->add_option("--complex", opt.complex, "Complex file with F^0..F^3");
  circ->add_option("--psi", opt.psi, "Chain map file psi: F -> F[2]");
  circ->add_option("--ring", opt.ring, "Ring descriptor overriding the one in the file");
  circ->add_option("--out", opt.out, "Write the circular complex to this file");
  auto* corpus = app.add_subcommand("corpus", "List the shipped corpus");
  corpus->add_flag("--check", opt.check, "Verify complexes and compare golden reports");

  std::vector<std::string> rev(argv_in.rbegin(), argv_in.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  Context c{opt, Report{}, out, err};
  c.rep.command = sub->get_name();
  {
    // drop the value following --base-dir
    json clean = json::array();
    for (std::size_t i = 0; i < argv_in.size(); ++i) {
      if (argv_in[i] == "--base-dir") {
        ++i;
        continue;
      }
      clean.push_back(argv_in[i]);
    }
    c.rep.args["argv"] = clean;
  }
  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (sub == construct) cmd_construct(c);
    else if (sub == verify) cmd_verify(c);
    else if (sub == resolve) cmd_resolve(c, false);
    else if (sub == betti) cmd_resolve(c, true);
    else if (sub == cx) cmd_cx(c);
    else if (sub == eis) cmd_eisenbud(c);
    else if (sub == sl) cmd_slice(c);
    else if (sub == var) cmd_variety(c);
    else if (sub == circ) cmd_circularize(c);
    else if (sub == corpus) cmd_corpus(c);
    code = c.rep.ok() ? 0 : 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    c.rep.error = e.what();
    code = 1;
  }
  if (!opt.no_timings)
    c.rep.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const json doc = c.rep.to_json();
  out << (opt.format == "text" ? render_text(doc) : dump(doc));
  return code;
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace cmperiodica::cli
