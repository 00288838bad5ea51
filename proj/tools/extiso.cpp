// extiso: validate, invariants, iso, gen, extdata over Cayley-table files.
//
// Exit codes: 0 isomorphic / success, 1 not isomorphic, 2 inapplicable or cap,
// 3 invalid input (parse, I/O, not a group), 4 other errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "extiso/builders.hpp"
#include "extiso/cayley_io.hpp"
#include "extiso/cohomology.hpp"
#include "extiso/families.hpp"
#include "extiso/isoengine.hpp"
#include "report.hpp"

using namespace extiso;
using cli::Report;

namespace {

constexpr int kIso = 0, kNotIso = 1, kInapplicable = 2, kBadInput = 3, kError = 4;

GroupPtr load(const std::string& path) { return read_cayley_file(path); }

std::string abelian_type(const GroupPtr& g) {
  auto s = primary_decomposition(g);
  std::string out;
  for (auto o : abelian_invariants(*s)) out += (out.empty() ? "" : " ") + std::to_string(o);
  return out.empty() ? "1" : out;
}

// --------------------------------------------------------------- validate

int cmd_validate(const std::string& path) {
  Report r("validate");
  r.add("input", path);
  try {
    auto g = load(path);
    r.add("order", g->order());
    r.add("abelian", g->is_abelian() ? "yes" : "no");
    r.verdict("ok");
    r.print(std::cout);
    return 0;
  } catch (const NotAGroup& e) {
    r.add("reason", e.reason());
    r.verdict("not-a-group");
    r.print(std::cout);
    return kBadInput;
  } catch (const ParseError& e) {
    r.add("reason", e.what());
    r.verdict("parse-error");
    r.print(std::cout);
    return kBadInput;
  }
}

// --------------------------------------------------------------- invariants

int cmd_invariants(const std::string& path) {
  auto g = load(path);
  Report r("invariants");
  r.add("input", path);
  r.add("order", g->order());
  r.add("abelian", g->is_abelian() ? "yes" : "no");
  if (g->is_abelian()) r.add("abelian_type", abelian_type(g));
  std::vector<std::size_t> counts;
  for (auto o : g->elem_orders()) {
    if (counts.size() <= o) counts.resize(o + 1, 0);
    ++counts[o];
  }
  std::string spectrum;
  for (std::size_t o = 1; o < counts.size(); ++o)
    if (counts[o]) spectrum += (spectrum.empty() ? "" : " ") + std::to_string(o) + ":" + std::to_string(counts[o]);
  r.add("element_orders", spectrum);
  auto z = center(g);
  r.add("center", z.size());
  if (z.size() > 1) r.add("center_type", abelian_type(subgroup_as_group(z).group));
  r.add("derived", commutator_subgroup(g).size());
  auto bb = babai_beals_filtration(g);
  r.add("radical", bb.rad.size());
  r.add("soc_star", bb.soc_star.size());
  r.add("pker", bb.pker.size());
  r.add("socle_factors", bb.socle_factor_orders.empty() ? "none" : cli::join(bb.socle_factor_orders));
  r.add("central_radical", bb.rad == z ? "yes" : "no");
  r.verdict("ok");
  r.print(std::cout);
  return 0;
}

// --------------------------------------------------------------- iso

struct IsoOptions {
  std::string g, h, strategy = "auto";
  bool oracle = false;
  std::optional<std::size_t> cap;
};

int cmd_iso(const IsoOptions& o) {
  auto g = load(o.g);
  auto h = load(o.h);
  IsoConfig cfg = IsoConfig::from_env();
  if (o.cap) cfg.aut_order_cap = cfg.abelian_aut_cap = cfg.cyclicity_cap = cfg.diagonal_cap = cfg.brute_order_cap = *o.cap;
  Report r("iso");
  r.add("input_g", o.g);
  r.add("input_h", o.h);
  r.add("order_g", g->order());
  r.add("order_h", h->order());
  r.add("strategy_requested", o.strategy);
  r.add("caps", "aut=" + std::to_string(cfg.aut_order_cap) + " abelian_aut=" + std::to_string(cfg.abelian_aut_cap) +
                    " cyclicity=" + std::to_string(cfg.cyclicity_cap) + " diagonal=" +
                    std::to_string(cfg.diagonal_cap) + " brute=" + std::to_string(cfg.brute_order_cap));
  IsoVerdict v;
  try {
    v = iso_with_strategy(o.strategy, g, h, cfg);
  } catch (const StrategyInapplicable& e) {
    r.add("diagnostic", e.what());
    r.verdict("inapplicable");
    r.print(std::cout);
    return kInapplicable;
  } catch (const CapExceeded& e) {
    r.add("diagnostic", e.what());
    r.verdict("cap-exceeded");
    r.print(std::cout);
    return kInapplicable;
  }
  r.add("strategy", v.strategy);
  for (const auto& c : v.certificate) r.add("certificate", c);
  if (v.witness) {
    std::string w;
    for (Elem x : g->generators()) w += (w.empty() ? "" : " ") + std::to_string(x) + "->" + std::to_string((*v.witness)(x));
    r.add("witness_generators", w);
    r.add("witness_verified", is_isomorphism(*v.witness) ? "yes" : "no");
  }
  if (o.oracle) {
    if (g->order() > cfg.oracle_cap) {
      r.add("oracle", "skipped (order above " + std::to_string(cfg.oracle_cap) + ")");
    } else {
      bool truth = brute_force_iso(g, h).has_value();
      r.add("oracle", truth == v.isomorphic() ? "agrees" : "DISAGREES");
      if (truth != v.isomorphic()) {
        r.verdict("oracle-disagreement");
        r.print(std::cout);
        return kError;
      }
    }
  }
  r.verdict(v.isomorphic() ? "isomorphic" : "not-isomorphic");
  r.print(std::cout);
  return v.isomorphic() ? kIso : kNotIso;
}

// --------------------------------------------------------------- gen

std::vector<std::uint32_t> parse_numbers(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::istringstream in(s);
  for (long long x; in >> x;) {
    if (x < 0) throw ParseError("negative entry in " + s);
    out.push_back(static_cast<std::uint32_t>(x));
  }
  return out;
}

// "a b c|d e f" -> {{a,b,c},{d,e,f}}
std::vector<std::vector<std::uint32_t>> parse_lists(const std::string& s) {
  std::vector<std::vector<std::uint32_t>> out;
  std::istringstream in(s);
  for (std::string part; std::getline(in, part, '|');) out.push_back(parse_numbers(part));
  return out;
}

std::size_t arg_num(const std::vector<std::string>& a, std::size_t i) {
  if (i >= a.size()) throw ParseError("missing numeric argument");
  try {
    return std::stoul(a[i]);
  } catch (const std::exception&) {
    throw ParseError("not a number: " + a[i]);
  }
}

BilinearMap read_bilinear(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  BilinearMap b;
  if (!(in >> b.p >> b.k >> b.l)) throw ParseError("bilinear map header needs p k l");
  b.values.assign(b.l * b.l, std::vector<std::uint32_t>(b.k));
  for (auto& v : b.values)
    for (auto& x : v)
      if (!(in >> x)) throw ParseError("bilinear map needs l^2 lines of k entries");
  return b;
}

GroupPtr semidirect_cyclic(std::size_t n, std::size_t m, std::uint32_t u) {
  auto A = primary_decomposition(families::cyclic(n));
  std::uint64_t t = 1;
  for (std::size_t i = 0; i < m; ++i) t = t * u % n;
  if (t != 1 % n) throw PreconditionFailed("u^m must be 1 mod n");
  std::vector<Mat> act;
  std::uint64_t power = 1;
  for (std::size_t q = 0; q < m; ++q) {
    Mat d(A->k(), Vec(A->k(), 0));
    for (std::size_t i = 0; i < A->k(); ++i) d[i][i] = static_cast<std::uint32_t>(power % A->orders[i]);
    act.push_back(std::move(d));
    power = power * u % n;
  }
  return semidirect_product(A, families::cyclic(m), act,
                            "Z" + std::to_string(n) + ":Z" + std::to_string(m) + "[" + std::to_string(u) + "]");
}

GroupPtr from_generators(const std::vector<std::string>& a) {
  if (a.size() < 2) throw ParseError("from-generators needs a kind");
  const std::string& kind = a[1];
  if (kind == "sl25") return families::sl25();
  if (kind == "q8") return families::quaternion8();
  if (kind == "heisenberg") return families::heisenberg(static_cast<std::uint32_t>(arg_num(a, 2)));
  if (kind == "perm") {
    std::size_t deg = arg_num(a, 2);
    if (a.size() < 4) throw ParseError("perm needs images");
    std::vector<Perm> gens;
    for (auto& l : parse_lists(a[3])) {
      if (l.size() != deg) throw ParseError("permutation length differs from degree");
      gens.push_back(l);
    }
    return group_from_permutations(deg, gens, cap_from_env(kDefaultClosureCap));
  }
  if (kind == "matrix") {
    auto p = static_cast<std::uint32_t>(arg_num(a, 2));
    std::size_t dim = arg_num(a, 3);
    if (a.size() < 5) throw ParseError("matrix needs entries");
    auto gens = parse_lists(a[4]);
    for (auto& m : gens)
      if (m.size() != dim * dim) throw ParseError("matrix entry count differs from dim^2");
    return group_from_matrices(p, dim, gens, cap_from_env(kDefaultClosureCap));
  }
  throw ParseError("unknown generator kind " + kind);
}

GroupPtr build_family(const std::vector<std::string>& a) {
  const std::string& f = a.at(0);
  if (f == "cyclic") return families::cyclic(arg_num(a, 1));
  if (f == "elem-abelian") return families::elementary_abelian(static_cast<std::uint32_t>(arg_num(a, 1)), arg_num(a, 2));
  if (f == "abelian") {
    std::vector<std::size_t> orders;
    for (std::size_t i = 1; i < a.size(); ++i) orders.push_back(arg_num(a, i));
    return families::abelian(orders);
  }
  if (f == "dihedral") return families::dihedral(arg_num(a, 1));
  if (f == "symmetric") return families::symmetric(arg_num(a, 1));
  if (f == "alternating") return families::alternating(arg_num(a, 1));
  if (f == "baer") {
    if (a.size() < 2) throw ParseError("baer needs a bilinear map file");
    return baer_group(read_bilinear(a[1]));
  }
  if (f == "semidirect") return semidirect_cyclic(arg_num(a, 1), arg_num(a, 2), static_cast<std::uint32_t>(arg_num(a, 3)));
  if (f == "central-ext") return families::a5xa5_central(arg_num(a, 1) != 0, arg_num(a, 2) != 0).group;
  if (f == "from-generators") return from_generators(a);
  if (f == "direct-product") {
    if (a.size() < 3) throw ParseError("direct-product needs two files");
    return direct_product(load(a[1]), load(a[2]));
  }
  if (f == "relabel") {
    if (a.size() < 3) throw ParseError("relabel needs a file and a seed");
    return random_relabel(load(a[1]), arg_num(a, 2)).first;
  }
  throw ParseError("unknown family " + f);
}

int cmd_gen(const std::vector<std::string>& args, const std::string& out) {
  if (args.empty()) throw ParseError("gen needs a family");
  if (args[0] == "corpus") {
    if (out.empty()) throw ParseError("gen corpus needs -o DIR");
    Report r("gen");
    r.add("family", "corpus");
    std::size_t count = 0;
    for (const auto& ng : families::corpus()) {
      write_cayley_file(out + "/" + ng.name + ".cayley", *ng.group);
      r.add("wrote", ng.name + ".cayley order " + std::to_string(ng.group->order()));
      ++count;
    }
    r.add("count", count);
    r.verdict("ok");
    r.print(std::cout);
    return 0;
  }
  auto g = build_family(args);
  if (out.empty()) {
    write_cayley(std::cout, *g);
    return 0;
  }
  write_cayley_file(out, *g);
  Report r("gen");
  std::string spec;
  for (const auto& s : args) spec += (spec.empty() ? "" : " ") + s;
  r.add("family", spec);
  r.add("output", out);
  r.add("order", g->order());
  r.verdict("ok");
  r.print(std::cout);
  return 0;
}

// --------------------------------------------------------------- extdata

Subgroup choose_normal(const GroupPtr& g, const std::string& which) {
  if (which == "center") return center(g);
  if (which == "radical") return solvable_radical(g);
  std::vector<Elem> idx;
  for (auto x : parse_numbers([&] {
         std::string s = which;
         for (auto& c : s)
           if (c == ',') c = ' ';
         return s;
       }())) {
    if (x >= g->order()) throw ParseError("index out of range in --normal");
    idx.push_back(x);
  }
  return subgroup_generated(g, idx);
}

int cmd_extdata(const std::string& path, const std::string& which) {
  auto g = load(path);
  auto n = choose_normal(g, which);
  Report r("extdata");
  r.add("input", path);
  r.add("normal", which);
  r.add("normal_order", n.size());
  if (!is_normal(n)) throw NotNormal("chosen subgroup is not normal");
  auto qp = quotient_with_section(g, n);
  r.add("quotient_order", qp.quotient->order());
  auto sub = subgroup_as_group(n).group;
  r.add("normal_abelian", sub->is_abelian() ? "yes" : "no");
  if (!sub->is_abelian()) {
    auto ed = extract_general_extension_data(qp);
    for (Elem q = 0; q < qp.quotient->order(); ++q) {
      std::vector<std::size_t> t(ed.T[q].begin(), ed.T[q].end());
      r.add("action[" + std::to_string(q) + "]", cli::join(t));
    }
    std::vector<std::size_t> f(ed.cocycle.begin(), ed.cocycle.end());
    r.add("cocycle", cli::join(f));
    r.verdict("ok");
    r.print(std::cout);
    return 0;
  }
  auto ed = extract_extension_data(qp);
  const auto& A = *ed.coefficient;
  r.add("coefficient_orders", A.k() ? cli::join(std::vector<std::size_t>(A.orders.begin(), A.orders.end())) : "none");
  for (Elem q = 0; q < ed.qn(); ++q) {
    std::string s;
    for (const auto& row : ed.action[q])
      for (auto x : row) s += (s.empty() ? "" : " ") + std::to_string(x);
    r.add("action[" + std::to_string(q) + "]", s.empty() ? "none" : s);
  }
  std::ostringstream cm;
  write_cochain_matrix(cm, to_matrix(ed));
  r.add_block("cochain", cm.str());
  r.add("coboundary_rank", coboundary_basis(ed.quotient, ed.coefficient, ed.action).size());
  ExtensionData zero = ed;
  std::fill(zero.cocycle.begin(), zero.cocycle.end(), 0);
  r.add("class_nontrivial", cohomologous(ed, zero) ? "no" : "yes");
  r.verdict("ok");
  r.print(std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite group isomorphism over Cayley tables via extension data"};
  app.require_subcommand(1);

  std::string path;
  auto* validate = app.add_subcommand("validate", "check that a table is a group");
  validate->add_option("file", path, "Cayley table")->required();

  auto* invariants = app.add_subcommand("invariants", "order, center, radical and socle data");
  invariants->add_option("file", path, "Cayley table")->required();

  IsoOptions iso;
  std::size_t cap = 0;
  auto* isocmd = app.add_subcommand("iso", "decide isomorphism");
  isocmd->add_option("first", iso.g, "first table")->required();
  isocmd->add_option("second", iso.h, "second table")->required();
  isocmd->add_option("--strategy", iso.strategy, "strategy")
      ->check(CLI::IsMember({"auto", "central-radical", "elem-abelian-radical", "ss-product-1", "ss-product-2", "brute"}));
  isocmd->add_flag("--oracle-check", iso.oracle, "compare with brute force");
  auto* cap_opt = isocmd->add_option("--cap", cap, "override every search cap");

  std::vector<std::string> gen_args;
  std::string out;
  auto* gen = app.add_subcommand("gen", "write a Cayley table for a family");
  gen->add_option("spec", gen_args, "family and parameters")->required();
  gen->add_option("-o,--output", out, "output file (directory for corpus)");

  std::string which = "center";
  auto* extdata = app.add_subcommand("extdata", "dump extension data over a normal subgroup");
  extdata->add_option("file", path, "Cayley table")->required();
  extdata->add_option("--normal", which, "center | radical | comma-separated generator indices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kBadInput;
  }

  try {
    if (*validate) return cmd_validate(path);
    if (*invariants) return cmd_invariants(path);
    if (*isocmd) {
      if (*cap_opt) iso.cap = cap;
      return cmd_iso(iso);
    }
    if (*gen) return cmd_gen(gen_args, out);
    if (*extdata) return cmd_extdata(path, which);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const NotAGroup& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInapplicable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
