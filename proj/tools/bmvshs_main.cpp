#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bmvshs/gram.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json poly_terms(const bmvshs::Polynomial& p) {
  json terms = json::array();
  for (const auto& [w, c] : p.terms()) terms.push_back({bmvshs::to_string(c), w.str()});
  return terms;
}

struct GenArgs {
  int m = 0;
  int k = 0;
  bool squared = false;
  bool text = false;
};

int cmd_gen(const GenArgs& a) {
  bmvshs::Polynomial p = bmvshs::s_poly(a.m, a.k);
  if (a.squared) p = bmvshs::substitute_squares(p);
  if (a.text) {
    std::cout << p.str() << "\n";
  } else {
    json j{{"m", a.m},
           {"k", a.k},
           {"squared", a.squared},
           {"term_count", p.term_count()},
           {"poly", p.str()},
           {"terms", poly_terms(p)}};
    std::cout << j.dump() << "\n";
  }
  return kExitOk;
}

struct CertArgs {
  int m = 0;
  std::string form = "default";
  bool text = false;
};

int cmd_cert(const CertArgs& a) {
  bmvshs::Certificate cert = bmvshs::build(a.m);
  if (a.form == "v2") cert = bmvshs::to_v2_form(cert);
  if (a.text) {
    std::cout << "m = " << cert.m << " (" << to_string(cert.parity)
              << "), certificate = " << bmvshs::to_string(cert.multiplier)
              << " * sum_k star(f_k) f_k\n";
    for (std::size_t k = 0; k < cert.generators.size(); ++k)
      std::cout << "f_" << k << " = " << cert.generators[k].str() << "\n";
  } else {
    std::cout << cert.to_json() << "\n";
  }
  return kExitOk;
}

struct VerifyArgs {
  int m = 0;
  bool has_m = false;
  std::string file;
  bool text = false;
};

int cmd_verify(const VerifyArgs& a) {
  bmvshs::Certificate cert =
      a.has_m ? bmvshs::build(a.m) : bmvshs::Certificate::from_json(read_file(a.file));
  const auto rep = bmvshs::verify_symbolic(cert);
  if (a.text) {
    std::cout << (rep.passed ? "PASS" : "FAIL") << " m=" << rep.m << "\n";
    for (const auto& c : rep.failing_classes) std::cout << "  " << c << "\n";
  } else {
    std::cout << rep.to_json() << "\n";
  }
  return rep.passed ? kExitOk : kExitNegative;
}

int cmd_count(int m) {
  const bmvshs::Rational formula = bmvshs::expected_class_count(m);
  json j{{"m", m}, {"parity", to_string(bmvshs::parity_of(m))},
         {"formula", bmvshs::to_string(formula)}};
  bool match = false;
  if (m % 2 != 0) {
    const auto classes = bmvshs::class_decomposition(bmvshs::s_poly(m, 4));
    j["classes"] = classes.size();
    match = bmvshs::Rational(classes.size()) == formula;
  } else {
    const bmvshs::Rational sum = bmvshs::build_even(m).expansion().coefficient_sum();
    j["coeff_sum"] = bmvshs::to_string(sum);
    match = sum == formula;
  }
  j["match"] = match;
  std::cout << j.dump() << "\n";
  return match ? kExitOk : kExitNegative;
}

struct EvalArgs {
  int m = 0;
  int k = 0;
  int dim = 3;
  int trials = 100;
  std::uint64_t seed = 0;
  int jobs = 1;
};

int cmd_eval(const EvalArgs& a) {
  bmvshs::SpotcheckOptions opts;
  opts.jobs = a.jobs;
  const auto rep = bmvshs::numeric_spotcheck(a.m, a.k, a.trials, a.dim, a.seed, opts);
  std::cout << rep.to_json() << "\n";
  return rep.passed ? kExitOk : kExitNegative;
}

struct SearchArgs {
  int m = 0;
  int k = 4;
  std::string basis = "full";
  bmvshs::SolveOptions opts;
  bool problem_only = false;
};

int cmd_search(const SearchArgs& a) {
  std::vector<bmvshs::Word> basis;
  if (a.k == 4) {
    basis = bmvshs::default_basis(a.m, bmvshs::basis_filter_from_string(a.basis));
  } else if (a.basis == "full") {
    basis = bmvshs::half_degree_basis(a.m, a.k);
  } else {
    throw std::invalid_argument("basis filter '" + a.basis + "' requires k = 4");
  }
  const auto target = bmvshs::substitute_squares(bmvshs::s_poly(a.m, a.k));
  const auto prob = bmvshs::assemble(target, basis);
  if (a.problem_only) {
    std::cout << prob.to_json() << "\n";
    return kExitOk;
  }
  const auto sol = bmvshs::solve_feasibility(prob, a.opts);
  std::cout << sol.to_json() << "\n";
  return sol.status == bmvshs::GramStatus::feasible ? kExitOk : kExitNegative;
}

int cmd_witness(const std::string& pfile, const std::string& qfile) {
  const auto p = bmvshs::Polynomial::parse(read_file(pfile));
  const auto q = bmvshs::Polynomial::parse(read_file(qfile));
  const auto wit = bmvshs::commutator_witness(p, q);
  json j{{"equivalent", wit.equivalent}};
  if (wit.equivalent) {
    json pairs = json::array();
    for (const auto& [a, b] : wit.pairs) pairs.push_back({a.str(), b.str()});
    j["pairs"] = pairs;
  } else {
    j["separating_class"] = wit.separating_class->str();
  }
  std::cout << j.dump() << "\n";
  return wit.equivalent ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sum-of-Hermitian-squares certificates, modulo cyclic equivalence, for the\n"
      "BMV trace polynomials S_{m,k}(X^2, Y^2)."};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Print S_{m,k}, optionally after X->X^2, Y->Y^2");
  gen->add_option("-m", gen_args.m, "word length")->required();
  gen->add_option("-k", gen_args.k, "number of Y letters")->required();
  gen->add_flag("--squared", gen_args.squared, "substitute X->X^2, Y->Y^2");
  gen->add_flag("--text", gen_args.text, "plain polynomial text instead of JSON");

  CertArgs cert_args;
  auto* cert = app.add_subcommand("cert", "Construct the certificate for S_{m,4}(X^2, Y^2)");
  cert->add_option("-m", cert_args.m, "degree parameter, m >= 5")->required();
  cert->add_option("--form", cert_args.form, "generator form")
      ->check(CLI::IsMember({"default", "v2"}))
      ->capture_default_str();
  cert->add_flag("--text", cert_args.text, "human readable output");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Exact symbolic verification of a certificate");
  auto* verify_m = verify->add_option("-m", verify_args.m, "verify the built-in certificate");
  auto* verify_file =
      verify->add_option("certificate", verify_args.file, "certificate JSON file");
  verify->add_flag("--text", verify_args.text, "human readable output");
  verify_m->excludes(verify_file);

  int count_m = 0;
  auto* count = app.add_subcommand("count", "Class counts / coefficient sums vs closed forms");
  count->add_option("-m", count_m, "degree parameter, m >= 5")->required();

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Seeded matrix spot-checks of trace nonnegativity");
  eval->add_option("-m", eval_args.m, "word length")->required();
  eval->add_option("-k", eval_args.k, "number of Y letters")->required();
  eval->add_option("-d,--dim", eval_args.dim, "matrix dimension")->capture_default_str();
  eval->add_option("-n,--trials", eval_args.trials, "number of trials")->capture_default_str();
  eval->add_option("-s,--seed", eval_args.seed, "random seed")->capture_default_str();
  eval->add_option("--jobs", eval_args.jobs, "parallel workers")->capture_default_str();

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "Gram feasibility search for S_{m,k}(X^2, Y^2)");
  search->add_option("-m", search_args.m, "word length")->required();
  search->add_option("-k", search_args.k, "number of Y letters")->capture_default_str();
  search->add_option("--basis", search_args.basis, "basis filter")
      ->check(CLI::IsMember({"full", "v01", "v2"}))
      ->capture_default_str();
  search->add_option("--eps-psd", search_args.opts.eps_psd, "PSD tolerance")
      ->capture_default_str();
  search->add_option("--eps-aff", search_args.opts.eps_aff, "constraint tolerance")
      ->capture_default_str();
  search->add_option("--max-iter", search_args.opts.max_iter, "iteration cap")
      ->capture_default_str();
  search->add_flag("--dykstra", search_args.opts.dykstra, "use the Dykstra correction");
  search->add_option("--init-seed", search_args.opts.init_seed,
                     "nonzero seeds a random starting point");
  search->add_flag("--problem-only", search_args.problem_only,
                   "print the assembled problem instead of solving");

  std::string witness_p, witness_q;
  auto* witness =
      app.add_subcommand("witness", "Commutator witness for cyclic equivalence of p and q");
  witness->add_option("p", witness_p, "polynomial file")->required();
  witness->add_option("q", witness_q, "polynomial file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_args);
    if (cert->parsed()) return cmd_cert(cert_args);
    if (verify->parsed()) {
      verify_args.has_m = verify_m->count() > 0;
      if (!verify_args.has_m && verify_file->count() == 0)
        throw std::invalid_argument("verify needs -m or a certificate file");
      return cmd_verify(verify_args);
    }
    if (count->parsed()) return cmd_count(count_m);
    if (eval->parsed()) return cmd_eval(eval_args);
    if (search->parsed()) return cmd_search(search_args);
    if (witness->parsed()) return cmd_witness(witness_p, witness_q);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
