#include <doctest.h>

#include "bmvshs/gram.hpp"
#include "test_support.hpp"

using namespace bmvshs;
using test_support::P;
using test_support::W;

TEST_CASE("default_basis") {
  const auto v01_7 = default_basis(7, BasisFilter::v01);
  CHECK(v01_7 == std::vector<Word>{W("X*Y^4*X^2"), W("Y^2*X^2*Y^2*X"), W("Y^4*X^3")});

  CHECK(default_basis(8, BasisFilter::v01).size() == 6);

  const auto full_7 = default_basis(7, BasisFilter::full);
  CHECK(full_7.size() == 35);
  for (const Word& w : full_7)
    CHECK(degrees(w) == std::pair<std::size_t, std::size_t>{3, 4});

  for (const Word& w : default_basis(9, BasisFilter::v2)) CHECK(in_v2(w));
  for (const Word& w : default_basis(8, BasisFilter::v2))
    CHECK(squared_reading(w).has_value());

  // every generator word of the built certificate lies in the v01 basis
  for (int m : {7, 8, 11, 12}) {
    const auto basis = default_basis(m, BasisFilter::v01);
    for (const Polynomial& f : build(m).generators)
      for (const auto& [w, c] : f.terms())
        CHECK(std::find(basis.begin(), basis.end(), w) != basis.end());
  }
  CHECK_THROWS_AS(default_basis(4, BasisFilter::full), std::invalid_argument);
}

TEST_CASE("half_degree_basis") {
  CHECK(half_degree_basis(6, 3).size() == 20);
  for (const Word& w : half_degree_basis(6, 3))
    CHECK(degrees(w) == std::pair<std::size_t, std::size_t>{3, 3});
}

TEST_CASE("assemble") {
  const Polynomial target = substitute_squares(s_poly(7, 4));
  const auto prob = assemble(target, default_basis(7, BasisFilter::v01));
  CHECK_FALSE(prob.trivially_infeasible());

  std::size_t with_rhs = 0;
  std::size_t support_total = 0;
  for (const auto& [cls, c] : prob.constraints) {
    support_total += c.support.size();
    if (c.rhs != 0) {
      ++with_rhs;
      CHECK(c.rhs == 7);
    }
  }
  CHECK(with_rhs == 5);
  CHECK(support_total == 9);  // all ordered pairs of a 3-word basis

  // diagonal products are palindromes rooted at star(b) b
  for (const auto& [cls, c] : prob.constraints)
    for (const auto& [i, j] : c.support)
      if (i == j) {
        const Word p = star(prob.basis[i]) * prob.basis[j];
        CHECK(p == p.reversed());
        CHECK(cyc_equivalent(p, cls.canonical));
      }

  CHECK_THROWS_AS(assemble(target, {}), std::invalid_argument);
  CHECK_THROWS_AS(assemble(target, std::vector<Word>{W("X"), W("X")}),
                  std::invalid_argument);
}

TEST_CASE("assemble flags unreachable target classes") {
  // target has a class no product of the basis can reach
  const Polynomial target = P("X*Y") + substitute_squares(s_poly(5, 4));
  const auto prob = assemble(target, default_basis(5, BasisFilter::v01));
  CHECK(prob.trivially_infeasible());
  const auto sol = solve_feasibility(prob);
  CHECK(sol.status == GramStatus::infeasible_gap);
  CHECK(sol.iterations == 0);
}

TEST_CASE("solve_feasibility positive cases") {
  for (int m : {5, 6, 7, 8}) {
    const Polynomial target = substitute_squares(s_poly(m, 4));
    const auto prob = assemble(target, default_basis(m, BasisFilter::v01));
    const auto sol = solve_feasibility(prob);
    CAPTURE(m);
    REQUIRE(sol.status == GramStatus::feasible);
    CHECK(sol.constraint_residual <= 1e-8);
    CHECK(sol.min_eigenvalue >= -1e-9);
  }
}

TEST_CASE("zero target is feasible with G = 0") {
  const auto prob = assemble(Polynomial(), default_basis(6, BasisFilter::v01));
  const auto sol = solve_feasibility(prob);
  REQUIRE(sol.status == GramStatus::feasible);
  CHECK(sol.G.norm() == 0.0);
}

TEST_CASE("solve_feasibility rejects bad tolerances") {
  const auto prob = assemble(Polynomial(), default_basis(6, BasisFilter::v01));
  SolveOptions o;
  o.eps_aff = 0;
  CHECK_THROWS_AS(solve_feasibility(prob, o), std::invalid_argument);
}

TEST_CASE("S_{6,3} is never feasible") {
  const Polynomial target = substitute_squares(s_poly(6, 3));
  const auto prob = assemble(target, half_degree_basis(6, 3));
  SolveOptions o;
  o.max_iter = 5000;
  const auto sol = solve_feasibility(prob, o);
  CHECK(sol.status != GramStatus::feasible);
  CHECK(sol.gap > 10 * o.eps_aff);
}

TEST_CASE("feasibility is basis monotone") {
  for (int m : {6, 7, 8}) {
    const Polynomial target = substitute_squares(s_poly(m, 4));
    const auto sol =
        solve_feasibility(assemble(target, default_basis(m, BasisFilter::full)));
    CAPTURE(m);
    CHECK(sol.status == GramStatus::feasible);
  }
}

TEST_CASE("affine projection is exact on returned feasible points") {
  // the solver's feasible points must satisfy per-class sums; recompute here
  const Polynomial target = substitute_squares(s_poly(8, 4));
  const auto prob = assemble(target, default_basis(8, BasisFilter::v01));
  const auto sol = solve_feasibility(prob);
  REQUIRE(sol.status == GramStatus::feasible);
  for (const auto& [cls, c] : prob.constraints) {
    double sum = 0;
    for (const auto& [i, j] : c.support) sum += sol.G(i, j);
    CHECK(std::abs(sum - c.rhs.convert_to<double>()) <= 1e-8);
  }
}

TEST_CASE("gram_of_certificate") {
  const auto sol7 = gram_of_certificate(build_odd(7));
  CHECK(sol7.status == GramStatus::feasible);
  CHECK(sol7.exact_arithmetic);
  REQUIRE(sol7.exact_G.has_value());
  CHECK(sol7.basis.size() == 3);
  // rank <= number of generators
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sol7.G);
  CHECK(lu.rank() <= 2);
  CHECK(sol7.constraint_residual == 0.0);

  const Polynomial target7 = substitute_squares(s_poly(7, 4));
  CHECK(max_affine_violation(*sol7.exact_G, sol7.basis, target7) == 0);
  CHECK(rational_psd_check(*sol7.exact_G));

  const auto sol8 = gram_of_certificate(build_even(8));
  REQUIRE(sol8.exact_G.has_value());
  CHECK(sol8.basis.size() == 6);
  bool found = false;
  for (std::size_t i = 0; i < sol8.basis.size(); ++i)
    if (sol8.basis[i] == W("X^2*Y^4*X^2")) {
      found = true;
      CHECK(sol8.exact_G->at(static_cast<int>(i), static_cast<int>(i)) == 2);
    }
  CHECK(found);
}

TEST_CASE("gram_of_certificate is exact for m in 5..16") {
  for (int m = 5; m <= 16; ++m) {
    const auto sol = gram_of_certificate(build(m));
    CAPTURE(m);
    CHECK(sol.status == GramStatus::feasible);
    CHECK(sol.exact_arithmetic);
    CHECK(sol.constraint_residual == 0.0);
  }
}

TEST_CASE("rational_psd_check") {
  RationalMatrix id(2);
  id.at(0, 0) = 1;
  id.at(1, 1) = 1;
  CHECK(rational_psd_check(id));

  RationalMatrix neg(2);
  neg.at(0, 0) = 1;
  neg.at(1, 1) = -1;
  CHECK_FALSE(rational_psd_check(neg));

  // PSD rank-1 with rational entries
  RationalMatrix r1(2);
  r1.at(0, 0) = Rational(1, 4);
  r1.at(0, 1) = Rational(1, 2);
  r1.at(1, 0) = Rational(1, 2);
  r1.at(1, 1) = 1;
  CHECK(rational_psd_check(r1));

  // indefinite with zero diagonal
  RationalMatrix zd(2);
  zd.at(0, 1) = 1;
  zd.at(1, 0) = 1;
  CHECK_FALSE(rational_psd_check(zd));

  // zero matrix
  CHECK(rational_psd_check(RationalMatrix(3)));

  // PSD 3x3 that needs a pivot swap: diag(0 block) after elimination
  RationalMatrix m3(3);
  m3.at(0, 0) = 0;
  m3.at(1, 1) = 2;
  m3.at(2, 2) = 2;
  m3.at(1, 2) = 2;
  m3.at(2, 1) = 2;
  CHECK(rational_psd_check(m3));
  m3.at(1, 2) = 3;
  m3.at(2, 1) = 3;
  CHECK_FALSE(rational_psd_check(m3));
}

TEST_CASE("extract_sohs") {
  // the certificate Gram for m=7 has rank exactly 2
  const Polynomial target7 = substitute_squares(s_poly(7, 4));
  const auto cert_sol = gram_of_certificate(build_odd(7));
  const auto cert_gens = extract_sohs(cert_sol, cert_sol.basis, 1e-7);
  CHECK(cert_gens.size() == 2);
  CHECK(reexpansion_residual(cert_gens, target7) <= 1e-9 * cert_sol.G.norm());

  // numerically solved point re-expands as well
  const auto prob = assemble(target7, default_basis(7, BasisFilter::v01));
  const auto sol = solve_feasibility(prob);
  REQUIRE(sol.status == GramStatus::feasible);
  const auto gens = extract_sohs(sol, prob.basis, 1e-7);
  CHECK(reexpansion_residual(gens, target7) <= 1e-6 * std::max(1.0, sol.G.norm()));

  // rank-1 case: a single extracted polynomial
  const auto sol5 = gram_of_certificate(build_odd(5));
  const auto gens5 = extract_sohs(sol5, sol5.basis, 1e-7);
  CHECK(gens5.size() == 1);

  // end-to-end numeric solve for m=6, k=4 on the full half-degree basis
  const Polynomial target6 = substitute_squares(s_poly(6, 4));
  const auto prob6 = assemble(target6, half_degree_basis(6, 4));
  const auto sol6 = solve_feasibility(prob6);
  REQUIRE(sol6.status == GramStatus::feasible);
  const auto gens6 = extract_sohs(sol6, prob6.basis, 1e-7);
  CHECK(reexpansion_residual(gens6, target6) <= 1e-6 * std::max(1.0, sol6.G.norm()));

  GramSolution unsolved;
  unsolved.status = GramStatus::unknown;
  CHECK_THROWS_AS(extract_sohs(unsolved, prob.basis, 1e-7), std::invalid_argument);
}

TEST_CASE("gram JSON shapes") {
  const Polynomial target = substitute_squares(s_poly(5, 4));
  const auto prob = assemble(target, default_basis(5, BasisFilter::v01));
  const std::string pj = prob.to_json();
  CHECK(pj.find("\"basis\"") != std::string::npos);
  CHECK(pj.find("\"rhs\":\"5\"") != std::string::npos);
  const auto sol = solve_feasibility(prob);
  const std::string sj = sol.to_json();
  CHECK(sj.find("\"status\":\"feasible\"") != std::string::npos);
}
