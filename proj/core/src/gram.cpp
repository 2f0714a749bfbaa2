#include "bmvshs/gram.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace bmvshs {

using nlohmann::json;

std::string to_string(BasisFilter f) {
  switch (f) {
    case BasisFilter::full: return "full";
    case BasisFilter::v01: return "v01";
    case BasisFilter::v2: return "v2";
  }
  return "full";
}

BasisFilter basis_filter_from_string(std::string_view s) {
  if (s == "full") return BasisFilter::full;
  if (s == "v01") return BasisFilter::v01;
  if (s == "v2") return BasisFilter::v2;
  throw std::invalid_argument("bad basis filter: '" + std::string(s) + "'");
}

std::string to_string(GramStatus s) {
  switch (s) {
    case GramStatus::feasible: return "feasible";
    case GramStatus::infeasible_gap: return "infeasible_gap";
    case GramStatus::unknown: return "unknown";
  }
  return "unknown";
}

std::vector<Word> half_degree_basis(int m, int k) {
  const Polynomial words = s_poly(m, k);
  std::vector<Word> basis;
  for (const auto& [w, c] : words.terms()) basis.push_back(w);
  return basis;  // map order is canonical term order
}

std::vector<Word> default_basis(int m, BasisFilter filter) {
  if (m < 5) throw std::invalid_argument("default_basis requires m >= 5");
  if (filter == BasisFilter::full) return half_degree_basis(m, 4);

  const Parity parity = parity_of(m);
  std::vector<Word> basis;
  if (filter == BasisFilter::v01) {
    for (const auto& t : enumerate_v0(m)) basis.push_back(t.word(parity));
    for (const auto& t : enumerate_v1(m)) basis.push_back(t.word(parity));
  } else {
    // V2: one odd X-run in front for odd m, squares only for even m.
    const int budget = m - 4;
    const int a0 = parity == Parity::odd ? 1 : 0;
    for (int a = a0; a <= budget; a += 2)
      for (int b = 0; a + b <= budget; b += 2) {
        const int c = budget - a - b;
        Word w = Word::run(Letter::X, static_cast<std::size_t>(a));
        w.append(Word::run(Letter::Y, 2));
        w.append(Word::run(Letter::X, static_cast<std::size_t>(b)));
        w.append(Word::run(Letter::Y, 2));
        w.append(Word::run(Letter::X, static_cast<std::size_t>(c)));
        basis.push_back(w);
      }
  }
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  return basis;
}

GramProblem assemble(const Polynomial& target, std::vector<Word> basis) {
  if (basis.empty()) throw std::invalid_argument("assemble requires a nonempty basis");
  {
    auto sorted = basis;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("assemble requires distinct basis words");
  }
  GramProblem prob;
  prob.target = target;
  prob.basis = std::move(basis);
  const int n = static_cast<int>(prob.basis.size());
  std::vector<Word> starred(prob.basis.size());
  for (int i = 0; i < n; ++i) starred[static_cast<std::size_t>(i)] = star(prob.basis[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Word product = starred[static_cast<std::size_t>(i)] * prob.basis[j];
      prob.constraints[CyclicClass::of(product)].support.push_back({i, j});
    }
  for (const auto& [cls, coeff] : class_decomposition(target)) {
    auto& c = prob.constraints[cls];
    c.rhs = coeff;
    if (c.support.empty()) prob.unreachable.push_back(cls);
  }
  return prob;
}

namespace {

// Constraints merged with their reversal classes: for symmetric G the class
// sum of a class and of its star agree automatically, so the pair reduces to
// one equation with transpose-closed support, and the supports of distinct
// groups are disjoint. That makes the affine projection closed-form.
struct ConstraintGroup {
  std::vector<std::pair<int, int>> support;
  double rhs = 0.0;
};

struct MergedConstraints {
  std::vector<ConstraintGroup> groups;
  bool rhs_asymmetric = false;  // rhs(c) != rhs(c*): unsatisfiable by symmetric G
};

MergedConstraints merge_star_pairs(const GramProblem& prob) {
  MergedConstraints out;
  std::map<CyclicClass, const GramConstraint*> lookup;
  for (const auto& [cls, c] : prob.constraints) lookup.emplace(cls, &c);
  std::set<CyclicClass> done;
  for (const auto& [cls, c] : prob.constraints) {
    if (done.count(cls)) continue;
    const CyclicClass mirror = CyclicClass::of(star(cls.canonical));
    ConstraintGroup g;
    g.support = c.support;
    Rational rhs = c.rhs;
    done.insert(cls);
    if (!(mirror == cls)) {
      done.insert(mirror);
      auto it = lookup.find(mirror);
      Rational mirror_rhs = 0;
      if (it != lookup.end()) {
        g.support.insert(g.support.end(), it->second->support.begin(),
                         it->second->support.end());
        mirror_rhs = it->second->rhs;
      }
      if (mirror_rhs != c.rhs) out.rhs_asymmetric = true;
      rhs += mirror_rhs;
    }
    g.rhs = rhs.convert_to<double>();
    if (!g.support.empty()) out.groups.push_back(std::move(g));
  }
  return out;
}

void project_affine(Eigen::MatrixXd& g, const MergedConstraints& merged) {
  for (const auto& grp : merged.groups) {
    double sum = 0.0;
    for (const auto& [i, j] : grp.support) sum += g(i, j);
    const double delta = (grp.rhs - sum) / static_cast<double>(grp.support.size());
    for (const auto& [i, j] : grp.support) g(i, j) += delta;
  }
}

// Per-class constraint view with precomputed double right-hand sides; the
// residual is always measured per class, not per merged group.
struct ClassView {
  std::vector<ConstraintGroup> classes;

  explicit ClassView(const GramProblem& prob) {
    for (const auto& [cls, c] : prob.constraints)
      classes.push_back({c.support, c.rhs.convert_to<double>()});
  }

  double residual(const Eigen::MatrixXd& g) const {
    double worst = 0.0;
    for (const auto& c : classes) {
      double sum = 0.0;
      for (const auto& [i, j] : c.support) sum += g(i, j);
      worst = std::max(worst, std::abs(sum - c.rhs));
    }
    return worst;
  }
};

Eigen::MatrixXd psd_clip(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es) {
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  Eigen::VectorXd clipped = vals.cwiseMax(0.0);
  Eigen::MatrixXd p = vecs * clipped.asDiagonal() * vecs.transpose();
  return ((p + p.transpose()) / 2).eval();
}

}  // namespace

GramSolution solve_feasibility(const GramProblem& prob, const SolveOptions& opts) {
  if (!(opts.eps_psd > 0) || !(opts.eps_aff > 0))
    throw std::invalid_argument("solve_feasibility requires positive tolerances");
  const int n = static_cast<int>(prob.basis.size());
  GramSolution sol;
  sol.basis = prob.basis;
  sol.G = Eigen::MatrixXd::Zero(n, n);

  const MergedConstraints merged = merge_star_pairs(prob);
  const ClassView classes(prob);
  if (prob.trivially_infeasible() || merged.rhs_asymmetric) {
    sol.status = GramStatus::infeasible_gap;
    sol.constraint_residual = classes.residual(sol.G);
    sol.gap = sol.constraint_residual;
    return sol;
  }

  auto post_verify = [&](const Eigen::MatrixXd& g, int iterations) -> GramSolution {
    GramSolution ok = sol;
    ok.G = g;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    ok.min_eigenvalue = es.eigenvalues().minCoeff();
    ok.constraint_residual = classes.residual(g);
    ok.iterations = iterations;
    ok.status = (ok.min_eigenvalue >= -opts.eps_psd && ok.constraint_residual <= opts.eps_aff)
                    ? GramStatus::feasible
                    : GramStatus::unknown;
    return ok;
  };

  Eigen::MatrixXd g;
  if (opts.init_seed == 0) {
    g = Eigen::MatrixXd::Zero(n, n);
  } else {
    g = MatrixAssignment::random_symmetric(n, opts.init_seed).mx;
  }
  project_affine(g, merged);

  Eigen::MatrixXd correction = Eigen::MatrixXd::Zero(n, n);  // stays zero unless Dykstra
  std::deque<double> gaps;
  double dist = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g + correction);
    const double min_eig = es.eigenvalues().minCoeff();

    // g is on the affine set; accept as soon as it is nearly PSD. With the
    // Dykstra correction the decomposition is of g + correction, so this
    // shortcut does not apply.
    if (!opts.dykstra && min_eig >= -opts.eps_psd) {
      GramSolution cand = post_verify(g, it);
      if (cand.status == GramStatus::feasible) return cand;
    }

    Eigen::MatrixXd p = psd_clip(es);
    if (opts.dykstra) correction = (g + correction) - p;

    if (classes.residual(p) <= opts.eps_aff) {
      GramSolution cand = post_verify(p, it);
      if (cand.status == GramStatus::feasible) return cand;
    }

    Eigen::MatrixXd next = p;
    project_affine(next, merged);
    dist = (p - next).norm();

    if (opts.dykstra) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> check(next, Eigen::EigenvaluesOnly);
      if (check.eigenvalues().minCoeff() >= -opts.eps_psd) {
        GramSolution cand = post_verify(next, it);
        if (cand.status == GramStatus::feasible) return cand;
      }
    }

    gaps.push_back(dist);
    if (gaps.size() > 100) {
      const double old = gaps.front();
      gaps.pop_front();
      if (std::abs(dist - old) < 1e-12 * std::max(1.0, dist) && dist > 10 * opts.eps_aff) {
        GramSolution res = post_verify(next, it);
        res.status = GramStatus::infeasible_gap;
        res.gap = dist;
        return res;
      }
    }
    g = next;
  }
  GramSolution res = post_verify(g, opts.max_iter);
  if (res.status != GramStatus::feasible) {
    res.status = GramStatus::unknown;
    res.gap = dist;
  }
  return res;
}

bool rational_psd_check(const RationalMatrix& g) {
  const int n = g.n;
  RationalMatrix a = g;
  for (int k = 0; k < n; ++k) {
    // Symmetric pivoting on the largest remaining diagonal entry.
    int pivot = k;
    for (int i = k; i < n; ++i) {
      if (a.at(i, i) < 0) return false;
      if (a.at(i, i) > a.at(pivot, pivot)) pivot = i;
    }
    if (a.at(pivot, pivot) == 0) {
      // Zero diagonal block: PSD forces the whole block to vanish.
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j)
          if (a.at(i, j) != 0) return false;
      return true;
    }
    if (pivot != k) {
      for (int t = 0; t < n; ++t) std::swap(a.at(k, t), a.at(pivot, t));
      for (int t = 0; t < n; ++t) std::swap(a.at(t, k), a.at(t, pivot));
    }
    const Rational d = a.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Rational f = a.at(i, k) / d;
      if (f == 0) continue;
      for (int j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
    }
    for (int i = k + 1; i < n; ++i) {
      a.at(i, k) = 0;
      a.at(k, i) = 0;
    }
  }
  return true;
}

Rational max_affine_violation(const RationalMatrix& g, const std::vector<Word>& basis,
                              const Polynomial& target) {
  const int n = static_cast<int>(basis.size());
  if (n != g.n) throw std::invalid_argument("basis size does not match matrix size");
  std::map<CyclicClass, Rational> sums;
  std::vector<Word> starred;
  starred.reserve(basis.size());
  for (const Word& b : basis) starred.push_back(star(b));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (g.at(i, j) == 0) continue;
      sums[CyclicClass::of(starred[static_cast<std::size_t>(i)] * basis[j])] += g.at(i, j);
    }
  Rational worst = 0;
  auto consider = [&worst](const Rational& v) {
    Rational av = v < 0 ? Rational(-v) : v;
    if (av > worst) worst = av;
  };
  const auto decomp = class_decomposition(target);
  for (const auto& [cls, rhs] : decomp) {
    auto it = sums.find(cls);
    consider(it == sums.end() ? Rational(-rhs) : Rational(it->second - rhs));
  }
  for (const auto& [cls, sum] : sums) {
    if (decomp.find(cls) == decomp.end()) consider(sum);
  }
  return worst;
}

GramSolution gram_of_certificate(const Certificate& cert) {
  std::set<Word> word_set;
  for (const Polynomial& f : cert.generators)
    for (const auto& [w, c] : f.terms()) word_set.insert(w);
  std::vector<Word> basis(word_set.begin(), word_set.end());
  const int n = static_cast<int>(basis.size());

  RationalMatrix gq(n);
  for (const Polynomial& f : cert.generators) {
    std::vector<Rational> coeffs(static_cast<std::size_t>(n), Rational(0));
    for (int i = 0; i < n; ++i) coeffs[static_cast<std::size_t>(i)] = f.coeff(basis[i]);
    for (int i = 0; i < n; ++i) {
      if (coeffs[static_cast<std::size_t>(i)] == 0) continue;
      for (int j = 0; j < n; ++j)
        gq.at(i, j) += cert.multiplier * coeffs[static_cast<std::size_t>(i)] *
                       coeffs[static_cast<std::size_t>(j)];
    }
  }

  const Polynomial target = substitute_squares(s_poly(cert.m, 4));
  const Rational violation = max_affine_violation(gq, basis, target);
  const bool psd = rational_psd_check(gq);

  GramSolution sol;
  sol.basis = std::move(basis);
  sol.G = gq.to_double();
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sol.G, Eigen::EigenvaluesOnly);
    sol.min_eigenvalue = es.eigenvalues().minCoeff();
  }
  sol.constraint_residual = violation.convert_to<double>();
  sol.exact_arithmetic = true;
  sol.status = (violation == 0 && psd) ? GramStatus::feasible : GramStatus::unknown;
  sol.exact_G = std::move(gq);
  return sol;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = at(i, j).convert_to<double>();
  return m;
}

std::vector<Polynomial> extract_sohs(const GramSolution& sol,
                                     const std::vector<Word>& basis, double tol) {
  if (sol.status != GramStatus::feasible)
    throw std::invalid_argument("extract_sohs requires a feasible Gram solution");
  if (static_cast<int>(basis.size()) != sol.G.rows())
    throw std::invalid_argument("basis size does not match Gram matrix size");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sol.G);
  std::vector<Polynomial> out;
  for (int i = static_cast<int>(es.eigenvalues().size()) - 1; i >= 0; --i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda <= tol) continue;
    const double root = std::sqrt(lambda);
    Polynomial g;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double coeff = root * es.eigenvectors()(static_cast<int>(j), i);
      if (coeff != 0.0) g.add_term(basis[j], Rational(coeff));
    }
    out.push_back(std::move(g));
  }
  return out;
}

double reexpansion_residual(const std::vector<Polynomial>& gens, const Polynomial& target) {
  Polynomial sum;
  for (const Polynomial& g : gens) sum += star(g) * g;
  double worst = 0.0;
  for (const auto& [cls, r] : class_decomposition(sum - target))
    worst = std::max(worst, std::abs(r.convert_to<double>()));
  return worst;
}

std::string GramProblem::to_json() const {
  json cons = json::array();
  for (const auto& [cls, c] : constraints) {
    json support = json::array();
    for (const auto& [i, j] : c.support) support.push_back({i, j});
    cons.push_back({{"class", cls.str()}, {"rhs", to_string(c.rhs)}, {"support", support}});
  }
  json basis_words = json::array();
  for (const Word& w : basis) basis_words.push_back(w.str());
  json un = json::array();
  for (const CyclicClass& cls : unreachable) un.push_back(cls.str());
  json j{{"target", target.str()},
         {"basis", basis_words},
         {"constraints", cons},
         {"unreachable", un}};
  return j.dump();
}

std::string GramSolution::to_json() const {
  json basis_words = json::array();
  for (const Word& w : basis) basis_words.push_back(w.str());
  json entries = json::array();
  for (int i = 0; i < G.rows(); ++i)
    for (int j = 0; j < G.cols(); ++j) entries.push_back(G(i, j));
  json j{{"status", to_string(status)},
         {"n", G.rows()},
         {"G", entries},
         {"min_eigenvalue", min_eigenvalue},
         {"constraint_residual", constraint_residual},
         {"iterations", iterations},
         {"gap", gap},
         {"exact_arithmetic", exact_arithmetic},
         {"basis", basis_words}};
  return j.dump();
}

}  // namespace bmvshs
