#pragma once

#include "bmvshs/verifier.hpp"

namespace bmvshs {

enum class BasisFilter { full, v01, v2 };
std::string to_string(BasisFilter f);
BasisFilter basis_filter_from_string(std::string_view s);

/// All words of length m with deg_Y = k (the half-degree words of the
/// squared target S_{m,k}(X^2, Y^2)), in canonical term order.
std::vector<Word> half_degree_basis(int m, int k);

/// Half-degree word sets for the k = 4 family: the full set, the parity
/// appropriate V0 union V1, or V2.
std::vector<Word> default_basis(int m, BasisFilter filter);

struct GramConstraint {
  Rational rhs;
  /// Ordered index pairs (i, j) with star(basis[i]) * basis[j] in the class.
  std::vector<std::pair<int, int>> support;
};

struct GramProblem {
  Polynomial target;
  std::vector<Word> basis;
  std::map<CyclicClass, GramConstraint> constraints;
  /// Target classes no basis product can reach; nonempty means infeasible.
  std::vector<CyclicClass> unreachable;

  bool trivially_infeasible() const { return !unreachable.empty(); }

  std::string to_json() const;
};

/// Groups every ordered product star(basis[i]) * basis[j] by cyclic class
/// and attaches the per-class coefficient sums of the target as right-hand
/// sides. Throws std::invalid_argument on an empty or duplicated basis.
GramProblem assemble(const Polynomial& target, std::vector<Word> basis);

enum class GramStatus { feasible, infeasible_gap, unknown };
std::string to_string(GramStatus s);

/// Dense symmetric matrix with exact rational entries, row-major.
struct RationalMatrix {
  int n = 0;
  std::vector<Rational> a;

  explicit RationalMatrix(int size = 0)
      : n(size), a(static_cast<std::size_t>(size) * static_cast<std::size_t>(size)) {}
  Rational& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const Rational& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  Eigen::MatrixXd to_double() const;
};

struct GramSolution {
  Eigen::MatrixXd G;
  double min_eigenvalue = 0.0;
  double constraint_residual = 0.0;
  GramStatus status = GramStatus::unknown;
  int iterations = 0;
  /// Final distance between the PSD and affine projection points.
  double gap = 0.0;
  /// Set by gram_of_certificate: the verdict came from exact arithmetic.
  bool exact_arithmetic = false;
  std::optional<RationalMatrix> exact_G;
  std::vector<Word> basis;

  std::string to_json() const;
};

struct SolveOptions {
  double eps_psd = 1e-9;
  double eps_aff = 1e-8;
  int max_iter = 50000;
  bool dykstra = false;
  /// 0 starts from the zero matrix; anything else seeds a random symmetric
  /// starting point (for independent runs).
  std::uint64_t init_seed = 0;
};

/// Alternating projections between the constraint subspace and the PSD
/// cone. Reports feasible only after re-verifying the returned matrix;
/// infeasible_gap when the inter-set distance stabilizes (relative change
/// below 1e-12 over 100 iterations) above 10 * eps_aff; unknown otherwise.
GramSolution solve_feasibility(const GramProblem& prob, const SolveOptions& opts = {});

/// The exact Gram point of a constructed certificate over the basis of its
/// generator words: G = multiplier * sum_k c_k c_k^T. Affine constraints
/// are checked exactly against substitute_squares(s_poly(m, 4)) and
/// positive semidefiniteness by rational LDL^T.
GramSolution gram_of_certificate(const Certificate& cert);

/// Exact PSD test: LDL^T with symmetric pivoting; true iff all pivots are
/// nonnegative (zero-diagonal blocks must vanish entirely).
bool rational_psd_check(const RationalMatrix& g);

/// Largest absolute violation over classes of
/// sum_{(i,j)} G_ij [star(b_i) b_j in class] = class coefficient of target.
Rational max_affine_violation(const RationalMatrix& g, const std::vector<Word>& basis,
                              const Polynomial& target);

/// Eigendecomposition of a feasible G: one polynomial sqrt(lambda) u per
/// eigenvalue above tol, coefficients over the basis words. Throws
/// std::invalid_argument when the solution is not feasible.
std::vector<Polynomial> extract_sohs(const GramSolution& sol,
                                     const std::vector<Word>& basis, double tol);

/// Max per-class absolute residual of sum star(g) g against the target.
double reexpansion_residual(const std::vector<Polynomial>& gens, const Polynomial& target);

}  // namespace bmvshs
