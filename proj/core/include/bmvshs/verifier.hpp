#pragma once

#include <Eigen/Dense>

#include "bmvshs/certificate.hpp"

namespace bmvshs {

/// A symmetric matrix pair to evaluate at (X -> mx, Y -> my).
struct MatrixAssignment {
  Eigen::MatrixXd mx;
  Eigen::MatrixXd my;

  MatrixAssignment(Eigen::MatrixXd x, Eigen::MatrixXd y);

  int dim() const { return static_cast<int>(mx.rows()); }

  /// Entries uniform in [-1, 1], mirrored across the diagonal. The stream
  /// of draws is fixed by the seed, independent of platform.
  static MatrixAssignment random_symmetric(int dim, std::uint64_t seed);
};

Polynomial expand(const Certificate& cert);

/// Algebra homomorphism X -> mx, Y -> my, 1 -> identity.
Eigen::MatrixXd eval(const Polynomial& p, const MatrixAssignment& a);

struct VerificationReport {
  std::string mode;  // "symbolic" or "numeric"
  int m = 0;
  int k = -1;
  bool passed = false;
  std::uint64_t seed = 0;
  int trials = 0;
  double worst_residual = 0.0;
  std::vector<std::string> failing_classes;

  std::string to_json() const;
};

/// Exact check: expansion(cert) cyclically equivalent to
/// substitute_squares(s_poly(m, 4)). Any nonzero class residuals are listed.
VerificationReport verify_symbolic(const Certificate& cert);

struct SpotcheckOptions {
  /// Trace nonnegativity threshold, relative to (|A| + |B|)^m.
  double tol_nonneg = 1e-9;
  /// Certificate-trace identity threshold (k = 4 only), same scale.
  double tol_identity = 1e-8;
  int jobs = 1;
};

/// Draws symmetric C, D, sets A = C^2, B = D^2, and checks
/// trace(S_{m,k}(A, B)) >= -tol * (|A| + |B|)^m per trial. For k = 4 the
/// certificate trace identity is checked as well.
VerificationReport numeric_spotcheck(int m, int k, int trials, int dim,
                                     std::uint64_t seed,
                                     const SpotcheckOptions& opts = {});

}  // namespace bmvshs
