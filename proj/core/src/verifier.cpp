#include "bmvshs/verifier.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace bmvshs {

using nlohmann::json;

namespace {

double next_unit(std::mt19937_64& rng) {
  // 53 random bits -> [0, 1); avoids distribution classes so that seeded
  // streams are identical across standard libraries.
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

double spectral_norm(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

MatrixAssignment::MatrixAssignment(Eigen::MatrixXd x, Eigen::MatrixXd y)
    : mx(std::move(x)), my(std::move(y)) {
  if (mx.rows() != mx.cols() || my.rows() != my.cols() || mx.rows() != my.rows())
    throw std::invalid_argument("matrix assignment requires square matrices of equal size");
}

MatrixAssignment MatrixAssignment::random_symmetric(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&rng](int n) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double v = 2.0 * next_unit(rng) - 1.0;
        m(i, j) = v;
        m(j, i) = v;
      }
    return m;
  };
  Eigen::MatrixXd x = draw(dim);
  Eigen::MatrixXd y = draw(dim);
  return MatrixAssignment(std::move(x), std::move(y));
}

Polynomial expand(const Certificate& cert) { return cert.expansion(); }

Eigen::MatrixXd eval(const Polynomial& p, const MatrixAssignment& a) {
  const int n = a.dim();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  if (p.is_zero()) return acc;

  // Terms are sorted, so consecutive words share prefixes; keep a stack of
  // prefix products and rebuild only past the common prefix.
  std::vector<Eigen::MatrixXd> prefix;
  prefix.push_back(Eigen::MatrixXd::Identity(n, n));
  Word prev;
  for (const auto& [w, c] : p.terms()) {
    std::size_t common = 0;
    const std::size_t limit = std::min({w.size(), prev.size(), prefix.size() - 1});
    while (common < limit && w.at(common) == prev.at(common)) ++common;
    prefix.resize(common + 1);
    for (std::size_t i = common; i < w.size(); ++i) {
      const Eigen::MatrixXd& letter = w.at(i) == Letter::X ? a.mx : a.my;
      prefix.push_back(prefix.back() * letter);
    }
    acc += c.convert_to<double>() * prefix.back();
    prev = w;
  }
  return acc;
}

VerificationReport verify_symbolic(const Certificate& cert) {
  VerificationReport rep;
  rep.mode = "symbolic";
  rep.m = cert.m;
  rep.k = 4;
  const Polynomial target = substitute_squares(s_poly(cert.m, 4));
  const auto residuals = class_decomposition(cert.expansion() - target);
  rep.passed = residuals.empty();
  for (const auto& [cls, r] : residuals) {
    rep.failing_classes.push_back(cls.str() + " residual=" + to_string(r));
    rep.worst_residual =
        std::max(rep.worst_residual, std::abs(r.convert_to<double>()));
  }
  return rep;
}

namespace {

struct TrialOutcome {
  bool passed = true;
  double worst = 0.0;
  std::vector<std::string> failures;
};

TrialOutcome run_trials(int m, int dim, std::uint64_t seed, int lo, int hi,
                        const Polynomial& smk, const Polynomial* cert_expansion,
                        const Polynomial* target_sub, const SpotcheckOptions& opts) {
  TrialOutcome out;
  for (int t = lo; t < hi; ++t) {
    const auto base =
        MatrixAssignment::random_symmetric(dim, mix_seed(seed, static_cast<std::uint64_t>(t)));
    Eigen::MatrixXd a = base.mx * base.mx;
    Eigen::MatrixXd b = base.my * base.my;
    a = ((a + a.transpose()) / 2).eval();
    b = ((b + b.transpose()) / 2).eval();
    const double scale = std::pow(spectral_norm(a) + spectral_norm(b), m);
    const MatrixAssignment squares(a, b);

    const double tr = eval(smk, squares).trace();
    const double viol = -tr / scale;
    out.worst = std::max(out.worst, viol);
    if (!(tr >= -opts.tol_nonneg * scale)) {
      out.passed = false;
      out.failures.push_back("trial=" + std::to_string(t) +
                             " trace_violation=" + std::to_string(viol));
    }

    if (cert_expansion != nullptr) {
      const double lhs = eval(*cert_expansion, base).trace();
      const double rhs = eval(*target_sub, base).trace();
      const double res = std::abs(lhs - rhs) / scale;
      out.worst = std::max(out.worst, res);
      if (!(res <= opts.tol_identity)) {
        out.passed = false;
        out.failures.push_back("trial=" + std::to_string(t) +
                               " identity_residual=" + std::to_string(res));
      }
    }
  }
  return out;
}

}  // namespace

VerificationReport numeric_spotcheck(int m, int k, int trials, int dim,
                                     std::uint64_t seed, const SpotcheckOptions& opts) {
  if (k < 0 || k > m) throw std::out_of_range("numeric_spotcheck requires 0 <= k <= m");
  if (dim < 1) throw std::invalid_argument("numeric_spotcheck requires dim >= 1");

  VerificationReport rep;
  rep.mode = "numeric";
  rep.m = m;
  rep.k = k;
  rep.seed = seed;
  rep.trials = trials;
  rep.passed = true;

  const Polynomial smk = s_poly(m, k);
  Polynomial cert_expansion, target_sub;
  const bool check_identity = k == 4 && m >= 5;
  if (check_identity) {
    cert_expansion = build(m).expansion();
    target_sub = substitute_squares(s_poly(m, 4));
  }

  const int jobs = std::max(1, opts.jobs);
  std::vector<TrialOutcome> parts;
  if (jobs == 1 || trials < 2 * jobs) {
    parts.push_back(run_trials(m, dim, seed, 0, trials, smk,
                               check_identity ? &cert_expansion : nullptr,
                               check_identity ? &target_sub : nullptr, opts));
  } else {
    parts.resize(static_cast<std::size_t>(jobs));
    std::vector<std::thread> workers;
    const int chunk = (trials + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
      const int lo = j * chunk;
      const int hi = std::min(trials, lo + chunk);
      workers.emplace_back([&, j, lo, hi] {
        parts[static_cast<std::size_t>(j)] =
            run_trials(m, dim, seed, lo, hi, smk,
                       check_identity ? &cert_expansion : nullptr,
                       check_identity ? &target_sub : nullptr, opts);
      });
    }
    for (auto& w : workers) w.join();
  }
  for (const auto& part : parts) {
    rep.passed = rep.passed && part.passed;
    rep.worst_residual = std::max(rep.worst_residual, part.worst);
    rep.failing_classes.insert(rep.failing_classes.end(), part.failures.begin(),
                               part.failures.end());
  }
  return rep;
}

std::string VerificationReport::to_json() const {
  json j{{"mode", mode},          {"m", m},
         {"k", k},                {"passed", passed},
         {"seed", seed},          {"trials", trials},
         {"worst_residual", worst_residual},
         {"failing_classes", failing_classes}};
  return j.dump();
}

}  // namespace bmvshs
