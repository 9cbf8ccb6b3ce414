#include "pbv/levmar.hpp"

#include <cmath>
#include <stdexcept>

namespace pbv {

namespace {

double chi2_of(const ModelFn& model, const std::vector<double>& x,
               const std::vector<double>& y, const std::vector<double>& w,
               const Eigen::VectorXd& p) {
  double chi2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = model(x[i], p) - y[i];
    const double wi = w.empty() ? 1.0 : w[i];
    chi2 += wi * r * r;
  }
  return chi2;
}

}  // namespace

LevMarResult levmar_fit(const ModelFn& model, const std::vector<double>& x,
                        const std::vector<double>& y,
                        const std::vector<double>& w, Eigen::VectorXd p0,
                        const ProjectFn& project, const LevMarOptions& options) {
  if (x.size() != y.size())
    throw std::invalid_argument("levmar_fit: x/y size mismatch");
  if (!w.empty() && w.size() != x.size())
    throw std::invalid_argument("levmar_fit: weight size mismatch");
  const auto n = static_cast<Eigen::Index>(x.size());
  const Eigen::Index np = p0.size();
  if (n < np) throw std::invalid_argument("levmar_fit: under-determined fit");

  if (project) project(p0);
  Eigen::VectorXd p = p0;
  double chi2 = chi2_of(model, x, y, w, p);
  double lambda = options.initial_lambda;

  Eigen::MatrixXd jac(n, np);
  Eigen::VectorXd resid(n);
  LevMarResult result;
  result.dof = static_cast<int>(n - np);

  int iter = 0;
  bool converged = false;
  for (; iter < options.max_iterations && !converged; ++iter) {
    // Weighted residuals and numeric Jacobian at the current point.
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sw = std::sqrt(w.empty() ? 1.0 : w[i]);
      resid(i) = sw * (model(x[i], p) - y[i]);
    }
    for (Eigen::Index j = 0; j < np; ++j) {
      const double delta = 1e-7 * std::max(std::abs(p(j)), 1e-2);
      Eigen::VectorXd ph = p, pl = p;
      ph(j) += delta;
      pl(j) -= delta;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double sw = std::sqrt(w.empty() ? 1.0 : w[i]);
        jac(i, j) = sw * (model(x[i], ph) - model(x[i], pl)) / (2.0 * delta);
      }
    }

    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * resid;
    const double diag_floor = 1e-14 * jtj.diagonal().maxCoeff() + 1e-300;

    bool accepted = false;
    for (int attempt = 0; attempt < 32; ++attempt) {
      Eigen::MatrixXd a = jtj;
      for (Eigen::Index j = 0; j < np; ++j)
        a(j, j) += lambda * std::max(jtj(j, j), diag_floor);
      const Eigen::VectorXd step = a.ldlt().solve(-jtr);
      Eigen::VectorXd trial = p + step;
      if (project) project(trial);
      const double trial_chi2 = chi2_of(model, x, y, w, trial);
      if (std::isfinite(trial_chi2) && trial_chi2 <= chi2) {
        const double dchi = chi2 - trial_chi2;
        const double step_norm = (trial - p).norm();
        p = trial;
        chi2 = trial_chi2;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        if (dchi <= options.ftol * std::max(chi2, 1e-300) ||
            step_norm <= options.xtol * (p.norm() + options.xtol))
          converged = true;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e14) break;
    }
    if (!accepted) {
      // No downhill step found at any damping: treat as a (local) solution.
      converged = true;
    }
  }

  // Covariance from the final Jacobian.
  for (Eigen::Index j = 0; j < np; ++j) {
    const double delta = 1e-7 * std::max(std::abs(p(j)), 1e-2);
    Eigen::VectorXd ph = p, pl = p;
    ph(j) += delta;
    pl(j) -= delta;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sw = std::sqrt(w.empty() ? 1.0 : w[i]);
      jac(i, j) = sw * (model(x[i], ph) - model(x[i], pl)) / (2.0 * delta);
    }
  }
  const Eigen::MatrixXd jtj = jac.transpose() * jac;
  result.covariance =
      jtj.completeOrthogonalDecomposition().pseudoInverse();
  result.params = p;
  result.chi2 = chi2;
  result.iterations = iter;
  result.converged = converged;
  return result;
}

}  // namespace pbv
