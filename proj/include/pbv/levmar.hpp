// Small dense Levenberg-Marquardt solver for the few-parameter curve fits
// used by the spectrum and estimator modules. Numeric central-difference
// Jacobian, Marquardt diagonal scaling, optional parameter projection for
// box-style constraints.

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace pbv {

struct LevMarOptions {
  int max_iterations = 200;
  double ftol = 1e-14;  // relative chi2 improvement considered converged
  double xtol = 1e-12;  // relative step size considered converged
  double initial_lambda = 1e-3;
};

struct LevMarResult {
  Eigen::VectorXd params;
  Eigen::MatrixXd covariance;  // (J^T W J)^-1, unscaled
  double chi2 = 0.0;           // weighted residual sum of squares
  int dof = 0;                 // points - parameters
  int iterations = 0;
  bool converged = false;
};

using ModelFn = std::function<double(double x, const Eigen::VectorXd& p)>;
using ProjectFn = std::function<void(Eigen::VectorXd& p)>;

// Minimizes sum_i w_i (model(x_i, p) - y_i)^2 starting from p0. Weights may
// be empty (all ones). `project` is applied to every trial point.
LevMarResult levmar_fit(const ModelFn& model, const std::vector<double>& x,
                        const std::vector<double>& y,
                        const std::vector<double>& w, Eigen::VectorXd p0,
                        const ProjectFn& project = {},
                        const LevMarOptions& options = {});

}  // namespace pbv
