#pragma once

#include <functional>

#include <Eigen/Dense>

namespace brachx {

struct SimplexResult {
    Eigen::VectorXd x;
    double fx = 0.0;
    int evaluations = 0;
};

// Derivative-free Nelder-Mead simplex with standard coefficients
// (reflection 1, expansion 2, contraction 0.5, shrink 0.5). Stops when the
// evaluation budget is exhausted or the simplex collapses.
SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& x0, double step, int max_evaluations);

// Finite-difference gradient descent with backtracking line search; offered
// as an alternative local optimizer for the BVP, not the default.
SimplexResult fd_gradient_descent(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const Eigen::VectorXd& x0, int max_evaluations,
                                  double fd_step = 1e-6);

}  // namespace brachx
