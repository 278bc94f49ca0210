#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "brachx/errors.hpp"

namespace brachx {

using OdeRhs = std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy)>;

// Dense solution of an adaptive Dormand-Prince 5(4) integration: stores the
// accepted steps and a 4th-order interpolant per step.
class DenseOdeSolution {
  public:
    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }
    // Interpolated state at t (clamped to the integration interval).
    Eigen::VectorXd at(double t) const;
    std::size_t step_count() const { return steps_.size(); }

  private:
    friend DenseOdeSolution integrate_ode(const OdeRhs&, Eigen::VectorXd, double, double, double,
                                          double);
    struct Step {
        double t, h;
        Eigen::VectorXd y0;
        std::array<Eigen::VectorXd, 4> rcont;  // dense coefficients r2..r5
    };
    double t0_ = 0.0, t1_ = 0.0;
    bool forward_ = true;
    std::vector<Step> steps_;
    Eigen::VectorXd y_end_;
};

// Integrates y' = f(t, y) from t0 to t1 (either direction) with mixed
// absolute/relative local error control at `tol`. Throws integration_error
// on step-size underflow.
DenseOdeSolution integrate_ode(const OdeRhs& rhs, Eigen::VectorXd y0, double t0, double t1,
                               double tol, double initial_step = 0.0);

}  // namespace brachx
