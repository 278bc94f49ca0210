#include "brachx/ode.hpp"

#include <algorithm>
#include <cmath>

namespace brachx {

namespace {

// Dormand-Prince RK5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// e_i = b_i - b*_i (error weights against the embedded 4th-order solution)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output coefficients (Hairer-Norsett-Wanner variant of DOPRI5).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

}  // namespace

Eigen::VectorXd DenseOdeSolution::at(double t) const {
    if (steps_.empty()) return y_end_;
    const double lo = std::min(t0_, t1_), hi = std::max(t0_, t1_);
    t = std::clamp(t, lo, hi);
    // binary search for the step containing t
    std::size_t a = 0, b = steps_.size() - 1;
    auto contains = [&](const Step& s, double tt) {
        return forward_ ? (tt <= s.t + s.h || &s == &steps_.back())
                        : (tt >= s.t + s.h || &s == &steps_.back());
    };
    while (a < b) {
        std::size_t mid = (a + b) / 2;
        const Step& s = steps_[mid];
        bool before_end = forward_ ? (t <= s.t + s.h) : (t >= s.t + s.h);
        if (before_end)
            b = mid;
        else
            a = mid + 1;
    }
    const Step& s = steps_[a];
    (void)contains;
    const double theta = (t - s.t) / s.h;
    const double th1 = 1.0 - theta;
    return s.y0 + theta * (s.rcont[0] +
                           th1 * (s.rcont[1] + theta * (s.rcont[2] + th1 * s.rcont[3])));
}

DenseOdeSolution integrate_ode(const OdeRhs& rhs, Eigen::VectorXd y0, double t0, double t1,
                               double tol, double initial_step) {
    if (tol <= 0.0) throw std::invalid_argument("integrate_ode: tol must be positive");
    DenseOdeSolution sol;
    sol.t0_ = t0;
    sol.t1_ = t1;
    sol.forward_ = t1 >= t0;
    if (t0 == t1) {
        sol.y_end_ = y0;
        return sol;
    }
    const int dim = static_cast<int>(y0.size());
    const double dir = sol.forward_ ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);

    Eigen::VectorXd k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
    Eigen::VectorXd ytmp(dim), y5(dim), yerr(dim);
    rhs(t0, y0, k1);

    double h = initial_step > 0.0 ? initial_step : span / 100.0;
    h = std::min(h, span);

    double t = t0;
    Eigen::VectorXd y = std::move(y0);
    const double h_min = span * 1e-14;
    const double safety = 0.9, min_scale = 0.2, max_scale = 5.0;
    int consecutive_rejects = 0;

    while (dir * (t1 - t) > 0.0) {
        h = std::min(h, std::abs(t1 - t));
        const double hs = dir * h;

        ytmp = y + hs * (a21 * k1);
        rhs(t + c2 * hs, ytmp, k2);
        ytmp = y + hs * (a31 * k1 + a32 * k2);
        rhs(t + c3 * hs, ytmp, k3);
        ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * hs, ytmp, k4);
        ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * hs, ytmp, k5);
        ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + hs, ytmp, k6);
        y5 = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + hs, y5, k7);  // FSAL
        yerr = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double scale = tol + tol * std::max(std::abs(y(i)), std::abs(y5(i)));
            const double r = yerr(i) / scale;
            err += r * r;
        }
        err = std::sqrt(err / dim);

        if (err <= 1.0) {
            DenseOdeSolution::Step step;
            step.t = t;
            step.h = hs;
            step.y0 = y;
            // continuous 4th-order extension (Hairer's rcont2..rcont5)
            Eigen::VectorXd ydiff = y5 - y;
            Eigen::VectorXd bspl = hs * k1 - ydiff;
            step.rcont[0] = ydiff;
            step.rcont[1] = bspl;
            step.rcont[2] = ydiff - hs * k7 - bspl;
            step.rcont[3] = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            sol.steps_.push_back(std::move(step));

            t += hs;
            y.swap(y5);
            k1.swap(k7);
            consecutive_rejects = 0;
            double scale = err == 0.0 ? max_scale
                                      : std::clamp(safety * std::pow(err, -0.2), min_scale, max_scale);
            h *= scale;
        } else {
            ++consecutive_rejects;
            h *= std::clamp(safety * std::pow(err, -0.2), min_scale, 1.0);
            if (h < h_min || consecutive_rejects > 60)
                throw integration_error("integrate_ode: step size underflow", t);
        }
    }
    sol.y_end_ = y;
    return sol;
}

}  // namespace brachx
