#include "brachx/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace brachx {

SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& x0, double step, int max_evaluations) {
    const int n = static_cast<int>(x0.size());
    SimplexResult result;
    result.x = x0;

    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        return f(x);
    };

    if (max_evaluations <= 0) {
        result.fx = f(x0);
        result.evaluations = 0;
        return result;
    }

    std::vector<Eigen::VectorXd> pts(n + 1, x0);
    std::vector<double> fv(n + 1);
    fv[0] = eval(pts[0]);
    for (int i = 0; i < n && evals < max_evaluations; ++i) {
        pts[i + 1](i) += step;
        fv[i + 1] = eval(pts[i + 1]);
    }
    for (int i = evals; i <= n; ++i) fv[i] = fv[0];  // budget ran out mid-init

    std::vector<int> order(n + 1);
    std::iota(order.begin(), order.end(), 0);
    auto sort_simplex = [&] {
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    };

    constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    while (evals < max_evaluations) {
        sort_simplex();
        const int best = order[0], worst = order[n], second_worst = order[n - 1];

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += pts[i];
        centroid /= n;

        double spread = 0.0;
        for (int i = 0; i <= n; ++i) spread = std::max(spread, (pts[i] - pts[best]).norm());
        if (spread < 1e-12 * std::max(1.0, pts[best].norm())) break;

        Eigen::VectorXd xr = centroid + alpha * (centroid - pts[worst]);
        double fr = eval(xr);
        if (fr < fv[best]) {
            if (evals < max_evaluations) {
                Eigen::VectorXd xe = centroid + gamma * (centroid - pts[worst]);
                double fe = eval(xe);
                if (fe < fr) {
                    pts[worst] = xe;
                    fv[worst] = fe;
                } else {
                    pts[worst] = xr;
                    fv[worst] = fr;
                }
            } else {
                pts[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            pts[worst] = xr;
            fv[worst] = fr;
        } else if (evals < max_evaluations) {
            Eigen::VectorXd xc = centroid + rho * (pts[worst] - centroid);
            double fc = eval(xc);
            if (fc < fv[worst]) {
                pts[worst] = xc;
                fv[worst] = fc;
            } else {
                for (int i = 0; i <= n && evals < max_evaluations; ++i) {
                    if (i == best) continue;
                    pts[i] = pts[best] + sigma * (pts[i] - pts[best]);
                    fv[i] = eval(pts[i]);
                }
            }
        }
    }

    sort_simplex();
    result.x = pts[order[0]];
    result.fx = fv[order[0]];
    result.evaluations = evals;
    return result;
}

SimplexResult fd_gradient_descent(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const Eigen::VectorXd& x0, int max_evaluations, double fd_step) {
    const int n = static_cast<int>(x0.size());
    SimplexResult result;
    result.x = x0;
    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        return f(x);
    };
    Eigen::VectorXd x = x0;
    double fx = eval(x);
    while (evals + n + 1 < max_evaluations) {
        Eigen::VectorXd grad(n);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd xp = x;
            xp(i) += fd_step;
            grad(i) = (eval(xp) - fx) / fd_step;
        }
        const double gnorm = grad.norm();
        if (gnorm < 1e-12) break;
        double alpha = 1.0 / std::max(1.0, gnorm);
        bool improved = false;
        while (evals < max_evaluations && alpha > 1e-14) {
            Eigen::VectorXd cand = x - alpha * grad;
            double fc = eval(cand);
            if (fc < fx) {
                x = cand;
                fx = fc;
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!improved) break;
    }
    result.x = x;
    result.fx = fx;
    result.evaluations = evals;
    return result;
}

}  // namespace brachx
