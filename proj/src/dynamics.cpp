#include "brachx/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace brachx {

rvec PhaseState::combined() const {
    rvec x(a.size() + lambda.size());
    x.head(a.size()) = a;
    x.tail(lambda.size()) = lambda;
    return x;
}

PhaseState PhaseState::from_combined(std::shared_ptr<const ABDecomposition> dec, const rvec& x,
                                     double t) {
    const int na = dec->dim_a(), nb = dec->dim_b();
    if (x.size() != na + nb)
        throw std::invalid_argument("PhaseState::from_combined: size mismatch");
    PhaseState s;
    s.dec = std::move(dec);
    s.a = x.head(na);
    s.lambda = x.tail(nb);
    s.t = t;
    return s;
}

PhaseState make_state(std::shared_ptr<const ABDecomposition> dec, rvec a, rvec lambda, double t) {
    if (a.size() != dec->dim_a() || lambda.size() != dec->dim_b())
        throw std::invalid_argument("make_state: coefficient sizes do not match decomposition");
    PhaseState s;
    s.dec = std::move(dec);
    s.a = std::move(a);
    s.lambda = std::move(lambda);
    s.t = t;
    return s;
}

namespace {

// x_dot_k = sum_{a in A, b in B} f'(a,b,k) x_a x_b over the adapted order
// [A..., B...]; equivalent to Eq. (11) componentwise and to
// d(H+D)/dt = -i[H,D] in matrix form.
void rhs_combined(const ABDecomposition& dec, const rvec& x, rvec& dx) {
    const int na = dec.dim_a(), nb = dec.dim_b(), d = na + nb;
    dx.setZero(d);
    for (int a = 0; a < na; ++a) {
        const double xa = x(a);
        if (xa == 0.0) continue;
        for (int b = 0; b < nb; ++b) {
            const double w = xa * x(na + b);
            if (w == 0.0) continue;
            for (int k = 0; k < d; ++k) {
                const double f = dec.f_abk(a, b, k);
                if (f != 0.0) dx(k) += f * w;
            }
        }
    }
}

std::vector<double> default_grid(double t0, double t1, int points = 65) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = t0 + (t1 - t0) * static_cast<double>(i) / (points - 1);
    return g;
}

}  // namespace

void rhs(const PhaseState& state, rvec& da, rvec& dlambda) {
    rvec dx;
    rhs_combined(*state.dec, state.combined(), dx);
    da = dx.head(state.dec->dim_a());
    dlambda = dx.tail(state.dec->dim_b());
}

PhaseState Trajectory::state_at(double t) const {
    if (!dense) throw std::logic_error("Trajectory::state_at: no dense solution stored");
    return PhaseState::from_combined(dec, dense->at(t), t);
}

cmat Trajectory::h_at(double t) const { return state_at(t).hamiltonian(); }
cmat Trajectory::d_at(double t) const { return state_at(t).constraint_op(); }
cmat Trajectory::h_plus_d_at(double t) const {
    PhaseState s = state_at(t);
    return s.hamiltonian() + s.constraint_op();
}

Trajectory integrate(const PhaseState& state0, double t_end, double tol,
                     const std::vector<double>& sample_times) {
    if (tol <= 0.0) throw std::invalid_argument("integrate: tol must be positive");
    const auto& dec = state0.dec;
    auto f = [&dec](double, const rvec& y, rvec& dy) { rhs_combined(*dec, y, dy); };

    auto dense = std::make_shared<DenseOdeSolution>(
        integrate_ode(f, state0.combined(), state0.t, t_end, tol));

    Trajectory traj;
    traj.dec = dec;
    traj.dense = dense;
    traj.times = sample_times.empty() ? default_grid(state0.t, t_end) : sample_times;

    const int n = dec->n();
    for (double t : traj.times) {
        PhaseState s = PhaseState::from_combined(dec, dense->at(t), t);
        cmat h = s.hamiltonian();
        cmat d_op = s.constraint_op();
        cmat hd = h + d_op;
        traj.monitors.norm_h.push_back(h.norm());
        traj.monitors.norm_d.push_back(d_op.norm());
        std::vector<double> fk;
        cmat power = hd;
        for (int k = 2; k <= n; ++k) {
            power = power * hd;
            fk.push_back(power.trace().real());
        }
        traj.monitors.f_k.push_back(std::move(fk));
        traj.samples.push_back(std::move(s));
    }
    return traj;
}

namespace {

// Ordered product of midpoint exponentials for i dU/dt = G(t) U, on the
// trajectory's sample grid with 2^r substeps per interval, doubling r until
// the endpoint moves by less than refine_tol.
std::vector<cmat> geometric_evolve(const Trajectory& traj,
                                   const std::function<cmat(double)>& generator,
                                   double refine_tol) {
    const int n = traj.dec->n();
    const auto& times = traj.times;
    std::vector<cmat> out;

    cmat u_end_prev;
    for (int substeps = 1; substeps <= (1 << 22); substeps *= 2) {
        out.assign(1, cmat::Identity(n, n));
        cmat u = cmat::Identity(n, n);
        for (size_t i = 0; i + 1 < times.size(); ++i) {
            const double dt = (times[i + 1] - times[i]) / substeps;
            for (int s = 0; s < substeps; ++s) {
                const double t_mid = times[i] + (s + 0.5) * dt;
                u = expm_raw(generator(t_mid), dt) * u;
            }
            out.push_back(u);
        }
        if (u_end_prev.size() != 0 && (u - u_end_prev).norm() < refine_tol) break;
        u_end_prev = u;
    }
    return out;
}

}  // namespace

void evolve_unitary(Trajectory& traj, double refine_tol) {
    if (traj.samples.empty()) throw std::invalid_argument("evolve_unitary: empty trajectory");
    if (refine_tol <= 0.0) refine_tol = policy().unitary_refine_tol;
    traj.unitaries =
        geometric_evolve(traj, [&](double t) { return traj.h_at(t); }, refine_tol);
    traj.monitors.angular_momentum.clear();
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const cmat& u = traj.unitaries[i];
        traj.monitors.angular_momentum.push_back(u.adjoint() * traj.h_plus_d_at(traj.times[i]) * u);
    }
}

void evolve_minus_D(Trajectory& traj, double refine_tol) {
    if (traj.samples.empty()) throw std::invalid_argument("evolve_minus_D: empty trajectory");
    if (refine_tol <= 0.0) refine_tol = policy().unitary_refine_tol;
    traj.unitaries_minus_d =
        geometric_evolve(traj, [&](double t) { return (-traj.d_at(t)).eval(); }, refine_tol);
}

double cost(const PhaseState& state0) { return state0.hamiltonian().norm(); }

}  // namespace brachx
