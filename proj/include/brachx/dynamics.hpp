#pragma once

#include <memory>
#include <vector>

#include "brachx/decomposition.hpp"
#include "brachx/ode.hpp"

namespace brachx {

// The dynamical vector x = (a, lambda) at one time: Hamiltonian
// coefficients on the adapted A basis and Lagrange multipliers on B.
struct PhaseState {
    std::shared_ptr<const ABDecomposition> dec;
    rvec a;
    rvec lambda;
    double t = 0.0;

    rvec combined() const;
    static PhaseState from_combined(std::shared_ptr<const ABDecomposition> dec, const rvec& x,
                                    double t = 0.0);
    double norm() const { return std::sqrt(a.squaredNorm() + lambda.squaredNorm()); }
    cmat hamiltonian() const { return dec->hamiltonian(a); }
    cmat constraint_op() const { return dec->constraint_op(lambda); }
};

PhaseState make_state(std::shared_ptr<const ABDecomposition> dec, rvec a, rvec lambda,
                      double t = 0.0);

// a_dot_i = i sum_j lambda_j Tr(H [A_i, B_j]),
// lambda_dot_i = i sum_j lambda_j Tr(H [B_i, B_j]),
// evaluated through the precomputed structure-constant slice f'(a,b,k).
void rhs(const PhaseState& state, rvec& da, rvec& dlambda);

struct TrajectoryMonitors {
    std::vector<double> norm_h;  // ||H||_F per sample
    std::vector<double> norm_d;  // ||D||_F per sample
    std::vector<std::vector<double>> f_k;   // F_k = Tr((H+D)^k), k = 2..n, per sample
    std::vector<cmat> angular_momentum;     // U^dag (H+D) U, filled with the unitaries
};

// Time-stamped samples of the flow, the dense interpolant behind them, and
// (optionally) the co-evolved unitaries.
struct Trajectory {
    std::shared_ptr<const ABDecomposition> dec;
    std::vector<double> times;
    std::vector<PhaseState> samples;
    std::vector<cmat> unitaries;            // empty until evolve_unitary
    std::vector<cmat> unitaries_minus_d;    // empty until evolve_minus_D
    TrajectoryMonitors monitors;
    std::shared_ptr<const DenseOdeSolution> dense;

    PhaseState state_at(double t) const;    // via dense output
    cmat h_plus_d_at(double t) const;
    cmat h_at(double t) const;
    cmat d_at(double t) const;
};

// Adaptive RK5(4) integration of the brachistochrone system on
// [state0.t, t_end], sampled on `sample_times` (default: 65 uniform points).
Trajectory integrate(const PhaseState& state0, double t_end, double tol,
                     const std::vector<double>& sample_times = {});

// Solves i dU/dt = H(t) U, U(0) = I with the midpoint-exponential stepper,
// refining substeps until the endpoint is self-consistent to `refine_tol`
// (default: policy().unitary_refine_tol). Fills traj.unitaries and the
// angular-momentum monitor.
void evolve_unitary(Trajectory& traj, double refine_tol = 0.0);

// Solves i dU/dt = -D(t) U, U(0) = I; fills traj.unitaries_minus_d.
void evolve_minus_D(Trajectory& traj, double refine_tol = 0.0);

// ||H(0)||_F; equals the protocol cost under the constant-norm gauge.
double cost(const PhaseState& state0);

}  // namespace brachx
