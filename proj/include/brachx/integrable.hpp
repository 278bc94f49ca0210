#pragma once

#include <array>
#include <functional>

#include "brachx/dynamics.hpp"

namespace brachx {

// ---- Type I: constant Lagrange multipliers ----------------------------

// a(t) = exp(C t) a(0) with the antisymmetric generator C built from the
// structure constants and the (constant) multipliers. Requires a
// decomposition whose B subspace is closed under the bracket.
rvec type1_a_of_t(const PhaseState& state0, double t);

// U(t) = exp(i D(0) t) exp(-i (H(0)+D(0)) t).
cmat type1_unitary(const PhaseState& state0, double t);

// ---- Type II: b = l_perp ----------------------------------------------

struct Type2Reduction {
    rvec l_a_const;  // projection of H+D onto l_a: integrals of motion
    std::function<cmat(double)> l_perp_of_t;  // conjugation by exp(-i L_a t)
    std::function<cmat(double)> s_of_t;       // ordered-product time-ordered exponential
};

Type2Reduction type2_reduce(const PhaseState& state0);

// ---- Appendix su(3) linearizable system --------------------------------

// y ordered (a1, a2, a3, a4, l, m1, m2, m3); the explicit linear system
// with l and m3 constant and (m1, m2) rotating at frequency sqrt(3) l.
using Su3Vector = Eigen::Matrix<double, 8, 1>;

Su3Vector su3_example_rhs(const Su3Vector& y);
Su3Vector su3_example_solution(const Su3Vector& y0, double t, double refine_tol = 1e-9);

// The appendix parametrization as matrices.
cmat su3_appendix_h(const Su3Vector& y);
cmat su3_appendix_d(const Su3Vector& y);

// The appendix Type II decomposition: su(3), k = 2, a single-corner p-hat,
// q = Q. a1 is the corner entry of p-hat (unit by default).
CentralizerSplit su3_appendix_split(double a1 = 1.0);

// Linear map taking appendix coordinates y to the combined (a, lambda)
// vector of `dec` (built from su3_appendix_split) such that appendix
// trajectories map onto brachistochrone trajectories.
rmat su3_alignment(const ABDecomposition& dec);

// ---- Euler-Arnold top and the theorem's polynomial ----------------------

// Coefficients (ascending powers) of phi(z) = z^2/2 + psi(z) prod (z-a_i)^2 / 2
// with psi chosen so phi'(a_i) = a_i for all i, phi''(a_i) = 0 for i <= q and
// 1 for i > q. Spectrum must be clustered (strictly decreasing) already.
std::vector<double> build_phi(const std::vector<double>& a_spectrum, int q);

double poly_eval(const std::vector<double>& coeffs, double z);
std::vector<double> poly_derivative(const std::vector<double>& coeffs);

// Lax data a-hat = eps p-hat, b-hat = phi'(a-hat), and the linear map omega
// on l = l_a + l_perp (matrix over the adapted l basis: l_a basis in split
// order [components..., rest...], then l_perp).
struct LaxMatrices {
    cmat a_hat;
    cmat b_hat;
    rmat omega_spec;
    std::vector<double> phi_coeffs;
    double epsilon = 0.0;
    // true when the eps->0 limit provably reproduces the brachistochrone
    // flow (q in {0, Q}, or no leftover block in l_a)
    bool exact_limit = false;

    std::vector<cmat> l_basis;  // adapted l basis (l_a part then l_perp part)
    std::vector<cmat> p_basis;  // canonical p elements
    int dim_l_a = 0;
    int q = 0;
};

LaxMatrices build_lax(const CentralizerSplit& cs, double epsilon);

// t-hat = l-hat + s-hat split into l and p coefficients (on the lax bases).
struct TLSplit {
    rvec l;
    rvec s;
};

TLSplit tl_from_matrix(const LaxMatrices& lax, const cmat& h_plus_d);
cmat tl_to_matrix(const LaxMatrices& lax, const TLSplit& tl);

// Hermitian Lax matrix L(lambda) = a-hat lambda + l-hat + s-hat / lambda.
cmat lax_matrix(const LaxMatrices& lax, const TLSplit& tl, double lambda);

struct EulerArnoldTrajectory {
    std::vector<double> times;
    std::vector<TLSplit> samples;
};

// Integrates l' = comm(l, omega(l)) + comm(s, b), s' = comm(s, omega(l)).
EulerArnoldTrajectory euler_arnold_flow(const TLSplit& tl0, const LaxMatrices& lax, double t_end,
                                        double tol, const std::vector<double>& sample_times = {});

// ---- Conjugation invariance (pseudo-Cartan Type I) ----------------------

struct ConjugationCheckConfig {
    int n_starts = 24;
    int budget = 4000;
    std::uint64_t seed = 1;
    double start_norm = 1.0;
    int threads = 1;
};

// Solves the boundary-value problem for U_d and exp(iX) U_d exp(-iX)
// (X in B) with the Type I algebraic solver; returns both best costs.
std::pair<double, double> conjugation_invariance_check(const cmat& u_d, const cmat& x_in_b,
                                                       const ABDecomposition& dec,
                                                       const ConjugationCheckConfig& config);

}  // namespace brachx
