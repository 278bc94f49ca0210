#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "brachx/errors.hpp"
#include "brachx/policy.hpp"

namespace brachx {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;

double hermiticity_defect(const cmat& m);
double unitarity_defect(const cmat& m);

// Traceless Hermitian n x n matrix (an observable). Validates on
// construction; use HermitianMatrix::unchecked for trusted hot paths.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(const cmat& m, bool require_traceless = true);
    static HermitianMatrix unchecked(cmat m);

    int n() const { return static_cast<int>(mat_.rows()); }
    const cmat& mat() const { return mat_; }

  private:
    HermitianMatrix() = default;
    cmat mat_;
};

class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(const cmat& m);
    static UnitaryMatrix unchecked(cmat m);

    int n() const { return static_cast<int>(mat_.rows()); }
    const cmat& mat() const { return mat_; }

  private:
    UnitaryMatrix() = default;
    cmat mat_;
};

// Tr(X Y); real for Hermitian inputs.
double trace_inner(const HermitianMatrix& x, const HermitianMatrix& y);
double trace_inner_raw(const cmat& x, const cmat& y);

// -i[X, Y]. Hermitian and traceless for Hermitian inputs. With this sign
// f_ijk = Tr(commutator(g_i,g_j) g_k) satisfies [e_i,e_j] = sum_k f_ijk e_k
// for e_k = -i g_k, and f_123 = +sqrt(2) on the sqrt(2)-scaled Pauli basis.
HermitianMatrix commutator(const HermitianMatrix& x, const HermitianMatrix& y);
cmat commutator_raw(const cmat& x, const cmat& y);

// exp(-i s X) by Hermitian eigendecomposition.
UnitaryMatrix expm(const HermitianMatrix& x, double s);
cmat expm_raw(const cmat& hermitian, double s);

// Principal log of a unitary: U = exp(-i (traceless + phase*I)), all
// eigenphases of the generator in (-pi, pi]. Throws branch_cut_error when
// an eigenphase sits within policy().branch_tol of the cut.
struct PrincipalLog {
    HermitianMatrix traceless;
    double phase;  // removed mean eigenphase
};
PrincipalLog logm_principal(const UnitaryMatrix& u);

// ||Log(U)||_F = sqrt(sum of squared principal eigenphases). Returns
// branch_hit=true instead of throwing when the cut is hit.
struct LogNorm {
    double value;
    bool branch_hit;
};
LogNorm unitary_log_norm(const cmat& u);

// exp(t C) for real antisymmetric C, via the Hermitian eigendecomposition
// of iC; result is orthogonal to machine precision.
rmat expm_skew(const rmat& c, double t);

// JSON (de)serialization of dense complex matrices:
// {"n": n, "re": row-major, "im": row-major}.
std::string matrix_to_json(const cmat& m);
cmat matrix_from_json(const std::string& text);

}  // namespace brachx
