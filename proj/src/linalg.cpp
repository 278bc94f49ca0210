#include "brachx/linalg.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

namespace brachx {

double hermiticity_defect(const cmat& m) { return (m - m.adjoint()).norm(); }

double unitarity_defect(const cmat& m) {
    return (m * m.adjoint() - cmat::Identity(m.rows(), m.cols())).norm();
}

HermitianMatrix::HermitianMatrix(const cmat& m, bool require_traceless) {
    if (m.rows() != m.cols() || m.rows() < 2)
        throw std::invalid_argument("HermitianMatrix: need square matrix with n >= 2");
    if (hermiticity_defect(m) > policy().algebraic_tol * std::max(1.0, m.norm()))
        throw std::invalid_argument("HermitianMatrix: input is not Hermitian");
    if (require_traceless && std::abs(m.trace()) > policy().algebraic_tol * std::max(1.0, m.norm()))
        throw std::invalid_argument("HermitianMatrix: input is not traceless");
    mat_ = 0.5 * (m + m.adjoint());  // exact Hermitian symmetrization
}

HermitianMatrix HermitianMatrix::unchecked(cmat m) {
    HermitianMatrix h;
    h.mat_ = std::move(m);
    return h;
}

UnitaryMatrix::UnitaryMatrix(const cmat& m) {
    if (m.rows() != m.cols() || m.rows() < 2)
        throw std::invalid_argument("UnitaryMatrix: need square matrix with n >= 2");
    if (unitarity_defect(m) > policy().unitarity_tol)
        throw std::invalid_argument("UnitaryMatrix: input is not unitary");
    if (std::abs(std::abs(m.determinant()) - 1.0) > policy().unitarity_tol)
        throw std::invalid_argument("UnitaryMatrix: |det| != 1");
    mat_ = m;
}

UnitaryMatrix UnitaryMatrix::unchecked(cmat m) {
    UnitaryMatrix u;
    u.mat_ = std::move(m);
    return u;
}

double trace_inner_raw(const cmat& x, const cmat& y) {
    return (x * y).trace().real();
}

double trace_inner(const HermitianMatrix& x, const HermitianMatrix& y) {
    if (x.n() != y.n()) throw std::invalid_argument("trace_inner: dimension mismatch");
    return trace_inner_raw(x.mat(), y.mat());
}

cmat commutator_raw(const cmat& x, const cmat& y) {
    return cplx(0.0, -1.0) * (x * y - y * x);
}

HermitianMatrix commutator(const HermitianMatrix& x, const HermitianMatrix& y) {
    if (x.n() != y.n()) throw std::invalid_argument("commutator: dimension mismatch");
    cmat c = commutator_raw(x.mat(), y.mat());
    return HermitianMatrix::unchecked(0.5 * (c + c.adjoint().eval()));
}

cmat expm_raw(const cmat& hermitian, double s) {
    Eigen::SelfAdjointEigenSolver<cmat> es(hermitian);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    Eigen::VectorXcd ph(vals.size());
    for (int k = 0; k < vals.size(); ++k)
        ph(k) = std::polar(1.0, -s * vals(k));
    return vecs * ph.asDiagonal() * vecs.adjoint();
}

UnitaryMatrix expm(const HermitianMatrix& x, double s) {
    if (hermiticity_defect(x.mat()) > policy().algebraic_tol * std::max(1.0, x.mat().norm()))
        throw std::invalid_argument("expm: input is not Hermitian");
    return UnitaryMatrix::unchecked(expm_raw(x.mat(), s));
}

namespace {

// Eigenphases theta_k with U = Q diag(exp(-i theta)) Q^dag, via complex Schur
// (orthonormal Q even at degeneracies; T is numerically diagonal for normal U).
struct UnitaryEig {
    Eigen::VectorXd phases;
    cmat q;
};

UnitaryEig unitary_eig(const cmat& u) {
    Eigen::ComplexSchur<cmat> schur(u);
    const cmat& t = schur.matrixT();
    UnitaryEig out;
    out.q = schur.matrixU();
    out.phases.resize(u.rows());
    for (int k = 0; k < u.rows(); ++k) {
        cplx lam = t(k, k);
        // U = exp(-iH): eigenvalue exp(-i theta) -> theta = -arg(lambda)
        out.phases(k) = -std::atan2(lam.imag(), lam.real());
    }
    return out;
}

bool near_branch_cut(const Eigen::VectorXd& phases, double tol) {
    for (int k = 0; k < phases.size(); ++k)
        if (std::numbers::pi - std::abs(phases(k)) < tol) return true;
    return false;
}

}  // namespace

PrincipalLog logm_principal(const UnitaryMatrix& u) {
    UnitaryEig eig = unitary_eig(u.mat());
    if (near_branch_cut(eig.phases, policy().branch_tol))
        throw branch_cut_error("logm_principal: eigenphase within tolerance of the branch cut at pi");
    const int n = u.n();
    double mean = eig.phases.sum() / n;
    cmat h = eig.q * (eig.phases.array() - mean).matrix().asDiagonal().toDenseMatrix().cast<cplx>() * eig.q.adjoint();
    h = 0.5 * (h + h.adjoint().eval());
    return PrincipalLog{HermitianMatrix::unchecked(std::move(h)), mean};
}

LogNorm unitary_log_norm(const cmat& u) {
    UnitaryEig eig = unitary_eig(u);
    if (near_branch_cut(eig.phases, policy().branch_tol))
        return LogNorm{0.0, true};
    return LogNorm{eig.phases.norm(), false};
}

rmat expm_skew(const rmat& c, double t) {
    cmat ic = cplx(0.0, 1.0) * c.cast<cplx>();
    return expm_raw(ic, t).real();  // exp(-i t (iC)) = exp(tC)
}

std::string matrix_to_json(const cmat& m) {
    nlohmann::json j;
    j["n"] = m.rows();
    std::vector<double> re, im;
    re.reserve(m.size());
    im.reserve(m.size());
    for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < m.cols(); ++k) {
            re.push_back(m(i, k).real());
            im.push_back(m(i, k).imag());
        }
    j["re"] = re;
    j["im"] = im;
    return j.dump();
}

cmat matrix_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const int n = j.at("n").get<int>();
    auto re = j.at("re").get<std::vector<double>>();
    auto im = j.at("im").get<std::vector<double>>();
    if (static_cast<int>(re.size()) != n * n || static_cast<int>(im.size()) != n * n)
        throw std::invalid_argument("matrix_from_json: re/im size mismatch");
    cmat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            m(i, k) = cplx(re[i * n + k], im[i * n + k]);
    return m;
}

}  // namespace brachx
