#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "brachx/lie_basis.hpp"

namespace brachx {

// Orthogonal split of the observable space into allowed Hamiltonians (A)
// and constrained directions (B). States are stored in an adapted
// orthonormal basis; `rotation` column j holds the canonical Gell-Mann
// coefficients of adapted element j (identity for generic splits).
class ABDecomposition {
  public:
    ABDecomposition(std::shared_ptr<const LieBasis> basis, rmat rotation,
                    std::vector<int> a_indices, std::vector<int> b_indices,
                    std::string kind = "generic");

    int n() const { return basis_->n(); }
    int dim() const { return basis_->dim(); }
    int dim_a() const { return static_cast<int>(a_indices_.size()); }
    int dim_b() const { return static_cast<int>(b_indices_.size()); }

    const LieBasis& basis() const { return *basis_; }
    std::shared_ptr<const LieBasis> basis_ptr() const { return basis_; }
    const rmat& rotation() const { return rotation_; }
    const std::vector<int>& a_indices() const { return a_indices_; }
    const std::vector<int>& b_indices() const { return b_indices_; }
    const std::string& kind() const { return kind_; }

    // Adapted basis elements as matrices.
    const cmat& a_element(int i) const { return a_elements_[i]; }
    const cmat& b_element(int j) const { return b_elements_[j]; }

    cmat hamiltonian(const rvec& a) const;     // sum a_i A_i
    cmat constraint_op(const rvec& lambda) const;  // D = sum lambda_j B_j

    // Coefficients of X on the adapted A / B subspaces.
    rvec project_a_coeffs(const cmat& x) const;
    rvec project_b_coeffs(const cmat& x) const;

    // Orthogonal projection onto span(B) under the trace form.
    cmat project_B(const cmat& x) const;
    cmat project_A(const cmat& x) const;

    // f'(a over A, b over B, k over full adapted basis), where the adapted
    // index order is [A..., B...]. Used by the quadratic vector field and
    // the Type I generator.
    double f_abk(int a, int b, int k) const {
        return f_abk_[(static_cast<size_t>(a) * dim_b() + b) * dim() + k];
    }

    // True iff B is closed under the bracket within policy().closure_tol
    // (the Type I situation: constant Lagrange multipliers).
    bool b_is_subalgebra() const { return b_closed_; }

    std::string to_json() const;
    static ABDecomposition from_json(const std::string& text);

    // Extra fields carried by the theorem-built decompositions.
    std::optional<int> k_block;
    std::optional<int> q_components;
    std::optional<cmat> a_element_matrix;  // the unit-eps p-hat

  private:
    std::shared_ptr<const LieBasis> basis_;
    rmat rotation_;
    std::vector<int> a_indices_, b_indices_;
    std::string kind_;
    std::vector<cmat> a_elements_, b_elements_;
    std::vector<double> f_abk_;
    bool b_closed_ = false;
};

// make_generic_ab: B = complement of the given canonical-index set.
ABDecomposition make_generic_ab(std::shared_ptr<const LieBasis> basis,
                                const std::vector<int>& a_indices);

// Pseudo-Cartan split g = l + p for the block split C^n = C^k + C^(n-k):
// l = block-diagonal traceless (su(k) + su(n-k) + u(1)), p = off-diagonal.
// Both index sets refer to canonical Gell-Mann elements. The three closure
// relations [l,l]cl, [p,p]cl, [p,l]cp are verified numerically on build.
struct PseudoCartanSplit {
    std::shared_ptr<const LieBasis> basis;
    int k = 0;
    std::vector<int> l_indices;
    std::vector<int> p_indices;

    int n() const { return basis->n(); }
    cmat project_l(const cmat& x) const;
    cmat project_p(const cmat& x) const;
};

PseudoCartanSplit make_pseudo_cartan(int n, int k);

// Centralizer split of l with respect to a fixed element p_hat of p:
// l = l_a + l_perp with l_a = {x in l : [x, p_hat] = 0}. l_a further splits
// into per-eigenvalue components W_i (traceless, supported on the i-th
// eigenspace of p_hat, descending eigenvalue order) plus a leftover block
// that the per-eigenspace family does not cover.
struct CentralizerSplit {
    PseudoCartanSplit parent;
    cmat a_element;                    // p_hat (unit epsilon)
    std::vector<cmat> l_a_basis;       // orthonormal basis of l_a
    std::vector<cmat> l_perp_basis;    // orthonormal basis of l_perp
    std::vector<std::vector<cmat>> components;  // W_i per distinct eigenvalue
    std::vector<cmat> rest;            // l_a minus the per-eigenspace parts
    std::vector<double> eigenvalues;   // clustered Spec(p_hat), descending
    std::vector<int> multiplicities;
    std::vector<cmat> eigenprojectors;
    int q = 0;
    bool clustering_ambiguous = false;  // two eigenvalues within 10x cluster_tol

    int Q() const { return static_cast<int>(eigenvalues.size()); }
};

CentralizerSplit centralizer_split(const PseudoCartanSplit& split, const cmat& p_hat, int q);

// AB decomposition of the theorem: a = p + W_1..W_q (+ leftover iff q = Q),
// b = l_perp + W_(q+1)..W_Q (+ leftover iff q < Q). q = 0 gives Type I
// (b = l), q = Q gives Type II (b = l_perp).
ABDecomposition build_type_ab(const CentralizerSplit& cs);

// True iff the A subspace generates the full su(n).
bool verify_controllability(const ABDecomposition& dec);

}  // namespace brachx
