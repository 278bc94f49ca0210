#pragma once

#include <memory>
#include <vector>

#include "brachx/linalg.hpp"

namespace brachx {

// Ordered trace-orthonormal basis of the traceless Hermitian n x n matrices
// (the generalized Gell-Mann matrices) together with the structure constants
// f_ijk = Tr(commutator(g_i, g_j) g_k).
//
// Canonical ordering ("gm-sym-anti-diag"):
//   1. symmetric off-diagonal pairs (E_jk + E_kj)/sqrt(2), (j,k) lexicographic, j<k
//   2. antisymmetric pairs (-i E_jk + i E_kj)/sqrt(2), same (j,k) order
//   3. diagonal matrices diag(1,..,1,-l,0,..)/sqrt(l(l+1)) for l = 1..n-1
// For n=2 this is (sigma_x, sigma_y, sigma_z)/sqrt(2).
class LieBasis {
  public:
    explicit LieBasis(int n);

    int n() const { return n_; }
    int dim() const { return static_cast<int>(elements_.size()); }  // n^2 - 1
    const std::vector<cmat>& elements() const { return elements_; }
    const cmat& element(int i) const { return elements_.at(i); }

    // f(i,j,k); totally antisymmetric.
    double f(int i, int j, int k) const { return f_[(i * dim() + j) * dim() + k]; }

    // Coefficients of a Hermitian matrix in this basis: c_i = Tr(X g_i).
    rvec coefficients(const cmat& x) const;
    // Reassemble sum_i c_i g_i.
    cmat assemble(const rvec& coeffs) const;

    static const char* ordering_tag() { return "gm-sym-anti-diag"; }

  private:
    int n_;
    std::vector<cmat> elements_;
    std::vector<double> f_;
};

// Shared, lazily built bases (they are immutable).
std::shared_ptr<const LieBasis> gell_mann_basis(int n);

// Dimension of the Lie algebra generated by the given Hermitian matrices
// under repeated commutators (bracket closure with Gram-Schmidt against the
// trace form).
int generated_dimension(const std::vector<cmat>& generators);

}  // namespace brachx
