#include "brachx/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace brachx {

namespace {

std::vector<cmat> adapted_elements(const LieBasis& basis, const rmat& rotation,
                                   const std::vector<int>& indices) {
    std::vector<cmat> out;
    out.reserve(indices.size());
    for (int idx : indices) {
        cmat m = cmat::Zero(basis.n(), basis.n());
        for (int c = 0; c < basis.dim(); ++c)
            if (rotation(c, idx) != 0.0) m += rotation(c, idx) * basis.element(c);
        out.push_back(m);
    }
    return out;
}

}  // namespace

ABDecomposition::ABDecomposition(std::shared_ptr<const LieBasis> basis, rmat rotation,
                                 std::vector<int> a_indices, std::vector<int> b_indices,
                                 std::string kind)
    : basis_(std::move(basis)),
      rotation_(std::move(rotation)),
      a_indices_(std::move(a_indices)),
      b_indices_(std::move(b_indices)),
      kind_(std::move(kind)) {
    const int d = basis_->dim();
    if (rotation_.rows() != d || rotation_.cols() != d)
        throw std::invalid_argument("ABDecomposition: rotation must be dim x dim");
    if ((rotation_.transpose() * rotation_ - rmat::Identity(d, d)).norm() > 1e-10)
        throw std::invalid_argument("ABDecomposition: rotation is not orthogonal");
    if (a_indices_.empty())
        throw std::invalid_argument("ABDecomposition: A subspace must be non-empty");
    std::set<int> seen;
    for (int i : a_indices_) {
        if (i < 0 || i >= d) throw std::invalid_argument("ABDecomposition: index out of range");
        seen.insert(i);
    }
    for (int i : b_indices_) {
        if (i < 0 || i >= d) throw std::invalid_argument("ABDecomposition: index out of range");
        seen.insert(i);
    }
    if (static_cast<int>(seen.size()) != d ||
        static_cast<int>(a_indices_.size() + b_indices_.size()) != d)
        throw std::invalid_argument("ABDecomposition: A and B must partition all indices");

    a_elements_ = adapted_elements(*basis_, rotation_, a_indices_);
    b_elements_ = adapted_elements(*basis_, rotation_, b_indices_);

    // f' over the adapted order [A..., B...]; only the (A,B,*) slice is needed.
    const int na = dim_a(), nb = dim_b();
    f_abk_.assign(static_cast<size_t>(na) * nb * d, 0.0);
    std::vector<const cmat*> adapted(d);
    for (int i = 0; i < na; ++i) adapted[i] = &a_elements_[i];
    for (int j = 0; j < nb; ++j) adapted[na + j] = &b_elements_[j];
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
            cmat c = commutator_raw(a_elements_[a], b_elements_[b]);
            for (int k = 0; k < d; ++k) {
                double v = trace_inner_raw(c, *adapted[k]);
                if (std::abs(v) < 1e-13) v = 0.0;
                f_abk_[(static_cast<size_t>(a) * nb + b) * d + k] = v;
            }
        }

    b_closed_ = true;
    for (int i = 0; i < nb && b_closed_; ++i)
        for (int j = i + 1; j < nb && b_closed_; ++j) {
            cmat c = commutator_raw(b_elements_[i], b_elements_[j]);
            if (project_A(c).norm() > policy().closure_tol) b_closed_ = false;
        }
}

cmat ABDecomposition::hamiltonian(const rvec& a) const {
    if (a.size() != dim_a()) throw std::invalid_argument("hamiltonian: coefficient size mismatch");
    cmat m = cmat::Zero(n(), n());
    for (int i = 0; i < dim_a(); ++i) m += a(i) * a_elements_[i];
    return m;
}

cmat ABDecomposition::constraint_op(const rvec& lambda) const {
    if (lambda.size() != dim_b())
        throw std::invalid_argument("constraint_op: coefficient size mismatch");
    cmat m = cmat::Zero(n(), n());
    for (int j = 0; j < dim_b(); ++j) m += lambda(j) * b_elements_[j];
    return m;
}

rvec ABDecomposition::project_a_coeffs(const cmat& x) const {
    rvec c(dim_a());
    for (int i = 0; i < dim_a(); ++i) c(i) = trace_inner_raw(x, a_elements_[i]);
    return c;
}

rvec ABDecomposition::project_b_coeffs(const cmat& x) const {
    rvec c(dim_b());
    for (int j = 0; j < dim_b(); ++j) c(j) = trace_inner_raw(x, b_elements_[j]);
    return c;
}

cmat ABDecomposition::project_B(const cmat& x) const {
    if (x.rows() != n() || x.cols() != n())
        throw std::invalid_argument("project_B: dimension mismatch");
    cmat out = cmat::Zero(n(), n());
    for (const auto& b : b_elements_) out += trace_inner_raw(x, b) * b;
    return out;
}

cmat ABDecomposition::project_A(const cmat& x) const {
    if (x.rows() != n() || x.cols() != n())
        throw std::invalid_argument("project_A: dimension mismatch");
    cmat out = cmat::Zero(n(), n());
    for (const auto& a : a_elements_) out += trace_inner_raw(x, a) * a;
    return out;
}

std::string ABDecomposition::to_json() const {
    nlohmann::json j;
    j["n"] = n();
    j["kind"] = kind_;
    j["ordering"] = LieBasis::ordering_tag();
    if (k_block) j["k"] = *k_block;
    if (q_components) j["q"] = *q_components;
    if (a_element_matrix) j["a_element"] = nlohmann::json::parse(matrix_to_json(*a_element_matrix));
    j["a_indices"] = a_indices_;
    j["b_indices"] = b_indices_;
    std::vector<double> rot(rotation_.data(), rotation_.data() + rotation_.size());
    j["basis_rotation"] = rot;  // column-major
    return j.dump();
}

ABDecomposition ABDecomposition::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const int n = j.at("n").get<int>();
    auto basis = gell_mann_basis(n);
    const int d = basis->dim();
    auto rot_data = j.at("basis_rotation").get<std::vector<double>>();
    if (static_cast<int>(rot_data.size()) != d * d)
        throw std::invalid_argument("ABDecomposition::from_json: rotation size mismatch");
    rmat rotation = Eigen::Map<const rmat>(rot_data.data(), d, d);
    ABDecomposition dec(basis, rotation, j.at("a_indices").get<std::vector<int>>(),
                        j.at("b_indices").get<std::vector<int>>(),
                        j.at("kind").get<std::string>());
    if (j.contains("k")) dec.k_block = j["k"].get<int>();
    if (j.contains("q")) dec.q_components = j["q"].get<int>();
    if (j.contains("a_element")) dec.a_element_matrix = matrix_from_json(j["a_element"].dump());
    return dec;
}

ABDecomposition make_generic_ab(std::shared_ptr<const LieBasis> basis,
                                const std::vector<int>& a_indices) {
    if (a_indices.empty()) throw std::invalid_argument("make_generic_ab: empty A index set");
    const int d = basis->dim();
    std::set<int> a_set(a_indices.begin(), a_indices.end());
    if (static_cast<int>(a_set.size()) != static_cast<int>(a_indices.size()))
        throw std::invalid_argument("make_generic_ab: duplicate indices");
    for (int i : a_indices)
        if (i < 0 || i >= d) throw std::invalid_argument("make_generic_ab: index out of range");
    std::vector<int> b_indices;
    for (int i = 0; i < d; ++i)
        if (!a_set.count(i)) b_indices.push_back(i);
    return ABDecomposition(std::move(basis), rmat::Identity(d, d),
                           a_indices, b_indices, "generic");
}

cmat PseudoCartanSplit::project_l(const cmat& x) const {
    cmat out = cmat::Zero(n(), n());
    for (int i : l_indices) out += trace_inner_raw(x, basis->element(i)) * basis->element(i);
    return out;
}

cmat PseudoCartanSplit::project_p(const cmat& x) const {
    cmat out = cmat::Zero(n(), n());
    for (int i : p_indices) out += trace_inner_raw(x, basis->element(i)) * basis->element(i);
    return out;
}

PseudoCartanSplit make_pseudo_cartan(int n, int k) {
    if (k < 1 || k >= n) throw std::invalid_argument("make_pseudo_cartan: need 1 <= k < n");
    PseudoCartanSplit split;
    split.basis = gell_mann_basis(n);
    split.k = k;
    // Canonical ordering: off-diagonal pairs come first (symmetric then
    // antisymmetric, (j,m) lexicographic), then diagonals. A pair element
    // crosses the block boundary iff j < k <= m; diagonals are always in l.
    int idx = 0;
    for (int pass = 0; pass < 2; ++pass)
        for (int j = 0; j < n; ++j)
            for (int m = j + 1; m < n; ++m, ++idx) {
                if (j < k && m >= k)
                    split.p_indices.push_back(idx);
                else
                    split.l_indices.push_back(idx);
            }
    for (int l = 1; l < n; ++l, ++idx) split.l_indices.push_back(idx);

    // Closure relations, verified numerically before returning.
    const auto& basis = *split.basis;
    auto p_residual = [&](const cmat& x) { return split.project_p(x).norm(); };
    auto l_residual = [&](const cmat& x) { return split.project_l(x).norm(); };
    const double tol = policy().closure_tol;
    for (int i : split.l_indices)
        for (int j : split.l_indices)
            if (i < j && p_residual(commutator_raw(basis.element(i), basis.element(j))) > tol)
                throw std::runtime_error("make_pseudo_cartan: [l,l] not in l");
    for (int i : split.p_indices)
        for (int j : split.p_indices)
            if (i < j && p_residual(commutator_raw(basis.element(i), basis.element(j))) > tol)
                throw std::runtime_error("make_pseudo_cartan: [p,p] not in l");
    for (int i : split.p_indices)
        for (int j : split.l_indices)
            if (l_residual(commutator_raw(basis.element(i), basis.element(j))) > tol)
                throw std::runtime_error("make_pseudo_cartan: [p,l] not in p");
    return split;
}

CentralizerSplit centralizer_split(const PseudoCartanSplit& split, const cmat& p_hat, int q) {
    const int n = split.n();
    if (p_hat.rows() != n || p_hat.cols() != n)
        throw std::invalid_argument("centralizer_split: p_hat dimension mismatch");
    if ((p_hat - split.project_p(p_hat)).norm() > policy().closure_tol)
        throw std::invalid_argument("centralizer_split: p_hat does not lie in the p subspace");

    CentralizerSplit cs;
    cs.parent = split;
    cs.a_element = 0.5 * (p_hat + p_hat.adjoint().eval());

    // Kernel of ad_{p_hat} restricted to l: columns of K are the commutators
    // of p_hat with the l basis elements, expanded over the p basis
    // ([p, l] lies in p).
    const int dl = static_cast<int>(split.l_indices.size());
    const int dp = static_cast<int>(split.p_indices.size());
    rmat K(dp, dl);
    for (int c = 0; c < dl; ++c) {
        cmat com = commutator_raw(cs.a_element, split.basis->element(split.l_indices[c]));
        for (int r = 0; r < dp; ++r)
            K(r, c) = trace_inner_raw(com, split.basis->element(split.p_indices[r]));
    }
    Eigen::JacobiSVD<rmat> svd(K, Eigen::ComputeFullV);
    const double sv_tol = policy().rank_tol * std::max(1.0, svd.singularValues().size() ? svd.singularValues()(0) : 1.0);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > sv_tol) ++rank;

    auto l_combo = [&](const rvec& coeffs) {
        cmat m = cmat::Zero(n, n);
        for (int c = 0; c < dl; ++c) m += coeffs(c) * split.basis->element(split.l_indices[c]);
        return m;
    };
    for (int c = rank; c < dl; ++c) cs.l_a_basis.push_back(l_combo(svd.matrixV().col(c)));
    for (int c = 0; c < rank; ++c) cs.l_perp_basis.push_back(l_combo(svd.matrixV().col(c)));

    // Clustered spectrum of p_hat, descending.
    Eigen::SelfAdjointEigenSolver<cmat> es(cs.a_element);
    std::vector<double> evals(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return evals[a] > evals[b]; });

    const double ctol = policy().cluster_tol;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && evals[order[i]] - evals[order[j + 1]] < ctol) ++j;
        double mean = 0.0;
        cmat proj = cmat::Zero(n, n);
        for (int t = i; t <= j; ++t) {
            mean += evals[order[t]];
            proj += es.eigenvectors().col(order[t]) * es.eigenvectors().col(order[t]).adjoint();
        }
        cs.eigenvalues.push_back(mean / (j - i + 1));
        cs.multiplicities.push_back(j - i + 1);
        cs.eigenprojectors.push_back(proj);
        i = j + 1;
    }
    for (size_t a = 0; a + 1 < cs.eigenvalues.size(); ++a)
        if (cs.eigenvalues[a] - cs.eigenvalues[a + 1] < 10.0 * ctol) cs.clustering_ambiguous = true;

    if (q < 0 || q > cs.Q())
        throw std::invalid_argument("centralizer_split: q must lie in [0, Q]");
    cs.q = q;

    // Per-eigenspace components W_i = {X in l_a : X = P_i X P_i, Tr X = 0},
    // found as the null space of X -> X - traceless(P_i X P_i) inside l_a.
    std::vector<cmat> assigned;
    auto project_out = [&](cmat x, const std::vector<cmat>& set) {
        for (const auto& u : set) x -= trace_inner_raw(x, u) * u;
        return x;
    };
    const int m_la = static_cast<int>(cs.l_a_basis.size());
    const auto& full_basis = *split.basis;
    for (int comp = 0; comp < cs.Q(); ++comp) {
        std::vector<cmat> w;
        if (m_la > 0) {
            const cmat& P = cs.eigenprojectors[comp];
            const double d_i = cs.multiplicities[comp];
            rmat R(full_basis.dim(), m_la);
            for (int c = 0; c < m_la; ++c) {
                const cmat& x = cs.l_a_basis[c];
                cmat blk = P * x * P;
                blk -= (blk.trace() / d_i) * P;
                R.col(c) = full_basis.coefficients(x - blk);
            }
            Eigen::JacobiSVD<rmat> rsvd(R, Eigen::ComputeFullV);
            for (int c = 0; c < m_la; ++c) {
                if (c < rsvd.singularValues().size() && rsvd.singularValues()(c) > policy().rank_tol)
                    continue;
                cmat y = cmat::Zero(n, n);
                for (int t = 0; t < m_la; ++t) y += rsvd.matrixV()(t, c) * cs.l_a_basis[t];
                y = project_out(y, w);
                if (y.norm() > 1e-8) w.push_back(y / y.norm());
            }
        }
        for (const auto& x : w) assigned.push_back(x);
        cs.components.push_back(std::move(w));
    }
    // Leftover: l_a minus all per-eigenspace parts.
    for (const auto& x : cs.l_a_basis) {
        cmat y = project_out(x, assigned);
        y = project_out(y, cs.rest);
        if (y.norm() > 1e-8) cs.rest.push_back(y / y.norm());
    }

    for (const auto& x : cs.l_a_basis)
        if (commutator_raw(cs.a_element, x).norm() > policy().closure_tol)
            throw std::runtime_error("centralizer_split: centralizer element fails to commute");
    return cs;
}

ABDecomposition build_type_ab(const CentralizerSplit& cs) {
    const auto& basis = cs.parent.basis;
    const int d = basis->dim();
    const int n = cs.parent.n();

    // Adapted elements: p block, then the A-side of l_a, then the B-side,
    // then l_perp. Columns of the rotation hold canonical coefficients.
    std::vector<cmat> a_mats, b_mats;
    for (int i : cs.parent.p_indices) a_mats.push_back(basis->element(i));
    for (int comp = 0; comp < cs.Q(); ++comp)
        for (const auto& w : cs.components[comp])
            (comp < cs.q ? a_mats : b_mats).push_back(w);
    for (const auto& r : cs.rest) (cs.q == cs.Q() ? a_mats : b_mats).push_back(r);
    for (const auto& y : cs.l_perp_basis) b_mats.push_back(y);

    if (static_cast<int>(a_mats.size() + b_mats.size()) != d)
        throw std::runtime_error("build_type_ab: adapted basis does not span");

    rmat rotation(d, d);
    std::vector<int> a_idx, b_idx;
    int col = 0;
    for (const auto& m : a_mats) {
        rotation.col(col) = basis->coefficients(m);
        a_idx.push_back(col++);
    }
    for (const auto& m : b_mats) {
        rotation.col(col) = basis->coefficients(m);
        b_idx.push_back(col++);
    }

    std::string kind = cs.q == 0 ? "type1" : (cs.q == cs.Q() ? "type2" : "theorem_mixed");
    ABDecomposition dec(basis, rotation, a_idx, b_idx, kind);
    dec.k_block = cs.parent.k;
    dec.q_components = cs.q;
    dec.a_element_matrix = cs.a_element;
    return dec;
}

bool verify_controllability(const ABDecomposition& dec) {
    std::vector<cmat> gens;
    for (int i = 0; i < dec.dim_a(); ++i) gens.push_back(dec.a_element(i));
    return generated_dimension(gens) == dec.dim();
}

}  // namespace brachx
