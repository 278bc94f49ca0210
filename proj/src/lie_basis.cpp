#include "brachx/lie_basis.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace brachx {

LieBasis::LieBasis(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("LieBasis: dimension must be >= 2");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            cmat m = cmat::Zero(n, n);
            m(j, k) = inv_sqrt2;
            m(k, j) = inv_sqrt2;
            elements_.push_back(m);
        }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            cmat m = cmat::Zero(n, n);
            m(j, k) = cplx(0.0, -inv_sqrt2);
            m(k, j) = cplx(0.0, inv_sqrt2);
            elements_.push_back(m);
        }
    for (int l = 1; l < n; ++l) {
        cmat m = cmat::Zero(n, n);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int j = 0; j < l; ++j) m(j, j) = norm;
        m(l, l) = -static_cast<double>(l) * norm;
        elements_.push_back(m);
    }

    const int d = dim();
    f_.assign(static_cast<size_t>(d) * d * d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            cmat c = commutator_raw(elements_[i], elements_[j]);
            for (int k = 0; k < d; ++k) {
                double v = trace_inner_raw(c, elements_[k]);
                if (std::abs(v) < 1e-14) v = 0.0;
                f_[(static_cast<size_t>(i) * d + j) * d + k] = v;
                f_[(static_cast<size_t>(j) * d + i) * d + k] = -v;
            }
        }
}

rvec LieBasis::coefficients(const cmat& x) const {
    rvec c(dim());
    for (int i = 0; i < dim(); ++i) c(i) = trace_inner_raw(x, elements_[i]);
    return c;
}

cmat LieBasis::assemble(const rvec& coeffs) const {
    if (coeffs.size() != dim()) throw std::invalid_argument("LieBasis::assemble: size mismatch");
    cmat m = cmat::Zero(n_, n_);
    for (int i = 0; i < dim(); ++i) m += coeffs(i) * elements_[i];
    return m;
}

std::shared_ptr<const LieBasis> gell_mann_basis(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const LieBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto basis = std::make_shared<const LieBasis>(n);
    cache[n] = basis;
    return basis;
}

int generated_dimension(const std::vector<cmat>& generators) {
    if (generators.empty()) throw std::invalid_argument("generated_dimension: empty set");
    const int n = static_cast<int>(generators.front().rows());
    for (const auto& g : generators)
        if (g.rows() != n || g.cols() != n)
            throw std::invalid_argument("generated_dimension: dimension mismatch");

    auto basis = gell_mann_basis(n);
    const int d = basis->dim();

    // Span tracked as orthonormal coefficient vectors under the trace form.
    std::vector<rvec> span;
    auto add = [&](rvec v) -> bool {
        for (const auto& u : span) v -= u.dot(v) * u;
        double norm = v.norm();
        if (norm < 1e-9) return false;
        // second Gram-Schmidt pass for numerical orthogonality
        v /= norm;
        for (const auto& u : span) v -= u.dot(v) * u;
        norm = v.norm();
        if (norm < 0.5) return false;
        span.push_back(v / norm);
        return true;
    };

    for (const auto& g : generators) add(basis->coefficients(g));

    size_t frontier_start = 0;
    while (frontier_start < span.size() && static_cast<int>(span.size()) < d) {
        const size_t frontier_end = span.size();
        for (size_t i = 0; i < frontier_end; ++i)
            for (size_t j = std::max(i + 1, frontier_start); j < frontier_end; ++j) {
                cmat c = commutator_raw(basis->assemble(span[i]), basis->assemble(span[j]));
                add(basis->coefficients(c));
            }
        if (span.size() == frontier_end) break;  // closed
        frontier_start = frontier_end;
    }
    return static_cast<int>(span.size());
}

}  // namespace brachx
