#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kmgrad/errors.hpp"
#include "kmgrad/matrix.hpp"

namespace kmgrad {

using Index = std::size_t;
using IndexSet = std::vector<Index>;  // sorted, duplicate-free vertex indices

// Generalized Cartan matrix with labelled vertices. Vertices are addressed
// by position in `labels`; all subsets are index sets in that order.
class GCM {
  public:
    GCM() = default;

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }

    long entry(Index i, Index j) const { return a_[i * size() + j]; }

    Index index_of(const std::string& label) const {
        for (Index i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        throw AxisMismatch("unknown vertex label: " + label);
    }

    bool linked(Index i, Index j) const { return i != j && entry(i, j) != 0; }

    RatMatrix to_rat() const {
        RatMatrix m(size(), size());
        for (Index i = 0; i < size(); ++i)
            for (Index j = 0; j < size(); ++j) m.at(i, j) = entry(i, j);
        return m;
    }

    RatMatrix to_rat(const IndexSet& subset) const {
        RatMatrix m(subset.size(), subset.size());
        for (Index i = 0; i < subset.size(); ++i)
            for (Index j = 0; j < subset.size(); ++j) m.at(i, j) = entry(subset[i], subset[j]);
        return m;
    }

    GCM submatrix(const IndexSet& subset) const {
        GCM g;
        for (Index i : subset) g.labels_.push_back(labels_[i]);
        g.a_.resize(subset.size() * subset.size());
        for (Index i = 0; i < subset.size(); ++i)
            for (Index j = 0; j < subset.size(); ++j)
                g.a_[i * subset.size() + j] = entry(subset[i], subset[j]);
        return g;
    }

    bool operator==(const GCM& o) const { return labels_ == o.labels_ && a_ == o.a_; }

    friend GCM validate(std::vector<std::string> labels, std::vector<std::vector<long>> entries);

  private:
    std::vector<std::string> labels_;
    std::vector<long> a_;
};

// Checks the three Cartan axioms and builds the GCM.
inline GCM validate(std::vector<std::string> labels, std::vector<std::vector<long>> entries) {
    const std::size_t n = labels.size();
    if (entries.size() != n) throw AxisMismatch("label count does not match row count");
    for (const auto& row : entries)
        if (row.size() != n) throw AxisMismatch("matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (labels[i] == labels[j]) throw AxisMismatch("duplicate label: " + labels[i]);
    for (std::size_t i = 0; i < n; ++i) {
        if (entries[i][i] != 2) throw NotCartan(i, i, "diagonal entry must be 2");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (entries[i][j] > 0) throw NotCartan(i, j, "off-diagonal entry must be <= 0");
            if ((entries[i][j] == 0) != (entries[j][i] == 0))
                throw NotCartan(i, j, "zero pattern must be symmetric");
        }
    }
    GCM g;
    g.labels_ = std::move(labels);
    g.a_.reserve(n * n);
    for (const auto& row : entries)
        for (long v : row) g.a_.push_back(v);
    return g;
}

inline IndexSet full_index_set(const GCM& g) {
    IndexSet s(g.size());
    for (Index i = 0; i < g.size(); ++i) s[i] = i;
    return s;
}

inline IndexSet complement(const GCM& g, const IndexSet& s) {
    std::vector<bool> in(g.size(), false);
    for (Index i : s) in[i] = true;
    IndexSet c;
    for (Index i = 0; i < g.size(); ++i)
        if (!in[i]) c.push_back(i);
    return c;
}

// Connected parts of the induced subdiagram on S, ordered by smallest member.
inline std::vector<IndexSet> components(const GCM& g, const IndexSet& s) {
    std::vector<bool> in(g.size(), false), seen(g.size(), false);
    for (Index i : s) {
        if (i >= g.size()) throw AxisMismatch("subset index out of range");
        in[i] = true;
    }
    std::vector<IndexSet> parts;
    for (Index start : s) {
        if (seen[start]) continue;
        IndexSet part;
        std::vector<Index> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            Index v = stack.back();
            stack.pop_back();
            part.push_back(v);
            for (Index w = 0; w < g.size(); ++w)
                if (in[w] && !seen[w] && g.linked(v, w)) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        std::sort(part.begin(), part.end());
        parts.push_back(std::move(part));
    }
    std::sort(parts.begin(), parts.end(),
              [](const IndexSet& a, const IndexSet& b) { return a.front() < b.front(); });
    return parts;
}

inline bool is_connected(const GCM& g, const IndexSet& s) {
    return components(g, s).size() <= 1;
}

// Positive rational d with diag(d)*A symmetric, normalized so the smallest
// entry in each connected component is 1. Propagates d_j = d_i a_ij / a_ji
// along edges and rejects inconsistent cycles.
inline RatVec symmetrizer(const GCM& g) {
    const std::size_t n = g.size();
    RatVec d(n, Rat(0));
    for (const IndexSet& comp : components(g, full_index_set(g))) {
        d[comp.front()] = 1;
        std::vector<Index> queue{comp.front()};
        std::size_t head = 0;
        while (head < queue.size()) {
            Index i = queue[head++];
            for (Index j : comp) {
                if (!g.linked(i, j)) continue;
                Rat propagated = d[i] * Rat(g.entry(i, j)) / Rat(g.entry(j, i));
                if (d[j] == 0) {
                    d[j] = propagated;
                    queue.push_back(j);
                } else if (d[j] != propagated) {
                    throw NotSymmetrizable("cycle inconsistency at vertices " +
                                           g.labels()[i] + "," + g.labels()[j]);
                }
            }
        }
        Rat min = d[comp.front()];
        for (Index i : comp) min = std::min(min, d[i]);
        for (Index i : comp) d[i] /= min;
    }
    return d;
}

inline bool is_symmetrizable(const GCM& g) {
    try {
        symmetrizer(g);
        return true;
    } catch (const NotSymmetrizable&) {
        return false;
    }
}

inline std::size_t corank(const GCM& g) { return g.size() - g.to_rat().rank(); }

// Exact signature (n_plus, n_zero, n_neg) of a symmetric rational matrix.
// All eigenvalues are real, so Descartes' sign-change count on the
// characteristic polynomial is exact; the zero multiplicity is cross-checked
// against the elimination corank.
inline std::tuple<int, int, int> signature(const RatMatrix& m) {
    if (!m.is_symmetric()) throw NotSymmetric("signature requires a symmetric matrix");
    const std::size_t n = m.rows();
    RatVec p = m.char_poly();  // p[k] = coefficient of t^(n-k)
    std::size_t zero = 0;
    while (zero < n && p[n - zero] == 0) ++zero;
    std::size_t corank_check = n - m.rank();
    if (zero != corank_check)
        throw InternalCheckError("char-poly zero multiplicity disagrees with corank");
    // q(t) = p(t)/t^zero has q(0) != 0; its positive-root count is the number
    // of coefficient sign changes.
    int plus = 0;
    int prev = 0;
    for (std::size_t k = 0; k + zero <= n; ++k) {
        int s = sign(p[k]);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++plus;
        prev = s;
    }
    int neg = static_cast<int>(n - zero) - plus;
    return {plus, static_cast<int>(zero), neg};
}

enum class Kind { Finite, Affine, Indefinite };

inline std::string to_string(Kind k) {
    switch (k) {
        case Kind::Finite: return "Finite";
        case Kind::Affine: return "Affine";
        default: return "Indefinite";
    }
}

struct TypeVerdict {
    Kind kind = Kind::Indefinite;
    bool hyperbolic = false;
    bool strictly_hyperbolic = false;
    bool lorentzian = false;
    bool symmetrizable = false;
    bool indecomposable = false;
    std::optional<std::string> finite_type_label;
};

namespace detail {

// Subset-level classification with memoized determinants. Vertex subsets are
// bitmasks over the ambient GCM (rank <= 64, in practice <= 12).
class Classifier {
  public:
    explicit Classifier(const GCM& g) : g_(&g) {}

    const Rat& det(std::uint64_t mask) {
        auto it = det_memo_.find(mask);
        if (it != det_memo_.end()) return it->second;
        IndexSet s = to_set(mask);
        return det_memo_.emplace(mask, g_->to_rat(s).det()).first->second;
    }

    // Kind of one indecomposable component, by the principal-minors test.
    Kind component_kind(std::uint64_t mask) {
        auto it = kind_memo_.find(mask);
        if (it != kind_memo_.end()) return it->second;
        Kind k = compute_kind(mask);
        kind_memo_.emplace(mask, k);
        return k;
    }

    IndexSet to_set(std::uint64_t mask) const {
        IndexSet s;
        for (Index i = 0; i < g_->size(); ++i)
            if (mask & (std::uint64_t(1) << i)) s.push_back(i);
        return s;
    }

    static std::uint64_t to_mask(const IndexSet& s) {
        std::uint64_t m = 0;
        for (Index i : s) m |= std::uint64_t(1) << i;
        return m;
    }

  private:
    Kind compute_kind(std::uint64_t mask) {
        // Iterate proper nonempty submasks; every principal minor positive
        // means finite, all proper positive with det 0 means affine.
        bool proper_positive = true;
        for (std::uint64_t sub = (mask - 1) & mask; sub != 0; sub = (sub - 1) & mask) {
            if (sign(det(sub)) <= 0) {
                proper_positive = false;
                break;
            }
        }
        if (!proper_positive) return Kind::Indefinite;
        int full = sign(det(mask));
        if (full > 0) return Kind::Finite;
        if (full == 0) return Kind::Affine;
        return Kind::Indefinite;
    }

    const GCM* g_;
    std::map<std::uint64_t, Rat> det_memo_;
    std::map<std::uint64_t, Kind> kind_memo_;
};

inline Kind worst(Kind a, Kind b) {
    auto rank = [](Kind k) { return k == Kind::Finite ? 0 : k == Kind::Affine ? 1 : 2; };
    return rank(a) >= rank(b) ? a : b;
}

}  // namespace detail

inline Kind kind_of(const GCM& g, const IndexSet& s) {
    if (s.empty()) return Kind::Finite;
    detail::Classifier cl(g);
    Kind k = Kind::Finite;
    for (const IndexSet& comp : components(g, s))
        k = detail::worst(k, cl.component_kind(detail::Classifier::to_mask(comp)));
    return k;
}

inline bool is_finite_type(const GCM& g, const IndexSet& s) {
    return kind_of(g, s) == Kind::Finite;
}

std::optional<std::string> finite_type_label(const GCM& g);  // fwd, diagram_names.hpp

// Full classification: kind per the principal-minors criterion (worst
// component for decomposable input), plus the hyperbolicity, Lorentzian and
// symmetrizability flags. Hyperbolic flags apply to indecomposable matrices
// only.
inline TypeVerdict classify(const GCM& g) {
    TypeVerdict v;
    detail::Classifier cl(g);
    std::vector<IndexSet> comps = components(g, full_index_set(g));
    v.indecomposable = comps.size() == 1 && g.size() > 0;
    v.kind = Kind::Finite;
    for (const IndexSet& comp : comps)
        v.kind = detail::worst(v.kind, cl.component_kind(detail::Classifier::to_mask(comp)));
    v.symmetrizable = is_symmetrizable(g);
    if (v.indecomposable && v.kind == Kind::Indefinite) {
        bool hyper = true, strict = true;
        for (Index drop = 0; drop < g.size(); ++drop) {
            IndexSet rest;
            for (Index i = 0; i < g.size(); ++i)
                if (i != drop) rest.push_back(i);
            for (const IndexSet& comp : components(g, rest)) {
                Kind k = cl.component_kind(detail::Classifier::to_mask(comp));
                if (k == Kind::Indefinite) hyper = false;
                if (k != Kind::Finite) strict = false;
            }
        }
        v.hyperbolic = hyper;
        v.strictly_hyperbolic = hyper && strict;
    }
    if (v.symmetrizable && g.size() > 0) {
        RatVec d = symmetrizer(g);
        RatMatrix da = g.to_rat();
        for (Index i = 0; i < g.size(); ++i)
            for (Index j = 0; j < g.size(); ++j) da.at(i, j) *= d[i];
        auto [plus, zero, neg] = signature(da);
        v.lorentzian = zero == 0 && neg == 1 && plus == static_cast<int>(g.size()) - 1;
    }
    if (v.kind == Kind::Finite) v.finite_type_label = finite_type_label(g);
    return v;
}

// True iff some path i -> k has all interior vertices inside J.
inline bool j_connected(const GCM& g, const IndexSet& j_set, Index i, Index k) {
    std::vector<bool> in_j(g.size(), false);
    for (Index j : j_set) in_j[j] = true;
    if (i >= g.size() || k >= g.size() || in_j[i] || in_j[k])
        throw IndexOutOfJComplement("j_connected endpoints must lie outside J");
    if (g.linked(i, k)) return true;
    std::vector<bool> seen(g.size(), false);
    std::vector<Index> stack;
    for (Index w = 0; w < g.size(); ++w)
        if (in_j[w] && g.linked(i, w)) {
            seen[w] = true;
            stack.push_back(w);
        }
    while (!stack.empty()) {
        Index v = stack.back();
        stack.pop_back();
        if (g.linked(v, k)) return true;
        for (Index w = 0; w < g.size(); ++w)
            if (in_j[w] && !seen[w] && g.linked(v, w)) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return false;
}

}  // namespace kmgrad

#include "kmgrad/diagram_names.hpp"
