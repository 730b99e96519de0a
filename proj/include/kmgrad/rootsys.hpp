#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kmgrad/gcm.hpp"

namespace kmgrad {

// Element of the root lattice Q = Z-span of the simple roots, as integer
// coordinates in label order.
struct RootVec {
    std::vector<long> coords;

    long height() const {
        long h = 0;
        for (long c : coords) h += c;
        return h;
    }
    IndexSet support() const {
        IndexSet s;
        for (Index i = 0; i < coords.size(); ++i)
            if (coords[i] != 0) s.push_back(i);
        return s;
    }
    bool is_zero() const { return support().empty(); }
    bool nonnegative() const {
        return std::all_of(coords.begin(), coords.end(), [](long c) { return c >= 0; });
    }
    bool nonpositive() const {
        return std::all_of(coords.begin(), coords.end(), [](long c) { return c <= 0; });
    }
    // Index of the simple root when the vector is one, else nullopt.
    std::optional<Index> as_simple() const {
        std::optional<Index> found;
        for (Index i = 0; i < coords.size(); ++i) {
            if (coords[i] == 0) continue;
            if (coords[i] != 1 || found) return std::nullopt;
            found = i;
        }
        return found;
    }

    RootVec operator+(const RootVec& o) const {
        RootVec r = *this;
        for (Index i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
        return r;
    }
    RootVec operator-() const {
        RootVec r = *this;
        for (long& c : r.coords) c = -c;
        return r;
    }
    bool operator==(const RootVec& o) const { return coords == o.coords; }
    bool operator!=(const RootVec& o) const { return coords != o.coords; }
    // Height-then-lex order; the enumeration order of the library.
    bool operator<(const RootVec& o) const {
        long ha = height(), hb = o.height();
        if (ha != hb) return ha < hb;
        return coords < o.coords;
    }
};

inline RootVec simple_root(const GCM& g, Index i) {
    RootVec v{std::vector<long>(g.size(), 0)};
    v.coords[i] = 1;
    return v;
}

inline RootVec zero_root(const GCM& g) { return RootVec{std::vector<long>(g.size(), 0)}; }

inline std::string to_string(const RootVec& v) {
    std::string s = "(";
    for (Index i = 0; i < v.coords.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v.coords[i]);
    }
    return s + ")";
}

// <alpha, coroot_i> = sum_j n_j a_{i,j}; pure lattice arithmetic.
inline long coroot_pairing(const GCM& g, const RootVec& v, Index i) {
    long p = 0;
    for (Index j = 0; j < g.size(); ++j) p += v.coords[j] * g.entry(i, j);
    return p;
}

// Fundamental reflection acting on the root lattice:
// r_i(v) = v - <v, coroot_i> alpha_i. An involution.
inline RootVec reflect(const GCM& g, Index i, const RootVec& v) {
    if (v.coords.size() != g.size()) throw DimensionMismatch("root vector size mismatch");
    RootVec r = v;
    r.coords[i] -= coroot_pairing(g, v, i);
    return r;
}

// Words act right-to-left: apply_word({i,j}, v) = r_i(r_j(v)).
inline RootVec apply_word(const GCM& g, const std::vector<Index>& word, RootVec v) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = reflect(g, *it, v);
    return v;
}

struct RootVerdict {
    enum class Type { Real, Imaginary, NotARoot };
    Type type = Type::NotARoot;
    std::optional<Index> simple;   // Real: w(alpha_simple) = input
    std::optional<RootVec> rep;    // Imaginary: w(rep) = input, rep in +-(fundamental cone)
    std::vector<Index> word;

    bool is_root() const { return type != Type::NotARoot; }
    bool is_real() const { return type == Type::Real; }
    bool is_imaginary() const { return type == Type::Imaginary; }
};

// Decides real / imaginary / not-a-root by reflecting the height down.
// A positive vector descends through positive roots until it reaches a
// simple root (real), gets stuck in the fundamental imaginary cone
// (all coroot pairings <= 0, connected support), or leaves the positive
// cone (not a root). Mixed-sign vectors are never roots.
inline RootVerdict root_test(const GCM& g, const RootVec& input) {
    RootVerdict verdict;
    if (input.coords.size() != g.size()) throw DimensionMismatch("root vector size mismatch");
    if (input.is_zero()) return verdict;
    bool negated = false;
    RootVec v = input;
    if (v.nonpositive()) {
        v = -v;
        negated = true;
    } else if (!v.nonnegative()) {
        return verdict;  // mixed sign
    }
    std::vector<Index> word;
    while (true) {
        if (auto s = v.as_simple()) {
            verdict.type = RootVerdict::Type::Real;
            verdict.simple = *s;
            if (negated) word.push_back(*s);  // -alpha_s = r_s(alpha_s)
            verdict.word = std::move(word);
            return verdict;
        }
        std::optional<Index> up;
        for (Index i = 0; i < g.size(); ++i)
            if (coroot_pairing(g, v, i) > 0) {
                up = i;
                break;
            }
        if (!up) {
            if (!is_connected(g, v.support())) return verdict;
            verdict.type = RootVerdict::Type::Imaginary;
            verdict.rep = negated ? -v : v;
            verdict.word = std::move(word);
            return verdict;
        }
        RootVec next = reflect(g, *up, v);
        if (!next.nonnegative()) return verdict;  // left the positive cone
        v = next;
        word.push_back(*up);
    }
}

inline bool is_root(const GCM& g, const RootVec& v) { return root_test(g, v).is_root(); }

struct EnumeratedRoot {
    RootVec vec;
    bool real = true;
};

// All positive roots of height <= bound, built layer by layer (every root of
// height h+1 is a root of height h plus a simple root) with membership
// decided by root_test. Ordered by height then lexicographically. For finite
// type the generation stops at the first empty layer.
inline std::vector<EnumeratedRoot> enumerate_positive_roots(const GCM& g, long bound) {
    std::vector<EnumeratedRoot> out;
    if (bound < 1 || g.size() == 0) return out;
    std::vector<RootVec> layer;
    for (Index i = 0; i < g.size(); ++i) {
        layer.push_back(simple_root(g, i));
        out.push_back({layer.back(), true});
    }
    for (long h = 2; h <= bound && !layer.empty(); ++h) {
        std::set<std::vector<long>> seen;
        std::vector<RootVec> next;
        for (const RootVec& r : layer)
            for (Index i = 0; i < g.size(); ++i) {
                RootVec cand = r + simple_root(g, i);
                if (!seen.insert(cand.coords).second) continue;
                RootVerdict v = root_test(g, cand);
                if (!v.is_root()) continue;
                next.push_back(cand);
                out.push_back({cand, v.is_real()});
            }
        layer = std::move(next);
    }
    std::sort(out.begin(), out.end(),
              [](const EnumeratedRoot& a, const EnumeratedRoot& b) { return a.vec < b.vec; });
    return out;
}

// True once the positive root system is exhausted below the bound.
inline bool enumeration_stabilizes(const GCM& g, long bound) {
    std::vector<EnumeratedRoot> roots = enumerate_positive_roots(g, bound);
    return roots.empty() || roots.back().vec.height() < bound;
}

// Maximal p,q >= 0 with alpha - p alpha_i ... alpha + q alpha_i all roots.
inline std::pair<long, long> root_string(const GCM& g, const RootVec& alpha, Index i) {
    RootVerdict v = root_test(g, alpha);
    if (!v.is_root()) throw NotARootInput("root_string input is not a root");
    if (alpha == simple_root(g, i) || -alpha == simple_root(g, i))
        throw NotARootInput("root_string input must differ from +-alpha_i");
    constexpr long kCap = 10000;
    auto walk = [&](long dir) {
        long t = 0;
        RootVec cur = alpha;
        while (t < kCap) {
            RootVec next = cur;
            next.coords[i] += dir;
            if (!is_root(g, next)) break;
            cur = next;
            ++t;
        }
        if (t >= kCap) throw InternalCheckError("root string did not terminate");
        return t;
    };
    long p = walk(-1), q = walk(+1);
    return {p, q};
}

// The unique maximal-height root of a connected finite-type subdiagram,
// returned in ambient coordinates.
inline RootVec highest_root(const GCM& g, const IndexSet& s) {
    if (!is_connected(g, s) || !is_finite_type(g, s))
        throw NotFiniteType("highest_root needs a connected finite-type subset");
    GCM sub = g.submatrix(s);
    std::vector<EnumeratedRoot> roots = enumerate_positive_roots(sub, 1000);
    if (!enumeration_stabilizes(sub, 1000))
        throw InternalCheckError("finite-type enumeration failed to stabilize");
    const RootVec& top = roots.back().vec;
    for (const EnumeratedRoot& r : roots)
        if (r.vec.height() == top.height() && r.vec != top)
            throw InternalCheckError("highest root is not unique");
    RootVec out = zero_root(g);
    for (Index i = 0; i < s.size(); ++i) out.coords[s[i]] = top.coords[i];
    return out;
}

struct LongestElement {
    std::vector<Index> word;        // apply_word semantics, length = |positive roots|
    std::vector<Index> sigma;       // w0(alpha_i) = -alpha_{sigma[i]}, ambient indices
};

// Longest element of the finite Weyl group of S, by chamber ascent: start at
// a strictly antidominant coweight and reflect up until dominant.
inline LongestElement longest_element(const GCM& g, const IndexSet& s) {
    if (!is_finite_type(g, s)) throw NotFiniteType("longest_element needs finite type");
    const std::size_t m = s.size();
    GCM sub = g.submatrix(s);
    RatMatrix at = sub.to_rat().transpose();
    auto start = at.solve(RatVec(m, Rat(-1)));
    if (!start) throw InternalCheckError("finite-type Cartan matrix must be invertible");
    RatVec c = *start;  // coweight in coroot coordinates: <alpha_j, h> = sum_i c_i a_ij
    auto value_at = [&](Index j) {
        Rat v = 0;
        for (Index i = 0; i < m; ++i) v += c[i] * sub.entry(i, j);
        return v;
    };
    std::vector<Index> steps;
    while (true) {
        std::optional<Index> neg;
        for (Index j = 0; j < m; ++j)
            if (sign(value_at(j)) < 0) {
                neg = j;
                break;
            }
        if (!neg) break;
        c[*neg] -= value_at(*neg);
        steps.push_back(*neg);
    }
    std::size_t expected = enumerate_positive_roots(sub, 1000).size();
    if (steps.size() != expected)
        throw InternalCheckError("longest element word length != number of positive roots");
    LongestElement le;
    le.word.assign(steps.rbegin(), steps.rend());
    for (Index& i : le.word) i = s[i];  // ambient indices
    le.sigma.resize(g.size());
    for (Index i = 0; i < g.size(); ++i) le.sigma[i] = i;
    for (Index i : s) {
        RootVec img = apply_word(g, le.word, simple_root(g, i));
        auto neg_simple = (-img).as_simple();
        if (!neg_simple) throw InternalCheckError("w0 does not negate a simple root");
        le.sigma[i] = *neg_simple;
    }
    return le;
}

// Half sum of the positive coroots of a finite-type J, as rational
// coordinates over the simple coroots indexed by J. The defining property
// <alpha_j, rho_J> = 1 for all j in J is asserted after construction.
inline RatVec half_sum_coroots(const GCM& g, const IndexSet& j_set) {
    if (!is_finite_type(g, j_set)) throw NotFiniteType("half_sum_coroots needs finite type");
    GCM dual = g.submatrix(j_set);
    {
        // positive coroots = positive roots of the transposed Cartan matrix
        std::vector<std::vector<long>> entries(dual.size(), std::vector<long>(dual.size()));
        for (Index i = 0; i < dual.size(); ++i)
            for (Index j = 0; j < dual.size(); ++j) entries[i][j] = dual.entry(j, i);
        dual = validate(dual.labels(), entries);
    }
    RatVec sum(j_set.size(), Rat(0));
    for (const EnumeratedRoot& r : enumerate_positive_roots(dual, 1000))
        for (Index i = 0; i < j_set.size(); ++i) sum[i] += r.vec.coords[i];
    for (Rat& x : sum) x /= 2;
    for (Index j = 0; j < j_set.size(); ++j) {
        Rat pairing = 0;
        for (Index i = 0; i < j_set.size(); ++i)
            pairing += sum[i] * Rat(g.entry(j_set[i], j_set[j]));
        if (pairing != 1)
            throw InternalCheckError("<alpha_j, rho_J> != 1 after construction");
    }
    return sum;
}

// Generator of the kernel of an affine matrix, scaled to primitive positive
// integer coordinates: the lowest positive imaginary root.
inline RootVec affine_delta(const GCM& g) {
    if (classify(g).kind != Kind::Affine || !is_connected(g, full_index_set(g)))
        throw Error("affine_delta needs an indecomposable affine matrix");
    auto basis = g.to_rat().nullspace();
    if (basis.size() != 1) throw InternalCheckError("affine corank must be 1");
    RatVec v = basis[0];
    Rat lcm_den = 1;
    for (const Rat& x : v) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), lcm_den.get_num().get_mpz_t(), x.get_den().get_mpz_t());
        lcm_den = Rat(l);
    }
    RootVec delta{std::vector<long>(g.size(), 0)};
    mpz_class content = 0;
    RatVec scaled(g.size());
    for (Index i = 0; i < g.size(); ++i) {
        scaled[i] = v[i] * lcm_den;
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled[i].get_num().get_mpz_t());
    }
    for (Index i = 0; i < g.size(); ++i)
        delta.coords[i] = static_cast<long>(mpz_class(scaled[i].get_num() / content).get_si());
    if (!delta.nonnegative())
        for (long& c : delta.coords) c = -c;
    for (long c : delta.coords)
        if (c <= 0) throw InternalCheckError("kernel generator must have positive coordinates");
    return delta;
}

// Canonical minimal realization. Convention: coroots are the first |I|
// standard basis vectors of Q^dim_h; the functional alpha_j carries column j
// of A on those coordinates. The corank extra coordinates are assigned, one
// each in label order, to the columns skipped by the greedy left-to-right
// independent-column scan, which makes the root functionals independent.
struct Realization {
    GCM gcm;
    std::size_t dim_h = 0;
    RatMatrix root_rows;    // |I| x dim_h, row j = alpha_j
    RatMatrix coroot_cols;  // dim_h x |I|, column i = coroot of alpha_i

    RatVec coroot(Index i) const { return coroot_cols.col(i); }

    Rat pairing(Index root_j, const RatVec& h) const {
        return dot(root_rows.row(root_j), h);
    }
    Rat pairing(const RootVec& v, const RatVec& h) const {
        Rat total = 0;
        for (Index j = 0; j < gcm.size(); ++j)
            if (v.coords[j] != 0) total += Rat(v.coords[j]) * pairing(j, h);
        return total;
    }
    // Ambient vector of an integer coroot combination supported on `which`.
    RatVec combine_coroots(const IndexSet& which, const RatVec& coeffs) const {
        RatVec h(dim_h, Rat(0));
        for (Index t = 0; t < which.size(); ++t)
            for (Index r = 0; r < dim_h; ++r) h[r] += coeffs[t] * coroot_cols.at(r, which[t]);
        return h;
    }
};

inline Realization build_realization(const GCM& g) {
    const std::size_t n = g.size();
    RatMatrix a = g.to_rat();
    const std::size_t rank = a.rank();
    const std::size_t extra = n - rank;
    Realization re;
    re.gcm = g;
    re.dim_h = n + extra;
    re.coroot_cols = RatMatrix(re.dim_h, n);
    for (Index i = 0; i < n; ++i) re.coroot_cols.at(i, i) = 1;
    // Greedy independent columns of A, left to right.
    std::vector<bool> chosen(n, false);
    {
        RatMatrix probe(n, 0);
        std::vector<Index> picked;
        for (Index j = 0; j < n && picked.size() < rank; ++j) {
            RatMatrix trial(n, picked.size() + 1);
            for (Index r = 0; r < n; ++r) {
                for (Index t = 0; t < picked.size(); ++t) trial.at(r, t) = a.at(r, picked[t]);
                trial.at(r, picked.size()) = a.at(r, j);
            }
            if (trial.rank() == picked.size() + 1) {
                picked.push_back(j);
                chosen[j] = true;
            }
        }
    }
    re.root_rows = RatMatrix(n, re.dim_h);
    std::size_t next_extra = 0;
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) re.root_rows.at(j, i) = a.at(i, j);
        if (!chosen[j]) re.root_rows.at(j, n + next_extra++) = 1;
    }
    if (re.root_rows.rank() != n)
        throw InternalCheckError("realization roots are not independent");
    if (!(re.root_rows * re.coroot_cols == a.transpose()))
        throw InternalCheckError("realization does not reproduce the Cartan pairing");
    return re;
}

// Basis of h^J = {h : <alpha_j, h> = 0 for all j in J}.
inline std::vector<RatVec> subspace_hJ(const Realization& re, const IndexSet& j_set) {
    RatMatrix rows(j_set.size(), re.dim_h);
    for (Index t = 0; t < j_set.size(); ++t)
        for (Index c = 0; c < re.dim_h; ++c) rows.at(t, c) = re.root_rows.at(j_set[t], c);
    return rows.nullspace();
}

struct FacetType {
    IndexSet zero_set;
    bool in_chamber = false;     // <alpha_i, h> >= 0 for all i
    bool finite_type = false;    // the zero set spans a finite-type subdiagram
};

inline FacetType facet_type(const Realization& re, const RatVec& h) {
    FacetType f;
    f.in_chamber = true;
    for (Index i = 0; i < re.gcm.size(); ++i) {
        int s = sign(re.pairing(i, h));
        if (s == 0) f.zero_set.push_back(i);
        if (s < 0) f.in_chamber = false;
    }
    f.finite_type = is_finite_type(re.gcm, f.zero_set);
    return f;
}

// Invariant bilinear form data under a chosen normalization.
// gram_roots[i][j] = (alpha_i, alpha_j) = scale * d_i * a_ij,
// gram_coroots[i][j] = (coroot_i, coroot_j) = a_ij / (scale * d_j).
struct BilinearData {
    RatVec d;
    Rat scale;
    RatMatrix gram_roots;
    RatMatrix gram_coroots;

    Rat root_norm(const RootVec& v) const {
        Rat total = 0;
        for (Index i = 0; i < v.coords.size(); ++i) {
            if (v.coords[i] == 0) continue;
            for (Index j = 0; j < v.coords.size(); ++j)
                if (v.coords[j] != 0)
                    total += Rat(v.coords[i]) * Rat(v.coords[j]) * gram_roots.at(i, j);
        }
        return total;
    }
};

inline BilinearData bilinear_data(const GCM& g, const Rat& scale) {
    if (sign(scale) <= 0) throw Error("form scale must be positive");
    BilinearData b;
    b.d = symmetrizer(g);
    b.scale = scale;
    b.gram_roots = RatMatrix(g.size(), g.size());
    b.gram_coroots = RatMatrix(g.size(), g.size());
    for (Index i = 0; i < g.size(); ++i)
        for (Index j = 0; j < g.size(); ++j) {
            b.gram_roots.at(i, j) = scale * b.d[i] * Rat(g.entry(i, j));
            b.gram_coroots.at(i, j) = Rat(g.entry(i, j)) / (scale * b.d[j]);
        }
    if (!b.gram_roots.is_symmetric() || !b.gram_coroots.is_symmetric())
        throw InternalCheckError("Gram matrices must be symmetric");
    return b;
}

inline BilinearData bilinear_data_unit(const GCM& g) { return bilinear_data(g, Rat(1)); }

// Scale fixed by prescribing the squared lengths of the shortest and longest
// simple roots; rejects inconsistent prescriptions.
inline BilinearData bilinear_data_short_long(const GCM& g, const Rat& short_norm,
                                             const Rat& long_norm) {
    RatVec d = symmetrizer(g);
    Rat dmin = d[0], dmax = d[0];
    for (const Rat& x : d) {
        dmin = std::min(dmin, x);
        dmax = std::max(dmax, x);
    }
    Rat scale = short_norm / (2 * dmin);
    if (2 * dmax * scale != long_norm)
        throw Error("short/long normalization inconsistent with the symmetrizer ratios");
    return bilinear_data(g, scale);
}

// All real roots of equal squared length; requires equal symmetrizer entries.
inline BilinearData bilinear_data_real_length(const GCM& g, const Rat& norm) {
    RatVec d = symmetrizer(g);
    for (const Rat& x : d)
        if (x != d[0]) throw Error("equal-length normalization needs equal root lengths");
    return bilinear_data(g, norm / (2 * d[0]));
}

}  // namespace kmgrad
