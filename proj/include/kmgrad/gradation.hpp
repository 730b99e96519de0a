#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kmgrad/cadmissible.hpp"
#include "kmgrad/quotient.hpp"

namespace kmgrad {

// A linear restriction of root lattices given by the images of the simple
// roots. The single input format for all gradation origins: pairs, quotient
// folds, and externally supplied restrictions.
struct RestrictionSpec {
    GCM source;
    GCM target;
    std::vector<RootVec> images;  // per source vertex, in target coordinates

    RootVec apply(const RootVec& v) const {
        RootVec out{std::vector<long>(target.size(), 0)};
        for (Index i = 0; i < source.size(); ++i) {
            if (v.coords[i] == 0) continue;
            for (Index s = 0; s < target.size(); ++s)
                out.coords[s] += v.coords[i] * images[i].coords[s];
        }
        return out;
    }
};

// Checks the type invariant: every nonzero image is a positive root of the
// target system.
inline RestrictionSpec make_restriction_spec(GCM source, GCM target,
                                             std::vector<RootVec> images) {
    if (images.size() != source.size())
        throw SpecInvalid("one image per source vertex required");
    RestrictionSpec spec{std::move(source), std::move(target), std::move(images)};
    for (Index i = 0; i < spec.source.size(); ++i) {
        const RootVec& img = spec.images[i];
        if (img.coords.size() != spec.target.size())
            throw SpecInvalid("image of " + spec.source.labels()[i] +
                              " has the wrong dimension");
        if (img.is_zero()) continue;
        if (!img.nonnegative() || !root_test(spec.target, img).is_root())
            throw SpecInvalid("image of " + spec.source.labels()[i] +
                              " is not a positive root of the target");
    }
    return spec;
}

inline RestrictionSpec identity_spec(const GCM& g) {
    std::vector<RootVec> images;
    for (Index i = 0; i < g.size(); ++i) images.push_back(simple_root(g, i));
    return make_restriction_spec(g, g, images);
}

// The restriction defined by a C-admissible pair: J vertices map to zero,
// black vertices to the matching simple root of A^J.
inline RestrictionSpec pair_spec(const CAdmissibleAlgebra& alg) {
    std::vector<RootVec> images(alg.source.size());
    for (Index i = 0; i < alg.source.size(); ++i) images[i] = RootVec{std::vector<long>(alg.i_prime.size(), 0)};
    for (std::size_t a = 0; a < alg.i_prime.size(); ++a) images[alg.i_prime[a]].coords[a] = 1;
    return make_restriction_spec(alg.source, alg.aj, images);
}

inline RestrictionSpec pair_spec(const GCM& g, const IndexSet& j_set) {
    return pair_spec(build_AJ(g, j_set));
}

// The restriction defined by an admissible quotient: fiber-sum projection.
inline RestrictionSpec quotient_spec(const MaximalGradation& mg) {
    const QuotientMap& q = mg.quotient;
    std::vector<RootVec> images;
    for (Index i = 0; i < q.source.size(); ++i) {
        RootVec img{std::vector<long>(q.fiber_count(), 0)};
        img.coords[q.rho[i]] = 1;
        images.push_back(std::move(img));
    }
    return make_restriction_spec(q.source, mg.abar, images);
}

inline RestrictionSpec quotient_spec(const QuotientMap& q) {
    return quotient_spec(build_Abar(q));
}

// Composition along a shared middle system; images compose additively.
inline RestrictionSpec compose(const RestrictionSpec& first, const RestrictionSpec& second) {
    if (!(first.target == second.source))
        throw BasisMismatch("composition needs target of the first = source of the second");
    std::vector<RootVec> images;
    for (Index i = 0; i < first.source.size(); ++i)
        images.push_back(second.apply(first.images[i]));
    return make_restriction_spec(first.source, second.target, images);
}

enum class PairClass { Maximal, CAdmissible, GeneralizedCAdmissible };

inline std::string to_string(PairClass c) {
    switch (c) {
        case PairClass::Maximal: return "Maximal";
        case PairClass::CAdmissible: return "CAdmissible";
        default: return "GeneralizedCAdmissible";
    }
}

struct GradationReport {
    IndexSet j_set;        // image zero
    IndexSet i_prime_re;   // image a simple root of the target
    IndexSet i_prime_im;   // image a positive imaginary root
    std::vector<IndexSet> gamma_fibers;  // per target vertex
    std::vector<std::pair<Index, IndexSet>> black_components;  // (k, I_k), k in I'_re
    IndexSet i_re, j_re, j_circle;
    std::vector<IndexSet> i_re_components;
    PairClass classification = PairClass::Maximal;
    bool adapted_up_to_bound = false;
    bool disjoint_union_ok = false;
    bool ik_finite_ok = false;
    bool fiber_orthogonality_ok = false;
    bool ire_jre_c_admissible = false;
    long height_bound = 0;
};

struct AdaptedReport {
    bool ok = true;
    std::string failure;
    std::size_t roots_checked = 0;
};

// Adaptedness below the height bound: every positive source root restricts
// into the positive target cone or to zero, and the zero set is exactly the
// span of J within the bound.
inline AdaptedReport check_adapted(const RestrictionSpec& spec, long height_bound) {
    AdaptedReport rep;
    IndexSet j_set;
    for (Index i = 0; i < spec.source.size(); ++i)
        if (spec.images[i].is_zero()) j_set.push_back(i);
    std::vector<bool> in_j(spec.source.size(), false);
    for (Index j : j_set) in_j[j] = true;
    for (const EnumeratedRoot& r : enumerate_positive_roots(spec.source, height_bound)) {
        ++rep.roots_checked;
        RootVec img = spec.apply(r.vec);
        bool supported_on_j = true;
        for (Index i : r.vec.support())
            if (!in_j[i]) supported_on_j = false;
        if (img.is_zero()) {
            if (!supported_on_j) {
                rep.ok = false;
                if (rep.failure.empty())
                    rep.failure = "root " + to_string(r.vec) + " outside Delta_J maps to zero";
            }
            continue;
        }
        if (supported_on_j) {
            rep.ok = false;
            if (rep.failure.empty())
                rep.failure = "root " + to_string(r.vec) + " inside Delta_J has nonzero image";
            continue;
        }
        if (!img.nonnegative() || !root_test(spec.target, img).is_root()) {
            rep.ok = false;
            if (rep.failure.empty())
                rep.failure = "image of " + to_string(r.vec) + " is not a positive target root";
        }
    }
    return rep;
}

// The vertex partition and verdicts of the general gradation analysis.
inline GradationReport analyze(const RestrictionSpec& spec, long height_bound) {
    const GCM& g = spec.source;
    GradationReport rep;
    rep.height_bound = height_bound;
    rep.gamma_fibers.assign(spec.target.size(), {});
    for (Index i = 0; i < g.size(); ++i) {
        const RootVec& img = spec.images[i];
        if (img.is_zero()) {
            rep.j_set.push_back(i);
            continue;
        }
        if (auto s = img.as_simple()) {
            rep.i_prime_re.push_back(i);
            rep.gamma_fibers[*s].push_back(i);
            continue;
        }
        RootVerdict v = root_test(spec.target, img);
        if (!v.is_imaginary() || !img.nonnegative())
            throw SpecInvalid("image of " + g.labels()[i] +
                              " is neither zero, simple, nor positive imaginary");
        rep.i_prime_im.push_back(i);
    }
    if (!is_finite_type(g, rep.j_set))
        throw SpecInvalid("the zero-image set J is not of finite type");

    // components of the black vertices
    for (Index k : rep.i_prime_re) {
        auto [i_k, j_k] = component_Ik(g, rep.j_set, k);
        rep.black_components.emplace_back(k, i_k);
    }
    rep.ik_finite_ok = true;
    for (const auto& [k, i_k] : rep.black_components)
        if (!is_finite_type(g, i_k)) rep.ik_finite_ok = false;

    // vertices sharing a simple image must have unlinked, disjoint components
    rep.fiber_orthogonality_ok = true;
    for (const IndexSet& fiber : rep.gamma_fibers)
        for (std::size_t a = 0; a < fiber.size(); ++a)
            for (std::size_t b = a + 1; b < fiber.size(); ++b) {
                const IndexSet* ia = nullptr;
                const IndexSet* ib = nullptr;
                for (const auto& [k, i_k] : rep.black_components) {
                    if (k == fiber[a]) ia = &i_k;
                    if (k == fiber[b]) ib = &i_k;
                }
                IndexSet joined;
                std::set_union(ia->begin(), ia->end(), ib->begin(), ib->end(),
                               std::back_inserter(joined));
                if (joined.size() != ia->size() + ib->size() ||
                    components(g, joined).size() < 2)
                    rep.fiber_orthogonality_ok = false;
            }

    // I_re and J-circle from the components of I minus the imaginary vertices
    IndexSet keep;
    {
        std::vector<bool> im(g.size(), false);
        for (Index i : rep.i_prime_im) im[i] = true;
        for (Index i = 0; i < g.size(); ++i)
            if (!im[i]) keep.push_back(i);
    }
    std::vector<bool> is_re(g.size(), false);
    for (Index k : rep.i_prime_re) is_re[k] = true;
    for (const IndexSet& comp : components(g, keep)) {
        bool meets_re = std::any_of(comp.begin(), comp.end(), [&](Index v) { return is_re[v]; });
        if (meets_re) {
            rep.i_re_components.push_back(comp);
            rep.i_re.insert(rep.i_re.end(), comp.begin(), comp.end());
        } else {
            rep.j_circle.insert(rep.j_circle.end(), comp.begin(), comp.end());
        }
    }
    std::sort(rep.i_re.begin(), rep.i_re.end());
    std::sort(rep.j_circle.begin(), rep.j_circle.end());
    {
        // the union of the black components must reproduce I_re
        std::set<Index> uni;
        for (const auto& [k, i_k] : rep.black_components) uni.insert(i_k.begin(), i_k.end());
        if (IndexSet(uni.begin(), uni.end()) != rep.i_re)
            throw InternalCheckError("component union disagrees with I_re");
    }
    for (Index j : rep.j_set)
        if (std::binary_search(rep.i_re.begin(), rep.i_re.end(), j)) rep.j_re.push_back(j);

    rep.disjoint_union_ok =
        rep.i_re.size() + rep.i_prime_im.size() + rep.j_circle.size() == g.size();

    // C-admissibility of (I_re, J_re) on the induced subdiagram
    {
        GCM sub = g.submatrix(rep.i_re);
        IndexSet j_positions;
        for (std::size_t t = 0; t < rep.i_re.size(); ++t)
            if (std::binary_search(rep.j_re.begin(), rep.j_re.end(), rep.i_re[t]))
                j_positions.push_back(t);
        rep.ire_jre_c_admissible = check_pair(sub, j_positions).c_admissible;
    }

    if (rep.i_prime_im.empty())
        rep.classification = rep.j_set.empty() ? PairClass::Maximal : PairClass::CAdmissible;
    else
        rep.classification = PairClass::GeneralizedCAdmissible;

    rep.adapted_up_to_bound = check_adapted(spec, height_bound).ok;
    return rep;
}

struct SignCheckReport {
    bool ok = true;
    std::string failure;
    std::size_t imaginary_roots_checked = 0;
};

// Positive imaginary source roots must restrict to positive imaginary target
// roots below the bound.
inline SignCheckReport imaginary_sign_check(const RestrictionSpec& spec, long height_bound) {
    SignCheckReport rep;
    for (const EnumeratedRoot& r : enumerate_positive_roots(spec.source, height_bound)) {
        if (r.real) continue;
        ++rep.imaginary_roots_checked;
        RootVec img = spec.apply(r.vec);
        if (img.is_zero() || !img.nonnegative() ||
            !root_test(spec.target, img).is_imaginary()) {
            rep.ok = false;
            if (rep.failure.empty())
                rep.failure = "imaginary root " + to_string(r.vec) +
                              " has a non-imaginary or non-positive image";
        }
    }
    return rep;
}

struct FiberCounts {
    // per image: total below bound and counts by source height
    std::map<std::vector<long>, std::size_t> totals;
    std::map<std::vector<long>, std::map<long, std::size_t>> by_height;
    std::map<std::vector<long>, bool> stable;  // no growth in the last three heights
    bool exact = false;                        // totals are exact fiber sizes (pair specs)
};

namespace detail {

// A pair-shaped spec: images all zero or simple, hitting each target vertex
// exactly once.
inline std::optional<IndexSet> pair_shape_j(const RestrictionSpec& spec) {
    IndexSet j_set;
    std::vector<int> hits(spec.target.size(), 0);
    for (Index i = 0; i < spec.source.size(); ++i) {
        if (spec.images[i].is_zero()) {
            j_set.push_back(i);
            continue;
        }
        auto s = spec.images[i].as_simple();
        if (!s) return std::nullopt;
        ++hits[*s];
    }
    for (int h : hits)
        if (h != 1) return std::nullopt;
    return j_set;
}

}  // namespace detail

// Image multiplicities with a per-height breakdown. For pair-shaped specs the
// totals are delegated to the exact fiber computation.
inline FiberCounts fiber_counts(const RestrictionSpec& spec, long height_bound) {
    FiberCounts fc;
    for (const EnumeratedRoot& r : enumerate_positive_roots(spec.source, height_bound)) {
        RootVec img = spec.apply(r.vec);
        if (img.is_zero()) continue;
        ++fc.totals[img.coords];
        ++fc.by_height[img.coords][r.vec.height()];
    }
    for (const auto& [coords, heights] : fc.by_height) {
        long last = heights.rbegin()->first;
        fc.stable[coords] = last + 3 <= height_bound;
    }
    if (auto j_set = detail::pair_shape_j(spec)) {
        if (check_pair(spec.source, *j_set).c_admissible) {
            fc.exact = true;
            for (auto& [coords, total] : fc.totals)
                total = weight_fiber(spec.source, *j_set, RootVec{coords}).size();
        }
    }
    return fc;
}

struct QuadraticIdentity {
    Rat factor;            // target norm = factor * (source norm - correction)
    RatMatrix correction;  // symmetric quadratic form on source coordinates
};

// Solves for the correction form that makes the identity exact:
// M^T G_t M = factor * (G_s - correction), with M the image matrix.
inline QuadraticIdentity derive_quadratic_identity(const RestrictionSpec& spec,
                                                   const BilinearData& source_form,
                                                   const BilinearData& target_form,
                                                   const Rat& factor) {
    const std::size_t n = spec.source.size();
    RatMatrix image(spec.target.size(), n);
    for (Index i = 0; i < n; ++i)
        for (Index s = 0; s < spec.target.size(); ++s)
            image.at(s, i) = spec.images[i].coords[s];
    RatMatrix pushed = image.transpose() * target_form.gram_roots * image;
    QuadraticIdentity id;
    id.factor = factor;
    id.correction = source_form.gram_roots - pushed.scaled(1 / factor);
    if (!id.correction.is_symmetric())
        throw InternalCheckError("correction form must be symmetric");
    return id;
}

struct IdentityCheckReport {
    bool ok = true;
    std::string failure;
    std::size_t roots_checked = 0;
};

// Verifies the quadratic identity root by root below the height bound.
inline IdentityCheckReport bilinear_identity_check(const RestrictionSpec& spec,
                                                   const BilinearData& source_form,
                                                   const BilinearData& target_form,
                                                   const QuadraticIdentity& identity,
                                                   long height_bound) {
    IdentityCheckReport rep;
    auto quad = [](const RatMatrix& form, const RootVec& v) {
        Rat total = 0;
        for (Index i = 0; i < v.coords.size(); ++i) {
            if (v.coords[i] == 0) continue;
            for (Index j = 0; j < v.coords.size(); ++j)
                if (v.coords[j] != 0)
                    total += Rat(v.coords[i]) * Rat(v.coords[j]) * form.at(i, j);
        }
        return total;
    };
    for (const EnumeratedRoot& r : enumerate_positive_roots(spec.source, height_bound)) {
        ++rep.roots_checked;
        RootVec img = spec.apply(r.vec);
        Rat lhs = quad(target_form.gram_roots, img);
        Rat rhs = identity.factor *
                  (quad(source_form.gram_roots, r.vec) - quad(identity.correction, r.vec));
        if (lhs != rhs) {
            rep.ok = false;
            if (rep.failure.empty())
                rep.failure = "identity fails at " + to_string(r.vec) + ": lhs " +
                              kmgrad::to_string(lhs) + " rhs " + kmgrad::to_string(rhs);
        }
    }
    return rep;
}

struct CartanConstraints {
    RatMatrix equations;               // rows are functionals on the ambient h
    std::vector<RatVec> solution_basis;  // ambient vectors inside h^J
    std::size_t dimension = 0;
    std::size_t expected_dimension = 0;  // |target| + corank(source)
    bool dimension_ok = false;
};

// The linear system cutting the grading Cartan subalgebra out of h^J:
// fiber vertices agree with their representative, imaginary vertices follow
// their image coordinates. Representatives are the fiber minima.
inline CartanConstraints cartan_constraints(const RestrictionSpec& spec) {
    const GCM& g = spec.source;
    GradationReport rep = analyze(spec, 1);
    Realization re = build_realization(g);
    std::vector<RatVec> hj = subspace_hJ(re, rep.j_set);

    std::vector<Index> reps(spec.target.size(), g.size());
    for (Index s = 0; s < spec.target.size(); ++s)
        if (!rep.gamma_fibers[s].empty()) reps[s] = rep.gamma_fibers[s].front();

    std::vector<RatVec> rows;
    auto root_row = [&](Index i) { return re.root_rows.row(i); };
    for (Index s = 0; s < spec.target.size(); ++s) {
        if (reps[s] == g.size()) continue;
        for (Index k : rep.gamma_fibers[s]) {
            if (k == reps[s]) continue;
            RatVec row(re.dim_h);
            for (Index c = 0; c < re.dim_h; ++c)
                row[c] = re.root_rows.at(k, c) - re.root_rows.at(reps[s], c);
            rows.push_back(std::move(row));
        }
    }
    for (Index k : rep.i_prime_im) {
        RatVec row = root_row(k);
        for (Index s = 0; s < spec.target.size(); ++s) {
            long n_sk = spec.images[k].coords[s];
            if (n_sk == 0) continue;
            if (reps[s] == g.size())
                throw SpecInvalid("imaginary image uses a simple root with empty fiber");
            for (Index c = 0; c < re.dim_h; ++c)
                row[c] -= Rat(n_sk) * re.root_rows.at(reps[s], c);
        }
        rows.push_back(std::move(row));
    }

    CartanConstraints out;
    out.equations = RatMatrix(rows.size(), re.dim_h);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (Index c = 0; c < re.dim_h; ++c) out.equations.at(r, c) = rows[r][c];

    // solve inside h^J: coordinates over the h^J basis
    RatMatrix system(rows.size(), hj.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t b = 0; b < hj.size(); ++b) system.at(r, b) = dot(rows[r], hj[b]);
    for (const RatVec& coeffs : system.nullspace()) {
        RatVec ambient(re.dim_h, Rat(0));
        for (std::size_t b = 0; b < hj.size(); ++b)
            for (Index c = 0; c < re.dim_h; ++c) ambient[c] += coeffs[b] * hj[b][c];
        out.solution_basis.push_back(std::move(ambient));
    }
    out.dimension = out.solution_basis.size();
    out.expected_dimension = spec.target.size() + corank(g);
    out.dimension_ok = out.dimension == out.expected_dimension;
    return out;
}

// The worked 6x6 example: fold by the order-2 symmetry, then restrict to the
// rank-2 subsystem with the central vertex mapping to twice the imaginary
// class and the tail vertex to zero.
inline RestrictionSpec paper_s5_fold_spec() {
    GCM s5 = paper_s5_gcm();
    QuotientMap q = check_quotient(
        s5, {{s5.index_of("1"), s5.index_of("5")},
             {s5.index_of("2"), s5.index_of("6")},
             {s5.index_of("3")},
             {s5.index_of("4")}});
    return quotient_spec(q);
}

inline RestrictionSpec paper_s5_rho1_spec() {
    RestrictionSpec fold = paper_s5_fold_spec();
    GCM h33 = rank2_gcm(3, 3);
    std::vector<RootVec> images{
        RootVec{{1, 0}}, RootVec{{0, 1}}, RootVec{{2, 2}}, RootVec{{0, 0}}};
    return make_restriction_spec(fold.target, h33, images);
}

inline RestrictionSpec paper_s5_composed_spec() {
    return compose(paper_s5_fold_spec(), paper_s5_rho1_spec());
}

}  // namespace kmgrad
