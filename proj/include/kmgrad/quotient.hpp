#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kmgrad/rootsys.hpp"

namespace kmgrad {

// Surjection of vertex sets with fibers pairwise unlinked (MG1) and
// fiber-column sums independent of the column representative (MG2).
struct QuotientMap {
    GCM source;
    std::vector<std::string> target_labels;   // "s1", "s2", ... by fiber minimum
    std::vector<IndexSet> fibers;             // ordered by smallest member
    std::vector<std::size_t> rho;             // vertex index -> fiber position

    std::size_t fiber_count() const { return fibers.size(); }
};

// Verifies (MG1) and (MG2) cell by cell; violations carry the witness cells.
inline QuotientMap check_quotient(const GCM& g, std::vector<IndexSet> fibers) {
    std::vector<bool> covered(g.size(), false);
    for (IndexSet& f : fibers) {
        std::sort(f.begin(), f.end());
        for (Index i : f) {
            if (i >= g.size()) throw AxisMismatch("fiber vertex out of range");
            if (covered[i]) throw AxisMismatch("vertex appears in two fibers");
            covered[i] = true;
        }
        if (f.empty()) throw AxisMismatch("empty fiber");
    }
    for (Index i = 0; i < g.size(); ++i)
        if (!covered[i]) throw AxisMismatch("vertex " + g.labels()[i] + " not covered");
    std::sort(fibers.begin(), fibers.end(),
              [](const IndexSet& a, const IndexSet& b) { return a.front() < b.front(); });

    QuotientMap q;
    q.source = g;
    q.fibers = fibers;
    q.rho.assign(g.size(), 0);
    for (std::size_t s = 0; s < fibers.size(); ++s) {
        q.target_labels.push_back("s" + std::to_string(s + 1));
        for (Index i : fibers[s]) q.rho[i] = s;
    }
    for (const IndexSet& f : fibers)
        for (Index k : f)
            for (Index l : f)
                if (k != l && g.entry(k, l) != 0)
                    throw MG1Violation(g.labels()[k], g.labels()[l]);
    for (std::size_t s = 0; s < fibers.size(); ++s)
        for (std::size_t t = 0; t < fibers.size(); ++t) {
            if (s == t) continue;
            long first = 0;
            bool have_first = false;
            Index first_j = 0;
            for (Index j : fibers[t]) {
                long sum = 0;
                for (Index i : fibers[s]) sum += g.entry(i, j);
                if (!have_first) {
                    first = sum;
                    first_j = j;
                    have_first = true;
                } else if (sum != first) {
                    throw MG2Violation(q.target_labels[s], q.target_labels[t],
                                       g.labels()[first_j], g.labels()[j]);
                }
            }
        }
    return q;
}

inline QuotientMap identity_quotient(const GCM& g) {
    std::vector<IndexSet> fibers;
    for (Index i = 0; i < g.size(); ++i) fibers.push_back({i});
    return check_quotient(g, fibers);
}

// Fiber-sum projection of the root lattice: additive and height-preserving.
inline RootVec restrict_by_quotient(const QuotientMap& q, const RootVec& alpha) {
    RootVec out{std::vector<long>(q.fiber_count(), 0)};
    for (Index i = 0; i < alpha.coords.size(); ++i) out.coords[q.rho[i]] += alpha.coords[i];
    return out;
}

struct MaximalGradation {
    QuotientMap quotient;
    GCM abar;                      // folded matrix over the target labels
    Realization source_realization;
    RatMatrix gamma_coroots;       // dim_h x |target|: column s = sum of fiber coroots
    std::vector<RatVec> a_basis;   // realization of abar inside the source: a' + a''
};

// Folded matrix and the realization of it sitting inside the source Cartan
// subalgebra: a' is spanned by the fiber coroot sums, completed inside
// h^Gamma = {h : <alpha_k - alpha_l, h> = 0 whenever rho(k) = rho(l)} by
// standard nullspace basis vectors, in order, until the minimal realization
// dimension 2|target| - rank(Abar) is reached with the restricted fiber
// functionals independent.
inline MaximalGradation build_Abar(const QuotientMap& q) {
    const GCM& g = q.source;
    MaximalGradation mg;
    mg.quotient = q;
    const std::size_t nf = q.fiber_count();
    std::vector<std::vector<long>> entries(nf, std::vector<long>(nf, 0));
    for (std::size_t s = 0; s < nf; ++s)
        for (std::size_t t = 0; t < nf; ++t) {
            Index j = q.fibers[t].front();
            long sum = 0;
            for (Index i : q.fibers[s]) sum += g.entry(i, j);
            entries[s][t] = sum;
        }
    mg.abar = validate(q.target_labels, entries);
    if (is_connected(g, full_index_set(g)) && !is_connected(mg.abar, full_index_set(mg.abar)))
        throw InternalCheckError("folded matrix of an indecomposable source must be indecomposable");

    mg.source_realization = build_realization(g);
    const Realization& re = mg.source_realization;
    mg.gamma_coroots = RatMatrix(re.dim_h, nf);
    for (std::size_t s = 0; s < nf; ++s)
        for (Index i : q.fibers[s])
            for (Index r = 0; r < re.dim_h; ++r)
                mg.gamma_coroots.at(r, s) += re.coroot_cols.at(r, i);

    // <gamma_t, gamma_s^vee> must reproduce abar exactly, gamma_t read off
    // any fiber representative.
    for (std::size_t s = 0; s < nf; ++s)
        for (std::size_t t = 0; t < nf; ++t)
            if (re.pairing(q.fibers[t].front(), mg.gamma_coroots.col(s)) != entries[s][t])
                throw InternalCheckError("<gamma_t, gamma_s^vee> != abar entry");

    // h^Gamma as a nullspace; complete {gamma_s^vee} to the minimal
    // realization dimension.
    std::vector<RatVec> h_gamma;
    {
        std::vector<RatVec> rows;
        for (const IndexSet& f : q.fibers)
            for (std::size_t t = 1; t < f.size(); ++t) {
                RatVec diff(re.dim_h);
                for (Index c = 0; c < re.dim_h; ++c)
                    diff[c] = re.root_rows.at(f[t], c) - re.root_rows.at(f[0], c);
                rows.push_back(std::move(diff));
            }
        if (rows.empty()) {
            for (Index c = 0; c < re.dim_h; ++c) {
                RatVec e(re.dim_h, Rat(0));
                e[c] = 1;
                h_gamma.push_back(std::move(e));
            }
        } else {
            RatMatrix m(rows.size(), re.dim_h);
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (Index c = 0; c < re.dim_h; ++c) m.at(r, c) = rows[r][c];
            h_gamma = m.nullspace();
        }
    }
    const std::size_t target_dim = 2 * nf - mg.abar.to_rat().rank();
    for (std::size_t s = 0; s < nf; ++s) mg.a_basis.push_back(mg.gamma_coroots.col(s));
    auto stack_rank = [&](const std::vector<RatVec>& vecs) {
        RatMatrix m(vecs.size(), re.dim_h);
        for (std::size_t r = 0; r < vecs.size(); ++r)
            for (Index c = 0; c < re.dim_h; ++c) m.at(r, c) = vecs[r][c];
        return m.rank();
    };
    auto gamma_functional_rank = [&](const std::vector<RatVec>& basis) {
        RatMatrix m(nf, basis.size());
        for (std::size_t s = 0; s < nf; ++s)
            for (std::size_t b = 0; b < basis.size(); ++b)
                m.at(s, b) = re.pairing(q.fibers[s].front(), basis[b]);
        return m.rank();
    };
    // Each extension vector must separate one more fiber functional, which
    // also forces linear independence from the current basis.
    for (const RatVec& cand : h_gamma) {
        if (mg.a_basis.size() == target_dim) break;
        std::vector<RatVec> trial = mg.a_basis;
        trial.push_back(cand);
        if (gamma_functional_rank(trial) <= gamma_functional_rank(mg.a_basis)) continue;
        mg.a_basis = std::move(trial);
    }
    if (mg.a_basis.size() != target_dim || stack_rank(mg.a_basis) != target_dim)
        throw InternalCheckError("could not complete the folded realization inside h^Gamma");
    if (gamma_functional_rank(mg.a_basis) != nf)
        throw InternalCheckError("fiber functionals are not independent on the folded Cartan");
    return mg;
}

struct MaximalGradationReport {
    bool ok = true;
    std::string failure;
    std::size_t image_weights = 0;
    std::size_t strings_checked = 0;
    std::vector<std::size_t> fiber_sizes;  // per image, enumeration order
};

// The image of the height-bounded positive roots must coincide exactly with
// the positive roots of Abar below the bound (the projection preserves
// height, so no truncation slack is needed), contain every gamma_s, omit
// 2 gamma_s, have connected supports, satisfy the string law against
// <., gamma_s^vee>, and have no nonzero root restricting to zero.
inline MaximalGradationReport verify_maximal(const QuotientMap& q, long height_bound) {
    MaximalGradation mg = build_Abar(q);
    MaximalGradationReport rep;
    auto fail = [&](const std::string& why) {
        rep.ok = false;
        if (rep.failure.empty()) rep.failure = why;
    };

    std::set<std::vector<long>> image;
    std::map<std::vector<long>, std::size_t> fiber_count;
    for (const EnumeratedRoot& r : enumerate_positive_roots(q.source, height_bound)) {
        RootVec img = restrict_by_quotient(q, r.vec);
        if (img.is_zero()) {
            fail("nonzero root restricted to zero at " + to_string(r.vec));
            continue;
        }
        if (img.height() != r.vec.height()) fail("projection failed to preserve height");
        image.insert(img.coords);
        ++fiber_count[img.coords];
    }
    rep.image_weights = image.size();

    std::set<std::vector<long>> sigma_plus;
    for (const EnumeratedRoot& r : enumerate_positive_roots(mg.abar, height_bound))
        sigma_plus.insert(r.vec.coords);
    if (image != sigma_plus) {
        for (const auto& c : image)
            if (!sigma_plus.count(c)) {
                fail("image weight " + to_string(RootVec{c}) + " is not a root of Abar");
                break;
            }
        for (const auto& c : sigma_plus)
            if (!image.count(c)) {
                fail("root " + to_string(RootVec{c}) + " of Abar has no preimage below bound");
                break;
            }
    }
    const std::size_t nf = q.fiber_count();
    for (std::size_t s = 0; s < nf; ++s) {
        RootVec unit{std::vector<long>(nf, 0)};
        unit.coords[s] = 1;
        if (!image.count(unit.coords)) fail("gamma_" + q.target_labels[s] + " missing");
        unit.coords[s] = 2;
        if (image.count(unit.coords)) fail("2 gamma_" + q.target_labels[s] + " in the image");
    }
    for (const auto& coords : image) {
        RootVec gamma{coords};
        if (!is_connected(mg.abar, gamma.support()))
            fail("image weight " + to_string(gamma) + " has disconnected support");
        for (std::size_t s = 0; s < nf; ++s) {
            RootVec unit{std::vector<long>(nf, 0)};
            unit.coords[s] = 1;
            if (gamma == unit) continue;
            long q_up = 0, p_down = 0;
            RootVec walk = gamma;
            while (true) {
                walk.coords[s] += 1;
                if (!image.count(walk.coords)) break;
                ++q_up;
            }
            RootVec walk_down = gamma;
            while (true) {
                walk_down.coords[s] -= 1;
                if (walk_down.coords[s] < 0 || !image.count(walk_down.coords)) break;
                ++p_down;
            }
            // the upper endpoint is only decidable below the height cutoff
            if (gamma.height() + q_up + 1 > height_bound) continue;
            ++rep.strings_checked;
            long pairing = coroot_pairing(mg.abar, gamma, s);
            if (p_down - q_up != pairing)
                fail("string through " + to_string(gamma) + " in direction " +
                     q.target_labels[s] + " has p-q=" + std::to_string(p_down - q_up) +
                     " but pairing " + std::to_string(pairing));
        }
    }
    for (const auto& [coords, count] : fiber_count) rep.fiber_sizes.push_back(count);
    return rep;
}

// All admissible quotients as set partitions of the vertex set, identity
// first, then by decreasing fiber count and lexicographic fiber lists.
inline std::vector<QuotientMap> enumerate_quotients(const GCM& g, std::size_t max_fibers = 0) {
    if (max_fibers == 0) max_fibers = g.size();
    const std::size_t n = g.size();
    std::vector<QuotientMap> found;
    std::vector<std::size_t> assign(n, 0);
    // restricted growth strings enumerate set partitions canonically
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t blocks) {
        if (pos == n) {
            if (blocks > max_fibers) return;
            std::vector<IndexSet> fibers(blocks);
            for (Index i = 0; i < n; ++i) fibers[assign[i]].push_back(i);
            try {
                found.push_back(check_quotient(g, fibers));
            } catch (const Error&) {
            }
            return;
        }
        for (std::size_t b = 0; b <= blocks && b < n; ++b) {
            assign[pos] = b;
            rec(pos + 1, std::max(blocks, b + 1));
        }
    };
    if (n > 0) rec(0, 0);
    std::sort(found.begin(), found.end(), [](const QuotientMap& a, const QuotientMap& b) {
        if (a.fiber_count() != b.fiber_count()) return a.fiber_count() > b.fiber_count();
        return a.fibers < b.fibers;
    });
    return found;
}

}  // namespace kmgrad
