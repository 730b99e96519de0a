#pragma once

#include <cstdlib>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kmgrad/rootsys.hpp"

namespace kmgrad {

// (I_k, J_k): the connected component of J u {k} containing k, and the rest.
inline std::pair<IndexSet, IndexSet> component_Ik(const GCM& g, const IndexSet& j_set, Index k) {
    for (Index j : j_set)
        if (j == k) throw KInJ("k must lie outside J");
    IndexSet with_k = j_set;
    with_k.push_back(k);
    std::sort(with_k.begin(), with_k.end());
    for (const IndexSet& comp : components(g, with_k)) {
        if (std::find(comp.begin(), comp.end(), k) == comp.end()) continue;
        IndexSet jk;
        for (Index i : comp)
            if (i != k) jk.push_back(i);
        return {comp, jk};
    }
    throw InternalCheckError("k not found in any component of J u {k}");
}

struct HkSolve {
    RatVec coeffs;          // over I_k, in I_k order
    bool admissible = false;  // all coefficients positive integers
};

// The coroot combination H_k with <alpha_j, H_k> = 2 delta_{k,j} on I_k,
// solved exactly over the finite-type component.
inline HkSolve solve_Hk(const GCM& g, const IndexSet& i_k, Index k) {
    if (!is_finite_type(g, i_k))
        throw NotFiniteTypeComponent("I_k must be of finite type");
    GCM sub = g.submatrix(i_k);
    std::size_t pos = std::find(i_k.begin(), i_k.end(), k) - i_k.begin();
    if (pos == i_k.size()) throw KInJ("k must belong to I_k");
    RatVec rhs(i_k.size(), Rat(0));
    rhs[pos] = 2;
    auto sol = sub.to_rat().transpose().solve(rhs);
    if (!sol) throw InternalCheckError("finite-type Cartan matrix must be invertible");
    HkSolve h;
    h.coeffs = *sol;
    h.admissible = true;
    for (const Rat& c : h.coeffs)
        if (!is_integer(c) || sign(c) <= 0) h.admissible = false;
    return h;
}

// Structural match of (I_k, k) against the classified list of irreducible
// pairs: A_{2n-1} with the middle vertex, B_n with the long chain end,
// C_n with the long-root end, D_{n,1} with the chain end, D_{2n,2} with a
// fork tip, and E_7 with the end of its long arm.
inline std::optional<std::string> irreducible_pair_match(const GCM& g, const IndexSet& i_k,
                                                         Index k) {
    if (!is_connected(g, i_k) || !is_finite_type(g, i_k)) return std::nullopt;
    GCM sub = g.submatrix(i_k);
    std::size_t pos = std::find(i_k.begin(), i_k.end(), k) - i_k.begin();
    if (pos == i_k.size()) return std::nullopt;
    auto label = finite_type_label(sub);
    if (!label) return std::nullopt;
    const std::size_t m = sub.size();
    char family = (*label)[0];
    switch (family) {
        case 'A': {
            if (m % 2 == 0) return std::nullopt;
            std::vector<Index> path = detail::path_order(sub);
            if (m > 1 && path[(m - 1) / 2] != pos) return std::nullopt;
            return "A_{2n-1}, n=" + std::to_string((m + 1) / 2);
        }
        case 'B': {
            if (m == 2) {
                // B2 = C2: the long-root vertex matches as C_2
                Index shorter = sub.entry(0, 1) == -2 ? 0 : 1;
                if (pos == shorter) return std::nullopt;
                return "C_n, n=2";
            }
            std::vector<Index> path = detail::path_order(sub);
            bool double_at_front = detail::edge_weight(sub, path[0], path[1]) == 2;
            Index far_end = double_at_front ? path.back() : path.front();
            if (pos != far_end) return std::nullopt;
            return "B_n, n=" + std::to_string(m);
        }
        case 'C': {
            std::vector<Index> path = detail::path_order(sub);
            bool double_at_front = detail::edge_weight(sub, path[0], path[1]) == 2;
            Index long_leaf = double_at_front ? path.front() : path.back();
            if (pos != long_leaf) return std::nullopt;
            return "C_n, n=" + std::to_string(m);
        }
        case 'D': {
            auto shape = detail::branch_shape(sub);
            if (!shape) return std::nullopt;
            if (m == 4) {
                // every leaf is equivalent; matches as a chain end
                if (pos == shape->branch) return std::nullopt;
                return "D_{n,1}, n=4";
            }
            bool is_tip = (pos == shape->arms[0].front()) || (pos == shape->arms[1].front());
            bool is_chain_end = pos == shape->arms[2].back();
            if (is_chain_end) return "D_{n,1}, n=" + std::to_string(m);
            if (is_tip && m % 2 == 0) return "D_{2n,2}, n=" + std::to_string(m / 2);
            return std::nullopt;
        }
        case 'E': {
            if (m != 7) return std::nullopt;
            auto shape = detail::branch_shape(sub);
            if (!shape || shape->arms[2].size() != 3) return std::nullopt;
            if (pos != shape->arms[2].back()) return std::nullopt;
            return "E_7";
        }
        default:
            return std::nullopt;
    }
}

struct PairComponent {
    Index k = 0;
    IndexSet i_k, j_k;
    bool component_finite_type = false;
    RatVec h_k_coeffs;  // over i_k; empty when the component is not finite type
    bool admissible = false;
    bool c_admissible = false;
    bool highest_coeff_one = false;  // coefficient of alpha_k in the highest root
    bool sigma_fixes_k = false;      // -w0 of W(I_k) fixes alpha_k
    std::optional<std::string> family_label;
};

// Verdict for one black vertex: admissibility by the integrality of H_k,
// C-admissibility by the level criterion (highest-root coefficient 1 at k
// plus w0-invariance). A redundant evaluation of <beta, H_k> over the whole
// finite root system must agree with the coefficient route; disagreement is
// a hard error, not a verdict.
inline PairComponent check_pair_k(const GCM& g, const IndexSet& j_set, Index k) {
    PairComponent pc;
    pc.k = k;
    std::tie(pc.i_k, pc.j_k) = component_Ik(g, j_set, k);
    if (!is_finite_type(g, pc.i_k))
        throw NotFiniteTypeComponent("component of " + g.labels()[k] + " is not of finite type");
    pc.component_finite_type = true;
    HkSolve h = solve_Hk(g, pc.i_k, k);
    pc.h_k_coeffs = h.coeffs;
    pc.admissible = h.admissible;
    RootVec theta = highest_root(g, pc.i_k);
    pc.highest_coeff_one = theta.coords[k] == 1;
    LongestElement w0 = longest_element(g, pc.i_k);
    pc.sigma_fixes_k = w0.sigma[k] == k;
    pc.c_admissible = pc.admissible && pc.highest_coeff_one && pc.sigma_fixes_k;
    pc.family_label = irreducible_pair_match(g, pc.i_k, k);

    // Redundant route: <beta, H_k> = sum_i n_i <beta, coroot_i> must land in
    // {0, 2} for every positive root of I_k exactly when the level criterion
    // holds.
    GCM sub = g.submatrix(pc.i_k);
    std::size_t kpos = std::find(pc.i_k.begin(), pc.i_k.end(), k) - pc.i_k.begin();
    bool levels_ok = true;
    for (const EnumeratedRoot& r : enumerate_positive_roots(sub, 1000)) {
        Rat level = 0;
        for (Index i = 0; i < pc.i_k.size(); ++i)
            level += h.coeffs[i] * Rat(coroot_pairing(sub, r.vec, i));
        if (level != 2 * Rat(r.vec.coords[kpos]))
            throw InternalCheckError("<beta,H_k> disagrees with the k-coefficient level");
        if (level != 0 && level != 2) levels_ok = false;
    }
    if (levels_ok != pc.highest_coeff_one)
        throw InternalCheckError("level criterion disagrees with the highest-root coefficient");
    return pc;
}

struct PairCheck {
    IndexSet j_set;
    std::vector<PairComponent> pair_components;
    bool c_admissible = false;
};

// Global C-admissibility of (I, J): every black vertex must pass. Components
// of non-finite type are recorded as failing rather than thrown, so sweeps
// can grade arbitrary finite-type J.
inline PairCheck check_pair(const GCM& g, const IndexSet& j_set) {
    if (!is_finite_type(g, j_set)) throw JNotFiniteType("J must be of finite type");
    PairCheck out;
    out.j_set = j_set;
    out.c_admissible = true;
    for (Index k : complement(g, j_set)) {
        try {
            out.pair_components.push_back(check_pair_k(g, j_set, k));
        } catch (const NotFiniteTypeComponent&) {
            PairComponent pc;
            pc.k = k;
            std::tie(pc.i_k, pc.j_k) = component_Ik(g, j_set, k);
            out.pair_components.push_back(pc);
        }
        const PairComponent& pc = out.pair_components.back();
        if (!pc.c_admissible) out.c_admissible = false;
        if (pc.component_finite_type && pc.family_label.has_value() != pc.c_admissible)
            throw InternalCheckError("table match disagrees with the algebraic verdict at vertex " +
                                     g.labels()[pc.k]);
    }
    return out;
}

struct CAdmissibleAlgebra {
    GCM source;
    IndexSet j_set;
    IndexSet i_prime;             // I \ J in ascending order
    GCM aj;                       // folded matrix over i_prime
    PairCheck pair;
    Realization realization;      // of the source
    std::vector<RatVec> hJ_basis;
    RatMatrix coroots_PiJv;       // dim_h x |I'|, column k = H_k in ambient coordinates
    RatMatrix roots_PiJ;          // |I'| x |hJ_basis|, row k = alpha_k restricted to h^J
};

// Folded Cartan matrix A^J with its realization data on h^J. Every invariant
// the construction promises is asserted here: GCM axioms via validate,
// <alpha'_l, H_k> = a'_{k,l}, corank preservation, H_k in h^J, and the
// correspondence of off-diagonal entries with J-connectedness.
inline CAdmissibleAlgebra build_AJ(const GCM& g, const IndexSet& j_set) {
    CAdmissibleAlgebra alg;
    alg.source = g;
    alg.j_set = j_set;
    alg.pair = check_pair(g, j_set);
    if (!alg.pair.c_admissible) throw NotCAdmissible("(I,J) is not a C-admissible pair");
    alg.i_prime = complement(g, j_set);

    const std::size_t np = alg.i_prime.size();
    std::vector<std::vector<long>> entries(np, std::vector<long>(np, 0));
    for (std::size_t a = 0; a < np; ++a) {
        const PairComponent& pc = alg.pair.pair_components[a];
        for (std::size_t b = 0; b < np; ++b) {
            Rat value = 0;
            for (Index t = 0; t < pc.i_k.size(); ++t)
                value += pc.h_k_coeffs[t] * Rat(g.entry(pc.i_k[t], alg.i_prime[b]));
            if (!is_integer(value))
                throw InternalCheckError("folded entry is not an integer");
            entries[a][b] = static_cast<long>(value.get_num().get_si());
        }
    }
    std::vector<std::string> labels;
    for (Index k : alg.i_prime) labels.push_back(g.labels()[k]);
    alg.aj = validate(labels, entries);

    for (std::size_t a = 0; a < np; ++a)
        for (std::size_t b = 0; b < np; ++b) {
            if (a == b) continue;
            bool connected = j_connected(g, j_set, alg.i_prime[a], alg.i_prime[b]);
            if ((entries[a][b] < 0) != connected || (entries[b][a] < 0) != connected)
                throw InternalCheckError("off-diagonal sign disagrees with J-connectedness");
        }
    if (corank(alg.aj) != corank(g))
        throw InternalCheckError("corank changed under the fold");

    alg.realization = build_realization(g);
    alg.hJ_basis = subspace_hJ(alg.realization, j_set);
    alg.coroots_PiJv = RatMatrix(alg.realization.dim_h, np);
    for (std::size_t a = 0; a < np; ++a) {
        const PairComponent& pc = alg.pair.pair_components[a];
        RatVec hk = alg.realization.combine_coroots(pc.i_k, pc.h_k_coeffs);
        for (Index j : j_set)
            if (alg.realization.pairing(j, hk) != 0)
                throw InternalCheckError("H_k does not lie in h^J");
        for (std::size_t b = 0; b < np; ++b)
            if (alg.realization.pairing(alg.i_prime[b], hk) != entries[a][b])
                throw InternalCheckError("<alpha'_l, H_k> != a'_{k,l}");
        for (Index r = 0; r < alg.realization.dim_h; ++r) alg.coroots_PiJv.at(r, a) = hk[r];
    }
    alg.roots_PiJ = RatMatrix(np, alg.hJ_basis.size());
    for (std::size_t a = 0; a < np; ++a)
        for (std::size_t m = 0; m < alg.hJ_basis.size(); ++m)
            alg.roots_PiJ.at(a, m) = alg.realization.pairing(alg.i_prime[a], alg.hJ_basis[m]);
    return alg;
}

// All J (including the empty set) making (I, J) C-admissible, ordered by
// size then lexicographically.
inline std::vector<IndexSet> enumerate_pairs(const GCM& g) {
    const std::size_t n = g.size();
    std::vector<IndexSet> subsets;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        IndexSet s;
        for (Index i = 0; i < n; ++i)
            if (mask & (std::uint64_t(1) << i)) s.push_back(i);
        subsets.push_back(std::move(s));
    }
    std::sort(subsets.begin(), subsets.end(), [](const IndexSet& a, const IndexSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<IndexSet> found;
    for (const IndexSet& j_set : subsets) {
        if (j_set.size() == n) continue;  // J = I leaves no grading vertices
        if (!is_finite_type(g, j_set)) continue;
        if (check_pair(g, j_set).c_admissible) found.push_back(j_set);
    }
    return found;
}

// Projection Q -> Q^J: drop the J coordinates.
inline RootVec restrict_pair(const GCM& g, const IndexSet& j_set, const RootVec& alpha) {
    IndexSet i_prime = complement(g, j_set);
    RootVec out{std::vector<long>(i_prime.size(), 0)};
    for (std::size_t a = 0; a < i_prime.size(); ++a) out.coords[a] = alpha.coords[i_prime[a]];
    return out;
}

inline std::size_t weyl_orbit_cap() {
    if (const char* env = std::getenv("KMGRAD_MAX_WEYL")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 1000000;
}

// Exact fiber of a nonzero restricted weight: candidates of J-height at most
// the coweight bound are filtered through root_test and closed under the
// finite group W_J.
inline std::vector<RootVec> weight_fiber(const GCM& g, const IndexSet& j_set,
                                         const RootVec& gamma) {
    PairCheck pair = check_pair(g, j_set);
    if (!pair.c_admissible) throw NotCAdmissible("(I,J) is not a C-admissible pair");
    IndexSet i_prime = complement(g, j_set);
    if (gamma.coords.size() != i_prime.size())
        throw DimensionMismatch("gamma must have one coordinate per I' vertex");
    if (gamma.is_zero()) throw ZeroWeight("the zero-weight fiber is Delta_J; ask for it directly");
    if (!gamma.nonnegative()) throw Error("gamma must lie in the positive restricted cone");

    Rat bound = 0;
    if (!j_set.empty()) {
        RatVec rho = half_sum_coroots(g, j_set);
        for (std::size_t a = 0; a < i_prime.size(); ++a) {
            if (gamma.coords[a] == 0) continue;
            Rat pairing = 0;
            for (Index t = 0; t < j_set.size(); ++t)
                pairing += rho[t] * Rat(g.entry(j_set[t], i_prime[a]));
            bound += Rat(gamma.coords[a]) * (-pairing);
        }
    }
    long ht_j_max = static_cast<long>(mpz_class(bound.get_num() / bound.get_den()).get_si());

    std::set<std::vector<long>> fiber;
    std::vector<RootVec> queue;
    RootVec base = zero_root(g);
    for (std::size_t a = 0; a < i_prime.size(); ++a) base.coords[i_prime[a]] = gamma.coords[a];
    std::vector<long> j_part(j_set.size(), 0);
    std::function<void(std::size_t, long)> seed = [&](std::size_t pos, long remaining) {
        if (pos == j_set.size()) {
            RootVec cand = base;
            for (std::size_t t = 0; t < j_set.size(); ++t) cand.coords[j_set[t]] = j_part[t];
            if (root_test(g, cand).is_root() && fiber.insert(cand.coords).second)
                queue.push_back(cand);
            return;
        }
        for (long c = 0; c <= remaining; ++c) {
            j_part[pos] = c;
            seed(pos + 1, remaining - c);
        }
        j_part[pos] = 0;
    };
    seed(0, ht_j_max);

    const std::size_t cap = weyl_orbit_cap();
    for (std::size_t head = 0; head < queue.size(); ++head) {
        RootVec cur = queue[head];
        for (Index j : j_set) {
            RootVec img = reflect(g, j, cur);
            if (fiber.insert(img.coords).second) {
                if (fiber.size() > cap)
                    throw OrbitCapExceeded("Weyl orbit exceeded KMGRAD_MAX_WEYL");
                queue.push_back(img);
            }
        }
    }
    std::vector<RootVec> out;
    for (const auto& coords : fiber) {
        RootVec v{coords};
        if (!v.nonnegative())
            throw InternalCheckError("fiber member left the positive cone");
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct ZeroWeightFiber {
    std::vector<RootVec> delta_j;  // both signs
    std::size_t dim_h = 0;
};

// The weight-0 layer: Delta_J together with the Cartan dimension.
inline ZeroWeightFiber zero_weight_fiber(const GCM& g, const IndexSet& j_set) {
    if (!is_finite_type(g, j_set)) throw JNotFiniteType("J must be of finite type");
    ZeroWeightFiber out;
    out.dim_h = g.size() + corank(g);
    GCM sub = g.submatrix(j_set);
    for (const EnumeratedRoot& r : enumerate_positive_roots(sub, 1000)) {
        RootVec v = zero_root(g);
        for (std::size_t t = 0; t < j_set.size(); ++t) v.coords[j_set[t]] = r.vec.coords[t];
        out.delta_j.push_back(-v);
        out.delta_j.push_back(v);
    }
    std::sort(out.delta_j.begin(), out.delta_j.end());
    return out;
}

struct PairRestrictionReport {
    bool ok = true;
    std::string failure;  // first violated property, with witness
    std::size_t source_roots = 0;
    std::size_t restricted_weights = 0;
    std::size_t completeness_checked = 0;
    std::size_t strings_checked = 0;
};

namespace detail {

// J-height cost of each I' vertex: -<alpha_k, rho_J>. A restricted weight
// gamma is guaranteed a source preimage of height <= ht(gamma) + cost(gamma);
// set comparisons below a source height cutoff are decidable only inside
// that region.
inline RatVec restriction_costs(const GCM& g, const IndexSet& j_set, const IndexSet& i_prime) {
    RatVec costs(i_prime.size(), Rat(0));
    if (j_set.empty()) return costs;
    RatVec rho = half_sum_coroots(g, j_set);
    for (std::size_t a = 0; a < i_prime.size(); ++a) {
        Rat pairing = 0;
        for (Index t = 0; t < j_set.size(); ++t)
            pairing += rho[t] * Rat(g.entry(j_set[t], i_prime[a]));
        costs[a] = -pairing;
    }
    return costs;
}

inline Rat guarantee_bound(const RootVec& gamma, const RatVec& costs) {
    Rat b = gamma.height();
    for (std::size_t a = 0; a < gamma.coords.size(); ++a)
        b += Rat(gamma.coords[a]) * costs[a];
    return b;
}

}  // namespace detail

// Verifies, on the restricted image of the height-bounded positive root
// system, the three axioms characterizing Delta(A^J)_+ together with the
// two-sided set comparison against the independent enumeration of the given
// target matrix. Completeness and string endpoints are only judged where a
// preimage below the height bound is guaranteed.
inline PairRestrictionReport verify_pair_restriction_with_target(const GCM& g,
                                                                 const IndexSet& j_set,
                                                                 const GCM& target,
                                                                 long height_bound) {
    PairRestrictionReport rep;
    IndexSet i_prime = complement(g, j_set);
    if (target.size() != i_prime.size())
        throw DimensionMismatch("target matrix must be indexed by I'");
    const std::size_t np = i_prime.size();

    std::set<std::vector<long>> restricted;
    auto source_roots = enumerate_positive_roots(g, height_bound);
    rep.source_roots = source_roots.size();
    for (const EnumeratedRoot& r : source_roots) {
        RootVec img = restrict_pair(g, j_set, r.vec);
        if (!img.is_zero()) restricted.insert(img.coords);
    }
    rep.restricted_weights = restricted.size();
    auto fail = [&](const std::string& why) {
        rep.ok = false;
        if (rep.failure.empty()) rep.failure = why;
    };

    // (i) contains Pi^J, sits in the positive cone, omits 2 alpha'_k;
    // membership in Delta(A^J)+ and connected support for every element.
    for (std::size_t a = 0; a < np; ++a) {
        RootVec unit{std::vector<long>(np, 0)};
        unit.coords[a] = 1;
        if (!restricted.count(unit.coords))
            fail("alpha'_" + target.labels()[a] + " missing from the restricted set");
        unit.coords[a] = 2;
        if (restricted.count(unit.coords))
            fail("2 alpha'_" + target.labels()[a] + " appears in the restricted set");
    }
    for (const auto& coords : restricted) {
        RootVec v{coords};
        if (!v.nonnegative()) {
            fail("restricted weight outside the positive cone at " + to_string(v));
            continue;
        }
        if (!root_test(target, v).is_root())
            fail("restricted weight " + to_string(v) + " is not a root of A^J");
        if (!is_connected(target, v.support()))
            fail("restricted weight " + to_string(v) + " has disconnected support");
    }

    // Completeness: every root of A^J whose guaranteed preimage height fits
    // under the bound must be hit.
    RatVec costs = detail::restriction_costs(g, j_set, i_prime);
    for (const EnumeratedRoot& r : enumerate_positive_roots(target, height_bound)) {
        if (detail::guarantee_bound(r.vec, costs) > height_bound) continue;
        ++rep.completeness_checked;
        if (!restricted.count(r.vec.coords))
            fail("root " + to_string(r.vec) + " of A^J missing below the guaranteed bound");
    }

    // (ii) strings against <., H_k>, endpoints judged only where decidable.
    auto decidably_absent = [&](const RootVec& v) {
        if (!v.nonnegative()) return true;
        return detail::guarantee_bound(v, costs) <= height_bound;
    };
    for (const auto& coords : restricted) {
        RootVec gamma{coords};
        for (std::size_t a = 0; a < np; ++a) {
            RootVec unit{std::vector<long>(np, 0)};
            unit.coords[a] = 1;
            if (gamma == unit) continue;
            long q = 0, p = 0;
            RootVec walk = gamma;
            while (true) {
                walk.coords[a] += 1;
                if (!restricted.count(walk.coords)) break;
                ++q;
            }
            RootVec walk_down = gamma;
            while (true) {
                walk_down.coords[a] -= 1;
                if (walk_down.coords[a] < 0 || !restricted.count(walk_down.coords)) break;
                ++p;
            }
            if (!decidably_absent(walk) || !decidably_absent(walk_down)) continue;
            long pairing = coroot_pairing(target, gamma, a);
            ++rep.strings_checked;
            if (p - q != pairing)
                fail("string through " + to_string(gamma) + " in direction " +
                     target.labels()[a] + " has p-q=" + std::to_string(p - q) +
                     " but <.,H_k>=" + std::to_string(pairing));
        }
    }
    return rep;
}

inline PairRestrictionReport verify_pair_restriction(const GCM& g, const IndexSet& j_set,
                                                      long height_bound) {
    CAdmissibleAlgebra alg = build_AJ(g, j_set);
    return verify_pair_restriction_with_target(g, j_set, alg.aj, height_bound);
}

}  // namespace kmgrad
