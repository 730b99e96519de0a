#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kmgrad/gcm.hpp"

namespace kmgrad {

namespace detail {

inline std::vector<Index> neighbors(const GCM& g, Index v) {
    std::vector<Index> nb;
    for (Index w = 0; w < g.size(); ++w)
        if (g.linked(v, w)) nb.push_back(w);
    return nb;
}

// Vertices of a path-shaped diagram in path order; empty if not a path.
// Of the two leaf starting points the smaller index wins.
inline std::vector<Index> path_order(const GCM& g) {
    if (g.size() == 1) return {0};
    std::vector<Index> leaves;
    for (Index v = 0; v < g.size(); ++v) {
        std::size_t deg = neighbors(g, v).size();
        if (deg > 2 || deg == 0) return {};
        if (deg == 1) leaves.push_back(v);
    }
    if (leaves.size() != 2) return {};
    std::vector<Index> order{std::min(leaves[0], leaves[1])};
    Index prev = order[0], cur = order[0];
    while (order.size() < g.size()) {
        bool advanced = false;
        for (Index w : neighbors(g, cur)) {
            if (w != prev) {
                order.push_back(w);
                prev = cur;
                cur = w;
                advanced = true;
                break;
            }
        }
        if (!advanced) return {};
    }
    return order;
}

// Arms of a diagram with exactly one degree-3 branch vertex: each arm listed
// from the branch outward. Returns nullopt for any other shape.
struct BranchShape {
    Index branch;
    std::vector<std::vector<Index>> arms;  // sorted by length ascending
};

inline std::optional<BranchShape> branch_shape(const GCM& g) {
    std::optional<Index> branch;
    for (Index v = 0; v < g.size(); ++v) {
        std::size_t deg = neighbors(g, v).size();
        if (deg > 3) return std::nullopt;
        if (deg == 3) {
            if (branch) return std::nullopt;
            branch = v;
        }
    }
    if (!branch) return std::nullopt;
    BranchShape shape;
    shape.branch = *branch;
    for (Index start : neighbors(g, *branch)) {
        std::vector<Index> arm{start};
        Index prev = *branch, cur = start;
        while (true) {
            std::vector<Index> nb = neighbors(g, cur);
            if (nb.size() > 2) return std::nullopt;  // second branch point
            bool advanced = false;
            for (Index w : nb)
                if (w != prev) {
                    arm.push_back(w);
                    prev = cur;
                    cur = w;
                    advanced = true;
                    break;
                }
            if (!advanced) break;
        }
        shape.arms.push_back(std::move(arm));
    }
    std::sort(shape.arms.begin(), shape.arms.end(),
              [](const auto& a, const auto& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
              });
    return shape;
}

inline std::size_t edge_weight(const GCM& g, Index i, Index j) {
    return static_cast<std::size_t>(std::max(-g.entry(i, j), -g.entry(j, i)));
}

inline bool simply_laced(const GCM& g) {
    for (Index i = 0; i < g.size(); ++i)
        for (Index j = i + 1; j < g.size(); ++j)
            if (g.linked(i, j) && (g.entry(i, j) != -1 || g.entry(j, i) != -1)) return false;
    return true;
}

}  // namespace detail

// Classical name of an indecomposable finite-type diagram ("A3", "F4", ...),
// nullopt when the shape is not classical (which cannot happen for verified
// finite-type input). Decomposable matrices get "+"-joined component names.
inline std::optional<std::string> finite_type_label(const GCM& g) {
    std::vector<IndexSet> comps = components(g, full_index_set(g));
    if (comps.empty()) return std::nullopt;
    if (comps.size() > 1) {
        std::vector<std::string> names;
        for (const IndexSet& c : comps) {
            auto name = finite_type_label(g.submatrix(c));
            if (!name) return std::nullopt;
            names.push_back(*name);
        }
        std::sort(names.begin(), names.end());
        std::string joined = names[0];
        for (std::size_t i = 1; i < names.size(); ++i) joined += "+" + names[i];
        return joined;
    }
    const std::size_t n = g.size();
    if (n == 1) return "A1";

    std::size_t doubles = 0, triples = 0, others = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            if (!g.linked(i, j)) continue;
            long p = g.entry(i, j) * g.entry(j, i);
            if (p == 1) continue;
            if (p == 2) ++doubles;
            else if (p == 3) ++triples;
            else ++others;
        }
    if (others > 0 || doubles + triples > 1) return std::nullopt;

    if (triples == 1) return n == 2 ? std::optional<std::string>("G2") : std::nullopt;

    if (doubles == 1) {
        std::vector<Index> path = detail::path_order(g);
        if (path.empty()) return std::nullopt;
        // Locate the double edge along the path.
        std::size_t pos = 0;
        while (pos + 1 < path.size() && detail::edge_weight(g, path[pos], path[pos + 1]) != 2)
            ++pos;
        bool terminal = pos == 0 || pos + 2 == path.size();
        if (!terminal) {
            return (n == 4 && pos == 1) ? std::optional<std::string>("F4") : std::nullopt;
        }
        if (n == 2) return "B2";  // B2 = C2; one canonical name
        // The leaf endpoint of the double edge is short for B, long for C.
        Index inner = pos == 0 ? path[1] : path[path.size() - 2];
        Index leaf = pos == 0 ? path[0] : path.back();
        bool leaf_short = g.entry(leaf, inner) == -2;
        return (leaf_short ? "B" : "C") + std::to_string(n);
    }

    // Simply laced: path or single branch point.
    if (!detail::path_order(g).empty()) return "A" + std::to_string(n);
    auto shape = detail::branch_shape(g);
    if (!shape) return std::nullopt;
    std::vector<std::size_t> arms;
    for (const auto& a : shape->arms) arms.push_back(a.size());
    if (arms.size() != 3) return std::nullopt;
    if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
        return "E" + std::to_string(n);
    return std::nullopt;
}

// Exact diagram isomorphism: a vertex bijection carrying one Cartan matrix
// onto the other entry-for-entry. Backtracking with a local invariant,
// adequate for the ranks this library targets.
inline bool gcm_isomorphic(const GCM& a, const GCM& b) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    auto invariant = [](const GCM& g, Index v) {
        std::vector<std::pair<long, long>> edges;
        for (Index w = 0; w < g.size(); ++w)
            if (g.linked(v, w)) edges.emplace_back(g.entry(v, w), g.entry(w, v));
        std::sort(edges.begin(), edges.end());
        return edges;
    };
    std::vector<std::vector<std::pair<long, long>>> inv_a(n), inv_b(n);
    for (Index v = 0; v < n; ++v) {
        inv_a[v] = invariant(a, v);
        inv_b[v] = invariant(b, v);
    }
    {
        auto sa = inv_a, sb = inv_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    std::vector<Index> image(n, n);
    std::vector<bool> used(n, false);
    auto consistent = [&](Index v, Index w) {
        if (inv_a[v] != inv_b[w]) return false;
        for (Index u = 0; u < n; ++u) {
            if (image[u] == n) continue;
            if (a.entry(v, u) != b.entry(w, image[u])) return false;
            if (a.entry(u, v) != b.entry(image[u], w)) return false;
        }
        return true;
    };
    std::function<bool(Index)> place = [&](Index v) -> bool {
        if (v == n) return true;
        for (Index w = 0; w < n; ++w) {
            if (used[w] || !consistent(v, w)) continue;
            image[v] = w;
            used[w] = true;
            if (place(v + 1)) return true;
            image[v] = n;
            used[w] = false;
        }
        return false;
    };
    return place(0);
}

}  // namespace kmgrad
