#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmgrad/rootsys.hpp"

namespace kmgrad {

namespace detail {

inline std::vector<std::string> numeric_labels(std::size_t n, long first = 1) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(first + long(i)));
    return labels;
}

inline std::vector<std::vector<long>> path_matrix(std::size_t n) {
    std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 2;
    for (std::size_t i = 0; i + 1 < n; ++i) a[i][i + 1] = a[i + 1][i] = -1;
    return a;
}

}  // namespace detail

// Classical finite families with Bourbaki labelling ("1".."n"); throws on
// ranks outside the family range.
inline GCM classical_gcm(char family, std::size_t n) {
    using detail::numeric_labels;
    using detail::path_matrix;
    switch (family) {
        case 'A': {
            if (n < 1) throw Error("A_n needs n >= 1");
            return validate(numeric_labels(n), path_matrix(n));
        }
        case 'B': {
            if (n < 2) throw Error("B_n needs n >= 2");
            auto a = path_matrix(n);
            a[n - 1][n - 2] = -2;  // alpha_n short
            return validate(numeric_labels(n), a);
        }
        case 'C': {
            if (n < 2) throw Error("C_n needs n >= 2");
            auto a = path_matrix(n);
            a[n - 2][n - 1] = -2;  // alpha_n long
            return validate(numeric_labels(n), a);
        }
        case 'D': {
            if (n < 4) throw Error("D_n needs n >= 4");
            auto a = path_matrix(n);
            a[n - 1][n - 2] = a[n - 2][n - 1] = 0;
            a[n - 1][n - 3] = a[n - 3][n - 1] = -1;  // fork at n-2
            return validate(numeric_labels(n), a);
        }
        case 'E': {
            if (n < 6 || n > 8) throw Error("E_n needs 6 <= n <= 8");
            // Bourbaki: chain 1-3-4-...-n with 2 attached to 4.
            std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
            for (std::size_t i = 0; i < n; ++i) a[i][i] = 2;
            auto link = [&](std::size_t x, std::size_t y) { a[x - 1][y - 1] = a[y - 1][x - 1] = -1; };
            link(1, 3);
            link(2, 4);
            for (std::size_t v = 3; v < n; ++v) link(v, v + 1);
            return validate(numeric_labels(n), a);
        }
        case 'F': {
            if (n != 4) throw Error("F_n exists only for n = 4");
            auto a = path_matrix(4);
            a[1][2] = -2;  // alpha_3, alpha_4 short
            return validate(numeric_labels(4), a);
        }
        case 'G': {
            if (n != 2) throw Error("G_n exists only for n = 2");
            return validate(numeric_labels(2), {{2, -1}, {-3, 2}});
        }
        default:
            throw Error(std::string("unknown classical family: ") + family);
    }
}

// Untwisted affine extension X_n^(1): vertex "0" carries delta - theta,
// with entries computed from the highest root and the symmetrizer.
inline GCM affine_gcm(char family, std::size_t n) {
    GCM base = classical_gcm(family, n);
    RootVec theta = highest_root(base, full_index_set(base));
    RatVec d = symmetrizer(base);
    // theta is the highest (long) root: theta_vee = sum c_i (d_i/d_theta) coroot_i.
    Rat norm = 0;  // (theta,theta) at scale 1
    for (Index i = 0; i < base.size(); ++i)
        for (Index j = 0; j < base.size(); ++j)
            norm += Rat(theta.coords[i]) * Rat(theta.coords[j]) * d[i] * Rat(base.entry(i, j));
    std::vector<std::vector<long>> a(n + 1, std::vector<long>(n + 1, 0));
    a[0][0] = 2;
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) a[j + 1][i + 1] = base.entry(j, i);
        Rat zero_j = 0;  // a_{0,j} = -<alpha_j, theta_vee>
        for (Index i = 0; i < n; ++i)
            zero_j -= Rat(theta.coords[i]) * (2 * d[i] / norm) * Rat(base.entry(i, j));
        if (!is_integer(zero_j)) throw InternalCheckError("affine extension must be integral");
        a[0][j + 1] = static_cast<long>(zero_j.get_num().get_si());
        a[j + 1][0] = -coroot_pairing(base, theta, j);  // -<theta, coroot_j>
    }
    std::vector<std::string> labels{"0"};
    for (const std::string& l : base.labels()) labels.push_back(l);
    return validate(labels, a);
}

// The rank-10 hyperbolic overextension of E8, labelled {-1,0,1,...,8}:
// chain 1-3-4-5-6-7-8-0-(-1) with 2 attached to 4.
inline GCM e10_gcm() {
    std::vector<std::string> labels{"-1", "0", "1", "2", "3", "4", "5", "6", "7", "8"};
    std::vector<std::vector<long>> a(10, std::vector<long>(10, 0));
    for (std::size_t i = 0; i < 10; ++i) a[i][i] = 2;
    auto idx = [&](const std::string& l) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == l) return i;
        throw Error("bad label");
    };
    auto link = [&](const std::string& x, const std::string& y) {
        a[idx(x)][idx(y)] = a[idx(y)][idx(x)] = -1;
    };
    link("1", "3");
    link("3", "4");
    link("4", "5");
    link("5", "6");
    link("6", "7");
    link("7", "8");
    link("2", "4");
    link("8", "0");
    link("0", "-1");
    return validate(labels, a);
}

// The 6x6 symmetric matrix with two triple bonds hanging off a central
// 4-valent vertex; determinant 275.
inline GCM paper_s5_gcm() {
    return validate({"1", "2", "3", "4", "5", "6"},
                    {{2, -3, -1, 0, 0, 0},
                     {-3, 2, -1, 0, 0, 0},
                     {-1, -1, 2, -1, -1, -1},
                     {0, 0, -1, 2, 0, 0},
                     {0, 0, -1, 0, 2, -3},
                     {0, 0, -1, 0, -3, 2}});
}

// Rank-2 matrix [[2,-a],[-b,2]]; "H3,3" is the symmetric a = b = 3 case.
inline GCM rank2_gcm(long a, long b) {
    return validate({"1", "2"}, {{2, -a}, {-b, 2}});
}

// Resolves builtin matrix names: "E10", "paper-s5", "H<a>,<b>", classical
// "A5".."G2" and untwisted affine "A5(1)".
inline std::optional<GCM> builtin_gcm(const std::string& name) {
    if (name == "E10") return e10_gcm();
    if (name == "paper-s5") return paper_s5_gcm();
    if (name.size() > 1 && name[0] == 'H') {
        auto comma = name.find(',');
        if (comma != std::string::npos) {
            try {
                long a = std::stol(name.substr(1, comma - 1));
                long b = std::stol(name.substr(comma + 1));
                return rank2_gcm(a, b);
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
    }
    if (name.size() >= 2 && name[0] >= 'A' && name[0] <= 'G') {
        bool affine = name.size() > 3 && name.substr(name.size() - 3) == "(1)";
        std::string digits = affine ? name.substr(1, name.size() - 4) : name.substr(1);
        if (digits.empty() ||
            !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(c); }))
            return std::nullopt;
        try {
            std::size_t n = std::stoul(digits);
            return affine ? affine_gcm(name[0], n) : classical_gcm(name[0], n);
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace kmgrad
