#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kmgrad/matrix.hpp"

using namespace kmgrad;

namespace {

// Deterministic PRNG for hand-rolled property tests.
struct Rng {
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    long pick(long lo, long hi) { return lo + long(next() % std::uint64_t(hi - lo + 1)); }
};

RatMatrix random_integer_matrix(Rng& rng, std::size_t n, long lo, long hi) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rng.pick(lo, hi);
    return m;
}

// Cofactor-expansion determinant, the independent oracle for the Gaussian one.
Rat det_by_cofactors(const RatMatrix& m) {
    std::size_t n = m.rows();
    if (n == 1) return m.at(0, 0);
    Rat total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        RatMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Rat term = m.at(0, j) * det_by_cofactors(minor);
        total += (j % 2 == 0) ? term : -term;
    }
    return total;
}

}  // namespace

TEST_CASE("determinant matches cofactor expansion on random matrices") {
    Rng rng;
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + trial % 5;
        RatMatrix m = random_integer_matrix(rng, n, -4, 4);
        CHECK(m.det() == det_by_cofactors(m));
    }
}

TEST_CASE("rank and nullspace are consistent") {
    RatMatrix m{{2, -2}, {-2, 2}};
    CHECK(m.rank() == 1);
    auto ns = m.nullspace();
    REQUIRE(ns.size() == 1);
    CHECK(m.apply(ns[0]) == RatVec(2, Rat(0)));

    Rng rng;
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 2 + trial % 4;
        RatMatrix a = random_integer_matrix(rng, n, -3, 3);
        auto basis = a.nullspace();
        CHECK(a.rank() + basis.size() == n);
        for (const RatVec& v : basis) CHECK(a.apply(v) == RatVec(n, Rat(0)));
    }
}

TEST_CASE("solve returns the unique solution when it exists") {
    RatMatrix a{{2, -1}, {-1, 2}};
    auto x = a.solve({rat(2), rat(0)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == rat(4, 3));
    CHECK((*x)[1] == rat(2, 3));
    RatMatrix sing{{1, 1}, {1, 1}};
    CHECK(!sing.solve({rat(1), rat(0)}).has_value());
}

TEST_CASE("characteristic polynomial is exact") {
    RatMatrix d(3, 3);
    d.at(0, 0) = 1;
    d.at(1, 1) = 2;
    d.at(2, 2) = -3;
    // (t-1)(t-2)(t+3) = t^3 - 7t + 6
    RatVec p = d.char_poly();
    REQUIRE(p.size() == 4);
    CHECK(p[0] == 1);
    CHECK(p[1] == 0);
    CHECK(p[2] == -7);
    CHECK(p[3] == 6);

    Rng rng;
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + trial % 4;
        RatMatrix m = random_integer_matrix(rng, n, -3, 3);
        RatVec cp = m.char_poly();
        // p(0) = det(-M) = (-1)^n det(M)
        Rat sign = (n % 2 == 0) ? Rat(1) : Rat(-1);
        CHECK(cp[n] == sign * m.det());
        Rat tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += m.at(i, i);
        CHECK(cp[1] == -tr);
    }
}

TEST_CASE("matrix product and transpose") {
    RatMatrix a{{1, 2}, {3, 4}};
    RatMatrix b{{0, 1}, {1, 0}};
    RatMatrix ab = a * b;
    CHECK(ab.at(0, 0) == 2);
    CHECK(ab.at(0, 1) == 1);
    CHECK(ab.at(1, 0) == 4);
    CHECK(ab.at(1, 1) == 3);
    CHECK(a.transpose().at(0, 1) == 3);
}
