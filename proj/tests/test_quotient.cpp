#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kmgrad/builtins.hpp"
#include "kmgrad/quotient.hpp"

using namespace kmgrad;

namespace {

std::vector<IndexSet> s5_fold_fibers(const GCM& s5) {
    return {{s5.index_of("1"), s5.index_of("5")},
            {s5.index_of("2"), s5.index_of("6")},
            {s5.index_of("3")},
            {s5.index_of("4")}};
}

std::vector<GCM> quotient_corpus() {
    std::vector<GCM> out;
    for (std::size_t n = 1; n <= 5; ++n) out.push_back(classical_gcm('A', n));
    for (std::size_t n = 2; n <= 5; ++n) out.push_back(classical_gcm('B', n));
    for (std::size_t n = 3; n <= 5; ++n) out.push_back(classical_gcm('C', n));
    out.push_back(classical_gcm('D', 4));
    out.push_back(classical_gcm('D', 5));
    for (std::size_t n = 1; n <= 4; ++n) out.push_back(affine_gcm('A', n));
    out.push_back(affine_gcm('C', 2));
    out.push_back(affine_gcm('D', 4));
    out.push_back(rank2_gcm(3, 3));
    out.push_back(paper_s5_gcm());
    return out;
}

}  // namespace

TEST_CASE("check_quotient basics") {
    GCM a3 = classical_gcm('A', 3);
    QuotientMap id = identity_quotient(a3);
    CHECK(id.fiber_count() == 3);

    GCM a2 = classical_gcm('A', 2);
    CHECK_THROWS_AS(check_quotient(a2, {{0, 1}}), MG1Violation);

    GCM s5 = paper_s5_gcm();
    QuotientMap fold = check_quotient(s5, s5_fold_fibers(s5));
    CHECK(fold.fiber_count() == 4);

    // MG2 violation: the two ends of C3 are unlinked but the middle vertex
    // bonds to them with different weights
    GCM c3 = classical_gcm('C', 3);
    CHECK_THROWS_AS(check_quotient(c3, {{0, 2}, {1}}), MG2Violation);

    CHECK_THROWS_AS(check_quotient(a2, {{0}}), AxisMismatch);
    CHECK_THROWS_AS(check_quotient(a2, {{0}, {0, 1}}), AxisMismatch);
}

TEST_CASE("build_Abar identity") {
    GCM b3 = classical_gcm('B', 3);
    MaximalGradation mg = build_Abar(identity_quotient(b3));
    CHECK(gcm_isomorphic(mg.abar, b3));
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) CHECK(mg.abar.entry(i, j) == b3.entry(i, j));
}

TEST_CASE("build_Abar folds A3 to the B2-type matrix") {
    GCM a3 = classical_gcm('A', 3);
    QuotientMap q = check_quotient(a3, {{0, 2}, {1}});
    MaximalGradation mg = build_Abar(q);
    REQUIRE(mg.abar.size() == 2);
    CHECK(mg.abar.entry(0, 0) == 2);
    CHECK(mg.abar.entry(0, 1) == -2);
    CHECK(mg.abar.entry(1, 0) == -1);
    CHECK(mg.abar.entry(1, 1) == 2);
}

TEST_CASE("build_Abar reproduces the printed 4x4 fold of paper-s5") {
    GCM s5 = paper_s5_gcm();
    QuotientMap q = check_quotient(s5, s5_fold_fibers(s5));
    MaximalGradation mg = build_Abar(q);
    GCM expected = validate({"s1", "s2", "s3", "s4"},
                            {{2, -3, -2, 0}, {-3, 2, -2, 0}, {-1, -1, 2, -1}, {0, 0, -1, 2}});
    REQUIRE(mg.abar.size() == 4);
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) CHECK(mg.abar.entry(i, j) == expected.entry(i, j));
}

TEST_CASE("folded realization has the minimal dimension and exact pairings") {
    for (const GCM& g : {classical_gcm('A', 3), affine_gcm('A', 3), classical_gcm('D', 4)}) {
        for (const QuotientMap& q : enumerate_quotients(g)) {
            MaximalGradation mg = build_Abar(q);
            std::size_t nf = q.fiber_count();
            CHECK(mg.a_basis.size() == 2 * nf - mg.abar.to_rat().rank());
            // <gamma_t, gamma_s> on the a-basis reproduces abar through any
            // fiber representative
            for (std::size_t s = 0; s < nf; ++s)
                for (std::size_t t = 0; t < nf; ++t)
                    CHECK(mg.source_realization.pairing(q.fibers[t].front(),
                                                        mg.gamma_coroots.col(s)) ==
                          mg.abar.entry(s, t));
        }
    }
}

TEST_CASE("restrict_by_quotient") {
    GCM s5 = paper_s5_gcm();
    QuotientMap q = check_quotient(s5, s5_fold_fibers(s5));
    RootVec v = zero_root(s5);
    v.coords[s5.index_of("1")] = 1;
    v.coords[s5.index_of("5")] = 1;
    RootVec img = restrict_by_quotient(q, v);
    CHECK(img.coords == std::vector<long>{2, 0, 0, 0});

    // additive and height preserving on arbitrary positive roots
    auto roots = enumerate_positive_roots(s5, 5);
    for (const EnumeratedRoot& r : roots) {
        RootVec ri = restrict_by_quotient(q, r.vec);
        CHECK(ri.height() == r.vec.height());
        CHECK(ri.nonnegative());
    }
    for (std::size_t t = 0; t + 1 < roots.size(); t += 7) {
        RootVec sum = roots[t].vec + roots[t + 1].vec;
        CHECK(restrict_by_quotient(q, sum) ==
              restrict_by_quotient(q, roots[t].vec) + restrict_by_quotient(q, roots[t + 1].vec));
    }
}

TEST_CASE("verify_maximal on identity and on the A3 fold") {
    GCM a3 = classical_gcm('A', 3);
    CHECK(verify_maximal(identity_quotient(a3), 8).ok);

    QuotientMap q = check_quotient(a3, {{0, 2}, {1}});
    MaximalGradationReport rep = verify_maximal(q, 8);
    CHECK(rep.ok);
    CHECK(rep.image_weights == 4);  // B2-type positive roots
}

TEST_CASE("A3 fold image equals the B2-type positive roots exactly") {
    GCM a3 = classical_gcm('A', 3);
    QuotientMap q = check_quotient(a3, {{0, 2}, {1}});
    std::set<std::vector<long>> image;
    for (const EnumeratedRoot& r : enumerate_positive_roots(a3, 100))
        image.insert(restrict_by_quotient(q, r.vec).coords);
    std::set<std::vector<long>> expected{{1, 0}, {0, 1}, {1, 1}, {2, 1}};
    CHECK(image == expected);
}

TEST_CASE("enumerate_quotients") {
    GCM a1 = classical_gcm('A', 1);
    CHECK(enumerate_quotients(a1).size() == 1);

    GCM a2 = classical_gcm('A', 2);
    CHECK(enumerate_quotients(a2).size() == 1);  // MG1 kills the fold

    GCM a3 = classical_gcm('A', 3);
    auto quotients = enumerate_quotients(a3);
    REQUIRE(quotients.size() == 2);
    CHECK(quotients[0].fiber_count() == 3);  // identity first
    CHECK(quotients[1].fibers == std::vector<IndexSet>{{0, 2}, {1}});

    GCM s5 = paper_s5_gcm();
    auto s5_quotients = enumerate_quotients(s5);
    bool has_fold = false;
    for (const QuotientMap& q : s5_quotients)
        if (q.fibers == s5_fold_fibers(s5)) has_fold = true;
    CHECK(has_fold);
}

TEST_CASE("quotient property suite over the corpus") {
    for (const GCM& g : quotient_corpus()) {
        TypeVerdict source = classify(g);
        for (const QuotientMap& q : enumerate_quotients(g)) {
            MaximalGradation mg = build_Abar(q);
            TypeVerdict folded = classify(mg.abar);
            CHECK(folded.kind == source.kind);
            CHECK(folded.symmetrizable);
            CHECK(verify_maximal(q, 8).ok);
        }
    }
}

TEST_CASE("max_fibers filter") {
    GCM d4 = classical_gcm('D', 4);
    auto all = enumerate_quotients(d4);
    auto coarse = enumerate_quotients(d4, 2);
    CHECK(coarse.size() <= all.size());
    for (const QuotientMap& q : coarse) CHECK(q.fiber_count() <= 2);
}
