#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kmgrad/builtins.hpp"
#include "kmgrad/gradation.hpp"

using namespace kmgrad;

namespace {

IndexSet by_labels(const GCM& g, const std::vector<std::string>& labels) {
    IndexSet s;
    for (const std::string& l : labels) s.push_back(g.index_of(l));
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

TEST_CASE("identity spec analyzes as maximal") {
    for (const GCM& g : {classical_gcm('A', 3), rank2_gcm(3, 3), paper_s5_gcm(), e10_gcm()}) {
        GradationReport rep = analyze(identity_spec(g), 4);
        CHECK(rep.classification == PairClass::Maximal);
        CHECK(rep.j_set.empty());
        CHECK(rep.i_prime_im.empty());
        CHECK(rep.i_re == full_index_set(g));
        CHECK(rep.adapted_up_to_bound);
        CHECK(rep.disjoint_union_ok);
        CHECK(rep.ik_finite_ok);
        CHECK(rep.fiber_orthogonality_ok);
        CHECK(rep.ire_jre_c_admissible);
    }
}

TEST_CASE("composition") {
    GCM a3 = classical_gcm('A', 3);
    RestrictionSpec id = identity_spec(a3);
    RestrictionSpec composed = compose(id, id);
    for (Index i = 0; i < a3.size(); ++i) CHECK(composed.images[i] == id.images[i]);

    CHECK_THROWS_AS(compose(id, identity_spec(classical_gcm('A', 2))), BasisMismatch);

    // composing two quotient specs equals the spec of the composed partition
    GCM d4 = classical_gcm('D', 4);
    QuotientMap q1 = check_quotient(d4, {{0}, {1}, {2, 3}});
    RestrictionSpec s1 = quotient_spec(q1);
    QuotientMap q2 = check_quotient(s1.target, {{0, 2}, {1}});
    RestrictionSpec s2 = quotient_spec(q2);
    RestrictionSpec both = compose(s1, s2);
    QuotientMap direct = check_quotient(d4, {{0, 2, 3}, {1}});
    RestrictionSpec expected = quotient_spec(direct);
    for (Index i = 0; i < d4.size(); ++i) CHECK(both.images[i] == expected.images[i]);
}

TEST_CASE("the composed worked-example spec has the expected images") {
    RestrictionSpec spec = paper_s5_composed_spec();
    const GCM& g = spec.source;
    CHECK(spec.images[g.index_of("1")].coords == std::vector<long>{1, 0});
    CHECK(spec.images[g.index_of("5")].coords == std::vector<long>{1, 0});
    CHECK(spec.images[g.index_of("2")].coords == std::vector<long>{0, 1});
    CHECK(spec.images[g.index_of("6")].coords == std::vector<long>{0, 1});
    CHECK(spec.images[g.index_of("3")].coords == std::vector<long>{2, 2});
    CHECK(spec.images[g.index_of("4")].is_zero());
}

TEST_CASE("analyze of the composed worked example") {
    RestrictionSpec spec = paper_s5_composed_spec();
    const GCM& g = spec.source;
    GradationReport rep = analyze(spec, 8);
    CHECK(rep.j_set == by_labels(g, {"4"}));
    CHECK(rep.i_prime_im == by_labels(g, {"3"}));
    CHECK(rep.i_re == by_labels(g, {"1", "2", "5", "6"}));
    REQUIRE(rep.i_re_components.size() == 2);
    CHECK(rep.i_re_components[0] == by_labels(g, {"1", "2"}));
    CHECK(rep.i_re_components[1] == by_labels(g, {"5", "6"}));
    CHECK(rep.gamma_fibers[0] == by_labels(g, {"1", "5"}));
    CHECK(rep.gamma_fibers[1] == by_labels(g, {"2", "6"}));
    CHECK(rep.j_re.empty());
    CHECK(rep.j_circle == by_labels(g, {"4"}));
    CHECK(rep.classification == PairClass::GeneralizedCAdmissible);
    CHECK(rep.adapted_up_to_bound);
    CHECK(rep.disjoint_union_ok);
    CHECK(rep.ik_finite_ok);
    CHECK(rep.fiber_orthogonality_ok);
    CHECK(rep.ire_jre_c_admissible);
    // each component of I_re carries a copy of the target matrix
    for (const IndexSet& comp : rep.i_re_components)
        CHECK(gcm_isomorphic(g.submatrix(comp), spec.target));
}

TEST_CASE("pair specs analyze as C-admissible with the original partition") {
    GCM e10 = e10_gcm();
    for (auto labels : {std::vector<std::string>{"2", "3", "4", "5"},
                        std::vector<std::string>{"1", "2", "3", "4", "5", "6"}}) {
        IndexSet j = by_labels(e10, labels);
        GradationReport rep = analyze(pair_spec(e10, j), 6);
        CHECK(rep.classification == PairClass::CAdmissible);
        CHECK(rep.j_set == j);
        CHECK(rep.i_prime_im.empty());
        CHECK(rep.i_re == full_index_set(e10));
        CHECK(rep.j_re == j);
        CHECK(rep.j_circle.empty());
        CHECK(rep.ire_jre_c_admissible);
    }
    GCM a3 = classical_gcm('A', 3);
    GradationReport rep = analyze(pair_spec(a3, {0, 2}), 8);
    CHECK(rep.classification == PairClass::CAdmissible);
    CHECK(rep.adapted_up_to_bound);
}

TEST_CASE("pair specs keep their partition across the rank <= 5 sweep") {
    std::vector<GCM> corpus{classical_gcm('A', 4), classical_gcm('B', 4), classical_gcm('C', 4),
                            classical_gcm('D', 5), classical_gcm('A', 5)};
    for (const GCM& g : corpus) {
        for (const IndexSet& j : enumerate_pairs(g)) {
            GradationReport rep = analyze(pair_spec(g, j), 6);
            CHECK(rep.j_set == j);
            CHECK(rep.j_re == j);
            CHECK(rep.i_re == full_index_set(g));
            CHECK(rep.i_prime_im.empty());
            CHECK(rep.classification ==
                  (j.empty() ? PairClass::Maximal : PairClass::CAdmissible));
            CHECK(rep.ire_jre_c_admissible);
            CHECK(rep.disjoint_union_ok);
        }
    }
}

TEST_CASE("quotient specs analyze as maximal") {
    for (const GCM& g : {classical_gcm('A', 3), classical_gcm('D', 4), paper_s5_gcm()}) {
        for (const QuotientMap& q : enumerate_quotients(g)) {
            GradationReport rep = analyze(quotient_spec(q), 5);
            CHECK(rep.classification == PairClass::Maximal);
            CHECK(rep.j_set.empty());
            CHECK(rep.i_prime_im.empty());
            CHECK(rep.disjoint_union_ok);
        }
    }
}

TEST_CASE("hyperbolic sources have no imaginary vertices") {
    GCM e10 = e10_gcm();
    for (auto labels : {std::vector<std::string>{"2", "3", "4", "5"},
                        std::vector<std::string>{"1", "2", "3", "4", "5", "6"}}) {
        GradationReport rep = analyze(pair_spec(e10, by_labels(e10, labels)), 6);
        CHECK(rep.i_prime_im.empty());
    }
    GradationReport id = analyze(identity_spec(rank2_gcm(3, 3)), 6);
    CHECK(id.i_prime_im.empty());
}

TEST_CASE("type preservation across the corpus specs") {
    RestrictionSpec s5 = paper_s5_composed_spec();
    CHECK(classify(s5.source).kind == classify(s5.target).kind);
    GCM e10 = e10_gcm();
    RestrictionSpec e10_pair = pair_spec(e10, by_labels(e10, {"2", "3", "4", "5"}));
    CHECK(classify(e10_pair.source).kind == classify(e10_pair.target).kind);
    // hyperbolic source, indefinite target: target hyperbolic
    CHECK(classify(e10_pair.target).hyperbolic);
}

TEST_CASE("analyze rejects invalid specs") {
    GCM a2 = classical_gcm('A', 2);
    // image a real but non-simple root
    std::vector<RootVec> images{RootVec{{1, 1}}, RootVec{{0, 1}}};
    RestrictionSpec bad = make_restriction_spec(a2, a2, images);
    CHECK_THROWS_AS(analyze(bad, 4), SpecInvalid);

    // zero-image set of indefinite type
    GCM h33 = rank2_gcm(3, 3);
    GCM a1 = classical_gcm('A', 1);
    std::vector<RootVec> zeros{RootVec{{0}}, RootVec{{0}}};
    RestrictionSpec allzero = make_restriction_spec(h33, a1, zeros);
    CHECK_THROWS_AS(analyze(allzero, 4), SpecInvalid);

    // negative image rejected at construction
    CHECK_THROWS_AS(
        make_restriction_spec(a2, a2, {RootVec{{-1, 0}}, RootVec{{0, 1}}}),
        SpecInvalid);
}

TEST_CASE("check_adapted") {
    GCM a3 = classical_gcm('A', 3);
    CHECK(check_adapted(identity_spec(a3), 8).ok);

    RestrictionSpec s5 = paper_s5_composed_spec();
    AdaptedReport rep = check_adapted(s5, 8);
    CHECK(rep.ok);
    CHECK(rep.roots_checked > 0);

    // a spec with a negative image fails at height 1 (constructed directly,
    // bypassing the type invariant)
    GCM a2 = classical_gcm('A', 2);
    RestrictionSpec bad{a2, a2, {RootVec{{-1, 0}}, RootVec{{0, 1}}}};
    AdaptedReport bad_rep = check_adapted(bad, 4);
    CHECK(!bad_rep.ok);
    CHECK(!bad_rep.failure.empty());
}

TEST_CASE("imaginary_sign_check") {
    GCM a3 = classical_gcm('A', 3);
    SignCheckReport finite_rep = imaginary_sign_check(identity_spec(a3), 10);
    CHECK(finite_rep.ok);
    CHECK(finite_rep.imaginary_roots_checked == 0);  // vacuous in finite type

    SignCheckReport s5 = imaginary_sign_check(paper_s5_composed_spec(), 6);
    CHECK(s5.ok);
    CHECK(s5.imaginary_roots_checked > 0);

    GCM e10 = e10_gcm();
    SignCheckReport e10_rep =
        imaginary_sign_check(pair_spec(e10, by_labels(e10, {"2", "3", "4", "5"})), 10);
    CHECK(e10_rep.ok);
}

TEST_CASE("fiber_counts") {
    GCM a3 = classical_gcm('A', 3);
    FiberCounts id = fiber_counts(identity_spec(a3), 10);
    for (const auto& [coords, total] : id.totals) CHECK(total == 1);

    FiberCounts pair = fiber_counts(pair_spec(a3, {0, 2}), 10);
    CHECK(pair.exact);
    CHECK(pair.totals.at(std::vector<long>{1}) == 4);

    RestrictionSpec s5 = paper_s5_composed_spec();
    FiberCounts fc = fiber_counts(s5, 8);
    CHECK(fc.totals.at(std::vector<long>{1, 0}) == 2);  // alpha_1 and alpha_5
    CHECK(fc.totals.at(std::vector<long>{0, 1}) == 2);
    CHECK(fc.stable.at(std::vector<long>{1, 0}));
    CHECK(fc.stable.at(std::vector<long>{0, 1}));
}

TEST_CASE("the rank-2 restriction carries the printed Gram matrices at q = 2") {
    RestrictionSpec rho1 = paper_s5_rho1_spec();
    BilinearData src = bilinear_data_short_long(rho1.source, 1, 2);
    // q is the inverse scale of the normalized form
    CHECK(src.scale == rat(1, 2));
    Rat q = 1 / src.scale;
    CHECK(q == 2);

    RatMatrix broots{{2, -3, -2, 0}, {-3, 2, -2, 0}, {-2, -2, 4, -2}, {0, 0, -2, 4}};
    CHECK(src.gram_roots == broots.scaled(1 / q));

    RatMatrix bcoroots(4, 4);
    long num[4][4] = {{2, -3, -1, 0}, {-3, 2, -1, 0}, {-1, -1, 1, 0}, {0, 0, 0, 1}};
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) bcoroots.at(i, j) = Rat(num[i][j]);
    bcoroots.at(2, 3) = rat(-1, 2);
    bcoroots.at(3, 2) = rat(-1, 2);
    CHECK(src.gram_coroots == bcoroots.scaled(q));
}

TEST_CASE("quadratic identity of the rank-2 restriction") {
    RestrictionSpec rho1 = paper_s5_rho1_spec();
    BilinearData src = bilinear_data_short_long(rho1.source, 1, 2);
    BilinearData tgt = bilinear_data_real_length(rho1.target, 2);
    QuadraticIdentity id = derive_quadratic_identity(rho1, src, tgt, 2);

    // correction form: (n3 - n4)^2 + 5 n3^2 + n4^2
    RatMatrix expected(4, 4);
    expected.at(2, 2) = 6;
    expected.at(3, 3) = 2;
    expected.at(2, 3) = -1;
    expected.at(3, 2) = -1;
    CHECK(id.correction == expected);

    IdentityCheckReport rep = bilinear_identity_check(rho1, src, tgt, id, 8);
    CHECK(rep.ok);
    CHECK(rep.roots_checked > 0);

    // identity spec with equal forms: zero correction
    GCM h33 = rank2_gcm(3, 3);
    BilinearData form = bilinear_data_real_length(h33, 2);
    QuadraticIdentity trivial = derive_quadratic_identity(identity_spec(h33), form, form, 1);
    CHECK(trivial.correction == RatMatrix(2, 2));
    CHECK(bilinear_identity_check(identity_spec(h33), form, form, trivial, 8).ok);
}

TEST_CASE("cartan_constraints") {
    GCM a3 = classical_gcm('A', 3);
    CartanConstraints id = cartan_constraints(identity_spec(a3));
    CHECK(id.equations.rows() == 0);
    CHECK(id.dimension == 3);
    CHECK(id.dimension_ok);

    QuotientMap fold = check_quotient(a3, {{0, 2}, {1}});
    CartanConstraints folded = cartan_constraints(quotient_spec(fold));
    CHECK(folded.equations.rows() == 1);
    CHECK(folded.dimension == 2);
    CHECK(folded.dimension_ok);

    CartanConstraints s5 = cartan_constraints(paper_s5_composed_spec());
    CHECK(s5.dimension == 2);
    CHECK(s5.dimension_ok);
}
