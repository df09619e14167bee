#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biinterp/group.hpp"
#include "biinterp/rng.hpp"
#include "oracles.hpp"

using namespace biinterp;

TEST_CASE("validate_group accepts the order-2 group") {
    auto G = validate_group({{0, 1}, {1, 0}});
    CHECK(G->order() == 2);
    CHECK(G->mul(1, 1) == 0);
    CHECK(G->inv(1) == 1);
}

TEST_CASE("validate_group names the first offending cell") {
    CHECK_THROWS_AS(validate_group({{0, 1}, {0, 1}}), NotLatinSquare);
    try {
        validate_group({{0, 1}, {0, 1}});
    } catch (const NotLatinSquare& e) {
        CHECK(e.row == 1);
        CHECK(e.col == 0);
    }

    CHECK_THROWS_AS(validate_group({{1, 0}, {0, 1}}), NoIdentityAtZero);

    // Order-5 loop: Latin with identity but not associative.
    std::vector<std::vector<int>> loop{{0, 1, 2, 3, 4},
                                       {1, 0, 3, 4, 2},
                                       {2, 3, 4, 0, 1},
                                       {3, 4, 1, 2, 0},
                                       {4, 2, 0, 1, 3}};
    CHECK_THROWS_AS(validate_group(loop), NotAssociative);
    try {
        validate_group(loop);
    } catch (const NotAssociative& e) {
        CHECK(e.i == 1);
        CHECK(e.j == 1);
        CHECK(e.l == 2);
    }
}

TEST_CASE("close_permutations matches the fixpoint closure oracle") {
    std::vector<Perm> gens{{1, 0, 2}, {1, 2, 0}};  // a transposition and a 3-cycle
    auto G = close_permutations(3, gens);
    CHECK(G->order() == 6);
    CHECK(oracles::perm_closure(3, gens).size() == 6);

    auto C4 = close_permutations(4, {{1, 2, 3, 0}});
    CHECK(C4->order() == 4);
    CHECK(C4->same_table(*cyclic(4)));

    CHECK(close_permutations(2, {})->order() == 1);
}

TEST_CASE("close_permutations is deterministic, even under generator reordering") {
    std::vector<Perm> gens{{1, 0, 2, 3}, {1, 2, 3, 0}};
    auto a = close_permutations(4, gens);
    auto b = close_permutations(4, gens);
    auto c = close_permutations(4, {{1, 2, 3, 0}, {1, 0, 2, 3}});
    CHECK(a->same_table(*b));
    CHECK(a->same_table(*c));
    CHECK(a->order() == 24);
}

TEST_CASE("close_permutations rejects bad input") {
    CHECK_THROWS_AS(close_permutations(3, {{0, 0, 1}}), NotAPermutation);
    CHECK_THROWS_AS(close_permutations(3, {{0, 1}}), NotAPermutation);
    CHECK_THROWS_AS(close_permutations(5, {{1, 0, 2, 3, 4}, {1, 2, 3, 4, 0}}, 100), GroupTooLarge);
}

TEST_CASE("subgroup_closure") {
    auto C4 = cyclic(4);
    CHECK(subgroup_closure(C4, {2}).members == std::vector<int>{0, 2});

    auto S3 = dihedral(3);  // 0=e, 1=r, 2=r^2, 3=s, 4=s*r, 5=s*r^2
    CHECK(subgroup_closure(S3, {}).members == std::vector<int>{0});
    CHECK(subgroup_closure(S3, {1}).members == std::vector<int>{0, 1, 2});

    // Idempotent and monotone in the generators.
    SplitMix64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> gens;
        for (int i = 0; i < 2; ++i) gens.push_back(rng.below_int(S3->order()));
        auto closed = subgroup_closure(S3, gens);
        CHECK(subgroup_closure(S3, closed.members).members == closed.members);
        gens.push_back(rng.below_int(S3->order()));
        auto bigger = subgroup_closure(S3, gens);
        CHECK(std::includes(bigger.members.begin(), bigger.members.end(), closed.members.begin(),
                            closed.members.end()));
    }
}

TEST_CASE("is_normal") {
    auto S3 = dihedral(3);
    CHECK(is_normal(make_subgroup(S3, {0, 1, 2})));
    CHECK_FALSE(is_normal(make_subgroup(S3, {0, 3})));
    CHECK(is_normal(make_subgroup(S3, {0})));
}

TEST_CASE("make_subgroup validates closure") {
    auto C4 = cyclic(4);
    CHECK_THROWS_AS(make_subgroup(C4, {0, 1}), NotASubgroup);     // 1+1=2 missing
    CHECK_THROWS_AS(make_subgroup(C4, {1, 2, 3}), NotASubgroup);  // no identity
}

TEST_CASE("coset decomposition and canonical transversal") {
    auto C4 = cyclic(4);
    auto dec = coset_decomposition(make_subgroup(C4, {0, 2}));
    CHECK(dec.index() == 2);
    CHECK(dec.cosets[0] == std::vector<int>{0, 2});
    CHECK(dec.cosets[1] == std::vector<int>{1, 3});
    CHECK(canonical_transversal(dec) == std::vector<int>{0, 1});

    auto Q8 = quaternion8();
    auto center = coset_decomposition(make_subgroup(Q8, {0, 1}));
    CHECK(center.index() == 4);
    CHECK(canonical_transversal(center) == std::vector<int>{0, 2, 4, 6});

    auto S3 = dihedral(3);
    auto a3 = coset_decomposition(make_subgroup(S3, {0, 1, 2}));
    CHECK(a3.index() == 2);
    CHECK(canonical_transversal(a3) == std::vector<int>{0, 3});

    auto whole = coset_decomposition(make_subgroup(S3, {0, 1, 2, 3, 4, 5}));
    CHECK(whole.index() == 1);
    CHECK(canonical_transversal(whole) == std::vector<int>{0});

    // Representatives lie in their cosets and the first is the identity.
    for (const auto& d : {dec, center, a3}) {
        auto t = canonical_transversal(d);
        CHECK(t[0] == 0);
        for (size_t i = 0; i < t.size(); ++i) CHECK(d.coset_of[t[i]] == static_cast<int>(i));
    }
}

TEST_CASE("builders") {
    CHECK(cyclic(1)->order() == 1);
    CHECK(symmetric(4)->order() == 24);
    CHECK_THROWS_AS(symmetric(6), GroupTooLarge);
    CHECK_THROWS_AS(cyclic(6000), GroupTooLarge);

    auto census = oracles::order_census(*quaternion8());
    CHECK(census[2] == 1);  // -1 is the only involution
    CHECK(census[4] == 6);

    auto klein = direct_product(cyclic(2), cyclic(2));
    auto kc = oracles::order_census(*klein);
    CHECK(kc[1] == 1);
    CHECK(kc[2] == 3);

    // dihedral(3) is S3: same order census as the permutation construction.
    CHECK(oracles::order_census(*dihedral(3)) == oracles::order_census(*symmetric(3)));
}

TEST_CASE("every builder output satisfies the group axioms") {
    // validate_group re-runs the axioms; inverses are spot-checked here.
    for (const auto& G : {cyclic(12), dihedral(4), symmetric(4), quaternion8(),
                          direct_product(cyclic(2), cyclic(4))}) {
        for (int a = 0; a < G->order(); ++a) {
            CHECK(G->mul(a, G->inv(a)) == 0);
            CHECK(G->mul(G->inv(a), a) == 0);
        }
    }
}

TEST_CASE("subgroup_table reindexes") {
    auto C4 = cyclic(4);
    auto view = subgroup_table(make_subgroup(C4, {0, 2}));
    CHECK(view->order() == 2);
    CHECK(view->mul(1, 1) == 0);
    CHECK(view->name_of(1) == "a^2");
}

TEST_CASE("group json round trip") {
    auto D4 = dihedral(4);
    auto j = group_to_json(*D4);
    CHECK(j["format"] == "cayley");
    auto back = group_from_json(j);
    CHECK(back->same_table(*D4));
    CHECK(back->names() == D4->names());

    nlohmann::json perm;
    perm["format"] = "perm";
    perm["degree"] = 3;
    perm["generators"] = std::vector<Perm>{{1, 0, 2}, {1, 2, 0}};
    CHECK(group_from_json(perm)->order() == 6);

    nlohmann::json bad;
    bad["format"] = "nonsense";
    CHECK_THROWS_AS(group_from_json(bad), Error);
}
