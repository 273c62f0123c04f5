#include <catch_amalgamated.hpp>

#include "brmonoid/modification.hpp"

using namespace brm;

namespace {

const std::vector<std::vector<int>> klein{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};

std::vector<std::pair<int, int>> pairs(std::initializer_list<std::pair<int, int>> ps) { return ps; }

}  // namespace

TEST_CASE("cyclic_group pinned examples") {
    CHECK(cyclic_group(1)->table == std::vector<int>{0});
    CHECK(cyclic_group(2)->table == std::vector<int>{0, 1, 1, 0});
    CHECK(cyclic_group(3)->inv(1) == 2);
    CHECK_THROWS_AS(cyclic_group(0), Error);
}

TEST_CASE("group_from_table validation") {
    CHECK(group_from_table({{0}})->order == 1);
    CHECK(group_from_table(klein)->order == 4);
    CHECK_THROWS_AS(group_from_table({{0, 1}, {1, 1}}), NotLatin);
    // Latin square with no two-sided identity
    CHECK_THROWS_AS(group_from_table({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}), NoIdentity);
    // identity away from index 0 gets relocated
    auto g = group_from_table({{1, 0}, {0, 1}});
    CHECK(g->mul(0, 0) == 0);
    CHECK(g->mul(1, 1) == 0);
    auto k = group_from_table({{1, 0, 3, 2}, {0, 1, 2, 3}, {3, 2, 1, 0}, {2, 3, 0, 1}});
    CHECK(k->mul(0, 2) == 2);
}

TEST_CASE("canonical modifications") {
    auto c2 = cyclic_group(2);
    CHECK(canonical_modification(c2, ModKind::full).zero_pairs.empty());
    CHECK(canonical_modification(c2, ModKind::annihilator).zero_pairs == pairs({{1, 1}}));
    CHECK(canonical_modification(cyclic_group(1), ModKind::annihilator).zero_pairs.empty());
}

TEST_CASE("modification_from_zero_set validates associativity") {
    CHECK_NOTHROW(modification_from_zero_set(cyclic_group(2), pairs({{1, 1}})));
    CHECK_THROWS_AS(modification_from_zero_set(cyclic_group(2), pairs({{0, 1}})), IdentityPairErased);

    try {
        modification_from_zero_set(cyclic_group(3), pairs({{1, 1}}));
        FAIL("C3 with only (g,g) erased must not be associative");
    } catch (const NotAssociative& e) {
        // (g⋆g)⋆g² = 0 but g⋆(g⋆g²) = g
        CHECK(e.x == 1);
        CHECK(e.y == 1);
        CHECK(e.z == 2);
    }
    CHECK_THROWS_AS(modification_from_zero_set(cyclic_group(3), pairs({{1, 2}, {2, 1}})),
                    NotAssociative);
}

TEST_CASE("enumerate_modifications counts and canonical order") {
    CHECK(enumerate_modifications(cyclic_group(1)).size() == 1);
    CHECK(enumerate_modifications(cyclic_group(2)).size() == 2);

    auto mods3 = enumerate_modifications(cyclic_group(3));
    REQUIRE(mods3.size() == 4);
    CHECK(mods3[0].zero_pairs.empty());
    CHECK(mods3[1].zero_pairs == pairs({{1, 1}, {1, 2}, {2, 1}}));
    CHECK(mods3[2].zero_pairs == pairs({{1, 2}, {2, 1}, {2, 2}}));
    CHECK(mods3[3].zero_pairs == pairs({{1, 1}, {1, 2}, {2, 1}, {2, 2}}));

    CHECK_THROWS_AS(enumerate_modifications(cyclic_group(3), 2), GroupTooLarge);
}

TEST_CASE("pruned search equals the naive oracle") {
    for (int n = 1; n <= 4; ++n) {
        auto a = enumerate_modifications(cyclic_group(n), 8, EnumerationStrategy::pruned);
        auto b = enumerate_modifications(cyclic_group(n), 8, EnumerationStrategy::naive_oracle);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == b[i]);
    }
    auto k = group_from_table(klein);
    auto a = enumerate_modifications(k, 8, EnumerationStrategy::pruned);
    auto b = enumerate_modifications(k, 8, EnumerationStrategy::naive_oracle);
    REQUIRE(a.size() == b.size());
}

TEST_CASE("every enumerated modification satisfies weak cancellation") {
    for (int n = 1; n <= 5; ++n)
        for (const Modification& m : enumerate_modifications(cyclic_group(n)))
            CHECK_FALSE(weak_cancellation_witness(m).has_value());
    for (const Modification& m : enumerate_modifications(group_from_table(klein)))
        CHECK_FALSE(weak_cancellation_witness(m).has_value());
}

TEST_CASE("unit_group pinned examples") {
    auto full3 = unit_group(canonical_modification(cyclic_group(3), ModKind::full));
    CHECK(full3.units.size() == 3);
    CHECK(full3.ideal_nonzero.empty());
    CHECK(full3.nilpotency_index == 1);

    auto ann2 = unit_group(canonical_modification(cyclic_group(2), ModKind::annihilator));
    CHECK(ann2.units == std::vector<int>{0});
    CHECK(ann2.ideal_nonzero == std::vector<int>{1});
    CHECK(ann2.nilpotency_index == 2);

    auto m = unit_group(modification_from_zero_set(cyclic_group(3), pairs({{1, 1}, {1, 2}, {2, 1}})));
    CHECK(m.units == std::vector<int>{0});  // b⋆b = a is not enough to invert b
}

TEST_CASE("units act without killing products") {
    for (int n = 2; n <= 5; ++n)
        for (const Modification& m : enumerate_modifications(cyclic_group(n))) {
            auto split = unit_group(m);
            for (int a : split.units)
                for (int x = 0; x < m.order(); ++x) {
                    CHECK(m.star(a, x) != Modification::zero);
                    CHECK(m.star(x, a) != Modification::zero);
                }
        }
}

TEST_CASE("conjugation witness") {
    auto m = canonical_modification(cyclic_group(4), ModKind::full);
    auto split = unit_group(m);
    for (int a = 0; a < 4; ++a)
        for (int x = 0; x < 4; ++x) CHECK(conjugation_witness(m, split, a, x) == a);  // abelian
    CHECK(conjugation_witness(m, split, 2, 0) == 2);
    CHECK(conjugation_witness(m, split, 0, 3) == 0);
}

TEST_CASE("conjugation is an automorphism of the unit group") {
    for (const Modification& m : enumerate_modifications(cyclic_group(4))) {
        auto split = unit_group(m);
        if (!units_normal(m, split)) continue;
        for (int x = 0; x < m.order(); ++x)
            for (int a : split.units)
                for (int b : split.units) {
                    int ab = m.star(a, b);
                    CHECK(conjugation_witness(m, split, ab, x) ==
                          m.star(conjugation_witness(m, split, a, x),
                                 conjugation_witness(m, split, b, x)));
                }
    }
}

TEST_CASE("preceq pinned examples and partial-order laws") {
    auto c2 = cyclic_group(2);
    auto full = canonical_modification(c2, ModKind::full);
    auto ann = canonical_modification(c2, ModKind::annihilator);
    CHECK(is_preceq(ann, full));
    CHECK(is_preceq(ann, ann));
    CHECK_FALSE(is_preceq(full, ann));
    CHECK_THROWS_AS(is_preceq(full, canonical_modification(cyclic_group(3), ModKind::full)),
                    GroupMismatch);

    auto mods = enumerate_modifications(cyclic_group(4));
    for (const auto& a : mods) {
        CHECK(is_preceq(a, a));
        CHECK(is_preceq(a, mods.front()));       // full modification is the top
        CHECK(is_preceq(mods.back(), a));        // annihilator is the bottom
        for (const auto& b : mods) {
            if (is_preceq(a, b) && is_preceq(b, a)) CHECK(a == b);  // antisymmetry
            for (const auto& c : mods)
                if (is_preceq(a, b) && is_preceq(b, c)) CHECK(is_preceq(a, c));  // transitivity
        }
    }
}

TEST_CASE("meet is the greatest lower bound") {
    auto mods = enumerate_modifications(cyclic_group(3));
    CHECK(meet(mods[1], mods[0]) == mods[1]);  // meet with full
    CHECK(meet(mods[2], mods[2]) == mods[2]);  // idempotent
    CHECK(meet(mods[1], mods[2]) == mods[3]);  // the two three-pair modifications meet at the bottom

    auto mods4 = enumerate_modifications(cyclic_group(4));
    for (const auto& a : mods4)
        for (const auto& b : mods4) {
            Modification w = meet(a, b);
            CHECK(is_preceq(w, a));
            CHECK(is_preceq(w, b));
            for (const auto& c : mods4)
                if (is_preceq(c, a) && is_preceq(c, b)) CHECK(is_preceq(c, w));
        }
}

TEST_CASE("quotient_by_units pinned examples") {
    auto full = canonical_modification(cyclic_group(3), ModKind::full);
    auto q1 = quotient_by_units(full);
    CHECK(q1.quotient.order() == 1);
    CHECK(q1.quotient.zero_pairs.empty());

    auto ann2 = canonical_modification(cyclic_group(2), ModKind::annihilator);
    auto q2 = quotient_by_units(ann2);
    CHECK(q2.quotient.order() == 2);
    CHECK(q2.quotient.zero_pairs == pairs({{1, 1}}));
    CHECK(q2.projection == std::vector<int>{0, 1});

    auto ann3 = canonical_modification(cyclic_group(3), ModKind::annihilator);
    auto q3 = quotient_by_units(ann3);
    CHECK(q3.quotient.order() == 3);
    CHECK(q3.quotient.zero_pairs.size() == 4);
}

TEST_CASE("quotients of every C4 and C6 modification are valid modifications") {
    for (int n : {4, 6})
        for (const Modification& m : enumerate_modifications(cyclic_group(n))) {
            auto split = unit_group(m);
            auto q = quotient_by_units(m, split);
            CHECK(q.quotient.order() * static_cast<int>(split.units.size()) == n);
            // projection respects products
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    int p = m.star(x, y);
                    int qp = q.quotient.star(q.projection[x], q.projection[y]);
                    CHECK((p == Modification::zero ? Modification::zero : q.projection[p]) == qp);
                }
        }
}
