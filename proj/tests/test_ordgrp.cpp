#include <catch2/catch_amalgamated.hpp>

#include "valomega/ordgrp.hpp"

using namespace valomega;

namespace {

GroupPtr rank2_half_dense() {
    // (1/2)Z x_lex dense rational component (2-divisible)
    return make_group({{Rat(1, 2), std::nullopt}, {Rat(1), 2}});
}

Value val(const GroupPtr& g, std::vector<Rat> c) { return Value(std::move(c), g); }

}  // namespace

TEST_CASE("lexicographic comparison") {
    auto g = make_group({{Rat(1, 2), std::nullopt}, {Rat(1, 3), std::nullopt}});
    CHECK(cmp(val(g, {Rat(0), Rat(0)}), val(g, {Rat(0), Rat(0)})) == Ord::EQ);
    CHECK(cmp(val(g, {Rat(1, 2), Rat(0)}), val(g, {Rat(0), Rat(100)})) == Ord::GT);
    CHECK(cmp(val(g, {Rat(0), Rat(1, 3)}), val(g, {Rat(0), Rat(2, 3)})) == Ord::LT);
}

TEST_CASE("comparison is a total order compatible with addition") {
    auto g = make_group({{Rat(1, 2), std::nullopt}, {Rat(1, 3), 3}});
    std::vector<Value> grid;
    for (int a = -2; a <= 2; ++a)
        for (int b = -3; b <= 3; ++b) grid.push_back(val(g, {Rat(a, 2), Rat(b, 9)}));
    for (const auto& x : grid)
        for (const auto& y : grid) {
            // antisymmetry / totality
            Ord o = cmp(x, y);
            Ord r = cmp(y, x);
            CHECK((o == Ord::EQ) == (r == Ord::EQ));
            if (o == Ord::LT) CHECK(r == Ord::GT);
            for (const auto& z : grid) {
                if (o == Ord::LT) CHECK(cmp(x + z, y + z) == Ord::LT);
                if (o == Ord::EQ) CHECK(cmp(x + z, y + z) == Ord::EQ);
            }
        }
}

TEST_CASE("membership is decided coordinate-wise") {
    auto zz = make_group({{Rat(1), std::nullopt}, {Rat(1), std::nullopt}});
    CHECK(zz->contains({Rat(2), Rat(0)}));
    CHECK_FALSE(zz->contains({Rat(1, 2), Rat(0)}));
    auto z_half = make_group({{Rat(1), 2}});
    CHECK(z_half->contains({Rat(3, 4)}));
    CHECK_FALSE(z_half->contains({Rat(1, 3)}));
}

TEST_CASE("greatest isolated subgroup below gamma") {
    SECTION("rank one is trivial") {
        auto z = z_group();
        auto d = greatest_isolated_below(z, Value(Rat(1), z));
        CHECK(d.is_trivial(1));
    }
    SECTION("half-integer lead over dense tail") {
        auto g = rank2_half_dense();
        auto d = greatest_isolated_below(g, val(g, {Rat(1, 2), Rat(0)}));
        CHECK(d.suffix_start == 2);
        CHECK(d.contains(val(g, {Rat(0), Rat(-5)})));
        CHECK_FALSE(d.contains(val(g, {Rat(1, 2), Rat(0)})));
    }
    SECTION("Z x (1/2)Z") {
        auto g = make_group({{Rat(1), std::nullopt}, {Rat(1, 2), std::nullopt}});
        CHECK(greatest_isolated_below(g, val(g, {Rat(0), Rat(1, 2)})).is_trivial(2));
        CHECK(greatest_isolated_below(g, val(g, {Rat(1), Rat(0)})).suffix_start == 2);
    }
    SECTION("rejects non-positive gamma") {
        auto z = z_group();
        CHECK_THROWS(greatest_isolated_below(z, Value(Rat(0), z)));
        CHECK_THROWS(greatest_isolated_below(z, Value(Rat(-1), z)));
    }
}

TEST_CASE("quotient minimum positive element") {
    SECTION("discrete over dense quotient") {
        auto g = rank2_half_dense();
        auto m = quotient_min_positive(g, ConvexSubgroup{2});
        REQUIRE(m.has_value());
        CHECK(m->coords() == std::vector<Rat>{Rat(1, 2), Rat(0)});
    }
    SECTION("discrete rank one") {
        auto z = z_group();
        auto m = quotient_min_positive(z, trivial_subgroup(z));
        REQUIRE(m.has_value());
        CHECK(m->coords() == std::vector<Rat>{Rat(1)});
    }
    SECTION("2-divisible rank one has none") {
        auto g = make_group({{Rat(1), 2}});
        CHECK_FALSE(quotient_min_positive(g, trivial_subgroup(g)).has_value());
    }
    SECTION("whole-group subgroup leaves no positive elements") {
        auto z = z_group();
        CHECK_FALSE(quotient_min_positive(z, ConvexSubgroup{1}).has_value());
    }
}

TEST_CASE("quotient_min_positive agrees with exhaustive grid search") {
    // grids over rank-1 and rank-2 groups with small bounds
    std::vector<GroupPtr> groups = {
        z_group(),
        make_group({{Rat(1, 2), std::nullopt}}),
        make_group({{Rat(1), 2}}),
        rank2_half_dense(),
        make_group({{Rat(1), std::nullopt}, {Rat(1, 2), std::nullopt}}),
    };
    for (const auto& g : groups) {
        for (int j = 1; j <= g->rank() + 1; ++j) {
            ConvexSubgroup d{j};
            auto claimed = quotient_min_positive(g, d);
            // enumerate quotient coordinates (components 1..j-1) with
            // numerators in [-8,8] over denominator 8
            std::optional<std::vector<Rat>> best;
            int m = j - 1;
            std::vector<int> idx(m, -8);
            bool done = m == 0;
            while (!done) {
                std::vector<Rat> c;
                bool in = true;
                for (int k = 0; k < m; ++k) {
                    Rat x(idx[k], 8);
                    if (!g->comp(k + 1).contains(x)) { in = false; break; }
                    c.push_back(x);
                }
                if (in && !c.empty()) {
                    bool pos = false;
                    for (auto& x : c)
                        if (!x.is_zero()) { pos = x.sign() > 0; break; }
                    if (pos && (!best || lex_cmp(c, *best) == Ord::LT)) best = c;
                }
                int k = m - 1;
                while (k >= 0 && ++idx[k] > 8) idx[k--] = -8;
                if (k < 0) done = true;
            }
            if (claimed) {
                REQUIRE(best.has_value());
                std::vector<Rat> proj(claimed->coords().begin(), claimed->coords().begin() + m);
                CHECK(lex_cmp(proj, *best) == Ord::EQ);
            } else if (best) {
                // no minimum claimed: the grid minimum must be halvable within the group
                std::vector<Rat> half = *best;
                for (auto& x : half) x = x / Rat(2);
                bool in = true;
                for (int k = 0; k < m; ++k)
                    if (!g->comp(k + 1).contains(half[k])) in = false;
                CHECK(in);
            }
        }
    }
}

TEST_CASE("infinity absorbs") {
    auto z = z_group();
    ValueInf inf = ValueInf::infinity();
    ValueInf five{Value(Rat(5), z)};
    CHECK((inf + five).is_inf());
    CHECK((five + inf).is_inf());
    CHECK(inf > five);
    CHECK(five < inf);
    CHECK(inf == inf + inf);
}

TEST_CASE("min_above") {
    SECTION("discrete rank one") {
        auto z = z_group();
        auto m = min_above(z, {Rat(1, 2)}, 2, true);
        REQUIRE(m.has_value());
        CHECK(m->coords()[0] == Rat(1));
        m = min_above(z, {Rat(3)}, 2, true);
        CHECK(m->coords()[0] == Rat(4));
        m = min_above(z, {Rat(3)}, 2, false);
        CHECK(m->coords()[0] == Rat(3));
    }
    SECTION("dense rank one") {
        auto g = make_group({{Rat(1), 2}});
        CHECK_FALSE(min_above(g, {Rat(0)}, 2, true).has_value());
        CHECK_FALSE(min_above(g, {Rat(1, 3)}, 2, true).has_value());
        auto m = min_above(g, {Rat(1, 3)}, 2, false);
        CHECK_FALSE(m.has_value());  // 1/3 not representable, no min above either
    }
    SECTION("bad middle coordinate blocks a minimum") {
        auto g = make_group({{Rat(1), std::nullopt}, {Rat(1), std::nullopt}});
        CHECK_FALSE(min_above(g, {Rat(1, 2), Rat(0)}, 3, true).has_value());
        auto m = min_above(g, {Rat(0), Rat(1, 2)}, 3, true);
        REQUIRE(m.has_value());
        CHECK(m->coords() == std::vector<Rat>{Rat(0), Rat(1)});
    }
}
