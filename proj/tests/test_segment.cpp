#include <catch2/catch_amalgamated.hpp>

#include "valomega/segment.hpp"

using namespace valomega;

namespace {
GroupPtr z() { return z_group(); }
GroupPtr z_half_dyadic() { return make_group({{Rat(1), 2}}); }
GroupPtr half_x_dense() { return make_group({{Rat(1, 2), std::nullopt}, {Rat(1), 2}}); }
}  // namespace

TEST_CASE("segment_of_family") {
    auto g = z();
    SECTION("finite max, negated: alpha = 0 in the inertial case") {
        auto f = ValueFamily::finite_max({Value(Rat(-3), g), Value(Rat(0), g)});
        auto s = segment_of_family(f, -1, 1, ValueInf(Value(Rat(0), g)), g);
        CHECK(seg_equal(s, FinalSegment::closed_at(Value(Rat(0), g))));
    }
    SECTION("increasing to unattained sup gives an open segment") {
        auto gd = z_half_dyadic();
        auto f = ValueFamily::inc_to_sup(ExtValue(Rat(0)));
        auto s = segment_of_family(f, -1, 1, ValueInf(Value(Rat(0), gd)), gd);
        CHECK(s.is_cut());
        CHECK(s.strict());
        CHECK(s.anchor()[0] == Rat(0));
    }
    SECTION("cofinal family forces the whole group") {
        auto f = ValueFamily::cofinal();
        CHECK(segment_of_family(f, -1, 3, ValueInf(Value(Rat(7), g)), g).is_whole());
    }
    SECTION("infinite offset gives Top") {
        auto f = ValueFamily::finite_max({Value(Rat(0), g)});
        CHECK(segment_of_family(f, -1, 1, ValueInf::infinity(), g).is_top());
    }
}

TEST_CASE("member") {
    auto g = z();
    auto s = FinalSegment::closed_at(Value(Rat(2), g));
    CHECK(member(s, ValueInf(Value(Rat(2), g))));
    CHECK_FALSE(member(s, ValueInf(Value(Rat(1), g))));
    CHECK(member(s, ValueInf::infinity()));
    CHECK_THROWS_AS(Value(Rat(3, 2), g), std::invalid_argument);  // 3/2 not in Z

    SECTION("open segment with sup outside the group") {
        auto gd = z_half_dyadic();
        auto t = FinalSegment::open_ext(ExtValue(Rat(0)), gd);
        CHECK(member(t, ValueInf(Value(Rat(1, 4), gd))));
        CHECK_FALSE(member(t, ValueInf(Value(Rat(0), gd))));
    }
    SECTION("closed mod Delta contains all of Delta") {
        auto g2 = half_x_dense();
        auto t = FinalSegment::closed_mod(Value::zero(g2), ConvexSubgroup{2});
        CHECK(member(t, ValueInf(Value({Rat(0), Rat(-5)}, g2))));
        CHECK_FALSE(member(t, ValueInf(Value({Rat(-1, 2), Rat(100)}, g2))));
    }
}

TEST_CASE("upward closure on a grid") {
    auto g2 = half_x_dense();
    std::vector<FinalSegment> segs = {
        FinalSegment::closed_at(Value({Rat(1, 2), Rat(-1, 4)}, g2)),
        FinalSegment::open_at(Value({Rat(0), Rat(0)}, g2)),
        FinalSegment::closed_mod(Value::zero(g2), ConvexSubgroup{2}),
        FinalSegment::open_mod(Value({Rat(-1, 2), Rat(0)}, g2), ConvexSubgroup{2}),
        FinalSegment::open_ext(ExtValue({Rat(1, 4), Rat(0)}), g2),
    };
    std::vector<Value> grid;
    for (int a = -4; a <= 4; ++a)
        for (int b = -4; b <= 4; ++b) grid.push_back(Value({Rat(a, 2), Rat(b, 4)}, g2));
    for (const auto& s : segs)
        for (const auto& x : grid)
            for (const auto& y : grid)
                if (member(s, ValueInf(x)) && y >= x) CHECK(member(s, ValueInf(y)));
}

TEST_CASE("translate") {
    auto g = z();
    CHECK(seg_equal(translate(FinalSegment::closed_at(Value(Rat(3), g)), Value(Rat(-3), g)),
                    FinalSegment::closed_at(Value(Rat(0), g))));
    CHECK(translate(FinalSegment::whole(g), Value(Rat(7), g)).is_whole());

    SECTION("round trip is the identity on canonical forms") {
        auto g2 = half_x_dense();
        std::vector<FinalSegment> segs = {
            FinalSegment::closed_at(Value({Rat(1, 2), Rat(3, 4)}, g2)),
            FinalSegment::open_mod(Value({Rat(1), Rat(0)}, g2), ConvexSubgroup{2}),
            FinalSegment::open_ext(ExtValue({Rat(1, 3), Rat(0)}), g2),
        };
        Value t({Rat(3, 2), Rat(-5, 4)}, g2);
        for (const auto& s : segs) CHECK(seg_equal(translate(translate(s, t), -t), s));
    }
}

TEST_CASE("seg_equal and canonicalization") {
    auto g = z();
    SECTION("open at s in a discrete group closes at s+1") {
        CHECK(seg_equal(FinalSegment::closed_at(Value(Rat(0), g)), FinalSegment::open_at(Value(Rat(-1), g))));
    }
    SECTION("open vs closed at the same dense anchor differ") {
        auto gd = z_half_dyadic();
        CHECK_FALSE(seg_equal(FinalSegment::open_ext(ExtValue(Rat(0)), gd),
                              FinalSegment::closed_at(Value(Rat(0), gd))));
    }
    SECTION("mod-Delta segments compare through the quotient") {
        auto g2 = half_x_dense();
        ConvexSubgroup delta{2};
        Value gamma({Rat(1, 2), Rat(0)}, g2);
        Value m_in({Rat(0), Rat(7, 4)}, g2);   // in Delta
        Value m_out({Rat(1, 2), Rat(0)}, g2);  // not in Delta
        CHECK(seg_equal(FinalSegment::open_mod(m_in - gamma, delta), FinalSegment::open_mod(-gamma, delta)));
        CHECK_FALSE(
            seg_equal(FinalSegment::open_mod(m_out - gamma, delta), FinalSegment::open_mod(-gamma, delta)));
    }
    SECTION("unrealizable ext anchor in a leading coordinate widens the level") {
        auto g2 = make_group({{Rat(1), std::nullopt}, {Rat(1), std::nullopt}});
        auto s = FinalSegment::open_ext(ExtValue({Rat(1, 2), Rat(0)}), g2);
        // {x : x > (1/2, 0)} in Z x Z equals {x : x_1 >= 1}
        CHECK(seg_equal(s, FinalSegment::closed_mod(Value({Rat(1), Rat(0)}, g2), ConvexSubgroup{2})));
    }
}

TEST_CASE("has_min") {
    auto g = z();
    auto got = has_min(FinalSegment::closed_at(Value(Rat(5), g)));
    REQUIRE(got.has_value());
    CHECK(*got == ValueInf(Value(Rat(5), g)));

    auto gd = z_half_dyadic();
    CHECK_FALSE(has_min(FinalSegment::open_ext(ExtValue(Rat(-1, 3)), gd)).has_value());

    got = has_min(FinalSegment::open_at(Value(Rat(0), g)));
    REQUIRE(got.has_value());
    CHECK(*got == ValueInf(Value(Rat(1), g)));

    auto g2 = half_x_dense();
    CHECK_FALSE(has_min(FinalSegment::closed_mod(Value::zero(g2), ConvexSubgroup{2})).has_value());
    CHECK_FALSE(has_min(FinalSegment::whole(g)).has_value());
    auto top_min = has_min(FinalSegment::top(g));
    REQUIRE(top_min.has_value());
    CHECK(top_min->is_inf());
}

TEST_CASE("invariance subgroup") {
    auto g2 = half_x_dense();
    Value gamma({Rat(1, 2), Rat(0)}, g2);
    CHECK(invariance_subgroup(FinalSegment::open_mod(-gamma, ConvexSubgroup{2})).suffix_start == 2);
    CHECK(invariance_subgroup(FinalSegment::closed_mod(Value::zero(g2), ConvexSubgroup{2})).suffix_start == 2);
    auto g = z();
    CHECK(invariance_subgroup(FinalSegment::closed_at(Value(Rat(0), g))).is_trivial(1));
    CHECK(invariance_subgroup(FinalSegment::whole(g)).is_whole());
}

TEST_CASE("annihilator segment") {
    auto g = z();
    SECTION("discrete shift") {
        // enumeration oracle for this value lives in test_oracle
        auto a = annihilator_segment(FinalSegment::closed_at(Value(Rat(-2), g)),
                                     FinalSegment::closed_at(Value(Rat(3), g)));
        CHECK(seg_equal(a, FinalSegment::closed_at(Value(Rat(5), g))));
    }
    SECTION("alpha equal to beta contains zero") {
        auto a = annihilator_segment(FinalSegment::closed_at(Value(Rat(0), g)),
                                     FinalSegment::closed_at(Value(Rat(0), g)));
        CHECK(seg_equal(a, FinalSegment::closed_at(Value(Rat(0), g))));
    }
    SECTION("rank-one dense defect shape") {
        auto gd = z_half_dyadic();
        // alpha = {x > -rho}, beta = {x > w - n*rho}: ann = {b >= w - (n-1)rho}
        Rat rho(1, 3);
        long long n = 2;
        Rat w(0);
        auto alpha = FinalSegment::open_ext(ExtValue(-rho), gd);
        auto beta = FinalSegment::open_ext(ExtValue(w - Rat(n) * rho), gd);
        auto a = annihilator_segment(alpha, beta);
        // w - (n-1)rho = -1/3, not in Z[1/2]: stays an open cut
        CHECK(a.is_cut());
        CHECK(a.strict());
        CHECK(a.anchor()[0] == Rat(-1, 3));
        // and with rho attained in the group the anchor closes
        Rat rho2(1, 2);
        auto a2 = annihilator_segment(FinalSegment::open_ext(ExtValue(-rho2), gd),
                                      FinalSegment::open_ext(ExtValue(w - Rat(n) * rho2), gd));
        CHECK(seg_equal(a2, FinalSegment::closed_at(Value(-rho2, gd))));
    }
    SECTION("whole and empty extremes") {
        CHECK(annihilator_segment(FinalSegment::whole(g), FinalSegment::whole(g)).is_whole());
        CHECK(annihilator_segment(FinalSegment::whole(g), FinalSegment::closed_at(Value(Rat(0), g))).is_empty());
        CHECK(annihilator_segment(FinalSegment::closed_at(Value(Rat(0), g)), FinalSegment::top(g)).is_empty());
    }
}

TEST_CASE("module report") {
    auto g = z();
    auto gd = z_half_dyadic();
    SECTION("zero module") {
        auto s = FinalSegment::open_ext(ExtValue(Rat(0)), gd);
        auto r = module_report(s, s);
        CHECK(r.is_zero);
        CHECK(seg_equal(r.ann, FinalSegment::closed_at(Value(Rat(0), gd))));
        CHECK(r.fin_gen);
        CHECK(r.fin_pres);
        CHECK_FALSE(r.single_generator);
    }
    SECTION("inertial inseparable shape: finitely presented, cyclic") {
        auto r = module_report(FinalSegment::closed_at(Value(Rat(0), g)),
                               FinalSegment::closed_at(Value(Rat(2), g)));
        CHECK_FALSE(r.is_zero);
        CHECK(r.fin_gen);
        CHECK(r.fin_pres);
        CHECK(r.single_generator);
        CHECK(seg_equal(r.ann, FinalSegment::closed_at(Value(Rat(2), g))));
    }
    SECTION("defect shape is not finitely generated") {
        auto alpha = FinalSegment::open_ext(ExtValue(Rat(1, 3)), gd);
        auto beta = FinalSegment::open_ext(ExtValue(Rat(5)), gd);
        auto r = module_report(alpha, beta);
        CHECK_FALSE(r.is_zero);
        CHECK_FALSE(r.fin_gen);
        CHECK_FALSE(r.fin_pres);
    }
    SECTION("rejects beta not contained in alpha") {
        CHECK_THROWS_AS(module_report(FinalSegment::closed_at(Value(Rat(3), g)),
                                      FinalSegment::closed_at(Value(Rat(0), g))),
                        ValidationError);
    }
}
