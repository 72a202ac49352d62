#include <catch2/catch_amalgamated.hpp>

#include "valomega/omega.hpp"

using namespace valomega;

namespace {

GroupPtr z_half() { return make_group({{Rat(1), 2}}); }  // Z[1/2]

Value val1(const GroupPtr& g, Rat x) { return Value(std::move(x), g); }

PureExtensionSpec as_over_zhalf(Rat sup_coord) {
    auto g = z_half();
    return as_defect_spec(2, g, ValueFamily::inc_to_sup(ExtValue{{sup_coord}}));
}

}  // namespace

TEST_CASE("classification of concrete quadratics over Q_2") {
    BaseField q2 = BaseField::padic(2);
    ExtensionField Li = build_extension(q2, Poly::from_ints(q2, {1, 1, 1}));
    ExtensionField Lr = build_extension(q2, Poly::from_ints(q2, {-2, 0, 1}));
    CHECK(classify(Li) == CaseTag::PurelyInertial);
    CHECK(classify(Lr) == CaseTag::PurelyRamified);
}

TEST_CASE("synthetic spec validation") {
    auto g = z_half();
    SECTION("defect family must not attain a maximum") {
        PureExtensionSpec spec;
        spec.n = 2;
        spec.p = 2;
        spec.group = g;
        spec.data = PureDefect{ValueFamily::finite_max({val1(g, Rat(1))}),
                               ValueInf(Value::zero(g)), std::nullopt};
        CHECK_THROWS_AS(classify(spec), ValidationError);
    }
    SECTION("defect degree must be a p-power") {
        PureExtensionSpec spec = as_over_zhalf(Rat(0));
        spec.n = 6;
        CHECK_THROWS_AS(classify(spec), ValidationError);
    }
    SECTION("B outside {1, p, p^2, ...} is rejected") {
        PureExtensionSpec spec = as_over_zhalf(Rat(0));
        std::get<PureDefect>(spec.data).B = std::set<long long>{3};
        CHECK_THROWS_AS(classify(spec), ValidationError);
    }
    SECTION("ramified: gamma generating too small a quotient is rejected") {
        auto vL = make_group({{Rat(1, 2), std::nullopt}});
        PureExtensionSpec spec = kummer_ramified_spec(2, 2, vL, vL, val1(vL, Rat(1, 2)),
                                                      ValueInf(val1(vL, Rat(1))));
        // vK = vL contains gamma
        CHECK_THROWS_AS(classify(spec), ValidationError);
    }
    SECTION("ramified: v(a_0) must equal n*gamma") {
        auto vL = make_group({{Rat(1, 2), std::nullopt}});
        auto vK = z_group();
        PureExtensionSpec spec = kummer_ramified_spec(2, 2, vL, vK, val1(vL, Rat(1, 2)),
                                                      ValueInf(val1(vL, Rat(1))));
        std::get<PurelyRamified>(spec.data).coeff_values[0] = ValueInf(val1(vL, Rat(2)));
        CHECK_THROWS_AS(classify(spec), ValidationError);
    }
}

TEST_CASE("alpha per case") {
    SECTION("inertial: closed at zero") {
        BaseField q2 = BaseField::padic(2);
        ExtensionField L = build_extension(q2, Poly::from_ints(q2, {1, 1, 1}));
        FinalSegment a = alpha_of(spec_of(L));
        CHECK(seg_equal(a, FinalSegment::closed_at(Value::zero(L.value_group))));
    }
    SECTION("defect: open beyond -rho") {
        PureExtensionSpec spec = as_over_zhalf(Rat(1));
        FinalSegment a = alpha_of(spec);
        CHECK(seg_equal(a, FinalSegment::open_ext(ExtValue{{Rat(-1)}}, spec.group)));
    }
    SECTION("ramified quotient-minimum case: nonnegatives mod Delta") {
        BaseField q2 = BaseField::padic(2);
        ExtensionField L = build_extension(q2, Poly::from_ints(q2, {-2, 0, 1}));
        FinalSegment a = alpha_of(spec_of(L));
        CHECK(seg_equal(a, FinalSegment::closed_at(Value::zero(L.value_group))));
    }
}

TEST_CASE("inertial reports") {
    BaseField q2 = BaseField::padic(2);
    SECTION("separable residue: the module vanishes") {
        ExtensionField L = build_extension(q2, Poly::from_ints(q2, {1, 1, 1}));
        OmegaReport r = omega_report(L);
        CHECK(r.tag == CaseTag::PurelyInertial);
        CHECK(r.is_zero);
        CHECK_FALSE(r.inconsistent);
        CHECK(r.B_used.values == std::set<long long>{1, 2});
        CHECK(r.B_used.provenance == "computed");
        REQUIRE(r.module.has_value());
        CHECK(r.module->fin_pres);
    }
    SECTION("inseparable residue over F_2(u)((t)): Omega is the whole ring") {
        BaseField k = BaseField::laurent_u(2, 32);
        Series a0;
        a0.lead = 0;
        a0.prec = k.precision;
        a0.exact = true;
        a0.c = {RatFun::of(FpPoly(2, {0, 1})), RatFun::constant(2, 1)};  // u + t
        Poly g(k, {-FieldElement(k, a0), FieldElement::zero(k), FieldElement::one(k)});
        ExtensionField L = build_extension(k, g);
        OmegaReport r = omega_report(L);
        CHECK_FALSE(r.is_zero);
        CHECK_FALSE(r.inconsistent);
        CHECK(r.B_used.values == std::set<long long>{2});
        REQUIRE(r.beta.has_value());
        CHECK(r.beta->is_top());
        REQUIRE(r.ann.has_value());
        CHECK(r.ann->is_empty());  // annihilated only by zero
        CHECK(r.module->fin_pres);
    }
}

TEST_CASE("ramified quotient-minimum reports carry an oracle annihilator") {
    BaseField q2 = BaseField::padic(2);
    SECTION("x^2 - 2") {
        ExtensionField L = build_extension(q2, Poly::from_ints(q2, {-2, 0, 1}));
        OmegaReport r = omega_report(L);
        CHECK(r.tag == CaseTag::PurelyRamified);
        CHECK_FALSE(r.is_zero);
        REQUIRE(r.ann_oracle_value.has_value());
        CHECK(r.ann_oracle_value->coords()[0] == Rat(3, 2));
    }
    SECTION("x^3 - 2 (Kummer, q = 3)") {
        OmegaReport r = kummer_report(q2, FieldElement::from_int(q2, 2), 3);
        CHECK_FALSE(r.is_zero);
        REQUIRE(r.ann_oracle_value.has_value());
        CHECK(r.ann_oracle_value->coords()[0] == Rat(2, 3));
    }
    SECTION("the two annihilator values differ across the two extensions") {
        OmegaReport r2 = kummer_report(q2, FieldElement::from_int(q2, 2), 2);
        OmegaReport r3 = kummer_report(q2, FieldElement::from_int(q2, 2), 3);
        CHECK(r2.ann_oracle_value->coords()[0] != r3.ann_oracle_value->coords()[0]);
    }
    SECTION("synthetic ramified spec without concrete data leaves ann unknown") {
        auto vL = make_group({{Rat(1, 2), std::nullopt}});
        PureExtensionSpec spec = kummer_ramified_spec(2, 2, vL, z_group(), val1(vL, Rat(1, 2)),
                                                      ValueInf(val1(vL, Rat(1))));
        OmegaReport r = omega_report(spec);
        CHECK_FALSE(r.is_zero);
        CHECK(r.ann_unknown);
        CHECK_FALSE(r.ann_oracle_value.has_value());
    }
}

TEST_CASE("ramified dense-quotient case uses the coefficient criterion") {
    // vL = (1/2)Z[1/3] x Z, vK = Z[1/3] x Z, gamma = (1/2, 0), p = 2
    auto vL = make_group({{Rat(1, 2), 3}, {Rat(1), std::nullopt}});
    auto vK = make_group({{Rat(1), 3}, {Rat(1), std::nullopt}});
    auto mk = [&](ValueInf va1) {
        PureExtensionSpec spec;
        spec.n = 2;
        spec.p = 2;
        spec.group = vL;
        std::vector<ValueInf> cv = {ValueInf(Value({Rat(1), Rat(0)}, vL)), std::move(va1)};
        spec.data = PurelyRamified{vK, Value({Rat(1, 2), Rat(0)}, vL), std::move(cv),
                                   ValueInf(Value({Rat(1), Rat(0)}, vL))};
        return spec;
    };
    SECTION("no coefficient term inside Delta: nonzero module") {
        PureExtensionSpec spec = mk(ValueInf::infinity());
        CHECK(classify(spec) == CaseTag::PurelyRamified);
        OmegaReport r = omega_report(spec);
        CHECK_FALSE(r.is_zero);
        CHECK_FALSE(r.inconsistent);
        REQUIRE(r.ann.has_value());
    }
    SECTION("coefficient term inside Delta: module vanishes") {
        PureExtensionSpec spec = mk(ValueInf(Value({Rat(1, 2), Rat(1)}, vL)));
        OmegaReport r = omega_report(spec);
        CHECK(r.is_zero);
        CHECK_FALSE(r.inconsistent);
        CHECK(seg_equal(*r.alpha, *r.beta));
    }
}

TEST_CASE("Artin-Schreier synthetic defect reports") {
    SECTION("sup 0: module vanishes, annihilator is the valuation ring") {
        PureExtensionSpec spec = as_over_zhalf(Rat(0));
        OmegaReport r = artin_schreier_report(spec);
        CHECK(r.is_zero);
        CHECK(seg_equal(*r.alpha, *r.beta));
        CHECK(seg_equal(*r.ann, FinalSegment::closed_at(Value::zero(spec.group))));
        CHECK(r.module->fin_gen);  // the zero module is finitely generated
    }
    SECTION("sup -1: ann = {vb >= (1-p) rho} = ClosedAt(1) for p = 2") {
        PureExtensionSpec spec = as_over_zhalf(Rat(-1));
        OmegaReport r = artin_schreier_report(spec);
        CHECK_FALSE(r.is_zero);
        CHECK(seg_equal(*r.ann, FinalSegment::closed_at(val1(spec.group, Rat(1)))));
    }
    SECTION("B = {1} is consistent with the vanishing verdict") {
        auto g = z_half();
        PureExtensionSpec spec =
            as_defect_spec(2, g, ValueFamily::inc_to_sup(ExtValue{{Rat(0)}}), std::set<long long>{1});
        OmegaReport r = artin_schreier_report(spec);
        CHECK(r.is_zero);
        CHECK_FALSE(r.inconsistent);
    }
    SECTION("B = {2} contradicts the vanishing verdict and is flagged") {
        auto g = z_half();
        PureExtensionSpec spec =
            as_defect_spec(2, g, ValueFamily::inc_to_sup(ExtValue{{Rat(0)}}), std::set<long long>{2});
        OmegaReport r = artin_schreier_report(spec);
        CHECK(r.is_zero);
        CHECK(r.inconsistent);
    }
}

TEST_CASE("rank-1 defect annihilator closed form") {
    // ann(alpha, beta) = { vb >= (1-n) rho + v(g'(eta)) } as a segment identity
    auto g = z_half();
    std::vector<std::pair<Rat, Rat>> cases = {
        {Rat(0), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(1, 2), Rat(3)}, {Rat(2), Rat(7)}};
    for (const auto& [rho, vg] : cases) {
        PureExtensionSpec spec;
        spec.n = 4;
        spec.p = 2;
        spec.group = g;
        spec.data = PureDefect{ValueFamily::inc_to_sup(ExtValue{{rho}}),
                               ValueInf(val1(g, vg)), std::nullopt};
        OmegaReport r = omega_report(spec);
        Rat expect = Rat(1 - 4) * rho + vg;
        CHECK(seg_equal(*r.ann, FinalSegment::closed_at(val1(g, expect))));
        if (!r.is_zero) CHECK_FALSE(r.module->fin_gen);
        CHECK(seg_subset(*r.beta, *r.alpha));
    }
}

TEST_CASE("Kummer reports") {
    SECTION("synthetic defect Kummer: ann = {vb >= vp + (1-p) rho}") {
        auto g = z_half();
        Rat rho(-2);
        Rat vp(3);
        PureExtensionSpec spec = kummer_defect_spec(
            2, g, ValueFamily::inc_to_sup(ExtValue{{rho}}), ValueInf(val1(g, vp)));
        OmegaReport r = kummer_report(spec);
        CHECK(seg_equal(*r.ann, FinalSegment::closed_at(val1(g, vp + Rat(1 - 2) * rho))));
    }
    SECTION("synthetic ramified Kummer with q = 3, p = 5 over a dense quotient vanishes") {
        auto vL = make_group({{Rat(1, 3), 2}});
        auto vK = make_group({{Rat(1), 2}});
        PureExtensionSpec spec = kummer_ramified_spec(3, 5, vL, vK, val1(vL, Rat(1, 3)),
                                                      ValueInf(val1(vL, Rat(1))));
        OmegaReport r = kummer_report(spec);
        CHECK(r.is_zero);
        CHECK_FALSE(r.inconsistent);
    }
    SECTION("same shape with q = p = 2 and vp outside Delta stays nonzero") {
        auto vL = make_group({{Rat(1, 2), 3}});
        auto vK = make_group({{Rat(1), 3}});
        PureExtensionSpec spec = kummer_ramified_spec(2, 2, vL, vK, val1(vL, Rat(1, 2)),
                                                      ValueInf(val1(vL, Rat(1))));
        OmegaReport r = kummer_report(spec);
        CHECK_FALSE(r.is_zero);
        CHECK_FALSE(r.inconsistent);
    }
}

TEST_CASE("two-generator presentation matches the alpha/beta description") {
    auto g = z_half();
    PureExtensionSpec spec = as_over_zhalf(Rat(0));
    Value vr = val1(g, Rat(2));
    auto [u, v] = ckr_segments(spec, vr);
    FinalSegment alpha = alpha_of(spec);
    FinalSegment beta = beta_of(spec);
    CHECK(seg_equal(u, translate(alpha, vr)));
    CHECK(seg_equal(segment_sum(u, v), translate(beta, vr)));
    ModuleReport from_uv = module_report(u, segment_sum(u, v));
    ModuleReport from_ab = module_report(alpha, beta);
    CHECK(from_uv.is_zero == from_ab.is_zero);
    CHECK(from_uv.fin_gen == from_ab.fin_gen);
    CHECK(from_uv.fin_pres == from_ab.fin_pres);
    CHECK(seg_equal(from_uv.ann, from_ab.ann));
    SECTION("v_rtilde below the family supremum is rejected") {
        CHECK_THROWS_AS(ckr_segments(spec, val1(g, Rat(-1))), ValidationError);
    }
}

TEST_CASE("concrete Artin-Schreier over F_2((t)) with unit residue") {
    // x^2 - x - 1 = x^2 + x + 1 in characteristic 2: inertial, separable residue
    BaseField k = BaseField::laurent(2, 32);
    OmegaReport r = artin_schreier_report(k, FieldElement::one(k));
    CHECK(r.tag == CaseTag::PurelyInertial);
    CHECK(r.is_zero);
    CHECK_FALSE(r.inconsistent);
}
