#pragma once

#include <json.hpp>

#include "valomega/omega.hpp"

namespace valomega {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalars and value-group descriptors
//
// All rationals travel as strings "a/b"; value tuples as "(a,b,...)" (rank one
// drops the parentheses); infinity as "inf". Groups are lists of components,
// most significant first: {"gen": "1/2", "div": null | 2}.
// ---------------------------------------------------------------------------

namespace io_detail {

inline void require_keys(const Json& j, const std::vector<std::string>& required,
                         const std::vector<std::string>& optional, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    for (const auto& k : required)
        if (!j.contains(k)) throw ValidationError(where + ": missing field '" + k + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        bool known = false;
        for (const auto& r : required) known = known || k == r;
        for (const auto& o : optional) known = known || k == o;
        if (!known) throw ValidationError(where + ": unknown field '" + k + "'");
    }
}

inline std::string str_field(const Json& j, const std::string& where) {
    if (!j.is_string()) throw ValidationError(where + ": expected a string");
    return j.get<std::string>();
}

inline long long int_field(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ValidationError(where + ": expected an integer");
    return j.get<long long>();
}

}  // namespace io_detail

inline Rat rat_from_json(const Json& j, const std::string& where = "rational") {
    try {
        return Rat::parse(io_detail::str_field(j, where));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

inline std::vector<Rat> coords_parse(const std::string& s, const std::string& where = "value") {
    std::string body = s;
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') throw ValidationError(where + ": unbalanced parentheses in '" + s + "'");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<Rat> out;
    size_t pos = 0;
    while (true) {
        size_t comma = body.find(',', pos);
        std::string piece = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            out.push_back(Rat::parse(piece));
        } catch (const std::invalid_argument& e) {
            throw ValidationError(where + ": " + e.what());
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline Json group_to_json(const GroupPtr& g) {
    Json arr = Json::array();
    for (int k = 1; k <= g->rank(); ++k) {
        const GroupComponent& c = g->comp(k);
        Json comp;
        comp["gen"] = c.gen.str();
        comp["div"] = c.div ? Json(*c.div) : Json(nullptr);
        arr.push_back(std::move(comp));
    }
    return arr;
}

inline GroupPtr group_from_json(const Json& j, const std::string& where = "group") {
    if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a non-empty component list");
    std::vector<GroupComponent> comps;
    for (const Json& cj : j) {
        io_detail::require_keys(cj, {"gen"}, {"div"}, where + " component");
        GroupComponent c;
        c.gen = rat_from_json(cj.at("gen"), where + ".gen");
        if (cj.contains("div") && !cj.at("div").is_null())
            c.div = io_detail::int_field(cj.at("div"), where + ".div");
        comps.push_back(std::move(c));
    }
    try {
        return make_group(std::move(comps));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

inline Value value_from_json(const Json& j, const GroupPtr& g, const std::string& where = "value") {
    std::vector<Rat> c = coords_parse(io_detail::str_field(j, where), where);
    if (static_cast<int>(c.size()) != g->rank())
        throw ValidationError(where + ": rank mismatch against the group");
    try {
        return Value(std::move(c), g);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

inline ValueInf valueinf_from_json(const Json& j, const GroupPtr& g, const std::string& where = "value") {
    if (j.is_string() && j.get<std::string>() == "inf") return ValueInf::infinity();
    return ValueInf(value_from_json(j, g, where));
}

inline Json valueinf_to_json(const ValueInf& v) { return Json(v.str()); }

// ---------------------------------------------------------------------------
// Segments and value families
// ---------------------------------------------------------------------------

inline Json segment_to_json(const FinalSegment& s) {
    Json j;
    switch (s.kind()) {
        case FinalSegment::Kind::Whole: j["form"] = "whole"; return j;
        case FinalSegment::Kind::Top: j["form"] = "top"; return j;
        case FinalSegment::Kind::Empty: j["form"] = "empty"; return j;
        default: break;
    }
    j["form"] = s.strict() ? "open_at" : "closed_at";
    j["s"] = coords_str(s.anchor());
    j["delta_suffix"] = s.level();
    return j;
}

inline FinalSegment segment_from_json(const Json& j, const GroupPtr& g,
                                      const std::string& where = "segment") {
    io_detail::require_keys(j, {"form"}, {"s", "delta_suffix"}, where);
    std::string form = io_detail::str_field(j.at("form"), where + ".form");
    if (form == "whole") return FinalSegment::whole(g);
    if (form == "top") return FinalSegment::top(g);
    if (form == "empty") return FinalSegment::empty(g);
    if (form != "closed_at" && form != "open_at")
        throw ValidationError(where + ": unknown form '" + form + "'");
    if (!j.contains("s")) throw ValidationError(where + ": cut form needs field 's'");
    std::vector<Rat> anchor = coords_parse(io_detail::str_field(j.at("s"), where + ".s"), where + ".s");
    if (static_cast<int>(anchor.size()) != g->rank())
        throw ValidationError(where + ".s: rank mismatch against the group");
    int level = g->rank() + 1;
    if (j.contains("delta_suffix")) {
        level = static_cast<int>(io_detail::int_field(j.at("delta_suffix"), where + ".delta_suffix"));
        if (level < 1 || level > g->rank() + 1)
            throw ValidationError(where + ".delta_suffix: out of range");
    }
    return FinalSegment::cut(g, std::move(anchor), level, form == "open_at");
}

inline Json family_to_json(const ValueFamily& f) {
    Json j;
    switch (f.kind) {
        case ValueFamily::Kind::FiniteMax: {
            j["kind"] = "finite_max";
            Json vals = Json::array();
            for (const Value& v : f.values) vals.push_back(v.str());
            j["values"] = std::move(vals);
            return j;
        }
        case ValueFamily::Kind::StrictIncToSup: {
            j["kind"] = "inc_to_sup";
            j["sup"] = f.sup->str();
            j["attained"] = false;
            if (!f.witness.empty()) {
                Json w = Json::array();
                for (const Value& v : f.witness) w.push_back(v.str());
                j["witness"] = std::move(w);
            }
            return j;
        }
        default: j["kind"] = "cofinal"; return j;
    }
}

inline ValueFamily family_from_json(const Json& j, const GroupPtr& g,
                                    const std::string& where = "family") {
    io_detail::require_keys(j, {"kind"}, {"values", "sup", "attained", "witness"}, where);
    std::string kind = io_detail::str_field(j.at("kind"), where + ".kind");
    if (kind == "finite_max") {
        if (!j.contains("values")) throw ValidationError(where + ": finite_max needs 'values'");
        std::vector<Value> vals;
        for (const Json& vj : j.at("values")) vals.push_back(value_from_json(vj, g, where + ".values"));
        return ValueFamily::finite_max(std::move(vals));
    }
    if (kind == "inc_to_sup") {
        if (!j.contains("sup")) throw ValidationError(where + ": inc_to_sup needs 'sup'");
        if (j.contains("attained") && j.at("attained").get<bool>())
            throw ValidationError(where + ": inc_to_sup supremum must be unattained");
        std::vector<Rat> sup =
            coords_parse(io_detail::str_field(j.at("sup"), where + ".sup"), where + ".sup");
        if (static_cast<int>(sup.size()) != g->rank())
            throw ValidationError(where + ".sup: rank mismatch against the group");
        std::vector<Value> witness;
        if (j.contains("witness"))
            for (const Json& vj : j.at("witness")) witness.push_back(value_from_json(vj, g, where + ".witness"));
        return ValueFamily::inc_to_sup(ExtValue(std::move(sup)), std::move(witness));
    }
    if (kind == "cofinal") return ValueFamily::cofinal();
    throw ValidationError(where + ": unknown family kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Spec documents
// ---------------------------------------------------------------------------

struct DocOptions {
    int precision = 64;
    long long window_bound = 4;
    std::string format = "json";
};

struct ConcreteInput {
    BaseField field = BaseField::padic(2);
    std::vector<Json> g_coeffs;                  // raw coefficient descriptors
    std::string kind = "generic";                // generic | kummer | artin_schreier
    long long q = 0;                             // kummer exponent
};

struct SpecDocument {
    std::optional<PureExtensionSpec> spec;       // synthetic cases
    std::optional<ConcreteInput> concrete;
    std::string kind = "generic";                // dispatch for synthetic AS/Kummer tags
    DocOptions options;
};

namespace io_detail {

inline std::optional<std::set<long long>> b_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ValidationError(where + ": expected a list of integers");
    std::set<long long> out;
    for (const Json& e : j) out.insert(int_field(e, where));
    return out;
}

inline ResiduePoly residue_poly_from_json(const Json& j, long long p, const std::string& where) {
    if (!j.is_array()) throw ValidationError(where + ": expected a coefficient list");
    ResiduePoly rp{p, false, {}};
    for (const Json& cj : j) {
        if (cj.is_number_integer()) {
            rp.c.push_back(RatFun::constant(p, ((int_field(cj, where) % p) + p) % p));
        } else if (cj.is_array()) {
            std::vector<long long> uc;
            for (const Json& e : cj) uc.push_back(((int_field(e, where) % p) + p) % p);
            rp.c.push_back(RatFun::of(FpPoly(p, uc)));
            rp.has_u = true;
        } else {
            throw ValidationError(where + ": coefficient must be an integer or a list (poly in u)");
        }
    }
    rp.trim();
    return rp;
}

inline BaseField field_from_json(const Json& j, const std::string& where) {
    require_keys(j, {"field", "p"}, {"prec"}, where);
    std::string name = str_field(j.at("field"), where + ".field");
    long long p = int_field(j.at("p"), where + ".p");
    if (p < 2) throw ValidationError(where + ".p: need a prime >= 2");
    int prec = 64;
    if (j.contains("prec")) prec = static_cast<int>(int_field(j.at("prec"), where + ".prec"));
    if (name == "Qp") return BaseField::padic(p);
    if (name == "Fp_t") return BaseField::laurent(p, prec);
    if (name == "Fp_u_t") return BaseField::laurent_u(p, prec);
    throw ValidationError(where + ".field: unknown field '" + name + "' (Qp, Fp_t, Fp_u_t)");
}

inline FieldElement coeff_from_json(const Json& j, const BaseField& K, const std::string& where) {
    if (j.is_number_integer()) return FieldElement::from_int(K, int_field(j, where));
    if (j.is_string()) {
        if (!K.is_padic()) throw ValidationError(where + ": rational coefficients need a p-adic base");
        return FieldElement::from_rat(K, Rat::parse(str_field(j, where)));
    }
    if (j.is_object()) {
        if (K.is_padic()) throw ValidationError(where + ": t-series coefficients need a Laurent base");
        require_keys(j, {"t_terms"}, {}, where);
        FieldElement acc = FieldElement::zero(K);
        for (const Json& term : j.at("t_terms")) {
            require_keys(term, {"k", "u"}, {}, where + ".t_terms");
            int k = static_cast<int>(int_field(term.at("k"), where + ".k"));
            std::vector<long long> uc;
            for (const Json& e : term.at("u")) uc.push_back(((int_field(e, where) % K.p) + K.p) % K.p);
            RatFun coef = RatFun::of(FpPoly(K.p, uc));
            if (coef.num.deg() > 0 && !K.coeff_has_u)
                throw ValidationError(where + ": u-dependent coefficient over an F_p base");
            acc = acc + FieldElement::t_monomial(K, coef, k);
        }
        return acc;
    }
    throw ValidationError(where + ": unsupported coefficient encoding");
}

}  // namespace io_detail

inline SpecDocument spec_document_from_json(const Json& doc) {
    using namespace io_detail;
    if (!doc.is_object()) throw ValidationError("spec: expected a JSON object");
    if (doc.contains("version") && int_field(doc.at("version"), "version") != 1)
        throw ValidationError("version: only version 1 documents are supported");
    if (!doc.contains("case")) throw ValidationError("spec: missing field 'case'");
    std::string c = str_field(doc.at("case"), "case");

    SpecDocument out;
    if (doc.contains("options")) {
        const Json& oj = doc.at("options");
        require_keys(oj, {}, {"precision", "window_bound", "format"}, "options");
        if (oj.contains("precision"))
            out.options.precision = static_cast<int>(int_field(oj.at("precision"), "options.precision"));
        if (oj.contains("window_bound"))
            out.options.window_bound = int_field(oj.at("window_bound"), "options.window_bound");
        if (oj.contains("format")) out.options.format = str_field(oj.at("format"), "options.format");
        if (out.options.format != "json" && out.options.format != "text")
            throw ValidationError("options.format: must be 'json' or 'text'");
    }
    if (doc.contains("kind")) {
        out.kind = str_field(doc.at("kind"), "kind");
        if (out.kind != "generic" && out.kind != "kummer" && out.kind != "artin_schreier")
            throw ValidationError("kind: must be generic, kummer, or artin_schreier");
    }

    if (c == "concrete") {
        require_keys(doc, {"case", "field", "g"}, {"version", "options", "kind", "q"}, "spec");
        ConcreteInput in;
        in.field = field_from_json(doc.at("field"), "field");
        if (!doc.at("g").is_array() || doc.at("g").size() < 3)
            throw ValidationError("g: expected a coefficient list of degree >= 2, constant first");
        for (const Json& cj : doc.at("g")) in.g_coeffs.push_back(cj);
        in.kind = out.kind;
        if (doc.contains("q")) in.q = int_field(doc.at("q"), "q");
        if (in.kind == "kummer" && in.q < 2) throw ValidationError("q: kummer input needs q >= 2");
        out.concrete = std::move(in);
        return out;
    }

    PureExtensionSpec spec;
    auto base = [&](const std::vector<std::string>& extra_req, const std::vector<std::string>& extra_opt) {
        std::vector<std::string> req = {"case", "n", "p", "group"};
        std::vector<std::string> opt = {"version", "options", "kind"};
        req.insert(req.end(), extra_req.begin(), extra_req.end());
        opt.insert(opt.end(), extra_opt.begin(), extra_opt.end());
        require_keys(doc, req, opt, "spec");
        spec.n = int_field(doc.at("n"), "n");
        spec.p = int_field(doc.at("p"), "p");
        spec.group = group_from_json(doc.at("group"));
    };

    if (c == "pure_defect") {
        base({"v_eta_K", "v_gprime_eta"}, {"B"});
        PureDefect d{family_from_json(doc.at("v_eta_K"), spec.group, "v_eta_K"),
                     valueinf_from_json(doc.at("v_gprime_eta"), spec.group, "v_gprime_eta"),
                     std::nullopt};
        if (doc.contains("B")) d.B = b_from_json(doc.at("B"), "B");
        spec.data = std::move(d);
    } else if (c == "branched_pure") {
        base({"d", "beta_d", "v_eta_K", "v_gprime_eta"}, {"B"});
        BranchedPure b{int_field(doc.at("d"), "d"),
                       value_from_json(doc.at("beta_d"), spec.group, "beta_d"),
                       family_from_json(doc.at("v_eta_K"), spec.group, "v_eta_K"),
                       valueinf_from_json(doc.at("v_gprime_eta"), spec.group, "v_gprime_eta"),
                       std::nullopt};
        if (doc.contains("B")) b.B = b_from_json(doc.at("B"), "B");
        spec.data = std::move(b);
    } else if (c == "purely_inertial") {
        base({"v_gprime_eta"}, {"residue_minpoly", "B"});
        PurelyInertial pi{std::nullopt, std::nullopt,
                          valueinf_from_json(doc.at("v_gprime_eta"), spec.group, "v_gprime_eta")};
        if (doc.contains("residue_minpoly"))
            pi.residue_minpoly = residue_poly_from_json(doc.at("residue_minpoly"), spec.p, "residue_minpoly");
        if (doc.contains("B")) pi.B_explicit = b_from_json(doc.at("B"), "B");
        spec.data = std::move(pi);
    } else if (c == "purely_ramified") {
        base({"vK", "gamma", "coeff_values", "vp"}, {});
        std::vector<ValueInf> cv;
        for (const Json& vj : doc.at("coeff_values"))
            cv.push_back(valueinf_from_json(vj, spec.group, "coeff_values"));
        spec.data = PurelyRamified{group_from_json(doc.at("vK"), "vK"),
                                   value_from_json(doc.at("gamma"), spec.group, "gamma"),
                                   std::move(cv),
                                   valueinf_from_json(doc.at("vp"), spec.group, "vp")};
    } else {
        throw ValidationError("case: unknown case '" + c + "'");
    }
    out.spec = std::move(spec);
    return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline Json report_to_json(const OmegaReport& r, const GroupPtr& group) {
    Json j;
    j["version"] = 1;
    j["case"] = case_str(r.tag);
    j["group"] = group_to_json(group);
    j["alpha"] = r.alpha ? segment_to_json(*r.alpha) : Json(nullptr);
    j["beta"] = r.beta ? segment_to_json(*r.beta) : Json(nullptr);
    if (r.module) {
        Json m;
        m["fin_gen"] = r.module->fin_gen;
        m["fin_pres"] = r.module->fin_pres;
        m["single_generator"] = r.module->single_generator;
        j["module"] = std::move(m);
    } else {
        j["module"] = nullptr;
    }
    j["is_zero"] = r.is_zero;
    j["ann"] = r.ann ? segment_to_json(*r.ann) : Json(nullptr);
    j["ann_oracle_value"] = r.ann_oracle_value ? Json(r.ann_oracle_value->str()) : Json(nullptr);
    j["ann_unknown"] = r.ann_unknown;
    Json b;
    b["values"] = r.B_used.values;
    b["provenance"] = r.B_used.provenance;
    j["B"] = std::move(b);
    Json checks = Json::array();
    for (const CrossCheck& c : r.cross_checks) {
        Json cj;
        cj["name"] = c.name;
        cj["applicable"] = c.applicable;
        cj["says_zero"] = c.says_zero;
        checks.push_back(std::move(cj));
    }
    j["cross_checks"] = std::move(checks);
    j["inconsistent"] = r.inconsistent;
    j["notes"] = r.notes;
    return j;
}

inline OmegaReport report_from_json(const Json& j, GroupPtr* group_out = nullptr) {
    using namespace io_detail;
    require_keys(j,
                 {"version", "case", "group", "alpha", "beta", "module", "is_zero", "ann",
                  "ann_oracle_value", "ann_unknown", "B", "cross_checks", "inconsistent", "notes"},
                 {}, "report");
    GroupPtr g = group_from_json(j.at("group"));
    if (group_out) *group_out = g;
    OmegaReport r;
    std::string c = str_field(j.at("case"), "report.case");
    if (c == "pure_defect") r.tag = CaseTag::PureDefect;
    else if (c == "branched_pure") r.tag = CaseTag::BranchedPure;
    else if (c == "purely_inertial") r.tag = CaseTag::PurelyInertial;
    else if (c == "purely_ramified") r.tag = CaseTag::PurelyRamified;
    else throw ValidationError("report.case: unknown case '" + c + "'");
    if (!j.at("alpha").is_null()) r.alpha = segment_from_json(j.at("alpha"), g, "report.alpha");
    if (!j.at("beta").is_null()) r.beta = segment_from_json(j.at("beta"), g, "report.beta");
    r.is_zero = j.at("is_zero").get<bool>();
    if (!j.at("ann").is_null()) r.ann = segment_from_json(j.at("ann"), g, "report.ann");
    if (!j.at("module").is_null()) {
        const Json& m = j.at("module");
        require_keys(m, {"fin_gen", "fin_pres", "single_generator"}, {}, "report.module");
        if (!r.alpha || !r.beta || !r.ann)
            throw ValidationError("report.module: module data without alpha/beta/ann segments");
        r.module = ModuleReport{*r.alpha,        *r.beta,
                                r.is_zero,       *r.ann,
                                m.at("fin_gen").get<bool>(), m.at("fin_pres").get<bool>(),
                                m.at("single_generator").get<bool>()};
    }
    if (!j.at("ann_oracle_value").is_null())
        r.ann_oracle_value = value_from_json(j.at("ann_oracle_value"), g, "report.ann_oracle_value");
    r.ann_unknown = j.at("ann_unknown").get<bool>();
    const Json& b = j.at("B");
    require_keys(b, {"values", "provenance"}, {}, "report.B");
    for (const Json& e : b.at("values")) r.B_used.values.insert(int_field(e, "report.B.values"));
    r.B_used.provenance = str_field(b.at("provenance"), "report.B.provenance");
    for (const Json& cj : j.at("cross_checks")) {
        require_keys(cj, {"name", "applicable", "says_zero"}, {}, "report.cross_checks");
        r.cross_checks.push_back(CrossCheck{str_field(cj.at("name"), "report.cross_checks.name"),
                                            cj.at("applicable").get<bool>(),
                                            cj.at("says_zero").get<bool>()});
    }
    r.inconsistent = j.at("inconsistent").get<bool>();
    for (const Json& n : j.at("notes")) r.notes.push_back(str_field(n, "report.notes"));
    return r;
}

inline bool reports_equal(const OmegaReport& a, const OmegaReport& b) {
    auto seg_opt_eq = [](const std::optional<FinalSegment>& x, const std::optional<FinalSegment>& y) {
        if (x.has_value() != y.has_value()) return false;
        return !x || seg_equal(*x, *y);
    };
    if (a.tag != b.tag || a.is_zero != b.is_zero || a.ann_unknown != b.ann_unknown ||
        a.inconsistent != b.inconsistent || a.notes != b.notes)
        return false;
    if (!seg_opt_eq(a.alpha, b.alpha) || !seg_opt_eq(a.beta, b.beta) || !seg_opt_eq(a.ann, b.ann))
        return false;
    if (a.module.has_value() != b.module.has_value()) return false;
    if (a.module && (a.module->fin_gen != b.module->fin_gen || a.module->fin_pres != b.module->fin_pres ||
                     a.module->single_generator != b.module->single_generator))
        return false;
    if (a.ann_oracle_value.has_value() != b.ann_oracle_value.has_value()) return false;
    if (a.ann_oracle_value && !(*a.ann_oracle_value == *b.ann_oracle_value)) return false;
    if (a.B_used.values != b.B_used.values || a.B_used.provenance != b.B_used.provenance) return false;
    if (a.cross_checks.size() != b.cross_checks.size()) return false;
    for (size_t i = 0; i < a.cross_checks.size(); ++i) {
        const CrossCheck &x = a.cross_checks[i], &y = b.cross_checks[i];
        if (x.name != y.name || x.applicable != y.applicable || x.says_zero != y.says_zero) return false;
    }
    return true;
}

inline std::string report_to_text(const OmegaReport& r, const GroupPtr& group) {
    std::ostringstream os;
    os << "case: " << case_str(r.tag) << "\n";
    os << "group rank: " << group->rank() << "\n";
    os << "alpha: " << (r.alpha ? r.alpha->str() : "-") << "\n";
    os << "beta: " << (r.beta ? r.beta->str() : "-") << "\n";
    os << "module vanishes: " << (r.is_zero ? "yes" : "no") << "\n";
    if (r.ann) os << "annihilator segment: " << r.ann->str() << "\n";
    if (r.ann_oracle_value) os << "annihilator value (oracle): " << r.ann_oracle_value->str() << "\n";
    if (r.ann_unknown) os << "annihilator: unknown for this input\n";
    if (r.module)
        os << "finitely generated: " << (r.module->fin_gen ? "yes" : "no")
           << ", finitely presented: " << (r.module->fin_pres ? "yes" : "no")
           << ", single generator: " << (r.module->single_generator ? "yes" : "no") << "\n";
    os << "B (" << r.B_used.provenance << "):";
    if (r.B_used.values.empty()) os << " -";
    for (long long v : r.B_used.values) os << " " << v;
    os << "\n";
    for (const CrossCheck& c : r.cross_checks)
        os << "check " << c.name << ": "
           << (c.applicable ? (c.says_zero ? "says zero" : "says nonzero") : "not applicable") << "\n";
    os << "consistent: " << (r.inconsistent ? "NO" : "yes") << "\n";
    for (const std::string& n : r.notes) os << "note: " << n << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Document execution (shared by the CLI and tests)
// ---------------------------------------------------------------------------

struct RunResult {
    OmegaReport report;
    GroupPtr group;
};

inline RunResult run_document(const SpecDocument& doc) {
    if (doc.spec) {
        OmegaReport r;
        if (doc.kind == "artin_schreier") r = artin_schreier_report(*doc.spec);
        else if (doc.kind == "kummer") r = kummer_report(*doc.spec);
        else r = omega_report(*doc.spec);
        return RunResult{std::move(r), doc.spec->group};
    }
    const ConcreteInput& in = *doc.concrete;
    const BaseField& K = in.field;
    std::vector<FieldElement> coeffs;
    for (size_t i = 0; i < in.g_coeffs.size(); ++i)
        coeffs.push_back(io_detail::coeff_from_json(in.g_coeffs[i], K, "g[" + std::to_string(i) + "]"));
    Poly g(K, coeffs);
    if (in.kind == "kummer") {
        if (g.deg() != static_cast<int>(in.q))
            throw ValidationError("g: kummer input must have degree q");
        for (int i = 1; i < g.deg(); ++i)
            if (!g.at(i).eq(FieldElement::zero(K)))
                throw ValidationError("g: kummer input must have the form x^q - a");
        FieldElement a = FieldElement::zero(K) - g.at(0);
        OmegaReport r = kummer_report(K, a, in.q);
        GroupPtr grp = build_extension(K, g).value_group;
        return RunResult{std::move(r), std::move(grp)};
    }
    if (in.kind == "artin_schreier") {
        if (K.char_K() == 0 || g.deg() != static_cast<int>(K.p))
            throw ValidationError("g: artin_schreier input needs char p base and degree p");
        FieldElement a = FieldElement::zero(K) - g.at(0);
        OmegaReport r = artin_schreier_report(K, a);
        GroupPtr grp = build_extension(K, g).value_group;
        return RunResult{std::move(r), std::move(grp)};
    }
    ExtensionField L = build_extension(K, g);
    return RunResult{omega_report(L), L.value_group};
}

}  // namespace valomega
