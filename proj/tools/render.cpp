#include "render.hpp"

namespace twistsha::cli {

json to_json(const Tri& t) {
    json j;
    j["state"] = tri_state_name(t.state);
    j["reason"] = t.reason;
    j["facts"] = t.fact_dependencies;
    return j;
}

json to_json(const Discriminant& d) {
    json j;
    j["value"] = d.value;
    j["kind"] = disc_kind_name(d.kind);
    return j;
}

json context_json(const TwistContext& ctx) {
    json j;
    j["form"] = form_tag(ctx.form);
    j["weight"] = ctx.k;
    j["level"] = ctx.level;
    j["p"] = ctx.p;
    j["D"] = to_json(ctx.d);
    j["a_p"] = ctx.a_p.get_str();
    return j;
}

json report_json(const TwistContext& ctx, const ConditionReport& rep) {
    json j;
    j["context"] = context_json(ctx);
    json conds;
    conds["A"] = to_json(rep.a);
    conds["B"] = to_json(rep.b);
    conds["C"] = to_json(rep.c);
    conds["D"] = to_json(rep.d);
    j["conditions"] = conds;
    j["tamagawa_equal_at_p"] = to_json(rep.tamagawa_equal_at_p);
    if (rep.reduction)
        j["reduction_type"] = reduction_type_name(*rep.reduction);
    else
        j["reduction_type"] = "undefined";
    j["local_case"] = rep.local_case;
    if (rep.exclusions) {
        json ex;
        ex["i1"] = to_json(rep.exclusions->i1);
        ex["i2"] = to_json(rep.exclusions->i2);
        ex["ii"] = to_json(rep.exclusions->ii);
        ex["iii"] = to_json(rep.exclusions->iii);
        ex["iv"] = to_json(rep.exclusions->iv);
        j["exclusions"] = ex;
    }
    if (rep.selmer_bound)
        j["selmer_bound"] = *rep.selmer_bound;
    else
        j["selmer_bound"] = "unknown";
    if (rep.selmer_ledger) {
        json l;
        l["a_invariants"] = rep.selmer_ledger->a_invariants;
        l["tangent"] = rep.selmer_ledger->tangent;
        l["h0_v"] = rep.selmer_ledger->h0_v;
        j["selmer_ledger"] = l;
    }
    return j;
}

json certificate_json(const RatioCertificate& cert) {
    json j;
    j["p"] = cert.p;
    j["k"] = cert.k;
    j["D"] = to_json(cert.d);
    j["Dprime"] = to_json(cert.dprime);
    j["c_D"] = {{"value", cert.c_d.get_str()},
                {"factorization", cert.c_d_fact.to_string()}};
    j["c_Dprime"] = {{"value", cert.c_dprime.get_str()},
                     {"factorization", cert.c_dprime_fact.to_string()}};
    j["exponent"] = cert.exponent;
    j["valuations"] = {{"c_D", cert.v_c_d},
                       {"c_Dprime", cert.v_c_dprime},
                       {"D", cert.v_d},
                       {"Dprime", cert.v_dprime}};
    j["valuation"] = cert.valuation;
    if (cert.tamagawa_at_p)
        j["tamagawa_at_p"] = *cert.tamagawa_at_p;
    j["conclusion"] = ratio_conclusion_name(cert.conclusion);
    return j;
}

json verdict_json(const Verdict& v) {
    json j;
    j["contexts"] = {{"D", context_json(v.ctx_d)},
                     {"Dprime", context_json(v.ctx_dprime)}};
    j["report"] = report_json(v.ctx_d, v.report);
    j["ratio"] = certificate_json(v.ratio);
    j["assumptions"] = v.assumptions;
    j["conclusion"] = verdict_conclusion_name(v.conclusion);
    j["target"] = v.target;
    j["explanation"] = v.explanation;
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace twistsha::cli
