#include "tgd.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "tgd/baselines.hpp"
#include "tgd/chase.hpp"
#include "tgd/extension.hpp"
#include "tgd/nulls.hpp"
#include "tgd/parser.hpp"
#include "tgd/probe.hpp"
#include "tgd/report.hpp"
#include "tgd/rtc.hpp"
#include "tgd/syntax.hpp"

struct tgd_program {
    tgd::program value;
    std::string source;
};

struct tgd_database {
    tgd::database value;
    std::string source;
};

struct tgd_query {
    tgd::query value;
    std::string source;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_error(char** error, const std::string& msg) {
    if (error) *error = dup_string(msg);
}

tgd_status fail(char** error, const std::string& msg, tgd_status code) {
    set_error(error, msg);
    return code;
}

tgd::extension_limits to_extension_limits(const tgd_limits* l) {
    tgd::extension_limits out;
    if (l) {
        out.max_pairs = l->max_pairs;
        out.body_limit_mult = l->body_limit_mult;
    }
    return out;
}

tgd::chase_limits to_chase_limits(const tgd_limits* l) {
    tgd::chase_limits out;
    if (l) out.max_atoms = l->chase_max_atoms;
    return out;
}

// Wraps a report payload with the common header and hands it out.
tgd_status emit(char** json_out, const tgd::ordered_json& header,
                tgd::ordered_json payload) {
    tgd::ordered_json full = header;
    for (auto& [k, v] : payload.items()) full[k] = v;
    if (json_out) *json_out = dup_string(full.dump(2) + "\n");
    return TGD_OK;
}

int verdict_code_of(tgd::tg_status s) {
    switch (s) {
        case tgd::tg_status::member: return TGD_VERDICT_MEMBER;
        case tgd::tg_status::non_member: return TGD_VERDICT_NON_MEMBER;
        default: return TGD_VERDICT_INCONCLUSIVE;
    }
}

}  // namespace

extern "C" {

void tgd_limits_default(tgd_limits* out) {
    if (!out) return;
    tgd::extension_limits xl;
    tgd::chase_limits cl;
    out->max_pairs = xl.max_pairs;
    out->body_limit_mult = xl.body_limit_mult;
    out->chase_max_atoms = cl.max_atoms;
}

void tgd_gen_params_default(tgd_gen_params* out) {
    if (!out) return;
    tgd::gen_params gp;
    out->seed = gp.seed;
    out->max_rules = gp.max_rules;
    out->max_body_atoms = gp.max_body_atoms;
    out->max_arity = gp.max_arity;
    out->n_predicates = gp.n_predicates;
    out->n_variables = gp.n_variables;
    out->existential_probability = gp.existential_probability;
}

const char* tgd_version(void) { return tgd::tool_version; }

void tgd_string_free(char* s) { delete[] s; }

tgd_status tgd_program_parse(const char* text, tgd_program** out, char** error) {
    if (!text || !out) return fail(error, "null argument", TGD_ERR_INVALID);
    try {
        auto* h = new tgd_program{tgd::parse_program(text), text};
        *out = h;
        return TGD_OK;
    } catch (const tgd::parse_error& e) {
        return fail(error, e.what(), TGD_ERR_PARSE);
    } catch (const std::exception& e) {
        return fail(error, e.what(), TGD_ERR_INTERNAL);
    }
}

void tgd_program_free(tgd_program* p) { delete p; }

tgd_status tgd_database_parse(const char* text, tgd_database** out, char** error) {
    if (!text || !out) return fail(error, "null argument", TGD_ERR_INVALID);
    try {
        auto* h = new tgd_database{tgd::parse_database(text), text};
        *out = h;
        return TGD_OK;
    } catch (const tgd::parse_error& e) {
        return fail(error, e.what(), TGD_ERR_PARSE);
    } catch (const std::exception& e) {
        return fail(error, e.what(), TGD_ERR_INTERNAL);
    }
}

void tgd_database_free(tgd_database* d) { delete d; }

tgd_status tgd_query_parse(const char* text, tgd_query** out, char** error) {
    if (!text || !out) return fail(error, "null argument", TGD_ERR_INVALID);
    try {
        auto* h = new tgd_query{tgd::parse_query(text), text};
        *out = h;
        return TGD_OK;
    } catch (const tgd::parse_error& e) {
        return fail(error, e.what(), TGD_ERR_PARSE);
    } catch (const std::exception& e) {
        return fail(error, e.what(), TGD_ERR_INTERNAL);
    }
}

void tgd_query_free(tgd_query* q) { delete q; }

tgd_status tgd_classify(const tgd_program* p, const char* class_name,
                        const tgd_limits* limits, int* verdict_code,
                        char** json_out, char** error) {
    if (!p || !class_name) return fail(error, "null argument", TGD_ERR_INVALID);
    try {
        std::string cls = class_name;
        if (cls == "wa") cls = "weakly-acyclic";
        tgd::ordered_json header =
            tgd::report_header("classify", {{"program", p->source}});
        tgd::ordered_json payload;

        if (cls == "tg" || cls == "all") {
            tgd::tg_verdict v =
                tgd::is_triangularly_guarded(p->value, to_extension_limits(limits));
            if (verdict_code) *verdict_code = verdict_code_of(v.status);
            if (cls == "tg") {
                payload["verdict"] = tgd::to_json(v);
                return emit(json_out, header, payload);
            }
            tgd::ordered_json arr = tgd::ordered_json::array();
            arr.push_back(tgd::to_json(v));
            arr.push_back(tgd::to_json(tgd::is_weakly_acyclic(p->value)));
            arr.push_back(tgd::to_json(tgd::is_guarded(p->value)));
            arr.push_back(tgd::to_json(tgd::is_sticky(p->value)));
            arr.push_back(tgd::to_json(tgd::is_shy(p->value)));
            payload["verdicts"] = arr;
            return emit(json_out, header, payload);
        }

        tgd::class_verdict cv;
        if (cls == "weakly-acyclic")
            cv = tgd::is_weakly_acyclic(p->value);
        else if (cls == "guarded")
            cv = tgd::is_guarded(p->value);
        else if (cls == "sticky")
            cv = tgd::is_sticky(p->value);
        else if (cls == "shy")
            cv = tgd::is_shy(p->value);
        else
            return fail(error, "unknown class: " + cls, TGD_ERR_INVALID);
        if (verdict_code)
            *verdict_code = cv.member ? TGD_VERDICT_MEMBER : TGD_VERDICT_NON_MEMBER;
        payload["verdict"] = tgd::to_json(cv);
        return emit(json_out, header, payload);
    } catch (const std::exception& e) {
        return fail(error, e.what(), TGD_ERR_INTERNAL);
    }
}

tgd_status tgd_extend(const tgd_program* p, const tgd_limits* limits,
                      char** json_out, char** error) {
    if (!p) return fail(error, "null argument", TGD_ERR_INVALID);
    try {
        tgd::extension_set xs = tgd::saturate(p->value, to_extension_limits(limits));
        tgd::pair_bounds pb = tgd::compute_pair_bounds(p->value);
        tgd::ordered_json header = tgd::report_header("extend", {{"program", p->source}});
        return emit(json_out, header, tgd::extension_json(xs, pb));
    } catch (const std::exception& e) {
        return fail(error, e.what(), TGD_ERR_INTERNAL);
    }
}

tgd_status tgd_rtc_witnesses(const tgd_program* p, const tgd_limits* limits,
                             size_t max_witnesses, char** json_out, char** error) {
    if (!p) return fail(error, "null argument", TGD_ERR_INVALID);
    try {
        tgd::extension_set xs = tgd::saturate(p->value, to_extension_limits(limits));
        tgd::null_analysis na = tgd::analyze_nulls(p->value);
        tgd::rtc_options opt;
        opt.max_witnesses = max_witnesses;
        tgd::rtc_result rr = tgd::find_rtcs(xs, na, opt);
        tgd::ordered_json header = tgd::report_header("rtc", {{"program", p->source}});
        tgd::ordered_json payload;
        payload["pair_count"] = xs.pairs.size();
        payload["saturated"] = xs.saturated;
        payload["capped"] = xs.capped;
        payload["truncated"] = rr.truncated;
        tgd::ordered_json arr = tgd::ordered_json::array();
        for (const auto& w : rr.witnesses) arr.push_back(tgd::to_json(w));
        payload["witnesses"] = arr;
        payload["witness_count"] = rr.witnesses.size();
        return emit(json_out, header, payload);
    } catch (const std::exception& e) {
        return fail(error, e.what(), TGD_ERR_INTERNAL);
    }
}

tgd_status tgd_chase(const tgd_program* p, const tgd_database* d, size_t depth,
                     const tgd_limits* limits, char** json_out, char** error) {
    if (!p || !d) return fail(error, "null argument", TGD_ERR_INVALID);
    try {
        tgd::labeled_instance inst =
            tgd::chase_to_level(p->value, d->value, depth, to_chase_limits(limits));
        tgd::ordered_json header = tgd::report_header(
            "chase", {{"program", p->source}, {"database", d->source}});
        return emit(json_out, header, tgd::instance_json(inst));
    } catch (const std::exception& e) {
        return fail(error, e.what(), TGD_ERR_INTERNAL);
    }
}

tgd_status tgd_ask(const tgd_program* p, const tgd_database* d, const tgd_query* q,
                   size_t depth, const tgd_limits* limits, int* ask_code,
                   char** json_out, char** error) {
    if (!p || !d || !q) return fail(error, "null argument", TGD_ERR_INVALID);
    try {
        tgd::bcq_result res =
            tgd::bcq_holds(p->value, d->value, q->value, depth, to_chase_limits(limits));
        if (ask_code) {
            switch (res.status) {
                case tgd::ask_status::entailed: *ask_code = TGD_ASK_ENTAILED; break;
                case tgd::ask_status::not_entailed: *ask_code = TGD_ASK_NOT_ENTAILED; break;
                default: *ask_code = TGD_ASK_UNKNOWN; break;
            }
        }
        tgd::ordered_json header = tgd::report_header(
            "ask",
            {{"program", p->source}, {"database", d->source}, {"query", q->source}});
        tgd::ordered_json payload;
        payload["result"] = tgd::to_json(res);
        return emit(json_out, header, payload);
    } catch (const std::exception& e) {
        return fail(error, e.what(), TGD_ERR_INTERNAL);
    }
}

tgd_status tgd_graph_dot(const tgd_program* p, char** dot_out, char** error) {
    if (!p) return fail(error, "null argument", TGD_ERR_INVALID);
    try {
        tgd::null_analysis na = tgd::analyze_nulls(p->value);
        if (dot_out) *dot_out = dup_string(tgd::to_dot(na));
        return TGD_OK;
    } catch (const std::exception& e) {
        return fail(error, e.what(), TGD_ERR_INTERNAL);
    }
}

tgd_status tgd_nullsets(const tgd_program* p, char** json_out, char** error) {
    if (!p) return fail(error, "null argument", TGD_ERR_INVALID);
    try {
        tgd::null_analysis na = tgd::analyze_nulls(p->value);
        tgd::ordered_json header =
            tgd::report_header("nullsets", {{"program", p->source}});
        return emit(json_out, header, tgd::nullsets_json(na));
    } catch (const std::exception& e) {
        return fail(error, e.what(), TGD_ERR_INTERNAL);
    }
}

tgd_status tgd_probe(const tgd_program* p, const tgd_database* d,
                     const char* shape_text, size_t n_small, size_t n_big,
                     size_t extra_levels, const tgd_limits* limits,
                     uint64_t* violations, char** json_out, char** error) {
    if (!p || !d || !shape_text) return fail(error, "null argument", TGD_ERR_INVALID);
    try {
        tgd::query shape = tgd::parse_query(shape_text);
        tgd::extension_set xs = tgd::saturate(p->value, to_extension_limits(limits));
        tgd::probe_report rep =
            tgd::bounded_nulls_probe(p->value, xs, d->value, shape.body, n_small, n_big,
                                     extra_levels, to_chase_limits(limits));
        if (violations) *violations = rep.violations;
        tgd::ordered_json header = tgd::report_header(
            "probe", {{"program", p->source},
                      {"database", d->source},
                      {"shape", shape_text}});
        return emit(json_out, header, tgd::probe_json(rep));
    } catch (const tgd::parse_error& e) {
        return fail(error, e.what(), TGD_ERR_PARSE);
    } catch (const std::exception& e) {
        return fail(error, e.what(), TGD_ERR_INTERNAL);
    }
}

tgd_status tgd_gen(const tgd_gen_params* params, char** json_out, char** error) {
    if (!params) return fail(error, "null argument", TGD_ERR_INVALID);
    try {
        tgd::gen_params gp;
        gp.seed = params->seed;
        gp.max_rules = params->max_rules;
        gp.max_body_atoms = params->max_body_atoms;
        gp.max_arity = params->max_arity;
        gp.n_predicates = params->n_predicates;
        gp.n_variables = params->n_variables;
        gp.existential_probability = params->existential_probability;
        tgd::program prog = tgd::random_ruleset(gp);
        std::string text = tgd::to_string(prog);
        tgd::ordered_json header = tgd::report_header("gen", {{"ruleset", text}});
        tgd::ordered_json payload;
        tgd::ordered_json pj;
        pj["seed"] = gp.seed;
        pj["max_rules"] = gp.max_rules;
        pj["max_body_atoms"] = gp.max_body_atoms;
        pj["max_arity"] = gp.max_arity;
        pj["n_predicates"] = gp.n_predicates;
        pj["n_variables"] = gp.n_variables;
        pj["existential_probability"] = gp.existential_probability;
        payload["params"] = pj;
        payload["ruleset"] = text;
        return emit(json_out, header, payload);
    } catch (const std::exception& e) {
        return fail(error, e.what(), TGD_ERR_INTERNAL);
    }
}

}  // extern "C"
