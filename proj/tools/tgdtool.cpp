#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tgd.h"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int exit_usage = 2;

struct owned_str {
    char* p = nullptr;
    ~owned_str() { tgd_string_free(p); }
    char** out() { return &p; }
    std::string str() const { return p ? p : ""; }
};

struct program_handle {
    tgd_program* h = nullptr;
    ~program_handle() { tgd_program_free(h); }
};

struct database_handle {
    tgd_database* h = nullptr;
    ~database_handle() { tgd_database_free(h); }
};

struct query_handle {
    tgd_query* h = nullptr;
    ~query_handle() { tgd_query_free(h); }
};

bool read_file(const std::string& path, std::string& out, std::string& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err = "cannot open " + path;
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

int input_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return exit_usage;
}

bool load_program(const std::string& path, program_handle& ph, std::string& err) {
    std::string text;
    if (!read_file(path, text, err)) return false;
    owned_str e;
    if (tgd_program_parse(text.c_str(), &ph.h, e.out()) != TGD_OK) {
        err = path + ": " + e.str();
        return false;
    }
    return true;
}

bool load_database(const std::string& path, database_handle& dh, std::string& err) {
    std::string text;
    if (!read_file(path, text, err)) return false;
    owned_str e;
    if (tgd_database_parse(text.c_str(), &dh.h, e.out()) != TGD_OK) {
        err = path + ": " + e.str();
        return false;
    }
    return true;
}

bool load_query(const std::string& path, query_handle& qh, std::string& err) {
    std::string text;
    if (!read_file(path, text, err)) return false;
    owned_str e;
    if (tgd_query_parse(text.c_str(), &qh.h, e.out()) != TGD_OK) {
        err = path + ": " + e.str();
        return false;
    }
    return true;
}

// Shared output path: re-serializes with optional timings, or renders text.
void print_report(const std::string& json_text, const std::string& format, bool timings,
                  double wall_ms, const std::function<void(const ordered_json&)>& text_renderer) {
    ordered_json j = ordered_json::parse(json_text);
    if (timings) {
        ordered_json t;
        t["wall_ms"] = wall_ms;
        j["timings"] = t;
    }
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    text_renderer(j);
    if (timings) std::cout << "time: " << wall_ms << " ms\n";
}

std::string join_strings(const ordered_json& arr, const std::string& sep) {
    std::string out;
    for (const auto& v : arr) {
        if (!out.empty()) out += sep;
        out += v.get<std::string>();
    }
    return out;
}

void print_witness(const ordered_json& w, bool explain, const std::string& indent) {
    std::cout << indent << "witness (pair " << w["pair"] << "): a=" << w["a"].get<std::string>()
              << " b=" << w["b"].get<std::string>() << " c=" << w["c"].get<std::string>()
              << " x=" << w["x"].get<std::string>() << " z=" << w["z"].get<std::string>()
              << " via=" << w["via"].get<std::string>();
    if (w["via"] == "second-pair") std::cout << "(" << w["second_pair"] << ")";
    std::cout << " guard=";
    if (w["guard"].is_null())
        std::cout << "none";
    else
        std::cout << w["guard"].get<std::string>();
    std::cout << "\n";
    if (!explain) return;
    std::cout << indent << "  a_prime: " << w["a_prime"].get<std::string>() << "\n";
    std::cout << indent << "  theta: " << w["theta"].get<std::string>() << "\n";
    if (w.contains("b_prime"))
        std::cout << indent << "  b_prime: " << w["b_prime"].get<std::string>()
                  << " eta: " << w["eta"].get<std::string>() << "\n";
    std::string path;
    const auto& atoms = w["link_path"];
    const auto& links = w["path_links"];
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        path += atoms[i].get<std::string>();
        if (i + 1 < atoms.size()) path += " -[" + join_strings(links[i], ",") + "]- ";
    }
    std::cout << indent << "  link path: " << path << "\n";
    std::cout << indent << "  certifying link var: " << w["failing_link_var"].get<std::string>()
              << " at step " << w["failing_link_index"] << "\n";
    std::cout << indent << "  marked vars of a: {" << join_strings(w["m_var"], ", ") << "}\n";
}

void print_class_verdict(const ordered_json& v, bool explain) {
    std::cout << v["class"].get<std::string>() << ": ";
    if (v.contains("status"))
        std::cout << v["status"].get<std::string>();
    else
        std::cout << (v["member"].get<bool>() ? "member" : "non-member");
    std::cout << "\n";
    if (v.contains("evidence"))
        std::cout << "  " << v["evidence"].get<std::string>() << "\n";
    if (v.contains("reason")) std::cout << "  " << v["reason"].get<std::string>() << "\n";
    if (v.contains("pairs_examined"))
        std::cout << "  pairs examined: " << v["pairs_examined"]
                  << (v["saturated"].get<bool>() ? " (saturated)" : " (not saturated)") << "\n";
    if (v.contains("witness") && !v["witness"].is_null())
        print_witness(v["witness"], explain, "  ");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analyzer for existential rule sets"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::string format = "json";
    bool timings = false;
    bool show_version = false;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timings", timings, "append wall-clock time to the output");
    app.add_flag("--version", show_version, "print the tool version and exit");

    // classify
    auto* sc_classify = app.add_subcommand("classify", "decide membership in a rule class");
    std::string classify_file, classify_class = "tg";
    std::size_t opt_max_pairs = 0;
    sc_classify->add_option("program", classify_file, "ruleset file")->required();
    sc_classify->add_option("--class", classify_class, "tg, wa, guarded, sticky, shy or all")
        ->check(CLI::IsMember({"tg", "wa", "weakly-acyclic", "guarded", "sticky", "shy", "all"}));
    auto* classify_mp = sc_classify->add_option("--max-pairs", opt_max_pairs,
                                                "cap on constructed pairs");

    // extend
    auto* sc_extend = app.add_subcommand("extend", "construct the pair closure");
    std::string extend_file;
    sc_extend->add_option("program", extend_file, "ruleset file")->required();
    auto* extend_mp = sc_extend->add_option("--max-pairs", opt_max_pairs,
                                            "cap on constructed pairs");

    // rtc
    auto* sc_rtc = app.add_subcommand("rtc", "enumerate recursion witnesses");
    std::string rtc_file;
    std::size_t rtc_limit = 0;
    bool rtc_explain = false;
    sc_rtc->add_option("program", rtc_file, "ruleset file")->required();
    sc_rtc->add_option("--limit", rtc_limit, "max witnesses (0 = unlimited)");
    sc_rtc->add_flag("--explain", rtc_explain, "full detail in text output");
    auto* rtc_mp = sc_rtc->add_option("--max-pairs", opt_max_pairs, "cap on constructed pairs");

    // chase
    auto* sc_chase = app.add_subcommand("chase", "run the bounded chase");
    std::string chase_prog, chase_db, chase_out;
    std::size_t chase_depth = 5;
    sc_chase->add_option("program", chase_prog, "ruleset file")->required();
    sc_chase->add_option("database", chase_db, "facts file")->required();
    sc_chase->add_option("--depth", chase_depth, "level bound");
    sc_chase->add_option("--out", chase_out, "also write the atoms to this file");

    // ask
    auto* sc_ask = app.add_subcommand("ask", "answer a boolean query");
    std::string ask_prog, ask_db, ask_query;
    std::size_t ask_depth = 5;
    sc_ask->add_option("program", ask_prog, "ruleset file")->required();
    sc_ask->add_option("database", ask_db, "facts file")->required();
    sc_ask->add_option("query", ask_query, "query file")->required();
    sc_ask->add_option("--depth", ask_depth, "chase level bound");

    // graph
    auto* sc_graph = app.add_subcommand("graph", "null dependency graph as DOT");
    std::string graph_file;
    sc_graph->add_option("program", graph_file, "ruleset file")->required();

    // nullsets
    auto* sc_nullsets = app.add_subcommand("nullsets", "null propagation tables");
    std::string nullsets_file;
    sc_nullsets->add_option("program", nullsets_file, "ruleset file")->required();

    // probe
    auto* sc_probe = app.add_subcommand("probe", "test null interchangeability");
    std::string probe_prog, probe_db, probe_shape;
    std::size_t probe_small = 2, probe_big = 4, probe_k = 2;
    sc_probe->add_option("program", probe_prog, "ruleset file")->required();
    sc_probe->add_option("database", probe_db, "facts file")->required();
    sc_probe->add_option("--shape", probe_shape, "shape file (query syntax)")->required();
    sc_probe->add_option("--n-small", probe_small, "old nulls: level at most this");
    sc_probe->add_option("--n-big", probe_big, "recent nulls: level above this");
    sc_probe->add_option("--k", probe_k, "extra levels chased past n-big");
    auto* probe_mp = sc_probe->add_option("--max-pairs", opt_max_pairs,
                                          "cap on constructed pairs");

    // gen
    auto* sc_gen = app.add_subcommand("gen", "generate a deterministic ruleset");
    tgd_gen_params gp;
    tgd_gen_params_default(&gp);
    std::string gen_out;
    sc_gen->add_option("--seed", gp.seed, "seed");
    sc_gen->add_option("--max-rules", gp.max_rules, "max rules");
    sc_gen->add_option("--max-body-atoms", gp.max_body_atoms, "max body atoms per rule");
    sc_gen->add_option("--max-arity", gp.max_arity, "max predicate arity");
    sc_gen->add_option("--n-predicates", gp.n_predicates, "predicate count");
    sc_gen->add_option("--n-variables", gp.n_variables, "variable pool size");
    sc_gen->add_option("--existential-probability", gp.existential_probability,
                       "chance of an existential head position");
    sc_gen->add_option("--out", gen_out, "also write the ruleset to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (show_version) {
        std::cout << tgd_version() << "\n";
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return exit_usage;
    }

    tgd_limits limits;
    tgd_limits_default(&limits);
    bool max_pairs_given = classify_mp->count() || extend_mp->count() || rtc_mp->count() ||
                           probe_mp->count();
    if (max_pairs_given) {
        limits.max_pairs = opt_max_pairs;
    } else if (const char* env = std::getenv("TGD_MAX_PAIRS")) {
        try {
            limits.max_pairs = std::stoull(env);
        } catch (const std::exception&) {
            return input_error("TGD_MAX_PAIRS is not a number: " + std::string(env));
        }
    }

    auto timed = [&](auto&& fn) {
        auto start = std::chrono::steady_clock::now();
        auto status = fn();
        auto end = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(end - start).count();
        return std::make_pair(status, ms);
    };

    if (sc_classify->parsed()) {
        program_handle ph;
        std::string err;
        if (!load_program(classify_file, ph, err)) return input_error(err);
        owned_str json, e;
        int verdict = TGD_VERDICT_INCONCLUSIVE;
        auto [st, ms] = timed([&] {
            return tgd_classify(ph.h, classify_class.c_str(), &limits, &verdict, json.out(),
                                e.out());
        });
        if (st != TGD_OK) return input_error(e.str());
        print_report(json.str(), format, timings, ms, [&](const ordered_json& j) {
            if (j.contains("verdicts"))
                for (const auto& v : j["verdicts"]) print_class_verdict(v, true);
            else
                print_class_verdict(j["verdict"], true);
        });
        return verdict;
    }

    if (sc_extend->parsed()) {
        program_handle ph;
        std::string err;
        if (!load_program(extend_file, ph, err)) return input_error(err);
        owned_str json, e;
        auto [st, ms] = timed([&] { return tgd_extend(ph.h, &limits, json.out(), e.out()); });
        if (st != TGD_OK) return input_error(e.str());
        print_report(json.str(), format, timings, ms, [&](const ordered_json& j) {
            std::cout << "pairs: " << j["pair_count"]
                      << (j["saturated"].get<bool>() ? " (saturated)" : "")
                      << (j["capped"].get<bool>() ? " (capped)" : "") << ", max depth "
                      << j["max_depth"] << "\n";
            const auto& b = j["bounds"];
            std::cout << "bound exponent d: " << b["d"].get<std::string>() << "\n";
            std::cout << "pair bound: " << b["pair_bound"].get<std::string>() << " ("
                      << b["pair_bound_digits"].get<std::string>() << " digits)\n";
            for (const auto& p : j["pairs"]) {
                std::cout << "[" << p["id"] << "] " << p["key"].get<std::string>();
                if (p.contains("origin")) {
                    std::cout << "  origin: rule " << p["origin"]["rule"].get<std::string>()
                              << " head " << p["origin"]["head_index"] << "\n";
                } else {
                    const auto& s = p["provenance"][0];
                    std::cout << "  from " << s["base"] << " + " << s["target"] << " via "
                              << s["unified_atom"].get<std::string>() << "\n";
                }
            }
        });
        return 0;
    }

    if (sc_rtc->parsed()) {
        program_handle ph;
        std::string err;
        if (!load_program(rtc_file, ph, err)) return input_error(err);
        owned_str json, e;
        auto [st, ms] = timed(
            [&] { return tgd_rtc_witnesses(ph.h, &limits, rtc_limit, json.out(), e.out()); });
        if (st != TGD_OK) return input_error(e.str());
        print_report(json.str(), format, timings, ms, [&](const ordered_json& j) {
            std::cout << "pairs: " << j["pair_count"] << ", witnesses: " << j["witness_count"]
                      << (j["truncated"].get<bool>() ? " (truncated)" : "") << "\n";
            for (const auto& w : j["witnesses"]) print_witness(w, rtc_explain, "");
        });
        return 0;
    }

    if (sc_chase->parsed()) {
        program_handle ph;
        database_handle dh;
        std::string err;
        if (!load_program(chase_prog, ph, err)) return input_error(err);
        if (!load_database(chase_db, dh, err)) return input_error(err);
        owned_str json, e;
        auto [st, ms] = timed(
            [&] { return tgd_chase(ph.h, dh.h, chase_depth, &limits, json.out(), e.out()); });
        if (st != TGD_OK) return input_error(e.str());
        ordered_json parsed = ordered_json::parse(json.str());
        if (!chase_out.empty()) {
            std::ofstream f(chase_out, std::ios::binary);
            if (!f) return input_error("cannot write " + chase_out);
            for (const auto& a : parsed["atoms"])
                f << a["atom"].get<std::string>() << ".\n";
        }
        print_report(json.str(), format, timings, ms, [&](const ordered_json& j) {
            std::cout << "atoms: " << j["atoms"].size() << " (depth " << j["depth"] << ", "
                      << (j["exhausted"].get<bool>() ? "exhausted" : "bounded")
                      << (j["truncated"].get<bool>() ? ", truncated" : "") << ")\n";
            for (const auto& a : j["atoms"])
                std::cout << "  [" << a["level"] << "] " << a["atom"].get<std::string>() << "\n";
        });
        return 0;
    }

    if (sc_ask->parsed()) {
        program_handle ph;
        database_handle dh;
        query_handle qh;
        std::string err;
        if (!load_program(ask_prog, ph, err)) return input_error(err);
        if (!load_database(ask_db, dh, err)) return input_error(err);
        if (!load_query(ask_query, qh, err)) return input_error(err);
        owned_str json, e;
        int code = TGD_ASK_UNKNOWN;
        auto [st, ms] = timed([&] {
            return tgd_ask(ph.h, dh.h, qh.h, ask_depth, &limits, &code, json.out(), e.out());
        });
        if (st != TGD_OK) return input_error(e.str());
        print_report(json.str(), format, timings, ms, [&](const ordered_json& j) {
            const auto& r = j["result"];
            std::cout << r["status"].get<std::string>() << " (depth " << r["depth"] << ")";
            if (!r["witness"].is_null())
                std::cout << " witness " << r["witness"].get<std::string>();
            std::cout << "\n";
        });
        return code;
    }

    if (sc_graph->parsed()) {
        program_handle ph;
        std::string err;
        if (!load_program(graph_file, ph, err)) return input_error(err);
        owned_str dot, e;
        if (tgd_graph_dot(ph.h, dot.out(), e.out()) != TGD_OK) return input_error(e.str());
        std::cout << dot.str();
        return 0;
    }

    if (sc_nullsets->parsed()) {
        program_handle ph;
        std::string err;
        if (!load_program(nullsets_file, ph, err)) return input_error(err);
        owned_str json, e;
        auto [st, ms] = timed([&] { return tgd_nullsets(ph.h, json.out(), e.out()); });
        if (st != TGD_OK) return input_error(e.str());
        print_report(json.str(), format, timings, ms, [&](const ordered_json& j) {
            std::cout << "position unions:\n";
            for (const auto& p : j["position_union"])
                std::cout << "  " << p["predicate"].get<std::string>() << "["
                          << (p["arg_index"].get<std::size_t>() + 1)
                          << "]: {" << join_strings(p["tokens"], ", ") << "}\n";
            std::cout << "on a cycle: {" << join_strings(j["on_cycle"], ", ") << "}\n";
            std::cout << "cyclic closure: {" << join_strings(j["cyclic_closure"], ", ")
                      << "}\n";
        });
        return 0;
    }

    if (sc_probe->parsed()) {
        program_handle ph;
        database_handle dh;
        std::string err;
        if (!load_program(probe_prog, ph, err)) return input_error(err);
        if (!load_database(probe_db, dh, err)) return input_error(err);
        std::string shape_text;
        if (!read_file(probe_shape, shape_text, err)) return input_error(err);
        owned_str json, e;
        uint64_t violations = 0;
        auto [st, ms] = timed([&] {
            return tgd_probe(ph.h, dh.h, shape_text.c_str(), probe_small, probe_big, probe_k,
                             &limits, &violations, json.out(), e.out());
        });
        if (st != TGD_OK) return input_error(e.str());
        bool truncated = false;
        print_report(json.str(), format, timings, ms, [&](const ordered_json& j) {
            std::cout << "violations: " << j["violations"] << " of " << j["pairs"].size()
                      << " pairs (" << j["recent_nulls"].size() << " recent vs "
                      << j["old_nulls"].size() << " old nulls)"
                      << (j["truncated"].get<bool>() ? " [truncated]" : "") << "\n";
            for (const auto& pr : j["pairs"]) {
                std::cout << "  " << pr["recent"].get<std::string>() << " vs "
                          << pr["old"].get<std::string>() << ": "
                          << (pr["interchangeable"].get<bool>() ? "interchangeable"
                                                                : "not interchangeable");
                if (pr.contains("counterexample"))
                    std::cout << "  " << pr["counterexample"].get<std::string>();
                std::cout << "\n";
            }
            const auto& b = j["bounds"];
            std::cout << "bounds: d=" << b["d"].get<std::string>() << " m="
                      << b["m"].get<std::string>() << " n=" << b["n"].get<std::string>()
                      << " n'=" << b["n_prime"].get<std::string>() << " ("
                      << b["n_prime_digits"].get<std::string>() << " digits)\n";
        });
        truncated = ordered_json::parse(json.str())["truncated"].get<bool>();
        if (truncated) return 3;
        return violations == 0 ? 0 : 1;
    }

    if (sc_gen->parsed()) {
        owned_str json, e;
        auto [st, ms] = timed([&] { return tgd_gen(&gp, json.out(), e.out()); });
        if (st != TGD_OK) return input_error(e.str());
        ordered_json parsed = ordered_json::parse(json.str());
        std::string ruleset = parsed["ruleset"].get<std::string>();
        if (!gen_out.empty()) {
            std::ofstream f(gen_out, std::ios::binary);
            if (!f) return input_error("cannot write " + gen_out);
            f << ruleset;
        }
        print_report(json.str(), format, timings, ms,
                     [&](const ordered_json& j) { std::cout << j["ruleset"].get<std::string>(); });
        return 0;
    }

    std::cerr << app.help();
    return exit_usage;
}
