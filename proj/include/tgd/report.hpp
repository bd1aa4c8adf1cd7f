#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tgd/baselines.hpp"
#include "tgd/chase.hpp"
#include "tgd/extension.hpp"
#include "tgd/nulls.hpp"
#include "tgd/probe.hpp"
#include "tgd/rtc.hpp"

namespace tgd {

// Reports preserve insertion order so that identical inputs yield identical
// bytes.
using ordered_json = nlohmann::ordered_json;

inline constexpr const char* tool_version = "0.1.0";
inline constexpr const char* chase_variant_name = "oblivious-dedup";

std::string fnv1a64_hex(const std::string& data);

// Shared preamble: command name, tool version, one digest per input text.
ordered_json report_header(
    const std::string& command,
    const std::vector<std::pair<std::string, std::string>>& inputs);

ordered_json to_json(const class_verdict& v);
ordered_json to_json(const rtc_witness& w);
ordered_json to_json(const tg_verdict& v);
ordered_json to_json(const extension_pair& ep);
ordered_json to_json(const pair_bounds& pb);
ordered_json extension_json(const extension_set& xs, const pair_bounds& pb);
ordered_json to_json(const firing_record& r);
ordered_json instance_json(const labeled_instance& inst);
ordered_json to_json(const bcq_result& r);
ordered_json nullsets_json(const null_analysis& na);
ordered_json probe_json(const probe_report& rep);

std::string status_name(tg_status s);
std::string status_name(ask_status s);

}  // namespace tgd
