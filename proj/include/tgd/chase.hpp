#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tgd/syntax.hpp"
#include "tgd/unify.hpp"

namespace tgd {

struct chase_limits {
    std::size_t max_atoms = 100000;
};

// One rule firing. The trigger is the extended match: body variables plus a
// fresh null per existential variable, minted in declaration order at firing
// time. Firings that add nothing are possible only for rules without
// existential variables and are still recorded.
struct firing_record {
    std::size_t rule_index = 0;
    std::string rule_label;
    substitution trigger;
    std::vector<atom> added;  // in head-atom order, duplicates suppressed
    bool noop = false;
    std::size_t wave = 0;  // max level among the body image atoms
};

// Chase instance with atom levels and a replayable firing log. Facts sit at
// level 0; an atom added by a firing gets level one above its trigger's wave.
struct labeled_instance {
    std::vector<atom> atoms;  // creation order, database facts first
    std::vector<std::size_t> levels;
    std::vector<firing_record> provenance;
    std::size_t next_null = 1;  // display indices start at 1
    std::map<std::size_t, std::size_t> null_levels;  // null index -> creation level
    std::size_t depth = 0;      // requested level bound
    bool truncated = false;     // atom cap hit
    bool exhausted = false;     // no applicable unfired trigger remains

    std::map<atom, std::size_t> index;  // atom -> position in atoms

    bool contains(const atom& a) const { return index.count(a) != 0; }
    std::size_t level_of(const atom& a) const { return levels.at(index.at(a)); }
};

// Runs the chase up to the given level: wave j fires, in (rule index, trigger)
// order, every not-yet-fired trigger whose body image has max level j, and the
// produced atoms get level j+1. Triggers at level >= depth stay unfired.
// Duplicate atoms are suppressed but keep their original level.
labeled_instance chase_to_level(const program& p, const database& d, std::size_t depth,
                                const chase_limits& lim = {});

// Re-executes a firing log against the same database without search. ok is
// false when a body image is missing, a wave disagrees, or the added atoms
// differ from the log.
struct replay_result {
    labeled_instance instance;
    bool ok = true;
    std::string error;
};

replay_result replay(const program& p, const database& d,
                     const std::vector<firing_record>& log, std::size_t depth);

enum class ask_status { entailed, not_entailed, unknown };

struct bcq_result {
    ask_status status = ask_status::unknown;
    substitution witness;  // query variables -> instance terms, when entailed
    std::size_t depth = 0;
};

// Query evaluation on an already-built instance: entailed when the query maps
// homomorphically into it; definitively not entailed only when the chase
// exhausted every trigger; unknown otherwise.
bcq_result ask_instance(const labeled_instance& inst, const query& q);

// Chase to the given depth, then evaluate.
bcq_result bcq_holds(const program& p, const database& d, const query& q,
                     std::size_t depth, const chase_limits& lim = {});

}  // namespace tgd
