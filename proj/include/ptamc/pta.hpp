#pragma once

#include "ptamc/constraint.hpp"
#include "ptamc/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ptamc {

using LocationId = std::uint32_t;
using ActionId = std::uint32_t;
using ModeId = std::uint32_t;
using SymbolId = std::uint32_t;

// A finite probability distribution over (reset set, target location) pairs.
// Probabilities are exact rationals, strictly positive, and sum to 1.
struct Distribution {
    struct Branch {
        std::vector<ClockId> resets;  // sorted, unique
        LocationId target = 0;
        Rational prob;
    };
    std::vector<Branch> branches;

    static Distribution dirac(std::vector<ClockId> resets, LocationId target);

    // Throws ValidationError unless probs > 0 and sum exactly 1.
    void validate(const std::string& context) const;
};

struct PtaEdge {
    ClockConstraint guard;  // enab(l, a)
    Distribution dist;      // prob(l, a)
};

// Def-1 probabilistic timed automaton. enab/prob are total maps on
// L x Act in the model; pairs absent from `edges` behave as enab = false
// with a Dirac self-loop filler distribution.
struct Pta {
    std::vector<std::string> locations;
    LocationId initial = 0;
    std::vector<std::string> clocks;
    std::vector<std::string> actions;
    std::vector<ClockConstraint> invariants;            // per location
    std::map<std::pair<LocationId, ActionId>, PtaEdge> edges;
    std::vector<std::string> atomic_props;
    std::vector<std::vector<std::uint32_t>> labels;     // per location, sorted AP ids

    const ClockConstraint& invariant(LocationId l) const { return invariants[l]; }
    ClockConstraint enab(LocationId l, ActionId a) const;
    const PtaEdge* edge(LocationId l, ActionId a) const;
    std::vector<std::string> label_names(LocationId l) const;

    LocationId location_index(const std::string& name) const;
    ActionId action_index(const std::string& name) const;
    std::optional<ClockId> clock_index(const std::string& name) const;

    // Structural sanity: index ranges, label sortedness, distribution sums.
    // Throws ValidationError on the first problem found.
    void validate_structure() const;
};

struct DtraRule {
    ModeId from = 0;
    SymbolId symbol = 0;
    ClockConstraint guard;
    std::vector<ClockId> resets;  // sorted, unique
    ModeId to = 0;
};

struct RabinPair {
    std::vector<ModeId> h;  // inf set must avoid these
    std::vector<ModeId> k;  // ... and touch these
};

// Def-2/3 deterministic timed automaton with Rabin pairs. Alphabet symbols
// are sets of atomic-proposition names (sorted).
struct Dtra {
    std::vector<std::string> modes;
    std::vector<std::vector<std::string>> alphabet;
    std::vector<std::string> clocks;
    std::vector<DtraRule> rules;
    std::vector<RabinPair> rabin;

    ModeId mode_index(const std::string& name) const;
    std::optional<SymbolId> symbol_index(const std::vector<std::string>& props) const;
    std::vector<std::uint32_t> rules_from(ModeId q, SymbolId b) const;

    void validate_structure() const;
};

// Symbols of the paired DTRA must cover every label set the PTA uses.
// Returns the symbol id of each location's label set; throws ValidationError
// if some label set is missing from the alphabet or clock names clash.
std::vector<SymbolId> pair_symbols(const Pta& pta, const Dtra& dtra);

}  // namespace ptamc
