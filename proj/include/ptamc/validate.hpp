#pragma once

#include "ptamc/pta.hpp"
#include "ptamc/zone.hpp"

#include <string>
#include <vector>

namespace ptamc {

// A probabilistic jump that can land outside the target invariant.
struct WellFormedViolation {
    LocationId location;
    ActionId action;
    std::vector<ClockId> resets;
    LocationId target;
    std::string describe(const Pta& pta) const;
};

// Two rules with the same (mode, symbol) and overlapping guards.
struct DeterminismViolation {
    std::uint32_t rule_a;
    std::uint32_t rule_b;
    std::string describe(const Dtra& dtra) const;
};

// A (mode, symbol) pair whose guards do not cover all valuations; carries a
// witness valuation satisfying none of them.
struct TotalityViolation {
    ModeId mode;
    SymbolId symbol;
    std::vector<Rational> witness;
    std::string describe(const Dtra& dtra) const;
};

// Empty result iff every enabled jump of every distribution lands inside the
// target's invariant (decided by zone inclusion, not sampling).
std::vector<WellFormedViolation> check_well_formed(const Pta& pta);

std::vector<DeterminismViolation> check_determinism(const Dtra& dtra);

std::vector<TotalityViolation> check_totality(const Dtra& dtra);

// Adds a fresh FAIL sink absorbing every uncovered (mode, symbol) region.
// Deterministic and total afterwards; acceptance of every timed word is
// preserved (FAIL joins no K_i). Returns the input unchanged when already
// total. Throws ValidationError if the input is not deterministic.
Dtra complete_to_total(const Dtra& dtra, const std::string& fail_name = "FAIL");

}  // namespace ptamc
