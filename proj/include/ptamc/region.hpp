#pragma once

#include "ptamc/constraint.hpp"
#include "ptamc/pta.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ptamc {

// Classical region at ceiling M: per-clock integer part (or an above-M
// marker) plus the total preorder on fractional parts of clocks not above M.
// rank 0 is reserved for zero fractions; positive ranks are consecutive.
struct Region {
    static constexpr std::uint8_t kAbove = 0xFF;

    std::uint8_t ceiling = 0;
    std::vector<std::uint8_t> ipart;  // 0..ceiling, or kAbove
    std::vector<std::uint8_t> rank;   // kAbove for above-M clocks

    std::size_t clock_count() const { return ipart.size(); }
    bool above(ClockId c) const { return ipart[c] == kAbove; }
    bool all_above() const;
    bool is_canonical() const;

    bool operator==(const Region&) const = default;
    std::string to_string(const std::vector<std::string>& clock_names) const;
};

struct RegionHash {
    std::size_t operator()(const Region& r) const;
};

// Largest integer constant in any invariant or guard; 0 if none.
std::int64_t ceiling_of(const Pta& pta);
std::int64_t ceiling_of(const Dtra& dtra);

Region region_of(const ClockValuation& nu, std::int64_t ceiling);

// The immediate time successor; the all-above region is the fixpoint.
Region delay_successor(const Region& r);

Region reset_region(const Region& r, const std::vector<ClockId>& clocks);

// Truth of a diagonal-free constraint with constants <= the region's
// ceiling, uniform over the region. Throws UnsupportedConstraintError on
// diagonals.
bool region_satisfies(const Region& r, const ClockConstraint& phi,
                      const std::vector<std::string>* clock_names = nullptr);

}  // namespace ptamc
