#pragma once

#include "ptamc/pta.hpp"
#include "ptamc/semantics.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ptamc {

// One element h of T_q: a full choice of rule guard per alphabet symbol.
// Guards are over the DTRA's own clock indices.
struct GuardSelector {
    std::vector<ClockConstraint> guard_for_symbol;
    std::vector<std::string> key;  // guard texts, the dedup identity

    bool same_key(const GuardSelector& o) const { return key == o.key; }
};

// T_q, enumerated as the cartesian product of the distinct guards per
// symbol. Throws ValidationError when some (q, b) has no rule (non-total).
std::vector<GuardSelector> enumerate_selectors(const Dtra& dtra, ModeId q);

// The product of a PTA and a DTRA with initial mode q: a plain PTA over
// locations L x Q, clocks X u Y and actions Act x (union of T_q), plus
// back-references into the factors.
struct ProductPta {
    Pta pta;

    std::vector<std::pair<LocationId, ModeId>> location_pair;   // product loc -> (l, q)
    std::map<std::pair<LocationId, ModeId>, LocationId> location_index;
    std::vector<std::pair<ActionId, std::uint32_t>> action_pair;  // product act -> (a, selector)
    std::vector<GuardSelector> selectors;                          // global, dedup by key
    std::vector<std::vector<std::uint32_t>> selectors_of_mode;     // T_q as selector ids
    std::size_t pta_clock_count = 0;  // X occupies clock ids [0, pta_clock_count)
    ModeId initial_mode = 0;          // q* after reading L(l*)

    std::optional<std::uint32_t> selector_with_key(const std::vector<std::string>& key) const;
};

struct ProductOptions {
    bool restrict_reachable = true;  // drop locations a symbolic forward pass misses
};

// Requires: pta well-formed, dtra deterministic and total, disjoint clock
// names, alphabet covering every used label set. Throws ValidationError
// otherwise.
ProductPta build_product(const Pta& pta, const Dtra& dtra, ModeId q,
                         const ProductOptions& opts = {});

// Time-progress gadget: a copy per location carrying the label `tick`,
// reached exactly when one time unit elapsed on a fresh clock and left
// immediately.
struct TickedPta {
    Pta pta;
    ClockId tick_clock = 0;
    std::uint32_t tick_ap = 0;                // index of "tick" in atomic_props
    std::vector<LocationId> copy_of_original; // original -> copy location
    std::vector<std::optional<LocationId>> original_of;  // location -> original if copy
    bool is_copy(LocationId l) const { return original_of[l].has_value(); }
};

TickedPta tick_transform(const Pta& pta, const std::string& tick_label = "tick",
                         const std::string& tick_clock_name = "tclk");

// The unique product path T(rho) tracking the DTRA run alongside rho.
FinitePath transform_path(const ProductPta& prod, const Pta& pta, const Dtra& dtra,
                          ModeId q, const FinitePath& rho);

// theta(sigma): the product scheduler that follows sigma through the inverse
// of the path transformation. Throws std::invalid_argument when handed a
// product path outside the image of T.
SchedulerPolicy transform_scheduler(const ProductPta& prod, const Pta& pta,
                                    const Dtra& dtra, ModeId q,
                                    const SchedulerPolicy& sigma);

// Strips the DTRA components off a product path (inverse of transform_path,
// without validation).
FinitePath project_product_path(const ProductPta& prod, const FinitePath& product_path);

}  // namespace ptamc
