#include "ptamc/product.hpp"

#include "ptamc/errors.hpp"
#include "ptamc/validate.hpp"
#include "ptamc/zone.hpp"

#include <algorithm>
#include <deque>

namespace ptamc {

namespace {

ClockConstraint shift_clocks(const ClockConstraint& phi, std::uint32_t offset) {
    using Kind = ClockConstraint::Kind;
    switch (phi.kind()) {
        case Kind::True: return phi;
        case Kind::Upper: return ClockConstraint::upper(phi.clock_x() + offset, phi.const_d());
        case Kind::Lower: return ClockConstraint::lower(phi.const_c(), phi.clock_x() + offset);
        case Kind::Diagonal:
            return ClockConstraint::diagonal(phi.clock_x() + offset, phi.const_c(),
                                             phi.clock_y() + offset, phi.const_d());
        case Kind::Not: return ClockConstraint::negate(shift_clocks(phi.child(0), offset));
        case Kind::And:
            return ClockConstraint::conjunction(shift_clocks(phi.child(0), offset),
                                                shift_clocks(phi.child(1), offset));
    }
    return phi;
}

}  // namespace

std::vector<GuardSelector> enumerate_selectors(const Dtra& dtra, ModeId q) {
    const std::size_t n_sym = dtra.alphabet.size();
    std::vector<std::vector<ClockConstraint>> choices(n_sym);
    for (SymbolId b = 0; b < n_sym; ++b) {
        std::vector<std::string> seen;
        for (auto idx : dtra.rules_from(q, b)) {
            std::string key = dtra.rules[idx].guard.to_string();
            if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
                seen.push_back(key);
                choices[b].push_back(dtra.rules[idx].guard);
            }
        }
        if (choices[b].empty())
            throw ValidationError("selector enumeration requires totality: mode " +
                                  dtra.modes[q] + " has no rule for symbol index " +
                                  std::to_string(b));
    }

    std::vector<GuardSelector> out;
    std::vector<std::size_t> pick(n_sym, 0);
    for (;;) {
        GuardSelector h;
        for (SymbolId b = 0; b < n_sym; ++b) {
            h.guard_for_symbol.push_back(choices[b][pick[b]]);
            h.key.push_back(choices[b][pick[b]].to_string());
        }
        out.push_back(std::move(h));
        // advance the last symbol fastest
        std::size_t i = n_sym;
        while (i > 0) {
            --i;
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
            if (i == 0) return out;
        }
        if (n_sym == 0) return out;
    }
}

std::optional<std::uint32_t> ProductPta::selector_with_key(
    const std::vector<std::string>& key) const {
    for (std::uint32_t i = 0; i < selectors.size(); ++i)
        if (selectors[i].key == key) return i;
    return std::nullopt;
}

namespace {

// The unique rule from (q, b) whose guard prints as `key`; nullopt if none.
std::optional<std::uint32_t> rule_matching(const Dtra& dtra, ModeId q, SymbolId b,
                                           const std::string& key) {
    for (auto idx : dtra.rules_from(q, b))
        if (dtra.rules[idx].guard.to_string() == key) return idx;
    return std::nullopt;
}

}  // namespace

ProductPta build_product(const Pta& pta, const Dtra& dtra, ModeId q,
                         const ProductOptions& opts) {
    pta.validate_structure();
    dtra.validate_structure();
    {
        auto wf = check_well_formed(pta);
        if (!wf.empty())
            throw ValidationError("product rejected, pta not well-formed: " +
                                  wf.front().describe(pta));
        auto det = check_determinism(dtra);
        if (!det.empty())
            throw ValidationError("product rejected, dtra not deterministic: " +
                                  det.front().describe(dtra));
        auto tot = check_totality(dtra);
        if (!tot.empty())
            throw ValidationError("product rejected, dtra not total: " +
                                  tot.front().describe(dtra));
    }
    std::vector<SymbolId> label_symbol = pair_symbols(pta, dtra);

    ProductPta prod;
    prod.pta_clock_count = pta.clocks.size();
    const std::uint32_t y_off = static_cast<std::uint32_t>(pta.clocks.size());

    // Selectors, global table deduplicated by guard-text key.
    prod.selectors_of_mode.resize(dtra.modes.size());
    for (ModeId m = 0; m < dtra.modes.size(); ++m)
        for (auto& h : enumerate_selectors(dtra, m)) {
            auto existing = prod.selector_with_key(h.key);
            std::uint32_t id;
            if (existing) {
                id = *existing;
            } else {
                id = static_cast<std::uint32_t>(prod.selectors.size());
                prod.selectors.push_back(std::move(h));
            }
            prod.selectors_of_mode[m].push_back(id);
        }

    Pta& p = prod.pta;
    p.clocks = pta.clocks;
    p.clocks.insert(p.clocks.end(), dtra.clocks.begin(), dtra.clocks.end());
    p.atomic_props = dtra.modes;  // the product is labelled by modes
    for (ActionId a = 0; a < pta.actions.size(); ++a)
        for (std::uint32_t s = 0; s < prod.selectors.size(); ++s) {
            p.actions.push_back(pta.actions[a] + "@h" + std::to_string(s));
            prod.action_pair.push_back({a, s});
        }

    // q* is the unique mode after reading the initial label at time zero.
    DtraConfig start{q, ClockValuation(dtra.clocks.size())};
    DtraConfig after = dtra_step_symbol(dtra, start, label_symbol[pta.initial]);
    prod.initial_mode = after.mode;

    auto intern_location = [&](LocationId l, ModeId m) -> LocationId {
        auto it = prod.location_index.find({l, m});
        if (it != prod.location_index.end()) return it->second;
        LocationId id = static_cast<LocationId>(p.locations.size());
        prod.location_index[{l, m}] = id;
        prod.location_pair.push_back({l, m});
        p.locations.push_back("(" + pta.locations[l] + "," + dtra.modes[m] + ")");
        p.invariants.push_back(pta.invariants[l]);
        p.labels.push_back({m});
        return id;
    };

    std::deque<LocationId> work;
    auto discover = [&](LocationId l, ModeId m) {
        std::size_t before = p.locations.size();
        LocationId id = intern_location(l, m);
        if (p.locations.size() > before) work.push_back(id);
        return id;
    };

    if (opts.restrict_reachable) {
        discover(pta.initial, prod.initial_mode);
    } else {
        for (LocationId l = 0; l < pta.locations.size(); ++l)
            for (ModeId m = 0; m < dtra.modes.size(); ++m) discover(l, m);
    }
    p.initial = prod.location_index[{pta.initial, prod.initial_mode}];

    const std::size_t n_clocks = p.clocks.size();
    while (!work.empty()) {
        LocationId pl = work.front();
        work.pop_front();
        auto [l, m] = prod.location_pair[pl];
        for (ActionId a = 0; a < pta.actions.size(); ++a) {
            const PtaEdge* e = pta.edge(l, a);
            if (!e) continue;
            for (std::uint32_t sid : prod.selectors_of_mode[m]) {
                const GuardSelector& h = prod.selectors[sid];
                ClockConstraint guard = e->guard;
                for (const auto& g : h.guard_for_symbol)
                    guard = ClockConstraint::conjunction(guard, shift_clocks(g, y_off));
                // prune extended actions that can never fire
                if (!is_satisfiable(ClockConstraint::conjunction(pta.invariants[l], guard),
                                    n_clocks))
                    continue;

                Distribution dist;
                for (const auto& br : e->dist.branches) {
                    SymbolId b = label_symbol[br.target];
                    auto rule_idx = rule_matching(dtra, m, b, h.key[b]);
                    if (!rule_idx)
                        throw std::logic_error("selector guard lost its rule");
                    const DtraRule& rule = dtra.rules[*rule_idx];
                    LocationId tgt = discover(br.target, rule.to);
                    std::vector<ClockId> resets = br.resets;
                    for (ClockId c : rule.resets) resets.push_back(c + y_off);
                    std::sort(resets.begin(), resets.end());
                    dist.branches.push_back(
                        Distribution::Branch{std::move(resets), tgt, br.prob});
                }
                ActionId pa = static_cast<ActionId>(
                    a * prod.selectors.size() + sid);
                p.edges[{pl, pa}] = PtaEdge{guard, std::move(dist)};
            }
        }
    }

    p.validate_structure();
    return prod;
}

TickedPta tick_transform(const Pta& pta, const std::string& tick_label,
                         const std::string& tick_clock_name) {
    for (const auto& ap : pta.atomic_props)
        if (ap == tick_label)
            throw ValidationError("tick label name already used: " + tick_label);
    for (const auto& c : pta.clocks)
        if (c == tick_clock_name)
            throw ValidationError("tick clock name already used: " + tick_clock_name);

    TickedPta out;
    Pta& p = out.pta;
    const std::size_t n = pta.locations.size();

    p.clocks = pta.clocks;
    out.tick_clock = static_cast<ClockId>(p.clocks.size());
    p.clocks.push_back(tick_clock_name);
    p.atomic_props = pta.atomic_props;
    out.tick_ap = static_cast<std::uint32_t>(p.atomic_props.size());
    p.atomic_props.push_back(tick_label);

    ClockConstraint tick_cap = ClockConstraint::upper(out.tick_clock, 1);
    ClockConstraint at_one = ClockConstraint::conjunction(
        ClockConstraint::lower(1, out.tick_clock), tick_cap);
    ClockConstraint frozen = ClockConstraint::upper(out.tick_clock, 0);

    p.locations = pta.locations;
    p.initial = pta.initial;
    p.labels = pta.labels;
    p.invariants.clear();
    for (LocationId l = 0; l < n; ++l)
        p.invariants.push_back(ClockConstraint::conjunction(pta.invariants[l], tick_cap));

    out.copy_of_original.resize(n);
    out.original_of.assign(n, std::nullopt);
    for (LocationId l = 0; l < n; ++l) {
        LocationId copy = static_cast<LocationId>(p.locations.size());
        out.copy_of_original[l] = copy;
        out.original_of.push_back(l);
        std::string name = pta.locations[l] + "_tick";
        for (const auto& existing : pta.locations)
            if (existing == name)
                throw ValidationError("tick copy name already used: " + name);
        p.locations.push_back(name);
        // clocks other than the tick clock are frozen in the copy, so the
        // original invariant still holds there and the model stays well-formed
        p.invariants.push_back(ClockConstraint::conjunction(pta.invariants[l], frozen));
        auto labels = pta.labels[l];
        labels.push_back(out.tick_ap);
        std::sort(labels.begin(), labels.end());
        p.labels.push_back(std::move(labels));
    }

    p.actions = pta.actions;
    for (const auto& [key, e] : pta.edges) p.edges[key] = e;
    for (LocationId l = 0; l < n; ++l) {
        ActionId tick_act = static_cast<ActionId>(p.actions.size());
        p.actions.push_back("tick@" + pta.locations[l]);
        p.edges[{l, tick_act}] =
            PtaEdge{at_one, Distribution::dirac({out.tick_clock}, out.copy_of_original[l])};
        ActionId back_act = static_cast<ActionId>(p.actions.size());
        p.actions.push_back("untick@" + pta.locations[l]);
        p.edges[{out.copy_of_original[l], back_act}] =
            PtaEdge{ClockConstraint::make_true(), Distribution::dirac({}, l)};
    }

    p.validate_structure();
    return out;
}

namespace {

ClockValuation concat(const ClockValuation& a, const ClockValuation& b) {
    std::vector<double> vals = a.values();
    vals.insert(vals.end(), b.values().begin(), b.values().end());
    return ClockValuation(std::move(vals));
}

// The selector key observed at configuration (q, mu): for each symbol the
// unique rule guard satisfied by mu.
std::vector<std::string> observed_selector_key(const Dtra& dtra, ModeId q,
                                               const ClockValuation& mu) {
    std::vector<std::string> key;
    for (SymbolId b = 0; b < dtra.alphabet.size(); ++b) {
        bool found = false;
        for (auto idx : dtra.rules_from(q, b))
            if (dtra.rules[idx].guard.eval(mu)) {
                key.push_back(dtra.rules[idx].guard.to_string());
                found = true;
                break;
            }
        if (!found)
            throw ValidationError("selector lookup hit a totality gap in mode " +
                                  dtra.modes[q]);
    }
    return key;
}

}  // namespace

FinitePath transform_path(const ProductPta& prod, const Pta& pta, const Dtra& dtra,
                          ModeId q, const FinitePath& rho) {
    if (auto err = path_structure_error(pta, rho))
        throw std::invalid_argument("transform_path: " + *err);

    std::vector<SymbolId> label_symbol = pair_symbols(pta, dtra);
    DtraConfig cfg{q, ClockValuation(dtra.clocks.size())};
    cfg = dtra_step_symbol(dtra, cfg, label_symbol[pta.initial]);

    FinitePath out;
    auto product_state = [&](LocationId l, ModeId m, const ClockValuation& nu,
                             const ClockValuation& mu) {
        auto it = prod.location_index.find({l, m});
        if (it == prod.location_index.end())
            throw std::invalid_argument("transform_path: product location missing for (" +
                                        pta.locations[l] + "," + dtra.modes[m] + ")");
        return PtaState{it->second, concat(nu, mu)};
    };
    out.states.push_back(
        product_state(rho.states[0].location, cfg.mode, rho.states[0].nu, cfg.mu));

    for (std::size_t k = 0; k < rho.labels.size(); ++k) {
        if (is_delay(rho.labels[k])) {
            double d = delay_of(rho.labels[k]);
            cfg = dtra_step_delay(dtra, cfg, d);
            out.labels.push_back(rho.labels[k]);
        } else {
            ActionId a = action_of(rho.labels[k]);
            auto key = observed_selector_key(dtra, cfg.mode, cfg.mu);
            auto sid = prod.selector_with_key(key);
            if (!sid)
                throw std::invalid_argument("transform_path: observed selector not in product");
            cfg = dtra_step_symbol(dtra, cfg,
                                   label_symbol[rho.states[k + 1].location]);
            out.labels.push_back(PathLabel{static_cast<ActionId>(
                a * prod.selectors.size() + *sid)});
        }
        out.states.push_back(product_state(rho.states[k + 1].location, cfg.mode,
                                           rho.states[k + 1].nu, cfg.mu));
    }
    return out;
}

FinitePath project_product_path(const ProductPta& prod, const FinitePath& product_path) {
    FinitePath out;
    for (const auto& s : product_path.states) {
        auto [l, m] = prod.location_pair[s.location];
        std::vector<double> vals(s.nu.values().begin(),
                                 s.nu.values().begin() + prod.pta_clock_count);
        out.states.push_back(PtaState{l, ClockValuation(std::move(vals))});
    }
    for (const auto& lab : product_path.labels) {
        if (is_delay(lab))
            out.labels.push_back(lab);
        else
            out.labels.push_back(PathLabel{prod.action_pair[action_of(lab)].first});
    }
    return out;
}

SchedulerPolicy transform_scheduler(const ProductPta& prod, const Pta& pta,
                                    const Dtra& dtra, ModeId q,
                                    const SchedulerPolicy& sigma) {
    SchedulerPolicy out;
    out.name = "theta(" + sigma.name + ")";
    out.decide = [&prod, &pta, &dtra, q, sigma](const Pta&,
                                                const FinitePath& product_path) -> PathLabel {
        FinitePath rho = project_product_path(prod, product_path);
        FinitePath redone = transform_path(prod, pta, dtra, q, rho);
        if (!(redone.states == product_path.states) ||
            !(redone.labels == product_path.labels))
            throw std::invalid_argument(
                "product path is not in the image of the path transformation");

        PathLabel choice = sigma.decide(pta, rho);
        if (rho.length() % 2 == 0) return choice;  // a delay, kept as is
        ActionId a = action_of(choice);
        // lambda(rho): the selector observed at the current DTRA configuration
        auto [l, m] = prod.location_pair[product_path.last().location];
        std::vector<double> mu_vals(
            product_path.last().nu.values().begin() + prod.pta_clock_count,
            product_path.last().nu.values().end());
        auto key = observed_selector_key(dtra, m, ClockValuation(std::move(mu_vals)));
        auto sid = prod.selector_with_key(key);
        if (!sid)
            throw std::invalid_argument("observed selector not present in product");
        return PathLabel{static_cast<ActionId>(a * prod.selectors.size() + *sid)};
    };
    return out;
}

}  // namespace ptamc
