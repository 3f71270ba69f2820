#include "ptamc/pta.hpp"

#include "ptamc/errors.hpp"

#include <algorithm>

namespace ptamc {

Distribution Distribution::dirac(std::vector<ClockId> resets, LocationId target) {
    Distribution d;
    d.branches.push_back(Branch{std::move(resets), target, Rational(1)});
    return d;
}

void Distribution::validate(const std::string& context) const {
    if (branches.empty())
        throw ValidationError(context + ": empty distribution");
    Rational sum = 0;
    for (const auto& b : branches) {
        if (b.prob <= 0)
            throw ValidationError(context + ": nonpositive probability " +
                                  rational_to_string(b.prob));
        if (!std::is_sorted(b.resets.begin(), b.resets.end()) ||
            std::adjacent_find(b.resets.begin(), b.resets.end()) != b.resets.end())
            throw ValidationError(context + ": reset set not sorted/unique");
        sum += b.prob;
    }
    if (sum != 1)
        throw ValidationError(context + ": probabilities sum to " +
                              rational_to_string(sum) + ", expected 1");
}

ClockConstraint Pta::enab(LocationId l, ActionId a) const {
    auto it = edges.find({l, a});
    return it == edges.end() ? ClockConstraint::make_false() : it->second.guard;
}

const PtaEdge* Pta::edge(LocationId l, ActionId a) const {
    auto it = edges.find({l, a});
    return it == edges.end() ? nullptr : &it->second;
}

std::vector<std::string> Pta::label_names(LocationId l) const {
    std::vector<std::string> out;
    for (auto ap : labels[l]) out.push_back(atomic_props[ap]);
    return out;
}

LocationId Pta::location_index(const std::string& name) const {
    for (LocationId i = 0; i < locations.size(); ++i)
        if (locations[i] == name) return i;
    throw ValidationError("unknown location: " + name);
}

ActionId Pta::action_index(const std::string& name) const {
    for (ActionId i = 0; i < actions.size(); ++i)
        if (actions[i] == name) return i;
    throw ValidationError("unknown action: " + name);
}

std::optional<ClockId> Pta::clock_index(const std::string& name) const {
    for (ClockId i = 0; i < clocks.size(); ++i)
        if (clocks[i] == name) return i;
    return std::nullopt;
}

void Pta::validate_structure() const {
    if (locations.empty()) throw ValidationError("pta: no locations");
    if (initial >= locations.size()) throw ValidationError("pta: bad initial location");
    if (invariants.size() != locations.size())
        throw ValidationError("pta: invariant map not total on locations");
    if (labels.size() != locations.size())
        throw ValidationError("pta: labelling not total on locations");
    for (LocationId l = 0; l < locations.size(); ++l) {
        if (!invariants[l].clocks_within(clocks.size()))
            throw ValidationError("pta: invariant of " + locations[l] +
                                  " mentions unknown clock");
        for (auto ap : labels[l])
            if (ap >= atomic_props.size())
                throw ValidationError("pta: bad label on " + locations[l]);
        if (!std::is_sorted(labels[l].begin(), labels[l].end()) ||
            std::adjacent_find(labels[l].begin(), labels[l].end()) != labels[l].end())
            throw ValidationError("pta: labels of " + locations[l] + " not sorted/unique");
    }
    for (const auto& [key, e] : edges) {
        auto [l, a] = key;
        if (l >= locations.size() || a >= actions.size())
            throw ValidationError("pta: edge with bad location/action index");
        std::string ctx = "pta edge (" + locations[l] + ", " + actions[a] + ")";
        if (!e.guard.clocks_within(clocks.size()))
            throw ValidationError(ctx + ": guard mentions unknown clock");
        e.dist.validate(ctx);
        for (const auto& b : e.dist.branches) {
            if (b.target >= locations.size())
                throw ValidationError(ctx + ": branch to unknown location");
            for (ClockId c : b.resets)
                if (c >= clocks.size())
                    throw ValidationError(ctx + ": reset of unknown clock");
        }
    }
}

ModeId Dtra::mode_index(const std::string& name) const {
    for (ModeId i = 0; i < modes.size(); ++i)
        if (modes[i] == name) return i;
    throw ValidationError("unknown mode: " + name);
}

std::optional<SymbolId> Dtra::symbol_index(const std::vector<std::string>& props) const {
    for (SymbolId i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == props) return i;
    return std::nullopt;
}

std::vector<std::uint32_t> Dtra::rules_from(ModeId q, SymbolId b) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < rules.size(); ++i)
        if (rules[i].from == q && rules[i].symbol == b) out.push_back(i);
    return out;
}

void Dtra::validate_structure() const {
    if (modes.empty()) throw ValidationError("dtra: no modes");
    for (const auto& sym : alphabet)
        if (!std::is_sorted(sym.begin(), sym.end()) ||
            std::adjacent_find(sym.begin(), sym.end()) != sym.end())
            throw ValidationError("dtra: alphabet symbol not sorted/unique");
    for (const auto& r : rules) {
        if (r.from >= modes.size() || r.to >= modes.size())
            throw ValidationError("dtra: rule with unknown mode");
        if (r.symbol >= alphabet.size())
            throw ValidationError("dtra: rule with unknown symbol");
        if (!r.guard.clocks_within(clocks.size()))
            throw ValidationError("dtra: rule guard mentions unknown clock");
        for (ClockId c : r.resets)
            if (c >= clocks.size())
                throw ValidationError("dtra: rule resets unknown clock");
        if (!std::is_sorted(r.resets.begin(), r.resets.end()) ||
            std::adjacent_find(r.resets.begin(), r.resets.end()) != r.resets.end())
            throw ValidationError("dtra: rule reset set not sorted/unique");
    }
    for (const auto& pair : rabin) {
        for (ModeId q : pair.h)
            if (q >= modes.size()) throw ValidationError("dtra: rabin H names unknown mode");
        for (ModeId q : pair.k)
            if (q >= modes.size()) throw ValidationError("dtra: rabin K names unknown mode");
    }
}

std::vector<SymbolId> pair_symbols(const Pta& pta, const Dtra& dtra) {
    for (const auto& xc : pta.clocks)
        for (const auto& yc : dtra.clocks)
            if (xc == yc)
                throw ValidationError("pta and dtra share clock name: " + xc);
    std::vector<SymbolId> out(pta.locations.size());
    for (LocationId l = 0; l < pta.locations.size(); ++l) {
        auto sym = dtra.symbol_index(pta.label_names(l));
        if (!sym)
            throw ValidationError("dtra alphabet has no symbol for label set of location " +
                                  pta.locations[l]);
        out[l] = *sym;
    }
    return out;
}

}  // namespace ptamc
