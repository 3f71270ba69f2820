#include "ptamc/validate.hpp"

#include "ptamc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace ptamc {

std::string WellFormedViolation::describe(const Pta& pta) const {
    std::ostringstream out;
    out << "jump (" << pta.locations[location] << ", " << pta.actions[action]
        << ") resetting {";
    for (std::size_t i = 0; i < resets.size(); ++i)
        out << (i ? "," : "") << pta.clocks[resets[i]];
    out << "} can enter " << pta.locations[target] << " outside its invariant";
    return out.str();
}

std::string DeterminismViolation::describe(const Dtra& dtra) const {
    auto render = [&](std::uint32_t idx) {
        const DtraRule& r = dtra.rules[idx];
        std::ostringstream out;
        out << "(" << dtra.modes[r.from] << ", {";
        const auto& sym = dtra.alphabet[r.symbol];
        for (std::size_t i = 0; i < sym.size(); ++i) out << (i ? "," : "") << sym[i];
        out << "}, " << r.guard.to_string(dtra.clocks) << " -> " << dtra.modes[r.to] << ")";
        return out.str();
    };
    return "overlapping rules " + render(rule_a) + " and " + render(rule_b);
}

std::string TotalityViolation::describe(const Dtra& dtra) const {
    std::ostringstream out;
    out << "mode " << dtra.modes[mode] << " has no rule for symbol {";
    const auto& sym = dtra.alphabet[symbol];
    for (std::size_t i = 0; i < sym.size(); ++i) out << (i ? "," : "") << sym[i];
    out << "} at valuation (";
    for (std::size_t i = 0; i < witness.size(); ++i)
        out << (i ? "," : "") << rational_to_string(witness[i]);
    out << ")";
    return out.str();
}

std::vector<WellFormedViolation> check_well_formed(const Pta& pta) {
    std::vector<WellFormedViolation> out;
    const std::size_t n = pta.clocks.size();
    std::vector<ZoneSet> inv_zones;
    inv_zones.reserve(pta.locations.size());
    for (LocationId l = 0; l < pta.locations.size(); ++l)
        inv_zones.push_back(to_zones(pta.invariants[l], n));

    for (const auto& [key, e] : pta.edges) {
        auto [l, a] = key;
        ZoneSet enabled = to_zones(
            ClockConstraint::conjunction(pta.invariants[l], e.guard), n);
        if (enabled.empty()) continue;
        for (const auto& b : e.dist.branches) {
            bool ok = true;
            for (const auto& z : enabled.zones())
                if (!zone_included_in(z.reset(b.resets), inv_zones[b.target])) {
                    ok = false;
                    break;
                }
            if (!ok) out.push_back(WellFormedViolation{l, a, b.resets, b.target});
        }
    }
    return out;
}

std::vector<DeterminismViolation> check_determinism(const Dtra& dtra) {
    std::vector<DeterminismViolation> out;
    const std::size_t n = dtra.clocks.size();
    for (std::uint32_t i = 0; i < dtra.rules.size(); ++i)
        for (std::uint32_t j = i + 1; j < dtra.rules.size(); ++j) {
            const DtraRule& a = dtra.rules[i];
            const DtraRule& b = dtra.rules[j];
            if (a.from != b.from || a.symbol != b.symbol) continue;
            if (a.guard.to_string() == b.guard.to_string() && a.resets == b.resets &&
                a.to == b.to)
                continue;  // duplicate of the same rule
            if (is_satisfiable(ClockConstraint::conjunction(a.guard, b.guard), n))
                out.push_back(DeterminismViolation{i, j});
        }
    return out;
}

std::vector<TotalityViolation> check_totality(const Dtra& dtra) {
    std::vector<TotalityViolation> out;
    const std::size_t n = dtra.clocks.size();
    for (ModeId q = 0; q < dtra.modes.size(); ++q)
        for (SymbolId b = 0; b < dtra.alphabet.size(); ++b) {
            ClockConstraint any = ClockConstraint::make_false();
            for (auto idx : dtra.rules_from(q, b))
                any = disjoin(any, dtra.rules[idx].guard);
            ZoneSet gap = to_zones(ClockConstraint::negate(any), n);
            if (!gap.empty())
                out.push_back(TotalityViolation{q, b, gap.zones().front().sample_point()});
        }
    return out;
}

Dtra complete_to_total(const Dtra& dtra, const std::string& fail_name) {
    auto det = check_determinism(dtra);
    if (!det.empty())
        throw ValidationError("completion rejected, automaton not deterministic: " +
                              det.front().describe(dtra));

    const std::size_t n = dtra.clocks.size();
    std::vector<std::pair<std::pair<ModeId, SymbolId>, ClockConstraint>> gaps;
    for (ModeId q = 0; q < dtra.modes.size(); ++q)
        for (SymbolId b = 0; b < dtra.alphabet.size(); ++b) {
            ClockConstraint any = ClockConstraint::make_false();
            for (auto idx : dtra.rules_from(q, b))
                any = disjoin(any, dtra.rules[idx].guard);
            ClockConstraint gap = ClockConstraint::negate(any);
            if (is_satisfiable(gap, n)) gaps.push_back({{q, b}, gap});
        }
    if (gaps.empty()) return dtra;

    Dtra out = dtra;
    for (const auto& m : out.modes)
        if (m == fail_name)
            throw ValidationError("completion sink name already in use: " + fail_name);
    ModeId fail = static_cast<ModeId>(out.modes.size());
    out.modes.push_back(fail_name);
    for (const auto& [qb, gap] : gaps)
        out.rules.push_back(DtraRule{qb.first, qb.second, gap, {}, fail});
    for (SymbolId b = 0; b < out.alphabet.size(); ++b)
        out.rules.push_back(DtraRule{fail, b, ClockConstraint::make_true(), {}, fail});
    return out;
}

}  // namespace ptamc
