#include "ptamc/region.hpp"

#include "ptamc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptamc {

bool Region::all_above() const {
    for (auto v : ipart)
        if (v != kAbove) return false;
    return true;
}

bool Region::is_canonical() const {
    if (rank.size() != ipart.size()) return false;
    std::uint8_t max_rank = 0;
    std::vector<bool> used(256, false);
    for (std::size_t c = 0; c < ipart.size(); ++c) {
        if ((ipart[c] == kAbove) != (rank[c] == kAbove)) return false;
        if (rank[c] == kAbove) continue;
        if (ipart[c] > ceiling) return false;
        if (ipart[c] == ceiling && rank[c] != 0) return false;  // value M has frac 0
        used[rank[c]] = true;
        max_rank = std::max(max_rank, rank[c]);
    }
    for (std::uint8_t r = 1; r <= max_rank; ++r)
        if (!used[r]) return false;  // positive ranks must be consecutive
    return true;
}

std::string Region::to_string(const std::vector<std::string>& clock_names) const {
    std::ostringstream out;
    auto name = [&](std::size_t c) {
        return c < clock_names.size() ? clock_names[c] : "x" + std::to_string(c);
    };
    out << "[";
    for (std::size_t c = 0; c < ipart.size(); ++c) {
        if (c) out << ", ";
        if (above(static_cast<ClockId>(c))) {
            out << name(c) << ">" << static_cast<int>(ceiling);
        } else {
            out << name(c) << "=" << static_cast<int>(ipart[c]);
            if (rank[c] > 0) out << "+f" << static_cast<int>(rank[c]);
        }
    }
    out << "]";
    return out.str();
}

std::size_t RegionHash::operator()(const Region& r) const {
    std::size_t h = 1469598103934665603ull;
    auto feed = [&h](std::uint8_t b) {
        h ^= b;
        h *= 1099511628211ull;
    };
    feed(r.ceiling);
    for (auto v : r.ipart) feed(v);
    for (auto v : r.rank) feed(v);
    return h;
}

std::int64_t ceiling_of(const Pta& pta) {
    std::int64_t m = 0;
    for (const auto& inv : pta.invariants) m = std::max(m, inv.max_constant());
    for (const auto& [key, e] : pta.edges) m = std::max(m, e.guard.max_constant());
    return m;
}

std::int64_t ceiling_of(const Dtra& dtra) {
    std::int64_t m = 0;
    for (const auto& r : dtra.rules) m = std::max(m, r.guard.max_constant());
    return m;
}

Region region_of(const ClockValuation& nu, std::int64_t ceiling) {
    if (ceiling < 0 || ceiling > 250)
        throw std::invalid_argument("region ceiling out of supported range");
    const std::size_t n = nu.size();
    Region r;
    r.ceiling = static_cast<std::uint8_t>(ceiling);
    r.ipart.resize(n);
    r.rank.resize(n);
    std::vector<std::pair<double, std::size_t>> fracs;
    for (std::size_t c = 0; c < n; ++c) {
        double v = nu[static_cast<ClockId>(c)];
        if (v > static_cast<double>(ceiling)) {
            r.ipart[c] = Region::kAbove;
            r.rank[c] = Region::kAbove;
            continue;
        }
        double ip = std::floor(v);
        double frac = v - ip;
        r.ipart[c] = static_cast<std::uint8_t>(ip);
        if (frac == 0.0)
            r.rank[c] = 0;
        else
            fracs.push_back({frac, c});
    }
    std::sort(fracs.begin(), fracs.end());
    std::uint8_t next_rank = 0;
    double prev = -1.0;
    for (const auto& [f, c] : fracs) {
        if (f != prev) {
            ++next_rank;
            prev = f;
        }
        r.rank[c] = next_rank;
    }
    return r;
}

Region delay_successor(const Region& r) {
    const std::size_t n = r.ipart.size();
    Region out = r;

    std::vector<std::size_t> zero_clocks;
    std::uint8_t max_rank = 0;
    bool any_tracked = false;
    for (std::size_t c = 0; c < n; ++c) {
        if (r.rank[c] == Region::kAbove) continue;
        any_tracked = true;
        if (r.rank[c] == 0)
            zero_clocks.push_back(c);
        else
            max_rank = std::max(max_rank, r.rank[c]);
    }
    if (!any_tracked) return out;  // fixpoint: everything above the ceiling

    if (!zero_clocks.empty()) {
        // Integer-valued clocks pick up a fresh smallest fraction; clocks
        // sitting exactly at the ceiling leave the tracked range instead.
        bool opened_new_class = false;
        for (std::size_t c : zero_clocks)
            if (r.ipart[c] == r.ceiling) {
                out.ipart[c] = Region::kAbove;
                out.rank[c] = Region::kAbove;
            } else {
                opened_new_class = true;
            }
        if (opened_new_class) {
            for (std::size_t c = 0; c < n; ++c)
                if (r.rank[c] != Region::kAbove && r.rank[c] > 0)
                    out.rank[c] = static_cast<std::uint8_t>(r.rank[c] + 1);
            for (std::size_t c : zero_clocks)
                if (r.ipart[c] != r.ceiling) out.rank[c] = 1;
        }
        return out;
    }

    // No zero-fraction clock: the maximal fraction class reaches the next
    // integer (its integer parts are < ceiling, so no clock leaves here).
    for (std::size_t c = 0; c < n; ++c)
        if (r.rank[c] == max_rank) {
            out.ipart[c] = static_cast<std::uint8_t>(r.ipart[c] + 1);
            out.rank[c] = 0;
        }
    return out;
}

Region reset_region(const Region& r, const std::vector<ClockId>& clocks) {
    Region out = r;
    for (ClockId c : clocks) {
        if (c >= out.ipart.size())
            throw std::invalid_argument("reset of unknown clock in region");
        out.ipart[c] = 0;
        out.rank[c] = 0;
    }
    // Recompress positive ranks to stay consecutive.
    std::vector<std::uint8_t> present;
    for (std::size_t c = 0; c < out.rank.size(); ++c)
        if (out.rank[c] != Region::kAbove && out.rank[c] > 0)
            present.push_back(out.rank[c]);
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    for (std::size_t c = 0; c < out.rank.size(); ++c)
        if (out.rank[c] != Region::kAbove && out.rank[c] > 0)
            out.rank[c] = static_cast<std::uint8_t>(
                1 + (std::lower_bound(present.begin(), present.end(), out.rank[c]) -
                     present.begin()));
    return out;
}

bool region_satisfies(const Region& r, const ClockConstraint& phi,
                      const std::vector<std::string>* clock_names) {
    using Kind = ClockConstraint::Kind;
    switch (phi.kind()) {
        case Kind::True: return true;
        case Kind::Upper: {
            if (phi.const_d() > r.ceiling)
                throw std::logic_error("constraint constant exceeds region ceiling");
            ClockId x = phi.clock_x();
            if (r.above(x)) return false;
            return r.ipart[x] < phi.const_d() ||
                   (r.ipart[x] == phi.const_d() && r.rank[x] == 0);
        }
        case Kind::Lower: {
            if (phi.const_c() > r.ceiling)
                throw std::logic_error("constraint constant exceeds region ceiling");
            ClockId x = phi.clock_x();
            if (r.above(x)) return true;
            return r.ipart[x] >= phi.const_c();
        }
        case Kind::Diagonal: {
            std::string text = clock_names ? phi.to_string(*clock_names) : phi.to_string();
            throw UnsupportedConstraintError(
                "region abstraction does not support diagonal constraint: " + text);
        }
        case Kind::Not:
            return !region_satisfies(r, phi.child(0), clock_names);
        case Kind::And:
            return region_satisfies(r, phi.child(0), clock_names) &&
                   region_satisfies(r, phi.child(1), clock_names);
    }
    return false;
}

}  // namespace ptamc
