#include "ptamc/zone.hpp"

#include <sstream>
#include <stdexcept>

namespace ptamc {

bool bound_less(const Bound& a, const Bound& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    if (a.value != b.value) return a.value < b.value;
    return a.strict && !b.strict;
}

Bound bound_add(const Bound& a, const Bound& b) {
    if (a.infinite || b.infinite) return Bound::unbounded();
    return Bound{a.value + b.value, a.strict || b.strict, false};
}

Zone::Zone(std::size_t dim) : dim_(dim), m_(dim * dim, Bound::unbounded()) {}

Zone Zone::universal(std::size_t n_clocks) {
    Zone z(n_clocks + 1);
    for (std::size_t i = 0; i < z.dim_; ++i) z.entry(i, i) = Bound::le(0);
    for (std::size_t i = 1; i < z.dim_; ++i) z.entry(0, i) = Bound::le(0);
    return z;
}

Zone Zone::zero(std::size_t n_clocks) {
    Zone z(n_clocks + 1);
    for (std::size_t i = 0; i < z.dim_; ++i)
        for (std::size_t j = 0; j < z.dim_; ++j) z.entry(i, j) = Bound::le(0);
    return z;
}

void Zone::canonicalize() {
    for (std::size_t k = 0; k < dim_; ++k)
        for (std::size_t i = 0; i < dim_; ++i) {
            if (entry(i, k).infinite) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                Bound via = bound_add(entry(i, k), entry(k, j));
                if (bound_less(via, entry(i, j))) entry(i, j) = via;
            }
        }
    for (std::size_t i = 0; i < dim_; ++i)
        if (bound_less(entry(i, i), Bound::le(0))) {
            empty_ = true;
            return;
        }
}

Zone Zone::constrained(std::size_t i, std::size_t j, Bound b) const {
    Zone out = *this;
    if (out.empty_) return out;
    if (bound_less(b, out.entry(i, j))) {
        out.entry(i, j) = b;
        out.canonicalize();
    }
    return out;
}

Zone Zone::intersect(const Zone& other) const {
    if (dim_ != other.dim_) throw std::invalid_argument("zone dimension mismatch");
    Zone out = *this;
    if (empty_ || other.empty_) {
        out.empty_ = true;
        return out;
    }
    bool changed = false;
    for (std::size_t i = 0; i < dim_ * dim_; ++i)
        if (bound_less(other.m_[i], out.m_[i])) {
            out.m_[i] = other.m_[i];
            changed = true;
        }
    if (changed) out.canonicalize();
    return out;
}

Zone Zone::reset(const std::vector<ClockId>& clocks) const {
    Zone out = *this;
    if (out.empty_) return out;
    for (ClockId c : clocks) {
        std::size_t x = c + 1;
        if (x >= dim_) throw std::invalid_argument("reset of unknown clock");
        for (std::size_t j = 0; j < dim_; ++j) {
            out.entry(x, j) = out.entry(0, j);
            out.entry(j, x) = out.entry(j, 0);
        }
        out.entry(x, 0) = Bound::le(0);
        out.entry(0, x) = Bound::le(0);
        out.entry(x, x) = Bound::le(0);
    }
    out.canonicalize();
    return out;
}

Zone Zone::up() const {
    Zone out = *this;
    if (out.empty_) return out;
    for (std::size_t i = 1; i < dim_; ++i) out.entry(i, 0) = Bound::unbounded();
    out.canonicalize();
    return out;
}

bool Zone::contains(const ClockValuation& nu) const {
    if (empty_) return false;
    if (nu.size() + 1 != dim_) throw std::invalid_argument("valuation dimension mismatch");
    auto value = [&](std::size_t i) -> double { return i == 0 ? 0.0 : nu[i - 1]; };
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            const Bound& b = at(i, j);
            if (b.infinite) continue;
            double diff = value(i) - value(j);
            if (b.strict ? !(diff < static_cast<double>(b.value))
                         : !(diff <= static_cast<double>(b.value)))
                return false;
        }
    return true;
}

bool Zone::includes(const Zone& other) const {
    if (other.empty_) return true;
    if (empty_) return false;
    if (dim_ != other.dim_) throw std::invalid_argument("zone dimension mismatch");
    for (std::size_t i = 0; i < dim_ * dim_; ++i)
        if (bound_less(m_[i], other.m_[i])) return false;
    return true;
}

bool Zone::operator==(const Zone& other) const {
    if (empty_ || other.empty_) return empty_ == other.empty_;
    return dim_ == other.dim_ && m_ == other.m_;
}

std::vector<Rational> Zone::sample_point() const {
    if (empty_) throw std::logic_error("sample_point on empty zone");
    std::vector<Rational> v(dim_);
    v[0] = 0;
    for (std::size_t i = 1; i < dim_; ++i) {
        // Feasible interval of v[i] against already fixed v[0..i-1].
        Rational low = 0;
        bool low_strict = false;
        bool have_high = false;
        Rational high = 0;
        bool high_strict = false;
        for (std::size_t j = 0; j < i; ++j) {
            const Bound& lo = at(j, i);  // v_j - v_i <= c  =>  v_i >= v_j - c
            if (!lo.infinite) {
                Rational cand = v[j] - lo.value;
                if (cand > low || (cand == low && lo.strict && !low_strict)) {
                    low = cand;
                    low_strict = lo.strict;
                } else if (cand == low && lo.strict) {
                    low_strict = true;
                }
            }
            const Bound& hi = at(i, j);  // v_i - v_j <= c
            if (!hi.infinite) {
                Rational cand = v[j] + hi.value;
                if (!have_high || cand < high ||
                    (cand == high && hi.strict && !high_strict)) {
                    if (!have_high || cand < high) {
                        high = cand;
                        high_strict = hi.strict;
                    } else {
                        high_strict = true;
                    }
                    have_high = true;
                }
            }
        }
        if (!low_strict) {
            v[i] = low;
        } else if (have_high) {
            v[i] = (low + high) / 2;
        } else {
            v[i] = low + 1;
        }
    }
    return std::vector<Rational>(v.begin() + 1, v.end());
}

std::vector<Zone::Atom> Zone::finite_atoms() const {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            if (i == j) continue;
            const Bound& b = at(i, j);
            if (!b.infinite) atoms.push_back(Atom{i, j, b});
        }
    return atoms;
}

std::string Zone::to_string(const std::vector<std::string>& clock_names) const {
    if (empty_) return "false";
    auto name = [&](std::size_t i) -> std::string {
        if (i == 0) return "0";
        if (i - 1 < clock_names.size()) return clock_names[i - 1];
        return "x" + std::to_string(i - 1);
    };
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            if (i == j) continue;
            const Bound& b = at(i, j);
            if (b.infinite) continue;
            if (i == 0 && b.value == 0 && !b.strict) continue;  // x >= 0, implicit
            if (!first) out << " && ";
            first = false;
            out << name(i) << " - " << name(j) << (b.strict ? " < " : " <= ")
                << b.value;
        }
    if (first) out << "true";
    return out.str();
}

bool ZoneSet::contains(const ClockValuation& nu) const {
    for (const auto& z : zones_)
        if (z.contains(nu)) return true;
    return false;
}

void ZoneSet::normalize() {
    std::vector<Zone> kept;
    for (auto& z : zones_) {
        if (z.empty()) continue;
        bool subsumed = false;
        for (const auto& k : kept)
            if (k.includes(z)) {
                subsumed = true;
                break;
            }
        if (subsumed) continue;
        std::vector<Zone> next;
        for (auto& k : kept)
            if (!z.includes(k)) next.push_back(std::move(k));
        next.push_back(std::move(z));
        kept = std::move(next);
    }
    zones_ = std::move(kept);
}

namespace {

// Complement of a single atomic bound v_i - v_j (<=|<) c.
Bound complement_bound(const Bound& b) {
    return b.strict ? Bound::le(-b.value) : Bound::lt(-b.value);
}

std::vector<Zone> subtract(const Zone& from, const Zone& what) {
    if (what.empty()) return {from};
    if (from.empty()) return {};
    std::vector<Zone> parts;
    for (const auto& atom : what.finite_atoms()) {
        Zone part = from.constrained(atom.j, atom.i, complement_bound(atom.bound));
        if (!part.empty()) parts.push_back(std::move(part));
    }
    return parts;
}

}  // namespace

ZoneSet to_zones(const ClockConstraint& phi, std::size_t n_clocks) {
    using Kind = ClockConstraint::Kind;
    switch (phi.kind()) {
        case Kind::True:
            return ZoneSet({Zone::universal(n_clocks)});
        case Kind::Upper:
            return ZoneSet({Zone::universal(n_clocks).constrained(
                phi.clock_x() + 1, 0, Bound::le(phi.const_d()))});
        case Kind::Lower:
            return ZoneSet({Zone::universal(n_clocks).constrained(
                0, phi.clock_x() + 1, Bound::le(-phi.const_c()))});
        case Kind::Diagonal:
            // x + c <= y + d  <=>  x - y <= d - c
            return ZoneSet({Zone::universal(n_clocks).constrained(
                phi.clock_x() + 1, phi.clock_y() + 1,
                Bound::le(phi.const_d() - phi.const_c()))});
        case Kind::And: {
            ZoneSet lhs = to_zones(phi.child(0), n_clocks);
            ZoneSet rhs = to_zones(phi.child(1), n_clocks);
            std::vector<Zone> out;
            for (const auto& a : lhs.zones())
                for (const auto& b : rhs.zones()) {
                    Zone z = a.intersect(b);
                    if (!z.empty()) out.push_back(std::move(z));
                }
            return ZoneSet(std::move(out));
        }
        case Kind::Not: {
            ZoneSet inner = to_zones(phi.child(0), n_clocks);
            std::vector<Zone> acc{Zone::universal(n_clocks)};
            for (const auto& z : inner.zones()) {
                std::vector<Zone> next;
                for (const auto& w : acc)
                    for (auto& piece : subtract(w, z)) next.push_back(std::move(piece));
                ZoneSet normalized(std::move(next));
                acc = normalized.zones();
                if (acc.empty()) break;
            }
            return ZoneSet(std::move(acc));
        }
    }
    return ZoneSet();
}

bool is_satisfiable(const ClockConstraint& phi, std::size_t n_clocks) {
    return !to_zones(phi, n_clocks).empty();
}

bool zone_included_in(const Zone& zone, const ZoneSet& cover) {
    std::vector<Zone> remainder{zone};
    if (zone.empty()) return true;
    for (const auto& z : cover.zones()) {
        std::vector<Zone> next;
        for (const auto& w : remainder)
            for (auto& piece : subtract(w, z)) next.push_back(std::move(piece));
        remainder = std::move(next);
        if (remainder.empty()) return true;
    }
    return remainder.empty();
}

}  // namespace ptamc
