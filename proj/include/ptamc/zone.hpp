#pragma once

#include "ptamc/constraint.hpp"
#include "ptamc/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ptamc {

// One entry of a difference-bound matrix: v_i - v_j <= value (strict: <).
struct Bound {
    std::int64_t value = 0;
    bool strict = false;
    bool infinite = true;

    static Bound unbounded() { return Bound{}; }
    static Bound le(std::int64_t v) { return Bound{v, false, false}; }
    static Bound lt(std::int64_t v) { return Bound{v, true, false}; }

    bool operator==(const Bound&) const = default;
};

// tighter-than ordering and bound addition for canonicalization
bool bound_less(const Bound& a, const Bound& b);
Bound bound_add(const Bound& a, const Bound& b);

// A convex zone over clocks 1..n (index 0 is the constant reference clock).
// Kept in canonical (all-pairs tightened) form; emptiness is a flag.
class Zone {
public:
    static Zone universal(std::size_t n_clocks);
    static Zone zero(std::size_t n_clocks);  // all clocks = 0

    std::size_t clock_count() const { return dim_ - 1; }
    bool empty() const { return empty_; }

    const Bound& at(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }

    // Intersection with an atomic difference bound x_i - x_j <= / < c, where
    // index 0 denotes the reference clock. Returns the canonical result.
    Zone constrained(std::size_t i, std::size_t j, Bound b) const;
    Zone intersect(const Zone& other) const;
    Zone reset(const std::vector<ClockId>& clocks) const;  // [X := 0]
    // Removes upper bounds on all clocks (time elapse closure).
    Zone up() const;

    bool contains(const ClockValuation& nu) const;
    bool includes(const Zone& other) const;  // other subset-of this
    bool operator==(const Zone& other) const;

    // Some rational point of a nonempty zone. Components of the result are
    // exact; open bounds are approached by dyadic offsets.
    std::vector<Rational> sample_point() const;

    // List of atomic bounds (i, j, bound) that are finite and non-redundant
    // enough for complements; includes all finite entries.
    struct Atom {
        std::size_t i, j;
        Bound bound;
    };
    std::vector<Atom> finite_atoms() const;

    std::string to_string(const std::vector<std::string>& clock_names) const;

private:
    explicit Zone(std::size_t dim);
    void canonicalize();
    Bound& entry(std::size_t i, std::size_t j) { return m_[i * dim_ + j]; }

    std::size_t dim_;
    bool empty_ = false;
    std::vector<Bound> m_;
};

// Finite union of convex zones; normalized (empty members dropped, members
// included in another member dropped).
class ZoneSet {
public:
    ZoneSet() = default;
    explicit ZoneSet(std::vector<Zone> zones) : zones_(std::move(zones)) { normalize(); }

    const std::vector<Zone>& zones() const { return zones_; }
    bool empty() const { return zones_.empty(); }

    bool contains(const ClockValuation& nu) const;

    void normalize();

private:
    std::vector<Zone> zones_;
};

// Disjunctive-normal-form realization of [[phi]] over n_clocks clocks.
// Negation is handled by complementing atomic bounds and distributing.
ZoneSet to_zones(const ClockConstraint& phi, std::size_t n_clocks);

// [[phi]] nonempty?
bool is_satisfiable(const ClockConstraint& phi, std::size_t n_clocks);

// zone \ [[union of others]] == empty, i.e. zone included in the union.
bool zone_included_in(const Zone& zone, const ZoneSet& cover);

}  // namespace ptamc
