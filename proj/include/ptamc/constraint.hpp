#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ptamc {

// Clocks are dense indices into the owning automaton's clock-name table.
using ClockId = std::uint32_t;

// A clock valuation: one nonnegative real per clock.
class ClockValuation {
public:
    ClockValuation() = default;
    explicit ClockValuation(std::size_t n_clocks, double value = 0.0)
        : values_(n_clocks, value) {
        check_nonneg(value);
    }
    explicit ClockValuation(std::vector<double> values) : values_(std::move(values)) {
        for (double v : values_) check_nonneg(v);
    }

    std::size_t size() const { return values_.size(); }
    double operator[](ClockId c) const { return at(c); }
    double at(ClockId c) const;

    // nu[X := 0]
    ClockValuation reset(const std::vector<ClockId>& clocks) const;
    // nu + t
    ClockValuation elapse(double t) const;

    bool operator==(const ClockValuation& o) const { return values_ == o.values_; }
    const std::vector<double>& values() const { return values_; }

private:
    static void check_nonneg(double v);
    std::vector<double> values_;
};

// Constraint grammar:
//   phi := true | x <= d | c <= x | x + c <= y + d | !phi | phi && phi
// with c, d nonnegative integers. Immutable expression tree with shared
// subterms; cheap to copy.
class ClockConstraint {
public:
    enum class Kind : std::uint8_t { True, Upper, Lower, Diagonal, Not, And };

    static ClockConstraint make_true();
    static ClockConstraint make_false();  // sugar for !true
    static ClockConstraint upper(ClockId x, std::int64_t d);           // x <= d
    static ClockConstraint lower(std::int64_t c, ClockId x);           // c <= x
    static ClockConstraint diagonal(ClockId x, std::int64_t c, ClockId y,
                                    std::int64_t d);                   // x+c <= y+d
    static ClockConstraint negate(ClockConstraint phi);
    static ClockConstraint conjunction(ClockConstraint a, ClockConstraint b);

    ClockConstraint() : ClockConstraint(make_true()) {}

    Kind kind() const { return node_->kind; }
    // Upper: (x, d); Lower: (c, x); Diagonal: (x, c, y, d).
    ClockId clock_x() const { return node_->x; }
    ClockId clock_y() const { return node_->y; }
    std::int64_t const_c() const { return node_->c; }
    std::int64_t const_d() const { return node_->d; }
    ClockConstraint child(int i) const;

    bool is_true() const { return node_->kind == Kind::True; }
    bool has_diagonal() const;
    // Largest integer constant mentioned; 0 if none.
    std::int64_t max_constant() const;
    // Every clock id mentioned is < n_clocks.
    bool clocks_within(std::size_t n_clocks) const;
    void collect_clocks(std::vector<bool>& seen) const;

    // nu |= phi. Throws std::invalid_argument if phi mentions a clock
    // outside nu's domain.
    bool eval(const ClockValuation& nu) const;

    std::string to_string(const std::vector<std::string>& clock_names) const;
    std::string to_string() const;  // clocks rendered as x0, x1, ...

private:
    struct Node {
        Kind kind;
        ClockId x = 0, y = 0;
        std::int64_t c = 0, d = 0;
        std::shared_ptr<const Node> lhs, rhs;
    };
    explicit ClockConstraint(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;

    friend struct ConstraintHash;
};

// Conjunction of a list; true for empty.
ClockConstraint conjoin_all(const std::vector<ClockConstraint>& parts);
// phi1 or phi2, encoded as !(!phi1 && !phi2).
ClockConstraint disjoin(const ClockConstraint& a, const ClockConstraint& b);

}  // namespace ptamc
