#include "ptamc/constraint.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ptamc {

void ClockValuation::check_nonneg(double v) {
    if (!(v >= 0.0))
        throw std::invalid_argument("clock valuation must be nonnegative");
}

double ClockValuation::at(ClockId c) const {
    if (c >= values_.size())
        throw std::invalid_argument("unknown clock id " + std::to_string(c));
    return values_[c];
}

ClockValuation ClockValuation::reset(const std::vector<ClockId>& clocks) const {
    ClockValuation out = *this;
    for (ClockId c : clocks) {
        if (c >= values_.size())
            throw std::invalid_argument("reset of unknown clock id " + std::to_string(c));
        out.values_[c] = 0.0;
    }
    return out;
}

ClockValuation ClockValuation::elapse(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("negative time elapse");
    ClockValuation out = *this;
    for (double& v : out.values_) v += t;
    return out;
}

static void check_nonneg_const(std::int64_t v) {
    if (v < 0) throw std::invalid_argument("clock-constraint constants must be nonnegative");
}

ClockConstraint ClockConstraint::make_true() {
    static const auto n = std::make_shared<const Node>(Node{Kind::True});
    return ClockConstraint(n);
}

ClockConstraint ClockConstraint::make_false() { return negate(make_true()); }

ClockConstraint ClockConstraint::upper(ClockId x, std::int64_t d) {
    check_nonneg_const(d);
    auto n = std::make_shared<const Node>(Node{Kind::Upper, x, 0, 0, d});
    return ClockConstraint(std::move(n));
}

ClockConstraint ClockConstraint::lower(std::int64_t c, ClockId x) {
    check_nonneg_const(c);
    auto n = std::make_shared<const Node>(Node{Kind::Lower, x, 0, c, 0});
    return ClockConstraint(std::move(n));
}

ClockConstraint ClockConstraint::diagonal(ClockId x, std::int64_t c, ClockId y,
                                          std::int64_t d) {
    check_nonneg_const(c);
    check_nonneg_const(d);
    auto n = std::make_shared<const Node>(Node{Kind::Diagonal, x, y, c, d});
    return ClockConstraint(std::move(n));
}

ClockConstraint ClockConstraint::negate(ClockConstraint phi) {
    auto n = std::make_shared<const Node>(Node{Kind::Not, 0, 0, 0, 0, phi.node_});
    return ClockConstraint(std::move(n));
}

ClockConstraint ClockConstraint::conjunction(ClockConstraint a, ClockConstraint b) {
    if (a.is_true()) return b;
    if (b.is_true()) return a;
    auto n = std::make_shared<const Node>(Node{Kind::And, 0, 0, 0, 0, a.node_, b.node_});
    return ClockConstraint(std::move(n));
}

ClockConstraint ClockConstraint::child(int i) const {
    return ClockConstraint(i == 0 ? node_->lhs : node_->rhs);
}

bool ClockConstraint::has_diagonal() const {
    switch (node_->kind) {
        case Kind::Diagonal: return true;
        case Kind::Not: return ClockConstraint(node_->lhs).has_diagonal();
        case Kind::And:
            return ClockConstraint(node_->lhs).has_diagonal() ||
                   ClockConstraint(node_->rhs).has_diagonal();
        default: return false;
    }
}

std::int64_t ClockConstraint::max_constant() const {
    switch (node_->kind) {
        case Kind::True: return 0;
        case Kind::Upper: return node_->d;
        case Kind::Lower: return node_->c;
        case Kind::Diagonal: return std::max(node_->c, node_->d);
        case Kind::Not: return ClockConstraint(node_->lhs).max_constant();
        case Kind::And:
            return std::max(ClockConstraint(node_->lhs).max_constant(),
                            ClockConstraint(node_->rhs).max_constant());
    }
    return 0;
}

bool ClockConstraint::clocks_within(std::size_t n_clocks) const {
    switch (node_->kind) {
        case Kind::True: return true;
        case Kind::Upper:
        case Kind::Lower: return node_->x < n_clocks;
        case Kind::Diagonal: return node_->x < n_clocks && node_->y < n_clocks;
        case Kind::Not: return ClockConstraint(node_->lhs).clocks_within(n_clocks);
        case Kind::And:
            return ClockConstraint(node_->lhs).clocks_within(n_clocks) &&
                   ClockConstraint(node_->rhs).clocks_within(n_clocks);
    }
    return true;
}

void ClockConstraint::collect_clocks(std::vector<bool>& seen) const {
    switch (node_->kind) {
        case Kind::True: return;
        case Kind::Upper:
        case Kind::Lower:
            if (node_->x < seen.size()) seen[node_->x] = true;
            return;
        case Kind::Diagonal:
            if (node_->x < seen.size()) seen[node_->x] = true;
            if (node_->y < seen.size()) seen[node_->y] = true;
            return;
        case Kind::Not: ClockConstraint(node_->lhs).collect_clocks(seen); return;
        case Kind::And:
            ClockConstraint(node_->lhs).collect_clocks(seen);
            ClockConstraint(node_->rhs).collect_clocks(seen);
            return;
    }
}

bool ClockConstraint::eval(const ClockValuation& nu) const {
    switch (node_->kind) {
        case Kind::True: return true;
        case Kind::Upper: return nu.at(node_->x) <= static_cast<double>(node_->d);
        case Kind::Lower: return static_cast<double>(node_->c) <= nu.at(node_->x);
        case Kind::Diagonal:
            return nu.at(node_->x) + static_cast<double>(node_->c) <=
                   nu.at(node_->y) + static_cast<double>(node_->d);
        case Kind::Not: return !ClockConstraint(node_->lhs).eval(nu);
        case Kind::And:
            return ClockConstraint(node_->lhs).eval(nu) &&
                   ClockConstraint(node_->rhs).eval(nu);
    }
    return false;
}

namespace {

void render(const ClockConstraint& phi, const std::vector<std::string>* names,
            std::ostringstream& out, bool parenthesize_and) {
    auto clock_name = [&](ClockId c) -> std::string {
        if (names && c < names->size()) return (*names)[c];
        return "x" + std::to_string(c);
    };
    using Kind = ClockConstraint::Kind;
    switch (phi.kind()) {
        case Kind::True: out << "true"; return;
        case Kind::Upper:
            out << clock_name(phi.clock_x()) << " <= " << phi.const_d();
            return;
        case Kind::Lower:
            out << phi.const_c() << " <= " << clock_name(phi.clock_x());
            return;
        case Kind::Diagonal:
            out << clock_name(phi.clock_x()) << " + " << phi.const_c() << " <= "
                << clock_name(phi.clock_y()) << " + " << phi.const_d();
            return;
        case Kind::Not: {
            out << "!(";
            render(phi.child(0), names, out, false);
            out << ")";
            return;
        }
        case Kind::And: {
            if (parenthesize_and) out << "(";
            ClockConstraint lhs = phi.child(0);
            render(lhs, names, out, lhs.kind() == Kind::And ? false : true);
            out << " && ";
            ClockConstraint rhs = phi.child(1);
            render(rhs, names, out, true);
            if (parenthesize_and) out << ")";
            return;
        }
    }
}

}  // namespace

std::string ClockConstraint::to_string(const std::vector<std::string>& clock_names) const {
    std::ostringstream out;
    render(*this, &clock_names, out, false);
    return out.str();
}

std::string ClockConstraint::to_string() const {
    std::ostringstream out;
    render(*this, nullptr, out, false);
    return out.str();
}

ClockConstraint conjoin_all(const std::vector<ClockConstraint>& parts) {
    ClockConstraint acc = ClockConstraint::make_true();
    for (const auto& p : parts) acc = ClockConstraint::conjunction(acc, p);
    return acc;
}

ClockConstraint disjoin(const ClockConstraint& a, const ClockConstraint& b) {
    return ClockConstraint::negate(ClockConstraint::conjunction(
        ClockConstraint::negate(a), ClockConstraint::negate(b)));
}

}  // namespace ptamc
