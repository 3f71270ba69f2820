#pragma once

#include "ptamc/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ptamc {

using StateId = std::uint32_t;
using MoveId = std::uint32_t;
using LabelId = std::uint16_t;

// Finite MDP in frozen CSR form: per state a nonempty move list, per move a
// rational distribution over states. Probability values are deduplicated in
// a global table, with cached doubles for the iterative solvers.
class Mdp {
public:
    struct Edge {
        StateId target;
        std::uint32_t prob;  // index into prob_values()
    };

    std::size_t state_count() const { return state_move_off_.size() - 1; }
    std::size_t move_count() const { return move_edge_off_.size() - 1; }
    std::size_t edge_count() const { return edges_.size(); }

    std::pair<MoveId, MoveId> moves_of(StateId s) const {
        return {state_move_off_[s], state_move_off_[s + 1]};
    }
    std::span<const Edge> edges_of(MoveId m) const {
        return {edges_.data() + move_edge_off_[m],
                edges_.data() + move_edge_off_[m + 1]};
    }
    StateId move_owner(MoveId m) const;

    const Rational& prob(std::uint32_t id) const { return prob_values_[id]; }
    double prob_double(std::uint32_t id) const { return prob_doubles_[id]; }

    const std::vector<std::string>& label_names() const { return label_names_; }
    std::span<const LabelId> labels_of(StateId s) const {
        return {label_ids_.data() + label_off_[s], label_ids_.data() + label_off_[s + 1]};
    }
    bool has_label(StateId s, LabelId l) const;
    // -1 if the name is unknown.
    int label_id(const std::string& name) const;
    std::vector<char> states_with_label(LabelId l) const;

    // Structural invariants: every state has a move, distributions sum to 1.
    void check_invariants() const;

    friend class MdpBuilder;

private:
    std::vector<std::uint32_t> state_move_off_;  // n+1
    std::vector<std::uint32_t> move_edge_off_;   // m+1
    std::vector<Edge> edges_;
    std::vector<Rational> prob_values_;
    std::vector<double> prob_doubles_;
    std::vector<std::string> label_names_;
    std::vector<std::uint32_t> label_off_;  // n+1
    std::vector<LabelId> label_ids_;
    std::vector<StateId> move_owner_;  // per move
};

// Append-only construction; moves must be added for states in id order.
class MdpBuilder {
public:
    LabelId intern_label(const std::string& name);
    StateId add_state(const std::vector<LabelId>& labels);
    void add_move(StateId s, const std::vector<std::pair<StateId, Rational>>& dist);
    std::size_t state_count() const { return label_off_.size() - 1; }

    Mdp finish();

private:
    std::uint32_t intern_prob(const Rational& p);

    std::vector<std::uint32_t> state_move_off_{0};
    std::vector<std::uint32_t> move_edge_off_{0};
    std::vector<Mdp::Edge> edges_;
    std::vector<Rational> prob_values_;
    std::map<Rational, std::uint32_t> prob_index_;
    std::vector<std::string> label_names_;
    std::map<std::string, LabelId> label_index_;
    std::vector<std::uint32_t> label_off_{0};
    std::vector<LabelId> label_ids_;
    std::vector<StateId> move_owner_;
    StateId moves_done_through_ = 0;
};

}  // namespace ptamc
