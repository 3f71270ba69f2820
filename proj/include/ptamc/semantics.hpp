#pragma once

#include "ptamc/pta.hpp"
#include "ptamc/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ptamc {

// A state (l, nu) with nu |= inv(l).
struct PtaState {
    LocationId location = 0;
    ClockValuation nu;
    bool operator==(const PtaState&) const = default;
};

// Delay or action label on a path edge.
using PathLabel = std::variant<double, ActionId>;

inline bool is_delay(const PathLabel& l) { return std::holds_alternative<double>(l); }
inline double delay_of(const PathLabel& l) { return std::get<double>(l); }
inline ActionId action_of(const PathLabel& l) { return std::get<ActionId>(l); }

// Alternating sequence s0 a0 s1 ... a(n-1) sn; even-indexed labels are
// delays, odd-indexed are actions, s0 = (l*, 0).
struct FinitePath {
    std::vector<PtaState> states;
    std::vector<PathLabel> labels;

    std::size_t length() const { return labels.size(); }  // |rho|
    const PtaState& last() const { return states.back(); }
};

// Checks the alternation/transition invariants of a path under the given
// automaton; returns a human-readable problem or nullopt.
std::optional<std::string> path_structure_error(const Pta& pta, const FinitePath& rho);

// Finite prefix of an infinite timed word: t0 b0 t1 b1 ...; symbols are
// atomic-proposition name sets.
struct TimedWord {
    std::vector<double> delays;
    std::vector<std::vector<std::string>> symbols;
};

struct DtraConfig {
    ModeId mode = 0;
    ClockValuation mu;
    bool operator==(const DtraConfig&) const = default;
};

// One consumed input together with the configuration reached by it.
struct DtraRunStep {
    std::variant<double, SymbolId> input;
    DtraConfig config;
};

struct DtraRun {
    DtraConfig start;
    std::vector<DtraRunStep> steps;
    std::vector<ModeId> trajectory() const;
};

// Successor states with merged kernel probabilities; empty when the label is
// disabled. Delays use the segment-coverage decision for the invariant.
std::vector<std::pair<PtaState, Rational>> pta_step(const Pta& pta, const PtaState& s,
                                                    const PathLabel& label);

// nu + t |= inv holds for every t in [0, delay]?
bool invariant_holds_throughout(const Pta& pta, LocationId l, const ClockValuation& nu,
                                double delay);

// Kernel weight P(s, a, s') of one concrete transition.
Rational transition_weight(const Pta& pta, const PtaState& s, const PathLabel& label,
                           const PtaState& succ);

// Product of kernel weights along the path.
Rational path_weight(const Pta& pta, const FinitePath& rho);

// Def-4 word extraction: keeps delays and post-action location labels.
TimedWord extract_word(const Pta& pta, const FinitePath& rho);

// Unique one-step successor on a symbol; throws SchedulerContractError-like
// stuck error (ValidationError) if no rule is enabled.
DtraConfig dtra_step_symbol(const Dtra& dtra, const DtraConfig& cfg, SymbolId b);
DtraConfig dtra_step_delay(const Dtra& dtra, const DtraConfig& cfg, double t);

// The unique run of a deterministic total DTRA on a word prefix.
DtraRun dtra_run(const Dtra& dtra, const DtraConfig& start, const TimedWord& word);

// ACC(Q', F): some pair avoids H_i and touches K_i.
bool rabin_accepting(const std::vector<ModeId>& inf_modes,
                     const std::vector<RabinPair>& pairs);

// Def-5 acceptance of a lasso-shaped infinite path given as stem + cycle.
// The cycle must close exactly (same location and clock values). Throws
// std::invalid_argument for non-lasso input.
bool path_accepted(const Pta& pta, const Dtra& dtra, ModeId q, const FinitePath& stem,
                   const FinitePath& cycle);

// Counter-based splittable pseudo-random source; identical across platforms.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}
    std::uint64_t next();
    // Uniform rational in [0, 1) with denominator 2^64.
    Rational next_unit_rational();

private:
    std::uint64_t seed_, stream_;
    std::uint64_t counter_ = 0;
};

// Deterministic decision function: delay at even path lengths, action at odd.
struct SchedulerPolicy {
    std::string name;
    std::function<PathLabel(const Pta&, const FinitePath&)> decide;
};

// Always delays `d` (clipped to the invariant's upper limit), then takes the
// lowest-indexed enabled action.
SchedulerPolicy fixed_delay_scheduler(double d);
// Delay is a seeded hash of the path in {0, 1, ..., k} (clipped); action is a
// seeded hash pick among enabled actions.
SchedulerPolicy uniform_integer_delay_scheduler(std::uint32_t k, std::uint64_t seed);
// Steers toward `targets` by location-graph distance; smallest enabling delay
// from {0, 0.5, 1, ...}.
SchedulerPolicy greedy_toward_scheduler(std::vector<LocationId> targets);

// Samples a path of 2*steps labels following sigma; probabilistic branches
// resolved by the counter RNG exactly per the edge distribution.
FinitePath sample_path(const Pta& pta, const SchedulerPolicy& sigma, std::size_t steps,
                       std::uint64_t seed);

// Largest delay d' <= d such that the invariant holds throughout [0, d'];
// conservative over the zone decomposition of the invariant.
double max_feasible_delay(const Pta& pta, LocationId l, const ClockValuation& nu,
                          double d);

}  // namespace ptamc
