#include "ptamc/semantics.hpp"

#include "ptamc/errors.hpp"
#include "ptamc/zone.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

namespace ptamc {

namespace {

struct Interval {
    double lo = 0.0, hi = 0.0;
    bool lo_strict = false, hi_strict = false;
    bool empty = false;
};

// The set { t in [0, cap] : nu + t inside zone }, one interval per zone.
std::vector<Interval> segment_intervals(const ZoneSet& zones, const ClockValuation& nu,
                                        double cap) {
    std::vector<Interval> out;
    for (const Zone& z : zones.zones()) {
        if (z.empty()) continue;
        Interval iv{0.0, cap, false, false, false};
        auto value = [&](std::size_t i) -> double { return i == 0 ? 0.0 : nu[i - 1]; };
        bool dead = false;
        for (const auto& atom : z.finite_atoms()) {
            double bound = static_cast<double>(atom.bound.value);
            bool strict = atom.bound.strict;
            if (atom.i > 0 && atom.j > 0) {
                // difference of two clocks is invariant under elapse
                double diff = value(atom.i) - value(atom.j);
                if (strict ? !(diff < bound) : !(diff <= bound)) { dead = true; break; }
            } else if (atom.i > 0) {
                // nu_i + t <= bound  =>  t <= bound - nu_i
                double hi = bound - value(atom.i);
                if (hi < iv.hi || (hi == iv.hi && strict)) {
                    iv.hi = hi;
                    iv.hi_strict = strict;
                }
            } else {
                // -(nu_j + t) <= bound  =>  t >= -bound - nu_j
                double lo = -bound - value(atom.j);
                if (lo > iv.lo || (lo == iv.lo && strict)) {
                    iv.lo = lo;
                    iv.lo_strict = strict;
                }
            }
        }
        if (dead) continue;
        if (iv.lo > iv.hi || (iv.lo == iv.hi && (iv.lo_strict || iv.hi_strict)))
            continue;
        out.push_back(iv);
    }
    return out;
}

// Largest contiguous coverage of [0, ...] by the interval union, as
// (reach, attained): [0, reach] covered when attained, [0, reach) otherwise.
std::pair<double, bool> coverage_sweep(const std::vector<Interval>& intervals) {
    bool start_covered = false;
    for (const auto& iv : intervals)
        if ((iv.lo < 0.0 || (iv.lo == 0.0 && !iv.lo_strict)) &&
            (iv.hi > 0.0 || (iv.hi == 0.0 && !iv.hi_strict)))
            start_covered = true;
    if (!start_covered) return {0.0, false};

    double reach = 0.0;
    bool attained = true;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& iv : intervals) {
            bool connects =
                iv.lo < reach || (iv.lo == reach && (attained || !iv.lo_strict));
            if (!connects) continue;
            if (iv.hi > reach) {
                reach = iv.hi;
                attained = !iv.hi_strict;
                progress = true;
            } else if (iv.hi == reach && !iv.hi_strict && !attained) {
                attained = true;
                progress = true;
            }
        }
    }
    return {reach, attained};
}

}  // namespace

bool invariant_holds_throughout(const Pta& pta, LocationId l, const ClockValuation& nu,
                                double delay) {
    if (delay < 0) throw std::invalid_argument("negative delay");
    ZoneSet zones = to_zones(pta.invariants[l], pta.clocks.size());
    auto intervals = segment_intervals(zones, nu, delay);
    auto [reach, attained] = coverage_sweep(intervals);
    return reach > delay || (reach == delay && attained);
}

double max_feasible_delay(const Pta& pta, LocationId l, const ClockValuation& nu,
                          double d) {
    ZoneSet zones = to_zones(pta.invariants[l], pta.clocks.size());
    auto intervals = segment_intervals(zones, nu, d);
    auto [reach, attained] = coverage_sweep(intervals);
    if (reach >= d && (attained || reach > d)) return d;
    if (attained) return reach;
    return reach * 0.5;  // open endpoint, back off inside the covered prefix
}

std::vector<std::pair<PtaState, Rational>> pta_step(const Pta& pta, const PtaState& s,
                                                    const PathLabel& label) {
    std::vector<std::pair<PtaState, Rational>> out;
    if (is_delay(label)) {
        double d = delay_of(label);
        if (d < 0) throw std::invalid_argument("negative delay label");
        if (invariant_holds_throughout(pta, s.location, s.nu, d))
            out.push_back({PtaState{s.location, s.nu.elapse(d)}, Rational(1)});
        return out;
    }
    ActionId a = action_of(label);
    const PtaEdge* e = pta.edge(s.location, a);
    if (!e || !e->guard.eval(s.nu)) return out;
    for (const auto& b : e->dist.branches) {
        PtaState succ{b.target, s.nu.reset(b.resets)};
        if (!pta.invariants[b.target].eval(succ.nu)) continue;  // not a state
        bool merged = false;
        for (auto& [st, p] : out)
            if (st == succ) {
                p += b.prob;
                merged = true;
                break;
            }
        if (!merged) out.push_back({std::move(succ), b.prob});
    }
    return out;
}

Rational transition_weight(const Pta& pta, const PtaState& s, const PathLabel& label,
                           const PtaState& succ) {
    for (const auto& [st, p] : pta_step(pta, s, label))
        if (st == succ) return p;
    return Rational(0);
}

Rational path_weight(const Pta& pta, const FinitePath& rho) {
    Rational w(1);
    for (std::size_t k = 0; k < rho.labels.size(); ++k)
        w *= transition_weight(pta, rho.states[k], rho.labels[k], rho.states[k + 1]);
    return w;
}

std::optional<std::string> path_structure_error(const Pta& pta, const FinitePath& rho) {
    if (rho.states.empty()) return "empty path";
    if (rho.states.size() != rho.labels.size() + 1) return "state/label count mismatch";
    if (rho.states[0].location != pta.initial) return "path does not start at initial location";
    for (double v : rho.states[0].nu.values())
        if (v != 0.0) return "initial valuation is not 0";
    for (std::size_t k = 0; k < rho.labels.size(); ++k) {
        bool want_delay = (k % 2 == 0);
        if (is_delay(rho.labels[k]) != want_delay)
            return "label " + std::to_string(k) + " breaks delay/action alternation";
        if (transition_weight(pta, rho.states[k], rho.labels[k], rho.states[k + 1]) == 0)
            return "step " + std::to_string(k) + " is not a transition";
    }
    return std::nullopt;
}

TimedWord extract_word(const Pta& pta, const FinitePath& rho) {
    TimedWord w;
    for (std::size_t k = 0; k < rho.labels.size(); k += 2) {
        if (!is_delay(rho.labels[k]))
            throw std::invalid_argument("malformed path alternation in extract_word");
        w.delays.push_back(delay_of(rho.labels[k]));
        if (k + 1 < rho.labels.size()) {
            if (is_delay(rho.labels[k + 1]))
                throw std::invalid_argument("malformed path alternation in extract_word");
            w.symbols.push_back(pta.label_names(rho.states[k + 2].location));
        }
    }
    return w;
}

std::vector<ModeId> DtraRun::trajectory() const {
    std::vector<ModeId> out{start.mode};
    for (const auto& s : steps) out.push_back(s.config.mode);
    return out;
}

DtraConfig dtra_step_symbol(const Dtra& dtra, const DtraConfig& cfg, SymbolId b) {
    for (auto idx : dtra.rules_from(cfg.mode, b)) {
        const DtraRule& r = dtra.rules[idx];
        if (r.guard.eval(cfg.mu))
            return DtraConfig{r.to, cfg.mu.reset(r.resets)};
    }
    std::ostringstream out;
    out << "dtra stuck: no rule from (" << dtra.modes[cfg.mode] << ", {";
    const auto& sym = dtra.alphabet[b];
    for (std::size_t i = 0; i < sym.size(); ++i) out << (i ? "," : "") << sym[i];
    out << "}) enabled at (";
    for (std::size_t i = 0; i < cfg.mu.size(); ++i)
        out << (i ? "," : "") << cfg.mu[static_cast<ClockId>(i)];
    out << ")";
    throw ValidationError(out.str());
}

DtraConfig dtra_step_delay(const Dtra&, const DtraConfig& cfg, double t) {
    return DtraConfig{cfg.mode, cfg.mu.elapse(t)};
}

DtraRun dtra_run(const Dtra& dtra, const DtraConfig& start, const TimedWord& word) {
    DtraRun run;
    run.start = start;
    DtraConfig cfg = start;
    for (std::size_t i = 0; i < word.delays.size(); ++i) {
        cfg = dtra_step_delay(dtra, cfg, word.delays[i]);
        run.steps.push_back(DtraRunStep{word.delays[i], cfg});
        if (i < word.symbols.size()) {
            auto sym = dtra.symbol_index(word.symbols[i]);
            if (!sym) {
                std::string name;
                for (const auto& p : word.symbols[i]) name += (name.empty() ? "" : ",") + p;
                throw ValidationError("word symbol {" + name + "} not in dtra alphabet");
            }
            cfg = dtra_step_symbol(dtra, cfg, *sym);
            run.steps.push_back(DtraRunStep{*sym, cfg});
        }
    }
    return run;
}

bool rabin_accepting(const std::vector<ModeId>& inf_modes,
                     const std::vector<RabinPair>& pairs) {
    for (const auto& pair : pairs) {
        bool touches_h = false, touches_k = false;
        for (ModeId q : inf_modes) {
            if (std::find(pair.h.begin(), pair.h.end(), q) != pair.h.end())
                touches_h = true;
            if (std::find(pair.k.begin(), pair.k.end(), q) != pair.k.end())
                touches_k = true;
        }
        if (!touches_h && touches_k) return true;
    }
    return false;
}

namespace {

// Saturate clock values above the automaton's largest constant; guard
// evaluation cannot tell them apart, which makes the run eventually periodic.
std::vector<double> saturated(const ClockValuation& mu, double ceiling) {
    std::vector<double> out = mu.values();
    for (double& v : out)
        if (v > ceiling) v = ceiling + 1.0;
    return out;
}

}  // namespace

bool path_accepted(const Pta& pta, const Dtra& dtra, ModeId q, const FinitePath& stem,
                   const FinitePath& cycle) {
    if (auto err = path_structure_error(pta, stem))
        throw std::invalid_argument("bad lasso stem: " + *err);
    if (cycle.labels.empty() || cycle.labels.size() % 2 != 0)
        throw std::invalid_argument("lasso cycle must have positive even length");
    if (!(cycle.states.front() == stem.states.back()))
        throw std::invalid_argument("lasso cycle does not start at the stem's end");
    if (!(cycle.states.back() == cycle.states.front()))
        throw std::invalid_argument("lasso cycle does not repeat its start state exactly");
    if (stem.labels.size() % 2 != 0)
        throw std::invalid_argument("lasso stem must end ready for a delay");
    for (std::size_t k = 0; k < cycle.labels.size(); ++k) {
        bool want_delay = (k % 2 == 0);
        if (is_delay(cycle.labels[k]) != want_delay)
            throw std::invalid_argument("lasso cycle breaks delay/action alternation");
        if (transition_weight(pta, cycle.states[k], cycle.labels[k], cycle.states[k + 1]) == 0)
            throw std::invalid_argument("lasso cycle step is not a transition");
    }

    double ceiling = 0;
    for (const auto& r : dtra.rules)
        ceiling = std::max(ceiling, static_cast<double>(r.guard.max_constant()));

    // Read L(l*) first (Def 5), then the word of stem . cycle^omega.
    DtraConfig cfg{q, ClockValuation(dtra.clocks.size())};
    auto init_sym = dtra.symbol_index(pta.label_names(pta.initial));
    if (!init_sym) throw ValidationError("initial label set not in dtra alphabet");
    cfg = dtra_step_symbol(dtra, cfg, *init_sym);

    TimedWord stem_word = extract_word(pta, stem);
    for (std::size_t i = 0; i < stem_word.delays.size(); ++i) {
        cfg = dtra_step_delay(dtra, cfg, stem_word.delays[i]);
        if (i < stem_word.symbols.size())
            cfg = dtra_step_symbol(dtra, cfg, *dtra.symbol_index(stem_word.symbols[i]));
    }

    // Pump the cycle until the saturated configuration repeats.
    std::vector<double> cycle_delays;
    std::vector<SymbolId> cycle_symbols;
    for (std::size_t k = 0; k < cycle.labels.size(); k += 2) {
        cycle_delays.push_back(delay_of(cycle.labels[k]));
        auto sym = dtra.symbol_index(pta.label_names(cycle.states[k + 2].location));
        if (!sym) throw ValidationError("cycle label set not in dtra alphabet");
        cycle_symbols.push_back(*sym);
    }

    std::map<std::pair<ModeId, std::vector<double>>, std::size_t> seen;
    std::vector<std::vector<ModeId>> visits;  // modes visited per traversal
    for (;;) {
        auto key = std::make_pair(cfg.mode, saturated(cfg.mu, ceiling));
        auto it = seen.find(key);
        if (it != seen.end()) {
            std::vector<ModeId> inf;
            for (std::size_t t = it->second; t < visits.size(); ++t)
                for (ModeId m : visits[t])
                    if (std::find(inf.begin(), inf.end(), m) == inf.end())
                        inf.push_back(m);
            return rabin_accepting(inf, dtra.rabin);
        }
        seen.emplace(std::move(key), visits.size());
        std::vector<ModeId> traversal;
        for (std::size_t i = 0; i < cycle_delays.size(); ++i) {
            cfg = dtra_step_delay(dtra, cfg, cycle_delays[i]);
            cfg = dtra_step_symbol(dtra, cfg, cycle_symbols[i]);
            traversal.push_back(cfg.mode);
        }
        visits.push_back(std::move(traversal));
    }
}

std::uint64_t CounterRng::next() {
    auto mix = [](std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    };
    std::uint64_t v = mix(seed_ ^ mix(stream_ ^ mix(counter_)));
    ++counter_;
    return v;
}

Rational CounterRng::next_unit_rational() {
    Rational num = rational_from_uint64(next());
    mpz_class den = 1;
    den <<= 64;
    Rational r(num.get_num(), den);
    r.canonicalize();
    return r;
}

namespace {

std::vector<ActionId> enabled_actions(const Pta& pta, const PtaState& s) {
    std::vector<ActionId> out;
    for (ActionId a = 0; a < pta.actions.size(); ++a)
        if (!pta_step(pta, s, PathLabel{a}).empty()) out.push_back(a);
    return out;
}

std::uint64_t path_hash(std::uint64_t seed, const FinitePath& rho) {
    CounterRng rng(seed, rho.length() * 1000003ull + rho.last().location);
    return rng.next();
}

}  // namespace

SchedulerPolicy fixed_delay_scheduler(double d) {
    SchedulerPolicy sp;
    sp.name = "fixed-delay(" + std::to_string(d) + ")";
    sp.decide = [d](const Pta& pta, const FinitePath& rho) -> PathLabel {
        const PtaState& s = rho.last();
        if (rho.length() % 2 == 0)
            return PathLabel{max_feasible_delay(pta, s.location, s.nu, d)};
        auto acts = enabled_actions(pta, s);
        if (acts.empty())
            throw SchedulerContractError("no enabled action at " +
                                         pta.locations[s.location]);
        return PathLabel{acts.front()};
    };
    return sp;
}

SchedulerPolicy uniform_integer_delay_scheduler(std::uint32_t k, std::uint64_t seed) {
    SchedulerPolicy sp;
    sp.name = "uniform-integer-delay(0.." + std::to_string(k) + ")";
    sp.decide = [k, seed](const Pta& pta, const FinitePath& rho) -> PathLabel {
        const PtaState& s = rho.last();
        std::uint64_t h = path_hash(seed, rho);
        if (rho.length() % 2 == 0) {
            double want = static_cast<double>(h % (k + 1));
            return PathLabel{max_feasible_delay(pta, s.location, s.nu, want)};
        }
        auto acts = enabled_actions(pta, s);
        if (acts.empty())
            throw SchedulerContractError("no enabled action at " +
                                         pta.locations[s.location]);
        return PathLabel{acts[h % acts.size()]};
    };
    return sp;
}

SchedulerPolicy greedy_toward_scheduler(std::vector<LocationId> targets) {
    SchedulerPolicy sp;
    sp.name = "greedy-toward-target";
    sp.decide = [targets](const Pta& pta, const FinitePath& rho) -> PathLabel {
        // BFS distances over the location graph.
        const std::size_t n = pta.locations.size();
        std::vector<std::uint32_t> dist(n, UINT32_MAX);
        std::deque<LocationId> queue;
        for (LocationId t : targets) {
            dist[t] = 0;
            queue.push_back(t);
        }
        std::vector<std::vector<LocationId>> preds(n);
        for (const auto& [key, e] : pta.edges)
            for (const auto& b : e.dist.branches) preds[b.target].push_back(key.first);
        while (!queue.empty()) {
            LocationId cur = queue.front();
            queue.pop_front();
            for (LocationId p : preds[cur])
                if (dist[p] == UINT32_MAX) {
                    dist[p] = dist[cur] + 1;
                    queue.push_back(p);
                }
        }

        const PtaState& s = rho.last();
        auto action_score = [&](const PtaState& at, ActionId a) -> std::uint64_t {
            auto succs = pta_step(pta, at, PathLabel{a});
            if (succs.empty()) return UINT64_MAX;
            std::uint64_t best = UINT64_MAX;
            for (const auto& [st, p] : succs)
                best = std::min<std::uint64_t>(best, dist[st.location]);
            return best;
        };

        if (rho.length() % 2 == 0) {
            std::int64_t horizon = 1;
            for (const auto& [key, e] : pta.edges)
                horizon = std::max(horizon, e.guard.max_constant());
            for (double t = 0.0; t <= static_cast<double>(2 * horizon) + 1.0; t += 0.5) {
                if (!invariant_holds_throughout(pta, s.location, s.nu, t)) break;
                PtaState moved{s.location, s.nu.elapse(t)};
                for (ActionId a = 0; a < pta.actions.size(); ++a)
                    if (action_score(moved, a) != UINT64_MAX)
                        return PathLabel{t};
            }
            return PathLabel{max_feasible_delay(pta, s.location, s.nu, 1.0)};
        }
        ActionId best_action = 0;
        std::uint64_t best = UINT64_MAX;
        bool found = false;
        for (ActionId a = 0; a < pta.actions.size(); ++a) {
            std::uint64_t sc = action_score(s, a);
            if (sc < best || (!found && sc != UINT64_MAX)) {
                best = sc;
                best_action = a;
                found = true;
            }
        }
        if (!found)
            throw SchedulerContractError("no enabled action at " +
                                         pta.locations[s.location]);
        return PathLabel{best_action};
    };
    return sp;
}

FinitePath sample_path(const Pta& pta, const SchedulerPolicy& sigma, std::size_t steps,
                       std::uint64_t seed) {
    FinitePath rho;
    PtaState init{pta.initial, ClockValuation(pta.clocks.size())};
    if (!pta.invariants[pta.initial].eval(init.nu))
        throw ValidationError("initial state violates its invariant");
    rho.states.push_back(init);

    CounterRng rng(seed);
    for (std::size_t k = 0; k < 2 * steps; ++k) {
        PathLabel choice = sigma.decide(pta, rho);
        bool want_delay = (rho.length() % 2 == 0);
        if (is_delay(choice) != want_delay)
            throw SchedulerContractError("scheduler returned " +
                                         std::string(is_delay(choice) ? "delay" : "action") +
                                         " out of turn");
        auto succs = pta_step(pta, rho.last(), choice);
        if (succs.empty())
            throw SchedulerContractError("scheduler chose a disabled label");
        if (is_delay(choice)) {
            rho.labels.push_back(choice);
            rho.states.push_back(succs.front().first);
        } else {
            Rational u = rng.next_unit_rational();
            Rational acc(0);
            std::size_t pick = succs.size() - 1;
            for (std::size_t i = 0; i < succs.size(); ++i) {
                acc += succs[i].second;
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
            rho.labels.push_back(choice);
            rho.states.push_back(succs[pick].first);
        }
    }
    return rho;
}

}  // namespace ptamc
