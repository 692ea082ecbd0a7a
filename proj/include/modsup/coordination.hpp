#ifndef MODSUP_COORDINATION_HPP
#define MODSUP_COORDINATION_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modsup/check.hpp"
#include "modsup/errors.hpp"
#include "modsup/generator.hpp"
#include "modsup/ops.hpp"
#include "modsup/synthesis.hpp"

namespace modsup {

/// A two-component coordination problem: plants g1 and g2, a specification
/// over the union alphabet, the coordinator alphabet, and (once built) the
/// coordinator itself.
struct CoordinationInstance {
    Generator g1;
    Generator g2;
    Generator spec;
    Alphabet sigma_k;
    std::optional<Generator> coordinator;
};

/// Per-component supervisors over the side alphabets, plus the optional
/// coordinator supervisor over the coordinator alphabet.
struct DistributedSupervisors {
    Generator s1k;
    Generator s2k;
    std::optional<Generator> k_prime;
};

enum class OptimalityVerdict { Supremal, NeedsKPrime };

inline std::string to_string(OptimalityVerdict v) {
    return v == OptimalityVerdict::Supremal ? "supremal" : "needs-k-prime";
}

/// Outcome of the supremal-composition test: which condition failed, if any,
/// and the witnessing word.
struct OptimalityCheck {
    OptimalityVerdict verdict = OptimalityVerdict::Supremal;
    std::string failed_condition; // "parts-conflict" or "coordinator-intersection-uncontrollable"
    std::optional<Counterexample> evidence;

    explicit operator bool() const { return verdict == OptimalityVerdict::Supremal; }
};

namespace detail {

inline void check_sandwich(const Alphabet& sigma1, const Alphabet& sigma2,
                           const Alphabet& sigma_k) {
    for (const auto& name : sigma1.intersect(sigma2).names())
        if (!sigma_k.contains(name))
            throw AlphabetBounds("coordinator alphabet must contain shared event '" + name + "'");
    if (!sigma_k.subset_of(sigma1.union_with(sigma2)))
        throw AlphabetBounds("coordinator alphabet must stay inside the union alphabet");
}

/// Sub-alphabet of `base` holding the events of `side` plus `extra`.
inline Alphabet side_alphabet(const Alphabet& base, const Alphabet& side, const Alphabet& extra) {
    std::set<std::string> names = side.names();
    auto more = extra.names();
    names.insert(more.begin(), more.end());
    return base.restrict_to(names);
}

inline const Generator& require_coordinator(const CoordinationInstance& inst) {
    if (!inst.coordinator)
        throw PreconditionViolation("coordination instance has no coordinator built");
    return *inst.coordinator;
}

} // namespace detail

/// Coordinator automaton: the composition of both plants projected to the
/// coordinator alphabet. The coordinator alphabet must sit between the shared
/// events and the union alphabet.
inline Generator build_coordinator(const Generator& g1, const Generator& g2,
                                   const Alphabet& sigma_k) {
    detail::check_sandwich(g1.alphabet(), g2.alphabet(), sigma_k);
    Generator p1 = project(g1, sigma_k.intersect(g1.alphabet()));
    Generator p2 = project(g2, sigma_k.intersect(g2.alphabet()));
    Generator c = inverse_lift(compose(p1, p2), sigma_k);
    c.set_name("coordinator");
    return c;
}

/// Whether the specification equals the composition of its two side
/// projections. Only the composition-too-large direction can fail; the
/// counterexample is the shortest extra word of the composition.
inline CheckResult is_conditionally_decomposable(const Generator& k, const Alphabet& sigma1,
                                                 const Alphabet& sigma2, const Alphabet& sigma_k) {
    detail::check_sandwich(sigma1, sigma2, sigma_k);
    if (!k.alphabet().same_events(sigma1.union_with(sigma2)))
        throw AlphabetMismatch("specification alphabet must equal the union alphabet");
    Generator t1 = project(k, detail::side_alphabet(k.alphabet(), sigma1, sigma_k));
    Generator t2 = project(k, detail::side_alphabet(k.alphabet(), sigma2, sigma_k));
    CheckResult r = language_inclusion(compose(t1, t2), k, LanguageKind::Marked);
    if (r.ok()) return r;
    return CheckResult::fail({r.violation->word, ViolationKind::CdViolation, std::nullopt,
                              "composed side projections exceed the specification"});
}

/// Grow a coordinator alphabet until the specification and its closure are
/// both conditionally decomposable. Greedy: take the current shortest
/// counterexample and adopt its first event outside the alphabet; sound but
/// not necessarily minimal. The full union alphabet always terminates the
/// loop.
inline Alphabet extend_for_cd(const Generator& k, const Alphabet& sigma1, const Alphabet& sigma2,
                              const Alphabet& sigma_k0) {
    detail::check_sandwich(sigma1, sigma2, sigma_k0);
    Generator kbar = prefix_closure(k);
    std::set<std::string> names = sigma_k0.names();
    for (;;) {
        Alphabet sigma_k = k.alphabet().restrict_to(names);
        CheckResult r1 = is_conditionally_decomposable(k, sigma1, sigma2, sigma_k);
        CheckResult r2 = is_conditionally_decomposable(kbar, sigma1, sigma2, sigma_k);
        if (r1.ok() && r2.ok()) return sigma_k;
        Word cex;
        if (!r1.ok() && !r2.ok())
            cex = r1.violation->word.size() <= r2.violation->word.size() ? r1.violation->word
                                                                         : r2.violation->word;
        else
            cex = r1.ok() ? r2.violation->word : r1.violation->word;
        bool grown = false;
        for (const auto& ev : cex)
            if (!names.count(ev)) {
                names.insert(ev);
                grown = true;
                break;
            }
        if (!grown) {
            for (std::size_t e = 0; e < k.alphabet().size() && !grown; ++e)
                if (!names.count(k.alphabet().at(e).name)) {
                    names.insert(k.alphabet().at(e).name);
                    grown = true;
                }
        }
        if (!grown)
            throw InvariantError("conditional decomposability failed on the full alphabet");
    }
}

/// Exact observer test for the projection of the marked language of g to
/// sigma0. Runs a fixpoint over configurations pairing a state of the
/// determinized projection with the set of g-states still able to match its
/// trace through silent moves; a configuration that is marked on the
/// projection side but cannot mark on the g side is a violation. The
/// counterexample carries the stranded word and, in target_word, the
/// projected word it cannot catch up with.
inline CheckResult is_observer(const Generator& g, const Alphabet& sigma0) {
    if (!sigma0.subset_of(g.alphabet()))
        throw AlphabetBounds("observer alphabet is not a subset of the generator alphabet");
    Generator a = trim(g);
    if (!a.any_marked()) return CheckResult::pass();
    Generator d = project(a, sigma0);

    std::vector<bool> silent(a.alphabet().size(), false);
    for (std::size_t e = 0; e < a.alphabet().size(); ++e)
        silent[e] = !sigma0.contains(a.alphabet().at(e).name);
    std::vector<std::size_t> de(a.alphabet().size(), detail::npos);
    for (std::size_t e = 0; e < a.alphabet().size(); ++e)
        if (!silent[e]) de[e] = d.alphabet().index_of(a.alphabet().at(e).name);
    std::vector<std::size_t> ae(d.alphabet().size());
    for (std::size_t e = 0; e < d.alphabet().size(); ++e)
        ae[e] = a.alphabet().index_of(d.alphabet().at(e).name);

    auto close = [&](std::set<StateId> xs) {
        std::vector<StateId> todo(xs.begin(), xs.end());
        while (!todo.empty()) {
            StateId s = todo.back();
            todo.pop_back();
            for (const auto& [e, t] : a.transitions_from(s))
                if (silent[e] && xs.insert(t).second) todo.push_back(t);
        }
        return xs;
    };

    // Reachable (g-state, projection-state) pairs, with parent links so the
    // stranded word can be rebuilt.
    std::map<std::pair<StateId, StateId>, std::size_t> pair_id;
    std::vector<std::pair<StateId, StateId>> pairs;
    std::vector<detail::SearchNode> pair_nodes;
    auto push_pair = [&](StateId q, StateId x, std::size_t parent, std::size_t event) {
        auto key = std::make_pair(q, x);
        if (pair_id.count(key)) return;
        pair_id.emplace(key, pairs.size());
        pairs.push_back(key);
        pair_nodes.push_back({parent, event});
    };
    push_pair(a.initial(), d.initial(), detail::npos, detail::npos);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [q, x] = pairs[i];
        for (const auto& [e, t] : a.transitions_from(q)) {
            StateId x2 = x;
            if (!silent[e]) x2 = *d.target(x, de[e]);
            push_pair(t, x2, i, e);
        }
    }

    // Configurations (projection state, matchable g-state set), each tagged
    // with the pair it was first reached from and the projected suffix.
    struct Config {
        std::size_t parent;
        std::size_t event; // projection-alphabet index
        std::size_t seed;  // pair index
    };
    std::map<std::pair<StateId, std::set<StateId>>, std::size_t> config_id;
    std::vector<std::pair<StateId, std::set<StateId>>> configs;
    std::vector<Config> config_nodes;
    auto push_config = [&](StateId x, std::set<StateId> ys, std::size_t parent, std::size_t event,
                           std::size_t seed) {
        auto key = std::make_pair(x, std::move(ys));
        if (config_id.count(key)) return;
        config_id.emplace(key, configs.size());
        configs.push_back(key);
        config_nodes.push_back({parent, event, seed});
    };
    for (std::size_t i = 0; i < pairs.size(); ++i)
        push_config(pairs[i].second, close({pairs[i].first}), detail::npos, detail::npos, i);

    for (std::size_t c = 0; c < configs.size(); ++c) {
        // Copy: push_config below can reallocate the vector.
        auto [x, ys] = configs[c];
        if (d.marked(x)) {
            bool matched = false;
            for (StateId y : ys) matched = matched || a.marked(y);
            if (!matched) {
                std::size_t seed = config_nodes[c].seed;
                Word s = detail::rebuild_word(pair_nodes, seed, a.alphabet());
                Word t = project_word(s, sigma0);
                std::vector<std::string> suffix;
                for (std::size_t at = c; config_nodes[at].parent != detail::npos;
                     at = config_nodes[at].parent)
                    suffix.push_back(d.alphabet().at(config_nodes[at].event).name);
                t.insert(t.end(), suffix.rbegin(), suffix.rend());
                return CheckResult::fail(
                    {std::move(s), ViolationKind::ObserverViolation, std::move(t),
                     "no silent completion tracks the projected continuation"});
            }
        }
        for (std::size_t e = 0; e < d.alphabet().size(); ++e) {
            auto x2 = d.target(x, e);
            if (!x2) continue;
            std::set<StateId> next;
            for (StateId y : ys)
                if (auto t = a.target(y, ae[e])) next.insert(*t);
            push_config(*x2, close(std::move(next)), c, e, config_nodes[c].seed);
        }
    }
    return CheckResult::pass();
}

/// Grow an observation alphabet until the projection becomes an observer.
/// Greedy: from each counterexample, adopt the first silent event enabled
/// along the stranded word's silent closure; falls back to any silent event
/// in use. Sound but not necessarily minimal.
inline Alphabet extend_for_observer(const Generator& g, const Alphabet& sigma0) {
    std::set<std::string> names = sigma0.names();
    Generator a = trim(g);
    for (;;) {
        Alphabet current = g.alphabet().restrict_to(names);
        CheckResult r = is_observer(g, current);
        if (r.ok()) return current;

        std::set<std::string> candidates;
        if (a.has_initial()) {
            if (auto q = a.run(r.violation->word)) {
                std::set<StateId> seen{*q};
                std::vector<StateId> todo{*q};
                while (!todo.empty()) {
                    StateId s = todo.back();
                    todo.pop_back();
                    for (const auto& [e, t] : a.transitions_from(s)) {
                        if (names.count(a.alphabet().at(e).name)) continue;
                        candidates.insert(a.alphabet().at(e).name);
                        if (seen.insert(t).second) todo.push_back(t);
                    }
                }
            }
        }
        bool grown = false;
        for (std::size_t e = 0; e < g.alphabet().size() && !grown; ++e) {
            const auto& name = g.alphabet().at(e).name;
            if (candidates.count(name) && !names.count(name)) {
                names.insert(name);
                grown = true;
            }
        }
        for (std::size_t e = 0; e < g.alphabet().size() && !grown; ++e) {
            const auto& name = g.alphabet().at(e).name;
            if (!names.count(name)) {
                names.insert(name);
                grown = true;
            }
        }
        if (!grown) throw InvariantError("projection is not an observer on the full alphabet");
    }
}

namespace detail {

inline void require_cd(const CoordinationInstance& inst) {
    CheckResult r = is_conditionally_decomposable(inst.spec, inst.g1.alphabet(),
                                                  inst.g2.alphabet(), inst.sigma_k);
    if (!r.ok())
        throw PreconditionViolation("specification is not conditionally decomposable; extra word '" +
                                    format_word(r.violation->word) + "'");
}

inline Generator side_projection(const CoordinationInstance& inst, const Generator& side) {
    return project(inst.spec, side_alphabet(inst.spec.alphabet(), side.alphabet(), inst.sigma_k));
}

/// One relaxed-framework fixpoint: supervisor for a side projection against
/// that side's plant composed with the coordinator.
inline SynthesisResult sup_rc_part(const CoordinationInstance& inst, int side) {
    const Generator& gi = side == 1 ? inst.g1 : inst.g2;
    Generator part = side_projection(inst, gi);
    Generator plant = compose(gi, require_coordinator(inst));
    SynthesisResult r = sup_con(part, plant, plant.alphabet().uncontrollable_names());
    r.supervisor.set_name(side == 1 ? "s1k" : "s2k");
    return r;
}

} // namespace detail

/// Relaxed conditional controllability: each side projection of the
/// specification must be controllable against its own plant composed with
/// the coordinator. The counterexample note names the failing side.
inline CheckResult is_relaxed_cond_controllable(const CoordinationInstance& inst) {
    const Generator& gk = detail::require_coordinator(inst);
    detail::require_cd(inst);
    for (int side = 1; side <= 2; ++side) {
        const Generator& gi = side == 1 ? inst.g1 : inst.g2;
        Generator part = detail::side_projection(inst, gi);
        Generator plant = compose(gi, gk);
        CheckResult r = is_controllable(part, plant, plant.alphabet().uncontrollable_names());
        if (!r.ok()) {
            Counterexample c = *r.violation;
            c.note = "side=" + std::to_string(side) + "; " + c.note;
            return CheckResult::fail(std::move(c));
        }
    }
    return CheckResult::pass();
}

/// Original conditional controllability: the coordinator projection of the
/// specification must be controllable against the coordinator, and each side
/// projection against its plant composed with the closure of that
/// coordinator projection.
inline CheckResult is_cond_controllable(const CoordinationInstance& inst) {
    const Generator& gk = detail::require_coordinator(inst);
    detail::require_cd(inst);
    Generator pk = project(inst.spec, inst.spec.alphabet().restrict_to(inst.sigma_k.names()));
    CheckResult rk = is_controllable(pk, gk, gk.alphabet().uncontrollable_names());
    if (!rk.ok()) {
        Counterexample c = *rk.violation;
        c.note = "side=k; " + c.note;
        return CheckResult::fail(std::move(c));
    }
    Generator pk_closed = prefix_closure(pk);
    for (int side = 1; side <= 2; ++side) {
        const Generator& gi = side == 1 ? inst.g1 : inst.g2;
        Generator part = detail::side_projection(inst, gi);
        Generator plant = compose(gi, pk_closed);
        CheckResult r = is_controllable(part, plant, plant.alphabet().uncontrollable_names());
        if (!r.ok()) {
            Counterexample c = *r.violation;
            c.note = "side=" + std::to_string(side) + "; " + c.note;
            return CheckResult::fail(std::move(c));
        }
    }
    return CheckResult::pass();
}

/// Relaxed-framework distributed supervisors: each side gets the supremal
/// controllable sublanguage of its specification projection against its
/// plant composed with the coordinator.
inline DistributedSupervisors sup_rc_parts(const CoordinationInstance& inst) {
    detail::require_coordinator(inst);
    detail::require_cd(inst);
    return {detail::sup_rc_part(inst, 1).supervisor, detail::sup_rc_part(inst, 2).supervisor,
            std::nullopt};
}

/// Original-framework distributed supervisors: first the supremal
/// controllable sublanguage of the coordinator projection against the
/// coordinator, then each side against its plant composed with that
/// result's closure.
inline DistributedSupervisors sup_cc_parts(const CoordinationInstance& inst) {
    const Generator& gk = detail::require_coordinator(inst);
    detail::require_cd(inst);
    Generator pk = project(inst.spec, inst.spec.alphabet().restrict_to(inst.sigma_k.names()));
    Generator k_prime = sup_con(pk, gk, gk.alphabet().uncontrollable_names()).supervisor;
    k_prime.set_name("k_prime");
    Generator k_prime_closed = prefix_closure(k_prime);
    auto part_for = [&](const Generator& gi, const char* name) {
        Generator part = detail::side_projection(inst, gi);
        Generator plant = compose(gi, k_prime_closed);
        Generator s = sup_con(part, plant, plant.alphabet().uncontrollable_names()).supervisor;
        s.set_name(name);
        return s;
    };
    DistributedSupervisors out{part_for(inst.g1, "s1k"), part_for(inst.g2, "s2k"), std::nullopt};
    out.k_prime = std::move(k_prime);
    return out;
}

namespace detail {

inline Generator coordinator_intersection(const DistributedSupervisors& parts,
                                          const Generator& coordinator) {
    Generator p1 = project(parts.s1k, parts.s1k.alphabet().restrict_to(coordinator.alphabet().names()));
    Generator p2 = project(parts.s2k, parts.s2k.alphabet().restrict_to(coordinator.alphabet().names()));
    return compose(p1, p2);
}

} // namespace detail

/// Whether the composed relaxed parts are already the supremal solution:
/// the parts must be synchronously nonconflicting and the intersection of
/// their coordinator projections controllable against the coordinator.
inline OptimalityCheck check_optimal_composition(const DistributedSupervisors& parts,
                                                 const Generator& coordinator) {
    CheckResult conflict = is_nonconflicting(parts.s1k, parts.s2k);
    if (!conflict.ok())
        return {OptimalityVerdict::NeedsKPrime, "parts-conflict", conflict.violation};
    Generator inter = detail::coordinator_intersection(parts, coordinator);
    CheckResult ctrl =
        is_controllable(inter, coordinator, coordinator.alphabet().uncontrollable_names());
    if (!ctrl.ok())
        return {OptimalityVerdict::NeedsKPrime, "coordinator-intersection-uncontrollable",
                ctrl.violation};
    return {OptimalityVerdict::Supremal, "", std::nullopt};
}

/// Coordinator supervisor: the supremal controllable sublanguage of the
/// intersection of the parts' coordinator projections against the
/// coordinator. Composing it with the parts restores a relaxed
/// conditionally controllable sublanguage when the supremality test fails.
inline Generator sup_c_k_prime(const DistributedSupervisors& parts, const Generator& coordinator) {
    Generator inter = detail::coordinator_intersection(parts, coordinator);
    Generator out =
        sup_con(inter, coordinator, coordinator.alphabet().uncontrollable_names()).supervisor;
    out.set_name("k_prime");
    return out;
}

/// Coordinator for nonconflictingness: the supremal controllable sublanguage
/// of the composed part projections against the composed closures of those
/// projections, returned as a minimal nonblocking generator. The projection
/// must be an observer for both parts.
inline Generator nonconflict_coordinator(const DistributedSupervisors& parts,
                                         const Alphabet& sigma0) {
    for (int side = 1; side <= 2; ++side) {
        const Generator& s = side == 1 ? parts.s1k : parts.s2k;
        CheckResult r = is_observer(s, sigma0.intersect(s.alphabet()));
        if (!r.ok())
            throw ObserverViolation("projection is not an observer for part " +
                                    std::to_string(side) + "; stranded word '" +
                                    format_word(r.violation->word) + "'");
    }
    Generator p1 = project(parts.s1k, sigma0.intersect(parts.s1k.alphabet()));
    Generator p2 = project(parts.s2k, sigma0.intersect(parts.s2k.alphabet()));
    Generator target = compose(p1, p2);
    Generator plant = compose(prefix_closure(p1), prefix_closure(p2));
    Generator c = sup_con(target, plant, plant.alphabet().uncontrollable_names()).supervisor;
    c = minimize(c);
    c.set_name("C");
    return c;
}

/// Validate alphabets, build the coordinator, and assemble an instance.
inline CoordinationInstance make_coordination_instance(Generator g1, Generator g2, Generator spec,
                                                       const std::set<std::string>& sigma_k_names) {
    Alphabet whole = g1.alphabet().union_with(g2.alphabet());
    if (!spec.alphabet().same_events(whole))
        throw AlphabetMismatch("specification alphabet must equal the union alphabet");
    for (const auto& name : sigma_k_names)
        if (!whole.contains(name))
            throw AlphabetBounds("coordinator event '" + name + "' is not a plant event");
    Alphabet sigma_k = whole.restrict_to(sigma_k_names);
    detail::check_sandwich(g1.alphabet(), g2.alphabet(), sigma_k);
    Generator coordinator = build_coordinator(g1, g2, sigma_k);
    return {std::move(g1), std::move(g2), std::move(spec), std::move(sigma_k),
            std::move(coordinator)};
}

} // namespace modsup

#endif
