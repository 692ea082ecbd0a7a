#ifndef MODSUP_SYNTHESIS_HPP
#define MODSUP_SYNTHESIS_HPP

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
#include "modsup/oracle.hpp"

namespace modsup {

/// A synthesized supervisor together with fixpoint statistics.
struct SynthesisResult {
    Generator supervisor;
    std::size_t iterations = 0;
    std::size_t removed_states = 0;
};

namespace detail {

inline void check_sigma_u(const Alphabet& alphabet, const std::set<std::string>& sigma_u) {
    for (const auto& name : sigma_u)
        if (!alphabet.contains(name))
            throw InvariantError("uncontrollable event '" + name + "' not in alphabet");
}

} // namespace detail

/// Controllability of the marked language of k against the plant's generated
/// language: no word of the closure of Lm(k) may be extended by an
/// uncontrollable plant event outside that closure. The counterexample is
/// the shortest such extension and replays on the plant.
inline CheckResult is_controllable(const Generator& k, const Generator& plant,
                                   const std::set<std::string>& sigma_u) {
    if (!k.alphabet().same_events(plant.alphabet()))
        throw AlphabetMismatch("controllability check requires identical event sets");
    detail::check_sigma_u(plant.alphabet(), sigma_u);

    Generator a = trim(k);
    if (!a.any_marked()) return CheckResult::pass();

    std::vector<bool> unc(a.alphabet().size(), false);
    for (std::size_t e = 0; e < a.alphabet().size(); ++e)
        unc[e] = sigma_u.count(a.alphabet().at(e).name) != 0;
    std::vector<std::size_t> pe(a.alphabet().size());
    for (std::size_t e = 0; e < a.alphabet().size(); ++e)
        pe[e] = plant.alphabet().index_of(a.alphabet().at(e).name);

    std::map<std::pair<StateId, StateId>, std::size_t> seen;
    std::vector<detail::SearchNode> nodes;
    std::vector<std::pair<StateId, StateId>> config;
    auto push = [&](StateId x, StateId p, std::size_t parent, std::size_t event) {
        auto key = std::make_pair(x, p);
        if (seen.count(key)) return;
        seen.emplace(key, nodes.size());
        nodes.push_back({parent, event});
        config.push_back(key);
    };
    push(a.initial(), plant.initial(), detail::npos, detail::npos);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto [x, p] = config[i];
        for (std::size_t e = 0; e < a.alphabet().size(); ++e) {
            auto pt = plant.target(p, pe[e]);
            auto at = a.target(x, e);
            if (pt && !at && unc[e]) {
                Word w = detail::rebuild_word(nodes, i, a.alphabet());
                w.push_back(a.alphabet().at(e).name);
                return CheckResult::fail({std::move(w),
                                          ViolationKind::ControllabilityViolation,
                                          std::nullopt,
                                          "uncontrollable plant continuation leaves the closure"});
            }
            if (pt && at) push(*at, *pt, i, e);
        }
    }
    return CheckResult::pass();
}

inline CheckResult is_controllable(const Generator& k, const Generator& plant) {
    return is_controllable(k, plant, plant.alphabet().uncontrollable_names());
}

/// Supremal controllable sublanguage of the words of Lm(k) that lie inside
/// the plant's generated language, with respect to that generated language.
/// The plant contributes only its closed behavior; marking comes from the
/// specification side. Runs the classical fixpoint on the product:
/// alternately delete states where the plant enables an uncontrollable event
/// the candidate does not, and states that lost all marked completions; stop
/// when a full round changes nothing. The supervisor is trim, controllable
/// by construction, and empty (the canonical one-state generator) when no
/// controllable sublanguage exists.
inline SynthesisResult sup_con(const Generator& k, const Generator& plant,
                               const std::set<std::string>& sigma_u) {
    if (!k.alphabet().same_events(plant.alphabet()))
        throw AlphabetMismatch("supervisor synthesis requires identical event sets");
    detail::check_sigma_u(plant.alphabet(), sigma_u);

    Generator a = trim(k);
    const Alphabet& alpha = plant.alphabet();
    auto empty = [&] {
        return SynthesisResult{Generator::empty_language(alpha, "supcon(" + k.name() + ")"), 0, 0};
    };
    if (!a.any_marked()) return empty();

    std::vector<std::size_t> ae(alpha.size());
    for (std::size_t e = 0; e < alpha.size(); ++e)
        ae[e] = a.alphabet().index_of(alpha.at(e).name);
    std::vector<bool> unc(alpha.size(), false);
    for (std::size_t e = 0; e < alpha.size(); ++e)
        unc[e] = sigma_u.count(alpha.at(e).name) != 0;

    // Reachable product of the trimmed candidate with the plant.
    std::map<std::pair<StateId, StateId>, std::size_t> id;
    std::vector<std::pair<StateId, StateId>> st;
    auto intern = [&](StateId x, StateId p) {
        auto key = std::make_pair(x, p);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        id.emplace(key, st.size());
        st.push_back(key);
        return st.size() - 1;
    };
    intern(a.initial(), plant.initial());
    std::vector<std::vector<std::size_t>> succ; // per state, per alphabet event: npos or product id
    for (std::size_t i = 0; i < st.size(); ++i) {
        succ.emplace_back(alpha.size(), detail::npos);
        auto [x, p] = st[i];
        for (std::size_t e = 0; e < alpha.size(); ++e) {
            auto at = a.target(x, ae[e]);
            auto pt = plant.target(p, e);
            if (at && pt) succ[i][e] = intern(*at, *pt);
        }
    }
    std::vector<bool> alive(st.size(), true);
    std::vector<bool> marked(st.size());
    for (std::size_t i = 0; i < st.size(); ++i)
        marked[i] = a.marked(st[i].first);

    std::size_t iterations = 0;
    std::size_t removed = 0;
    for (;;) {
        ++iterations;
        bool changed = false;
        // Uncontrollable-escape sweep.
        for (std::size_t i = 0; i < st.size(); ++i) {
            if (!alive[i]) continue;
            auto [x, p] = st[i];
            for (std::size_t e = 0; e < alpha.size(); ++e) {
                if (!unc[e]) continue;
                if (!plant.target(p, e)) continue;
                std::size_t t = succ[i][e];
                if (t == detail::npos || !alive[t]) {
                    alive[i] = false;
                    ++removed;
                    changed = true;
                    break;
                }
            }
        }
        // Marked-completion sweep over the surviving subgraph.
        {
            std::vector<std::vector<std::size_t>> rev(st.size());
            for (std::size_t i = 0; i < st.size(); ++i) {
                if (!alive[i]) continue;
                for (std::size_t e = 0; e < alpha.size(); ++e) {
                    std::size_t t = succ[i][e];
                    if (t != detail::npos && alive[t]) rev[t].push_back(i);
                }
            }
            std::vector<bool> coacc(st.size(), false);
            std::vector<std::size_t> todo;
            for (std::size_t i = 0; i < st.size(); ++i)
                if (alive[i] && marked[i]) {
                    coacc[i] = true;
                    todo.push_back(i);
                }
            while (!todo.empty()) {
                std::size_t s = todo.back();
                todo.pop_back();
                for (std::size_t p2 : rev[s])
                    if (!coacc[p2]) {
                        coacc[p2] = true;
                        todo.push_back(p2);
                    }
            }
            for (std::size_t i = 0; i < st.size(); ++i)
                if (alive[i] && !coacc[i]) {
                    alive[i] = false;
                    ++removed;
                    changed = true;
                }
        }
        if (!changed) break;
    }

    if (!alive[0]) {
        auto r = empty();
        r.iterations = iterations;
        r.removed_states = removed;
        return r;
    }

    // Accessible surviving part, renumbered in discovery order.
    Generator out("supcon(" + k.name() + ")", alpha);
    std::vector<StateId> remap(st.size(), detail::npos);
    std::vector<std::size_t> order;
    auto emit = [&](std::size_t i) {
        if (remap[i] != detail::npos) return remap[i];
        remap[i] = out.add_state(std::to_string(out.num_states()), marked[i]);
        order.push_back(i);
        return remap[i];
    };
    out.set_initial(emit(0));
    for (std::size_t n = 0; n < order.size(); ++n) {
        std::size_t i = order[n];
        for (std::size_t e = 0; e < alpha.size(); ++e) {
            std::size_t t = succ[i][e];
            if (t != detail::npos && alive[t]) out.add_transition(remap[i], e, emit(t));
        }
    }
    return {std::move(out), iterations, removed};
}

inline SynthesisResult sup_con(const Generator& k, const Generator& plant) {
    return sup_con(k, plant, plant.alphabet().uncontrollable_names());
}

/// Least prefix-closed controllable superlanguage of the closure of Lm(k)
/// within the plant: the closure extended by every uncontrollable plant
/// continuation. Built as a two-zone product: inside the closure the spec
/// and plant run jointly; once an uncontrollable event leaves the closure,
/// only uncontrollable plant continuations are followed. Every state is
/// marked. Requires the closure of Lm(k) to lie inside the plant language.
inline SynthesisResult inf_con_closed(const Generator& k, const Generator& plant,
                                      const std::set<std::string>& sigma_u) {
    if (!k.alphabet().same_events(plant.alphabet()))
        throw AlphabetMismatch("supervisor synthesis requires identical event sets");
    detail::check_sigma_u(plant.alphabet(), sigma_u);

    Generator a = trim(k);
    const Alphabet& alpha = plant.alphabet();
    if (!a.any_marked())
        return {Generator::empty_language(alpha, "infcon(" + k.name() + ")"), 0, 0};
    if (auto r = language_inclusion(a, plant, LanguageKind::Generated); !r)
        throw SpecOutsidePlant("specification closure leaves the plant at word '" +
                               format_word(r.violation->word) + "'");

    std::vector<std::size_t> ae(alpha.size());
    for (std::size_t e = 0; e < alpha.size(); ++e)
        ae[e] = a.alphabet().index_of(alpha.at(e).name);
    std::vector<bool> unc(alpha.size(), false);
    for (std::size_t e = 0; e < alpha.size(); ++e)
        unc[e] = sigma_u.count(alpha.at(e).name) != 0;

    // Zone-in states are (spec, plant) pairs; zone-out states carry only the
    // plant state. npos marks the zone-out side of a key.
    Generator out("infcon(" + k.name() + ")", alpha);
    std::map<std::pair<StateId, StateId>, StateId> seen;
    std::vector<std::pair<StateId, StateId>> order;
    auto intern = [&](StateId x, StateId p) {
        auto key = std::make_pair(x, p);
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        StateId s = out.add_state(std::to_string(out.num_states()), true);
        seen.emplace(key, s);
        order.push_back(key);
        return s;
    };
    intern(a.initial(), plant.initial());
    out.set_initial(0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto [x, p] = order[i];
        bool inside = x != detail::npos;
        for (std::size_t e = 0; e < alpha.size(); ++e) {
            auto pt = plant.target(p, e);
            if (!pt) continue;
            if (inside) {
                auto at = a.target(x, ae[e]);
                if (at) {
                    out.add_transition(i, e, intern(*at, *pt));
                } else if (unc[e]) {
                    out.add_transition(i, e, intern(detail::npos, *pt));
                }
            } else if (unc[e]) {
                out.add_transition(i, e, intern(detail::npos, *pt));
            }
        }
    }
    return {std::move(out), 0, 0};
}

inline SynthesisResult inf_con_closed(const Generator& k, const Generator& plant) {
    return inf_con_closed(k, plant, plant.alphabet().uncontrollable_names());
}

} // namespace modsup

#endif
