#ifndef MODSUP_OPS_HPP
#define MODSUP_OPS_HPP

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modsup/alphabet.hpp"
#include "modsup/check.hpp"
#include "modsup/errors.hpp"
#include "modsup/generator.hpp"

namespace modsup {

namespace detail {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Index of each union-alphabet event in a component alphabet, npos if absent.
inline std::vector<std::size_t> event_map(const Alphabet& whole, const Alphabet& part) {
    std::vector<std::size_t> out(whole.size(), npos);
    for (std::size_t e = 0; e < whole.size(); ++e)
        if (part.contains(whole.at(e).name))
            out[e] = part.index_of(whole.at(e).name);
    return out;
}
} // namespace detail

/// Synchronous product. Shared events move both components, private events
/// move their owner alone. States are reachable pairs, renumbered in
/// discovery order; a pair is marked when both components are.
inline Generator compose(const Generator& a, const Generator& b) {
    a.validate();
    b.validate();
    Alphabet alpha = a.alphabet().union_with(b.alphabet());
    Generator out("compose(" + a.name() + "," + b.name() + ")", alpha);
    auto ia = detail::event_map(alpha, a.alphabet());
    auto ib = detail::event_map(alpha, b.alphabet());

    std::map<std::pair<StateId, StateId>, StateId> seen;
    std::vector<std::pair<StateId, StateId>> order;
    auto intern = [&](StateId x, StateId y) {
        auto key = std::make_pair(x, y);
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        StateId s = out.add_state(std::to_string(out.num_states()), a.marked(x) && b.marked(y));
        seen.emplace(key, s);
        order.push_back(key);
        return s;
    };
    out.set_initial(intern(a.initial(), b.initial()));
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto [x, y] = order[i];
        for (std::size_t e = 0; e < alpha.size(); ++e) {
            StateId nx = x, ny = y;
            if (ia[e] != detail::npos) {
                auto t = a.target(x, ia[e]);
                if (!t) continue;
                nx = *t;
            }
            if (ib[e] != detail::npos) {
                auto t = b.target(y, ib[e]);
                if (!t) continue;
                ny = *t;
            }
            out.add_transition(i, e, intern(nx, ny));
        }
    }
    return out;
}

/// Source/target pair of a natural projection. The target must be a
/// subset of the source with identical controllability flags.
struct ProjectionSpec {
    Alphabet source;
    Alphabet target;

    void validate() const {
        if (!target.subset_of(source))
            throw AlphabetMismatch("projection target is not a subset of its source alphabet");
    }
};

/// Natural projection by subset construction. Events outside the target are
/// taken silently; subset states are canonical (sorted member lists) and
/// renumbered in discovery order. A subset is marked when it contains a
/// marked member, so the result recognizes exactly the projected languages.
inline Generator project(const Generator& g, const Alphabet& target) {
    g.validate();
    ProjectionSpec{g.alphabet(), target}.validate();

    std::vector<bool> silent(g.alphabet().size(), false);
    for (std::size_t e = 0; e < g.alphabet().size(); ++e)
        silent[e] = !target.contains(g.alphabet().at(e).name);

    auto close = [&](std::set<StateId> xs) {
        std::deque<StateId> todo(xs.begin(), xs.end());
        while (!todo.empty()) {
            StateId s = todo.front();
            todo.pop_front();
            for (const auto& [e, t] : g.transitions_from(s))
                if (silent[e] && xs.insert(t).second) todo.push_back(t);
        }
        return xs;
    };

    Generator out("project(" + g.name() + ")", target);
    std::map<std::set<StateId>, StateId> seen;
    std::vector<std::set<StateId>> order;
    auto intern = [&](std::set<StateId> xs) {
        auto it = seen.find(xs);
        if (it != seen.end()) return it->second;
        bool m = false;
        for (StateId s : xs) m = m || g.marked(s);
        StateId id = out.add_state(std::to_string(out.num_states()), m);
        seen.emplace(xs, id);
        order.push_back(std::move(xs));
        return id;
    };
    out.set_initial(intern(close({g.initial()})));
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t te = 0; te < target.size(); ++te) {
            std::size_t ge = g.alphabet().index_of(target.at(te).name);
            std::set<StateId> next;
            for (StateId s : order[i])
                if (auto t = g.target(s, ge)) next.insert(*t);
            if (next.empty()) continue;
            out.add_transition(i, te, intern(close(std::move(next))));
        }
    }
    return out;
}

inline Generator project(const Generator& g, const ProjectionSpec& spec) {
    if (!(spec.source == g.alphabet()))
        throw AlphabetMismatch("projection source does not match the generator alphabet");
    return project(g, spec.target);
}

/// Inverse projection realized on the generator: self-loops on every state
/// for each event of the superset alphabet absent from g's alphabet.
inline Generator inverse_lift(const Generator& g, const Alphabet& superset) {
    g.validate();
    if (!g.alphabet().subset_of(superset))
        throw AlphabetMismatch("lift alphabet is not a superset of the generator alphabet");
    Generator out("lift(" + g.name() + ")", superset);
    for (StateId s = 0; s < g.num_states(); ++s)
        out.add_state(g.state_name(s), g.marked(s));
    out.set_initial(g.initial());
    auto im = detail::event_map(superset, g.alphabet());
    for (StateId s = 0; s < g.num_states(); ++s)
        for (std::size_t e = 0; e < superset.size(); ++e) {
            if (im[e] == detail::npos) {
                out.add_transition(s, e, s);
            } else if (auto t = g.target(s, im[e])) {
                out.add_transition(s, e, *t);
            }
        }
    return out;
}

inline std::vector<bool> accessible_states(const Generator& g) {
    std::vector<bool> seen(g.num_states(), false);
    std::deque<StateId> todo{g.initial()};
    seen[g.initial()] = true;
    while (!todo.empty()) {
        StateId s = todo.front();
        todo.pop_front();
        for (const auto& [e, t] : g.transitions_from(s))
            if (!seen[t]) {
                seen[t] = true;
                todo.push_back(t);
            }
    }
    return seen;
}

inline std::vector<bool> coaccessible_states(const Generator& g) {
    std::vector<std::vector<StateId>> rev(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s)
        for (const auto& [e, t] : g.transitions_from(s)) rev[t].push_back(s);
    std::vector<bool> seen(g.num_states(), false);
    std::deque<StateId> todo;
    for (StateId s = 0; s < g.num_states(); ++s)
        if (g.marked(s)) {
            seen[s] = true;
            todo.push_back(s);
        }
    while (!todo.empty()) {
        StateId s = todo.front();
        todo.pop_front();
        for (StateId p : rev[s])
            if (!seen[p]) {
                seen[p] = true;
                todo.push_back(p);
            }
    }
    return seen;
}

/// Restriction to states both accessible and coaccessible. State names are
/// preserved. When the marked language is empty the canonical one-state
/// unmarked generator over the same alphabet is returned.
inline Generator trim(const Generator& g) {
    g.validate();
    auto acc = accessible_states(g);
    auto coacc = coaccessible_states(g);
    std::vector<bool> keep(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s) keep[s] = acc[s] && coacc[s];
    if (!keep[g.initial()])
        return Generator::empty_language(g.alphabet(), g.name());

    Generator out(g.name(), g.alphabet());
    std::vector<StateId> remap(g.num_states(), detail::npos);
    for (StateId s = 0; s < g.num_states(); ++s)
        if (keep[s]) remap[s] = out.add_state(g.state_name(s), g.marked(s));
    out.set_initial(remap[g.initial()]);
    for (StateId s = 0; s < g.num_states(); ++s) {
        if (!keep[s]) continue;
        for (const auto& [e, t] : g.transitions_from(s))
            if (keep[t]) out.add_transition(remap[s], e, remap[t]);
    }
    return out;
}

/// True when every accessible state is coaccessible, i.e. the generated
/// language equals the closure of the marked language.
inline bool is_nonblocking(const Generator& g) {
    g.validate();
    auto acc = accessible_states(g);
    auto coacc = coaccessible_states(g);
    for (StateId s = 0; s < g.num_states(); ++s)
        if (acc[s] && !coacc[s]) return false;
    return true;
}

/// Recognizer of the prefix closure of the marked language: trim, then mark
/// every remaining state.
inline Generator prefix_closure(const Generator& g) {
    Generator out = trim(g);
    if (!out.any_marked()) return out;
    for (StateId s = 0; s < out.num_states(); ++s) out.set_marked(s, true);
    return out;
}

namespace detail {

struct SearchNode {
    std::size_t parent = npos;
    std::size_t event = npos; // index in the left generator's alphabet
};

inline Word rebuild_word(const std::vector<SearchNode>& nodes, std::size_t at,
                         const Alphabet& alphabet) {
    Word w;
    while (nodes[at].parent != npos) {
        w.push_back(alphabet.at(nodes[at].event).name);
        at = nodes[at].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

} // namespace detail

/// Like is_nonblocking, but reports the shortest reachable word that cannot
/// be completed to a marked word.
inline CheckResult nonblocking_check(const Generator& g) {
    g.validate();
    if (!g.has_initial()) return CheckResult::pass();
    auto coacc = coaccessible_states(g);
    std::vector<detail::SearchNode> nodes;
    std::vector<StateId> order;
    std::vector<bool> seen(g.num_states(), false);
    auto push = [&](StateId s, std::size_t parent, std::size_t event) {
        if (seen[s]) return;
        seen[s] = true;
        nodes.push_back({parent, event});
        order.push_back(s);
    };
    push(g.initial(), detail::npos, detail::npos);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (!coacc[order[i]])
            return CheckResult::fail({detail::rebuild_word(nodes, i, g.alphabet()),
                                      ViolationKind::Blocking, std::nullopt,
                                      "no marked completion from '" + g.state_name(order[i]) + "'"});
        for (const auto& [e, t] : g.transitions_from(order[i])) push(t, i, e);
    }
    return CheckResult::pass();
}

/// Decides language inclusion of a in b for the selected language kind.
/// Both alphabets must contain the same events. The check runs a product
/// exploration of a against b completed with an implicit sink; the returned
/// counterexample is the shortest witness, ties broken by a's declared
/// event order, and replays on a.
inline CheckResult language_inclusion(const Generator& a, const Generator& b, LanguageKind kind) {
    a.validate();
    b.validate();
    if (!a.alphabet().same_events(b.alphabet()))
        throw AlphabetMismatch("language inclusion requires identical event sets");

    constexpr StateId SINK = detail::npos;
    std::vector<std::size_t> b_event(a.alphabet().size());
    for (std::size_t e = 0; e < a.alphabet().size(); ++e)
        b_event[e] = b.alphabet().index_of(a.alphabet().at(e).name);

    std::map<std::pair<StateId, StateId>, std::size_t> seen;
    std::vector<detail::SearchNode> nodes;
    std::vector<std::pair<StateId, StateId>> config;
    auto push = [&](StateId x, StateId y, std::size_t parent, std::size_t event) {
        auto key = std::make_pair(x, y);
        if (seen.count(key)) return;
        seen.emplace(key, nodes.size());
        nodes.push_back({parent, event});
        config.push_back(key);
    };
    push(a.initial(), b.initial(), detail::npos, detail::npos);

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto [x, y] = config[i];
        if (kind == LanguageKind::Marked && a.marked(x) && (y == SINK || !b.marked(y))) {
            return CheckResult::fail({detail::rebuild_word(nodes, i, a.alphabet()),
                                      ViolationKind::InclusionViolation,
                                      std::nullopt,
                                      "word marked by '" + a.name() + "' but not by '" + b.name() + "'"});
        }
        for (const auto& [e, nx] : a.transitions_from(x)) {
            std::optional<StateId> ny;
            if (y != SINK) ny = b.target(y, b_event[e]);
            if (kind == LanguageKind::Generated && !ny) {
                Word w = detail::rebuild_word(nodes, i, a.alphabet());
                w.push_back(a.alphabet().at(e).name);
                return CheckResult::fail({std::move(w),
                                          ViolationKind::InclusionViolation,
                                          std::nullopt,
                                          "word generated by '" + a.name() + "' but not by '" + b.name() + "'"});
            }
            push(nx, ny ? *ny : SINK, i, e);
        }
    }
    return CheckResult::pass();
}

/// Language equality as two inclusions; the counterexample names the
/// direction that fails.
inline CheckResult language_equal(const Generator& a, const Generator& b, LanguageKind kind) {
    if (auto r = language_inclusion(a, b, kind); !r) return r;
    return language_inclusion(b, a, kind);
}

/// Synchronous nonconflictingness: the closure of the composed marked
/// languages equals the composition of their closures. Decided on the
/// product of the trimmed generators; the counterexample is a shortest
/// joint word from which no joint marked completion exists.
inline CheckResult is_nonconflicting(const Generator& a, const Generator& b) {
    Generator ta = trim(a);
    Generator tb = trim(b);
    if (!ta.any_marked() || !tb.any_marked())
        return CheckResult::pass(); // either side contributes the empty language
    Generator p = compose(ta, tb);
    auto coacc = coaccessible_states(p);

    std::vector<detail::SearchNode> nodes;
    std::vector<StateId> states;
    std::vector<bool> seen(p.num_states(), false);
    nodes.push_back({detail::npos, detail::npos});
    states.push_back(p.initial());
    seen[p.initial()] = true;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        StateId s = states[i];
        if (!coacc[s])
            return CheckResult::fail({detail::rebuild_word(nodes, i, p.alphabet()),
                                      ViolationKind::NonconflictViolation,
                                      std::nullopt,
                                      "joint word admits no joint marked completion"});
        for (const auto& [e, t] : p.transitions_from(s)) {
            if (seen[t]) continue;
            seen[t] = true;
            nodes.push_back({i, e});
            states.push_back(t);
        }
    }
    return CheckResult::pass();
}

/// Language-preserving state minimization (partition refinement on the
/// trimmed generator). Used where a canonical smallest recognizer is wanted.
inline Generator minimize(const Generator& g) {
    Generator t = trim(g);
    if (!t.any_marked()) return t;

    std::vector<std::size_t> cls(t.num_states());
    for (StateId s = 0; s < t.num_states(); ++s) cls[s] = t.marked(s) ? 1 : 0;
    std::size_t count = std::set<std::size_t>(cls.begin(), cls.end()).size();
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> sig_class;
        std::vector<std::size_t> next(t.num_states());
        for (StateId s = 0; s < t.num_states(); ++s) {
            std::vector<std::size_t> sig{cls[s]};
            for (std::size_t e = 0; e < t.alphabet().size(); ++e) {
                auto tgt = t.target(s, e);
                sig.push_back(tgt ? cls[*tgt] + 1 : 0);
            }
            auto [it, inserted] = sig_class.emplace(std::move(sig), sig_class.size());
            next[s] = it->second;
        }
        if (sig_class.size() == count) {
            cls = std::move(next);
            break;
        }
        count = sig_class.size();
        cls = std::move(next);
    }

    // Quotient, renumbered in discovery order from the initial class.
    std::map<std::size_t, StateId> out_id;
    std::vector<StateId> rep; // representative state per emitted class
    Generator out(g.name(), t.alphabet());
    auto intern = [&](StateId s) {
        auto it = out_id.find(cls[s]);
        if (it != out_id.end()) return it->second;
        StateId id = out.add_state(std::to_string(out.num_states()), t.marked(s));
        out_id.emplace(cls[s], id);
        rep.push_back(s);
        return id;
    };
    out.set_initial(intern(t.initial()));
    for (std::size_t i = 0; i < rep.size(); ++i)
        for (const auto& [e, tgt] : t.transitions_from(rep[i]))
            out.add_transition(i, e, intern(tgt));
    return out;
}

} // namespace modsup

#endif
