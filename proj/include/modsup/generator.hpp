#ifndef MODSUP_GENERATOR_HPP
#define MODSUP_GENERATOR_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modsup/alphabet.hpp"
#include "modsup/errors.hpp"

namespace modsup {

using StateId = std::size_t;

/// Selects which of a generator's two languages an operation refers to.
enum class LanguageKind { Generated, Marked };

inline bool valid_state_name(const std::string& name) {
    if (name.empty()) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
    });
}

/// A deterministic generator: finite states, a total order on them, one
/// initial state, a marked subset, and a partial transition function with
/// at most one successor per (state, event). The generated language is the
/// set of words the transition function can follow from the initial state;
/// the marked language is its subset ending in marked states.
class Generator {
public:
    Generator() : Generator("g", Alphabet{}) {}

    Generator(std::string name, Alphabet alphabet)
        : name_(std::move(name)), alphabet_(std::move(alphabet)) {}

    /// The canonical representation of the empty marked language:
    /// a single unmarked initial state with no transitions.
    static Generator empty_language(const Alphabet& alphabet, const std::string& name = "empty") {
        Generator g(name, alphabet);
        g.add_state("0", false);
        g.set_initial(0);
        return g;
    }

    /// Recognizer of exactly the given finite word set (a trie with merged
    /// leaves left unshared; deterministic by construction).
    static Generator from_words(const Alphabet& alphabet, const std::set<Word>& words,
                                const std::string& name = "words") {
        Generator g(name, alphabet);
        g.add_state("0", words.count(Word{}) != 0);
        g.set_initial(0);
        for (const auto& w : words) {
            StateId at = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                std::size_t ev = alphabet.index_of(w[i]);
                auto next = g.target(at, ev);
                if (!next) {
                    StateId fresh = g.add_state(std::to_string(g.num_states()), false);
                    g.add_transition(at, ev, fresh);
                    next = fresh;
                }
                at = *next;
                if (i + 1 == w.size()) g.set_marked(at, true);
            }
        }
        return g;
    }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    const Alphabet& alphabet() const { return alphabet_; }

    std::size_t num_states() const { return state_names_.size(); }

    std::size_t num_transitions() const {
        std::size_t n = 0;
        for (const auto& m : trans_) n += m.size();
        return n;
    }

    StateId add_state(const std::string& state_name, bool marked = false) {
        if (!valid_state_name(state_name))
            throw InvariantError("invalid state name '" + state_name + "'");
        if (state_index_.count(state_name))
            throw InvariantError("duplicate state name '" + state_name + "'");
        state_index_.emplace(state_name, state_names_.size());
        state_names_.push_back(state_name);
        marked_.push_back(marked);
        trans_.emplace_back();
        return state_names_.size() - 1;
    }

    void set_initial(StateId s) {
        check_state(s);
        initial_ = s;
    }

    StateId initial() const {
        if (!initial_)
            throw InvariantError("generator '" + name_ + "' has no initial state");
        return *initial_;
    }

    bool has_initial() const { return initial_.has_value(); }

    void set_marked(StateId s, bool m) {
        check_state(s);
        marked_[s] = m;
    }

    bool marked(StateId s) const {
        check_state(s);
        return marked_[s];
    }

    bool any_marked() const {
        return std::any_of(marked_.begin(), marked_.end(), [](bool b) { return b; });
    }

    void add_transition(StateId src, std::size_t event, StateId dst) {
        check_state(src);
        check_state(dst);
        if (event >= alphabet_.size())
            throw InvariantError("event index out of range");
        auto [it, inserted] = trans_[src].emplace(event, dst);
        if (!inserted && it->second != dst)
            throw InvariantError("nondeterministic transition from state '" + state_names_[src] +
                                 "' on event '" + alphabet_.at(event).name + "'");
    }

    void add_transition(const std::string& src, const std::string& event, const std::string& dst) {
        add_transition(state_of(src), alphabet_.index_of(event), state_of(dst));
    }

    std::optional<StateId> target(StateId src, std::size_t event) const {
        check_state(src);
        auto it = trans_[src].find(event);
        if (it == trans_[src].end()) return std::nullopt;
        return it->second;
    }

    /// Outgoing transitions of a state, ordered by event index.
    const std::map<std::size_t, StateId>& transitions_from(StateId src) const {
        check_state(src);
        return trans_[src];
    }

    const std::string& state_name(StateId s) const {
        check_state(s);
        return state_names_[s];
    }

    std::optional<StateId> find_state(const std::string& state_name) const {
        auto it = state_index_.find(state_name);
        if (it == state_index_.end()) return std::nullopt;
        return it->second;
    }

    StateId state_of(const std::string& state_name) const {
        auto s = find_state(state_name);
        if (!s) throw InvariantError("unknown state '" + state_name + "'");
        return *s;
    }

    /// Replays a word from the initial state; empty result when it leaves
    /// the generated language.
    std::optional<StateId> run(const Word& w) const {
        StateId at = initial();
        for (const auto& name : w) {
            if (!alphabet_.contains(name)) return std::nullopt;
            auto next = target(at, alphabet_.index_of(name));
            if (!next) return std::nullopt;
            at = *next;
        }
        return at;
    }

    bool generates(const Word& w) const { return run(w).has_value(); }

    bool accepts(const Word& w) const {
        auto s = run(w);
        return s && marked(*s);
    }

    /// Structural validity: initial state present, indices in range.
    void validate() const {
        if (!initial_) throw InvariantError("generator '" + name_ + "' has no initial state");
        if (*initial_ >= num_states()) throw InvariantError("initial state out of range");
    }

    friend bool operator==(const Generator& a, const Generator& b) {
        return a.name_ == b.name_ && a.alphabet_ == b.alphabet_ &&
               a.state_names_ == b.state_names_ && a.initial_ == b.initial_ &&
               a.marked_ == b.marked_ && a.trans_ == b.trans_;
    }

private:
    void check_state(StateId s) const {
        if (s >= state_names_.size())
            throw InvariantError("state index out of range");
    }

    std::string name_;
    Alphabet alphabet_;
    std::vector<std::string> state_names_;
    std::map<std::string, StateId> state_index_;
    std::optional<StateId> initial_;
    std::vector<bool> marked_;
    std::vector<std::map<std::size_t, StateId>> trans_;
};

} // namespace modsup

#endif
