#ifndef MODSUP_ALPHABET_HPP
#define MODSUP_ALPHABET_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "modsup/errors.hpp"

namespace modsup {

/// A named event together with its controllability status.
struct Event {
    std::string name;
    bool controllable = false;

    friend bool operator==(const Event& a, const Event& b) {
        return a.name == b.name && a.controllable == b.controllable;
    }
};

inline bool valid_event_name(const std::string& name) {
    if (name.empty()) return false;
    auto head = name.front();
    if (!(std::isalpha(static_cast<unsigned char>(head)) || head == '_')) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

/// An ordered set of events. Declared order is preserved; it fixes the
/// tie-break used by length-lexicographic word comparisons and by
/// counterexample search. Event names are unique within an alphabet.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<Event> events) {
        for (auto& e : events) add(e);
    }

    void add(const Event& e) {
        if (!valid_event_name(e.name))
            throw InvariantError("invalid event name '" + e.name + "'");
        auto it = index_.find(e.name);
        if (it != index_.end()) {
            if (events_[it->second].controllable != e.controllable)
                throw ControllabilityMismatch(
                    "event '" + e.name + "' declared both controllable and uncontrollable");
            return;
        }
        index_.emplace(e.name, events_.size());
        events_.push_back(e);
    }

    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }
    const Event& at(std::size_t i) const { return events_.at(i); }
    const std::vector<Event>& events() const { return events_; }

    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    std::size_t index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            throw InvariantError("event '" + name + "' not in alphabet");
        return it->second;
    }

    bool is_controllable(const std::string& name) const {
        return events_[index_of(name)].controllable;
    }

    std::set<std::string> names() const {
        std::set<std::string> out;
        for (const auto& e : events_) out.insert(e.name);
        return out;
    }

    std::set<std::string> controllable_names() const {
        std::set<std::string> out;
        for (const auto& e : events_)
            if (e.controllable) out.insert(e.name);
        return out;
    }

    std::set<std::string> uncontrollable_names() const {
        std::set<std::string> out;
        for (const auto& e : events_)
            if (!e.controllable) out.insert(e.name);
        return out;
    }

    /// Union preserving this alphabet's order, then the other's new events.
    /// Conflicting flags on a shared event are a hard error.
    Alphabet union_with(const Alphabet& other) const {
        Alphabet out = *this;
        for (const auto& e : other.events_) out.add(e);
        return out;
    }

    /// Events of this alphabet whose names also occur in the other.
    Alphabet intersect(const Alphabet& other) const {
        Alphabet out;
        for (const auto& e : events_)
            if (other.contains(e.name)) {
                if (other.is_controllable(e.name) != e.controllable)
                    throw ControllabilityMismatch(
                        "event '" + e.name + "' declared both controllable and uncontrollable");
                out.add(e);
            }
        return out;
    }

    /// Subset of this alphabet restricted to the given names, declared order kept.
    /// Unknown names are a hard error.
    Alphabet restrict_to(const std::set<std::string>& names) const {
        for (const auto& n : names)
            if (!contains(n))
                throw InvariantError("event '" + n + "' not in alphabet");
        Alphabet out;
        for (const auto& e : events_)
            if (names.count(e.name)) out.add(e);
        return out;
    }

    /// Set-level equality: same names with the same flags, order ignored.
    bool same_events(const Alphabet& other) const {
        if (size() != other.size()) return false;
        for (const auto& e : events_) {
            if (!other.contains(e.name)) return false;
            if (other.is_controllable(e.name) != e.controllable) return false;
        }
        return true;
    }

    /// True when every event of this alphabet occurs in the other with the same flag.
    bool subset_of(const Alphabet& other) const {
        for (const auto& e : events_) {
            if (!other.contains(e.name)) return false;
            if (other.is_controllable(e.name) != e.controllable)
                throw ControllabilityMismatch(
                    "event '" + e.name + "' declared both controllable and uncontrollable");
        }
        return true;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.events_ == b.events_;
    }

private:
    std::vector<Event> events_;
    std::map<std::string, std::size_t> index_;
};

/// A word is a finite event-name sequence.
using Word = std::vector<std::string>;

inline std::string format_word(const Word& w) {
    if (w.empty()) return "<empty>";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += w[i];
    }
    return out;
}

/// Length-lexicographic order, ties broken by declared event order.
inline bool word_less(const Word& a, const Word& b, const Alphabet& alphabet) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i])
            return alphabet.index_of(a[i]) < alphabet.index_of(b[i]);
    }
    return false;
}

inline bool is_prefix(const Word& p, const Word& w) {
    if (p.size() > w.size()) return false;
    return std::equal(p.begin(), p.end(), w.begin());
}

/// Restriction of a word to the events of the target alphabet.
inline Word project_word(const Word& w, const Alphabet& target) {
    Word out;
    for (const auto& e : w)
        if (target.contains(e)) out.push_back(e);
    return out;
}

} // namespace modsup

#endif
