#ifndef MODSUP_ORACLE_HPP
#define MODSUP_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modsup/alphabet.hpp"
#include "modsup/errors.hpp"
#include "modsup/generator.hpp"

namespace modsup {

/// Word-count budget for bounded enumerations.
struct OracleLimits {
    std::size_t max_words = 1'000'000;
};

/// A language truncated at a fixed depth: every member word has length at
/// most `depth`, and membership of longer words is unknown at this view.
/// All reference checks below operate purely on these finite sets; callers
/// are responsible for choosing depths (with padding where a fixpoint or a
/// closure needs lookahead) that make the bounded answer exact.
struct BoundedLanguage {
    Alphabet alphabet;
    std::size_t depth = 0;
    std::set<Word> words;

    bool contains(const Word& w) const { return words.count(w) != 0; }

    /// Members in length-lexicographic order under the declared event order.
    std::vector<Word> sorted() const {
        std::vector<Word> out(words.begin(), words.end());
        std::sort(out.begin(), out.end(),
                  [&](const Word& a, const Word& b) { return word_less(a, b, alphabet); });
        return out;
    }
};

namespace oracle {

inline std::set<Word> prefix_set(const std::set<Word>& words) {
    std::set<Word> out;
    for (const auto& w : words)
        for (std::size_t i = 0; i <= w.size(); ++i)
            out.insert(Word(w.begin(), w.begin() + i));
    return out;
}

inline BoundedLanguage closure(const BoundedLanguage& l) {
    return {l.alphabet, l.depth, prefix_set(l.words)};
}

inline BoundedLanguage truncate(const BoundedLanguage& l, std::size_t depth) {
    BoundedLanguage out{l.alphabet, depth, {}};
    for (const auto& w : l.words)
        if (w.size() <= depth) out.words.insert(w);
    return out;
}

inline std::optional<Word> min_word(const std::set<Word>& words, const Alphabet& alphabet) {
    std::optional<Word> best;
    for (const auto& w : words)
        if (!best || word_less(w, *best, alphabet)) best = w;
    return best;
}

/// All words of the selected language up to the given depth, by walking the
/// generator. Throws DepthOverflow when the walk visits more words than the
/// budget allows.
inline BoundedLanguage enumerate(const Generator& g, std::size_t depth, LanguageKind kind,
                                 const OracleLimits& limits = {}) {
    g.validate();
    BoundedLanguage out{g.alphabet(), depth, {}};
    std::size_t visited = 0;
    Word path;
    std::function<void(StateId, std::size_t)> walk = [&](StateId s, std::size_t len) {
        if (++visited > limits.max_words)
            throw DepthOverflow("bounded enumeration exceeded the word budget of " +
                                std::to_string(limits.max_words));
        if (kind == LanguageKind::Generated || g.marked(s)) out.words.insert(path);
        if (len == depth) return;
        for (const auto& [e, t] : g.transitions_from(s)) {
            path.push_back(g.alphabet().at(e).name);
            walk(t, len + 1);
            path.pop_back();
        }
    };
    walk(g.initial(), 0);
    return out;
}

/// Image of a bounded language under the natural projection to the target
/// alphabet (a subset of its alphabet with identical flags).
inline BoundedLanguage set_project(const BoundedLanguage& l, const Alphabet& target) {
    if (!target.subset_of(l.alphabet))
        throw AlphabetMismatch("projection target is not a subset of its source alphabet");
    BoundedLanguage out{target, l.depth, {}};
    for (const auto& w : l.words) out.words.insert(project_word(w, target));
    return out;
}

namespace detail {

/// Tree walk over words of `alphabet` up to `depth`, pruned by a predicate
/// on prefixes and collected by a predicate on members.
inline std::set<Word> pruned_walk(const Alphabet& alphabet, std::size_t depth,
                                  const std::function<bool(const Word&)>& viable_prefix,
                                  const std::function<bool(const Word&)>& member,
                                  const OracleLimits& limits) {
    std::set<Word> out;
    std::size_t visited = 0;
    Word path;
    std::function<void(std::size_t)> walk = [&](std::size_t len) {
        if (++visited > limits.max_words)
            throw DepthOverflow("bounded enumeration exceeded the word budget of " +
                                std::to_string(limits.max_words));
        if (member(path)) out.insert(path);
        if (len == depth) return;
        for (std::size_t e = 0; e < alphabet.size(); ++e) {
            path.push_back(alphabet.at(e).name);
            if (viable_prefix(path)) walk(len + 1);
            path.pop_back();
        }
    };
    walk(0);
    return out;
}

} // namespace detail

/// Words over the superset alphabet, up to the given depth, whose projection
/// onto l's alphabet belongs to l.
inline BoundedLanguage set_inverse_project(const BoundedLanguage& l, const Alphabet& superset,
                                           std::size_t depth, const OracleLimits& limits = {}) {
    if (!l.alphabet.subset_of(superset))
        throw AlphabetMismatch("lift alphabet is not a superset of the source alphabet");
    auto viable = prefix_set(l.words);
    BoundedLanguage out{superset, depth, {}};
    out.words = detail::pruned_walk(
        superset, depth,
        [&](const Word& p) { return viable.count(project_word(p, l.alphabet)) != 0; },
        [&](const Word& w) { return l.contains(project_word(w, l.alphabet)); }, limits);
    return out;
}

/// Synchronous composition on word sets: words over the union alphabet whose
/// projections onto each component alphabet belong to the component sets.
inline BoundedLanguage set_shuffle(const BoundedLanguage& a, const BoundedLanguage& b,
                                   std::size_t depth, const OracleLimits& limits = {}) {
    Alphabet alpha = a.alphabet.union_with(b.alphabet);
    auto via = prefix_set(a.words);
    auto vib = prefix_set(b.words);
    BoundedLanguage out{alpha, depth, {}};
    out.words = detail::pruned_walk(
        alpha, depth,
        [&](const Word& p) {
            return via.count(project_word(p, a.alphabet)) != 0 &&
                   vib.count(project_word(p, b.alphabet)) != 0;
        },
        [&](const Word& w) {
            return a.contains(project_word(w, a.alphabet)) &&
                   b.contains(project_word(w, b.alphabet));
        },
        limits);
    return out;
}

/// First controllability violation of K against plant words L: a word s in
/// the closure of K and an uncontrollable u with su in L but su outside the
/// closure of K. Minimal in length-lexicographic order.
inline std::optional<Word> set_controllability(const BoundedLanguage& k, const BoundedLanguage& l,
                                               const std::set<std::string>& sigma_u) {
    auto cl = prefix_set(k.words);
    std::set<Word> violations;
    for (const auto& s : cl) {
        for (const auto& u : sigma_u) {
            Word su = s;
            su.push_back(u);
            if (l.contains(su) && !cl.count(su)) violations.insert(su);
        }
    }
    if (violations.empty()) return std::nullopt;
    return min_word(violations, l.alphabet);
}

/// Largest subset of K∩L whose closure admits no uncontrollable escape
/// within L: iteratively deletes every word with a prefix from which an
/// uncontrollable plant continuation leaves the closure.
inline BoundedLanguage set_supcon(const BoundedLanguage& k, const BoundedLanguage& l,
                                  const std::set<std::string>& sigma_u) {
    std::set<Word> x;
    for (const auto& w : k.words)
        if (l.contains(w)) x.insert(w);
    for (;;) {
        auto cl = prefix_set(x);
        std::set<Word> bad;
        for (const auto& s : cl)
            for (const auto& u : sigma_u) {
                Word su = s;
                su.push_back(u);
                if (l.contains(su) && !cl.count(su)) bad.insert(s);
            }
        if (bad.empty()) break;
        std::set<Word> next;
        for (const auto& w : x) {
            bool keep = true;
            for (std::size_t i = 0; i <= w.size() && keep; ++i)
                if (bad.count(Word(w.begin(), w.begin() + i))) keep = false;
            if (keep) next.insert(w);
        }
        x = std::move(next);
    }
    return {k.alphabet, k.depth, std::move(x)};
}

/// Least prefix-closed controllable superlanguage within plant words L:
/// members of L that split into a prefix from the closure of K followed by
/// uncontrollable events only.
inline BoundedLanguage set_infcon(const BoundedLanguage& k, const BoundedLanguage& l,
                                  const std::set<std::string>& sigma_u) {
    auto cl = prefix_set(k.words);
    BoundedLanguage out{l.alphabet, l.depth, {}};
    for (const auto& w : l.words) {
        bool in = false;
        for (std::size_t i = 0; i <= w.size() && !in; ++i) {
            if (!cl.count(Word(w.begin(), w.begin() + i))) continue;
            bool tail_unc = true;
            for (std::size_t j = i; j < w.size() && tail_unc; ++j)
                tail_unc = sigma_u.count(w[j]) != 0;
            in = tail_unc;
        }
        if (in) out.words.insert(w);
    }
    return out;
}

/// Decomposability of K across the two component views: its projections
/// onto (sigma1 u sigmak) and (sigma2 u sigmak) must compose back to K.
/// Returns a minimal word of the composition that K lacks.
inline std::optional<Word> set_cd_check(const BoundedLanguage& k,
                                        const std::set<std::string>& sigma1,
                                        const std::set<std::string>& sigma2,
                                        const std::set<std::string>& sigmak,
                                        const OracleLimits& limits = {}) {
    std::set<std::string> n1 = sigma1, n2 = sigma2;
    n1.insert(sigmak.begin(), sigmak.end());
    n2.insert(sigmak.begin(), sigmak.end());
    auto t1 = set_project(k, k.alphabet.restrict_to(n1));
    auto t2 = set_project(k, k.alphabet.restrict_to(n2));
    auto prod = set_shuffle(t1, t2, k.depth, limits);
    std::set<Word> extra;
    for (const auto& w : prod.words)
        if (!k.contains(project_word(w, k.alphabet)))
            extra.insert(project_word(w, k.alphabet));
    if (extra.empty()) return std::nullopt;
    return min_word(extra, k.alphabet);
}

/// Observer violation by direct evaluation of the definition on bounded
/// sets: a word s in the closure of the marked set and an abstract word t
/// extending the image of s such that no marked extension of s projects to
/// t. Returns the minimal violating (s, t).
inline std::optional<std::pair<Word, Word>> set_observer_check(const BoundedLanguage& marked,
                                                               const Alphabet& sigma0) {
    auto cl = prefix_set(marked.words);
    auto image = set_project(marked, sigma0);
    std::vector<Word> ss(cl.begin(), cl.end());
    std::sort(ss.begin(), ss.end(),
              [&](const Word& a, const Word& b) { return word_less(a, b, marked.alphabet); });
    auto ts = image.sorted();
    for (const auto& s : ss) {
        Word ps = project_word(s, sigma0);
        for (const auto& t : ts) {
            if (!is_prefix(ps, t)) continue;
            bool matched = false;
            for (const auto& w : marked.words) {
                if (!is_prefix(s, w)) continue;
                if (project_word(w, sigma0) == t) {
                    matched = true;
                    break;
                }
            }
            if (!matched) return std::make_pair(s, t);
        }
    }
    return std::nullopt;
}

/// Nonconflict violation on bounded sets: a minimal word in the composition
/// of the closures that is not a prefix of any composed marked word.
inline std::optional<Word> set_nonconflict(const BoundedLanguage& a, const BoundedLanguage& b,
                                           const OracleLimits& limits = {}) {
    std::size_t depth = std::max(a.depth, b.depth);
    auto joint = set_shuffle(a, b, depth, limits);
    auto lhs = prefix_set(joint.words);
    auto rhs = set_shuffle(closure(a), closure(b), depth, limits);
    std::set<Word> extra;
    for (const auto& w : rhs.words)
        if (!lhs.count(w)) extra.insert(w);
    if (extra.empty()) return std::nullopt;
    return min_word(extra, rhs.alphabet);
}

/// Union of every subset of K whose per-side projections are controllable
/// against the per-side plant word sets. Exact for the finite sets given;
/// exponential in |K|, so guarded by the word budget.
inline BoundedLanguage set_sup_rcc(const BoundedLanguage& k, const std::set<std::string>& names1k,
                                   const std::set<std::string>& names2k,
                                   const BoundedLanguage& plant1k, const BoundedLanguage& plant2k,
                                   const OracleLimits& limits = {}) {
    std::vector<Word> members(k.words.begin(), k.words.end());
    if (members.size() > 20 || (std::size_t(1) << members.size()) > limits.max_words)
        throw DepthOverflow("subset search over " + std::to_string(members.size()) +
                            " words exceeds the budget");
    Alphabet a1 = k.alphabet.restrict_to(names1k);
    Alphabet a2 = k.alphabet.restrict_to(names2k);
    std::set<std::string> u1 = a1.uncontrollable_names();
    std::set<std::string> u2 = a2.uncontrollable_names();

    BoundedLanguage out{k.alphabet, k.depth, {}};
    for (std::size_t mask = 0; mask < (std::size_t(1) << members.size()); ++mask) {
        BoundedLanguage x{k.alphabet, k.depth, {}};
        for (std::size_t i = 0; i < members.size(); ++i)
            if (mask & (std::size_t(1) << i)) x.words.insert(members[i]);
        auto x1 = set_project(x, a1);
        auto x2 = set_project(x, a2);
        if (set_controllability(x1, plant1k, u1)) continue;
        if (set_controllability(x2, plant2k, u2)) continue;
        out.words.insert(x.words.begin(), x.words.end());
    }
    return out;
}

} // namespace oracle
} // namespace modsup

#endif
