#ifndef MODSUP_TESTS_TEST_UTIL_HPP
#define MODSUP_TESTS_TEST_UTIL_HPP

#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

#include "modsup/modsup.hpp"

namespace testutil {

using namespace modsup;

// "a a1 d" -> {"a","a1","d"}
inline Word w(const std::string& spaced) {
    Word out;
    std::istringstream in(spaced);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::set<Word> ws(std::initializer_list<std::string> items) {
    std::set<Word> out;
    for (const auto& s : items) out.insert(w(s));
    return out;
}

inline std::set<Word> marked_upto(const Generator& g, std::size_t depth) {
    return oracle::enumerate(g, depth, LanguageKind::Marked).words;
}

inline std::set<Word> generated_upto(const Generator& g, std::size_t depth) {
    return oracle::enumerate(g, depth, LanguageKind::Generated).words;
}

// Two linear plants sharing events a and d: the first runs a a1 b d, the
// second a a2 c d; only b and c are controllable. The specification marks
// the two interleavings that stop right after the private second events.
inline Alphabet ex1_alpha1() {
    Alphabet out;
    out.add({"a", false});
    out.add({"a1", false});
    out.add({"b", true});
    out.add({"d", false});
    return out;
}

inline Alphabet ex1_alpha2() {
    Alphabet out;
    out.add({"a", false});
    out.add({"a2", false});
    out.add({"c", true});
    out.add({"d", false});
    return out;
}

inline Alphabet ex1_alpha() { return ex1_alpha1().union_with(ex1_alpha2()); }

inline Generator chain(const std::string& name, const Alphabet& alpha, const Word& word) {
    Generator g(name, alpha);
    g.add_state("s0");
    g.set_initial(0);
    for (std::size_t i = 0; i < word.size(); ++i) {
        g.add_state("s" + std::to_string(i + 1), i + 1 == word.size());
        g.add_transition(i, alpha.index_of(word[i]), i + 1);
    }
    return g;
}

inline Generator ex1_g1() { return chain("g1", ex1_alpha1(), w("a a1 b d")); }

inline Generator ex1_g2() { return chain("g2", ex1_alpha2(), w("a a2 c d")); }

inline Generator ex1_k() {
    return Generator::from_words(ex1_alpha(), ws({"a a1 a2", "a a2 a1"}), "k");
}

inline std::set<std::string> ex1_sigma_k() { return {"a", "d"}; }

inline ProblemInstance ex1_instance() {
    return make_problem_instance(ex1_g1(), ex1_g2(), ex1_k(), ex1_sigma_k());
}

// Padded horizon making bounded fixpoint answers exact at base depth.
inline std::size_t padded(std::size_t depth, const Generator& a, const Generator& b) {
    return depth + a.num_states() * b.num_states();
}

} // namespace testutil

#endif
