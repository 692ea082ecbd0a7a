#ifndef MODSUP_RANDOM_HPP
#define MODSUP_RANDOM_HPP

#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modsup/alphabet.hpp"
#include "modsup/generator.hpp"
#include "modsup/ops.hpp"

namespace modsup {

/// Seed for randomized runs: MODSUP_SEED when set to a number, the fallback
/// otherwise.
inline std::uint64_t seed_from_env(std::uint64_t fallback) {
    if (const char* s = std::getenv("MODSUP_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0') return static_cast<std::uint64_t>(v);
    }
    return fallback;
}

/// Deterministic sampler for desk-scale alphabets, generators, and
/// two-component problem instances. All draws go through one engine, so a
/// fixed seed reproduces the whole campaign.
class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    /// Uniform index in [0, n); n must be positive.
    std::size_t pick(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
    }

    bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

    static std::string event_name(std::size_t i) {
        if (i < 26) return std::string(1, static_cast<char>('a' + i));
        return "e" + std::to_string(i);
    }

    /// Alphabet of n events named a, b, c, ... with each event uncontrollable
    /// with probability unc_prob.
    Alphabet alphabet(std::size_t n, double unc_prob = 0.4) {
        Alphabet a;
        for (std::size_t i = 0; i < n; ++i) a.add({event_name(i), !chance(unc_prob)});
        return a;
    }

    /// Random deterministic generator: up to max_states states, each
    /// (state, event) slot filled with probability density, each state marked
    /// with probability marked_prob. Not necessarily trim.
    Generator generator(const std::string& name, const Alphabet& alpha, std::size_t max_states,
                        double density = 0.5, double marked_prob = 0.4) {
        Generator g(name, alpha);
        std::size_t n = 1 + pick(max_states);
        for (std::size_t q = 0; q < n; ++q) g.add_state("q" + std::to_string(q), chance(marked_prob));
        g.set_initial(0);
        for (StateId q = 0; q < n; ++q)
            for (std::size_t e = 0; e < alpha.size(); ++e)
                if (chance(density)) g.add_transition(q, e, pick(n));
        return g;
    }

    /// Random sub-automaton: drops each transition with probability
    /// 1 - keep_trans and each marking with probability 1 - keep_mark, then
    /// trims. May come back with an empty marked language; callers resample.
    Generator subautomaton(const Generator& g, double keep_trans = 0.8, double keep_mark = 0.7) {
        Generator out(g.name() + "_sub", g.alphabet());
        for (StateId q = 0; q < g.num_states(); ++q)
            out.add_state(g.state_name(q), g.marked(q) && chance(keep_mark));
        if (g.has_initial()) out.set_initial(g.initial());
        for (StateId q = 0; q < g.num_states(); ++q)
            for (const auto& [e, t] : g.transitions_from(q))
                if (chance(keep_trans)) out.add_transition(q, e, t);
        return trim(out);
    }

    /// Two plants over overlapping alphabets drawn from one global alphabet,
    /// so shared events agree on controllability. Both sides get at least one
    /// private event and at least one shared event exists.
    std::pair<Generator, Generator> plant_pair(std::size_t n_events, std::size_t max_states,
                                               double density = 0.5) {
        Alphabet whole = alphabet(n_events < 3 ? 3 : n_events);
        std::set<std::string> names1, names2;
        for (std::size_t i = 0; i < whole.size(); ++i) {
            const std::string& name = whole.at(i).name;
            if (i == 0) {
                names1.insert(name);
            } else if (i == 1) {
                names2.insert(name);
            } else if (i == 2) {
                names1.insert(name);
                names2.insert(name);
            } else {
                switch (pick(3)) {
                case 0: names1.insert(name); break;
                case 1: names2.insert(name); break;
                default: names1.insert(name); names2.insert(name); break;
                }
            }
        }
        Generator g1 = generator("g1", whole.restrict_to(names1), max_states, density);
        Generator g2 = generator("g2", whole.restrict_to(names2), max_states, density);
        return {std::move(g1), std::move(g2)};
    }

    /// Specification candidate inside the composed plant: a trimmed random
    /// sub-automaton of g1 composed with g2. Its closure sits inside the
    /// composed closed behavior by construction; the marked language may
    /// still be empty, in which case callers resample.
    Generator spec_inside(const Generator& g1, const Generator& g2, double keep_trans = 0.8,
                          double keep_mark = 0.7) {
        Generator product = compose(g1, g2);
        Generator spec = subautomaton(product, keep_trans, keep_mark);
        spec.set_name("spec");
        return spec;
    }

    /// Random word over alpha with length up to max_len.
    Word word(const Alphabet& alpha, std::size_t max_len) {
        Word w;
        std::size_t len = pick(max_len + 1);
        for (std::size_t i = 0; i < len && !alpha.empty(); ++i) w.push_back(alpha.at(pick(alpha.size())).name);
        return w;
    }

  private:
    std::mt19937_64 rng_;
};

} // namespace modsup

#endif
