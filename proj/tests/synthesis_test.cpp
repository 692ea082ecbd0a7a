#include <gtest/gtest.h>

#include "test_util.hpp"

namespace {

using namespace modsup;
using namespace testutil;

Alphabet shared_alpha() {
    Alphabet out;
    out.add({"a", false});
    out.add({"d", false});
    return out;
}

Generator coordinator_chain() { return chain("gk", shared_alpha(), w("a d")); }

// Finite random instance: an acyclic plant built from explicit words and a
// specification drawn from its prefixes. Depth 6 covers every word and
// every one-event extension, so bounded set answers are exact truths.
struct FiniteInstance {
    Generator plant;
    Generator spec;
    std::set<std::string> sigma_u;
    BoundedLanguage plant_words;
    BoundedLanguage spec_words;
};

FiniteInstance finite_instance(Sampler& s) {
    Alphabet alpha = s.alphabet(3);
    std::set<Word> plant_words;
    std::size_t count = 3 + s.pick(5);
    for (std::size_t i = 0; i < count; ++i) plant_words.insert(s.word(alpha, 5));
    Generator plant = Generator::from_words(alpha, plant_words, "plant");

    std::set<Word> spec_words;
    for (const auto& p : oracle::prefix_set(plant_words))
        if (s.chance(0.35)) spec_words.insert(p);
    Generator spec = Generator::from_words(alpha, spec_words, "spec");

    FiniteInstance out{std::move(plant), std::move(spec), alpha.uncontrollable_names(),
                       {}, {}};
    out.plant_words = oracle::enumerate(out.plant, 6, LanguageKind::Generated);
    out.spec_words = oracle::enumerate(out.spec, 6, LanguageKind::Marked);
    return out;
}

TEST(Controllable, SharedViewEscapesOnUncontrollableFinish) {
    Alphabet shared = shared_alpha();
    Generator pk = project(ex1_k(), shared);
    CheckResult r = is_controllable(pk, coordinator_chain(), {"a", "d"});
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.violation->word, w("a d"));
    EXPECT_EQ(r.violation->reason, ViolationKind::ControllabilityViolation);
}

TEST(Controllable, SideViewPasses) {
    Generator side_spec = project(ex1_k(), ex1_alpha1());
    Generator side_plant = compose(ex1_g1(), coordinator_chain());
    EXPECT_TRUE(is_controllable(side_spec, side_plant, {"a", "a1", "d"}).ok());
}

TEST(Controllable, DefaultsToPlantUncontrollableEvents) {
    Generator side_spec = project(ex1_k(), ex1_alpha1());
    Generator side_plant = compose(ex1_g1(), coordinator_chain());
    EXPECT_TRUE(is_controllable(side_spec, side_plant).ok());
    EXPECT_FALSE(is_controllable(project(ex1_k(), shared_alpha()), coordinator_chain()).ok());
}

TEST(Controllable, EmptySpecificationPasses) {
    Generator empty = Generator::empty_language(ex1_alpha1());
    EXPECT_TRUE(is_controllable(empty, ex1_g1(), {"a"}).ok());
}

TEST(Controllable, RejectsForeignArguments) {
    EXPECT_THROW(is_controllable(ex1_g1(), ex1_g2(), {"a"}), AlphabetMismatch);
    EXPECT_THROW(is_controllable(ex1_g1(), ex1_g1(), {"zz"}), InvariantError);
}

TEST(Controllable, AgreesWithSetOracleOnFiniteInstances) {
    Sampler s(seed_from_env(201));
    for (int round = 0; round < 25; ++round) {
        FiniteInstance fi = finite_instance(s);
        auto set_cex = oracle::set_controllability(fi.spec_words, fi.plant_words, fi.sigma_u);
        CheckResult truth = is_controllable(fi.spec, fi.plant, fi.sigma_u);
        EXPECT_EQ(truth.ok(), !set_cex.has_value()) << "round " << round;
        if (!truth.ok() && set_cex) {
            EXPECT_EQ(truth.violation->word, *set_cex) << "round " << round;
        }
    }
}

TEST(SupCon, CoordinatorViewIsEmpty) {
    Generator pk = project(ex1_k(), shared_alpha());
    SynthesisResult r = sup_con(pk, coordinator_chain(), {"a", "d"});
    EXPECT_FALSE(r.supervisor.any_marked());
    EXPECT_EQ(r.supervisor.num_states(), 1u);
    EXPECT_GE(r.iterations, 1u);
    EXPECT_GE(r.removed_states, 1u);
}

TEST(SupCon, ControllableSpecificationIsFixed) {
    Generator side_spec = project(ex1_k(), ex1_alpha1());
    Generator side_plant = compose(ex1_g1(), coordinator_chain());
    SynthesisResult r = sup_con(side_spec, side_plant, {"a", "a1", "d"});
    EXPECT_EQ(marked_upto(r.supervisor, 3), ws({"a a1"}));
    EXPECT_EQ(r.removed_states, 0u);
}

TEST(SupCon, WholeSpecificationIsControllable) {
    Generator plant = compose(ex1_g1(), ex1_g2());
    SynthesisResult r = sup_con(ex1_k(), plant, {"a", "a1", "a2", "d"});
    EXPECT_EQ(marked_upto(r.supervisor, 4), ws({"a a1 a2", "a a2 a1"}));
}

TEST(SupCon, RemovesOnlyUncontrollablePart) {
    Alphabet alpha;
    alpha.add({"a", true});
    alpha.add({"b", true});
    alpha.add({"u", false});
    Generator plant = Generator::from_words(alpha, ws({"a", "b u"}), "plant");
    Generator spec = Generator::from_words(alpha, ws({"a", "b"}), "spec");
    SynthesisResult r = sup_con(spec, plant, {"u"});
    EXPECT_EQ(marked_upto(r.supervisor, 2), ws({"a"}));
    EXPECT_GE(r.removed_states, 1u);
}

TEST(SupCon, EmptySpecificationGivesEmptySupervisor) {
    SynthesisResult r = sup_con(Generator::empty_language(ex1_alpha1()), ex1_g1(), {"a"});
    EXPECT_FALSE(r.supervisor.any_marked());
    EXPECT_EQ(r.iterations, 0u);
}

TEST(SupCon, OutputIsControllableTrimAndInsideBothLanguages) {
    Sampler s(seed_from_env(202));
    int used = 0;
    for (int round = 0; round < 60 && used < 25; ++round) {
        Alphabet alpha = s.alphabet(3);
        Generator plant = s.generator("plant", alpha, 4, 0.5, 0.5);
        Generator spec = s.subautomaton(plant);
        if (!spec.any_marked()) continue;
        ++used;
        auto unc = alpha.uncontrollable_names();
        SynthesisResult r = sup_con(spec, plant, unc);
        if (!r.supervisor.any_marked()) continue;
        EXPECT_TRUE(is_controllable(r.supervisor, plant, unc).ok()) << "round " << round;
        EXPECT_TRUE(is_nonblocking(r.supervisor)) << "round " << round;
        EXPECT_TRUE(language_inclusion(r.supervisor, spec, LanguageKind::Marked).ok())
            << "round " << round;
        EXPECT_TRUE(language_inclusion(r.supervisor, plant, LanguageKind::Generated).ok())
            << "round " << round;
    }
    EXPECT_GE(used, 10);
}

TEST(SupCon, AgreesWithSetOracleOnFiniteInstances) {
    Sampler s(seed_from_env(203));
    for (int round = 0; round < 25; ++round) {
        FiniteInstance fi = finite_instance(s);
        BoundedLanguage expect =
            oracle::set_supcon(fi.spec_words, fi.plant_words, fi.sigma_u);
        SynthesisResult r = sup_con(fi.spec, fi.plant, fi.sigma_u);
        EXPECT_EQ(marked_upto(r.supervisor, 6), expect.words) << "round " << round;
    }
}

TEST(InfConClosed, SideViewGivesClosedSupervisor) {
    Generator side_spec = prefix_closure(project(ex1_k(), ex1_alpha1()));
    Generator side_plant = compose(ex1_g1(), coordinator_chain());
    SynthesisResult r = inf_con_closed(side_spec, side_plant, {"a", "a1", "d"});
    EXPECT_EQ(marked_upto(r.supervisor, 3), ws({"", "a", "a a1"}));
}

TEST(InfConClosed, ExtendsByUncontrollableTails) {
    Alphabet alpha;
    alpha.add({"a", false});
    alpha.add({"u", false});
    alpha.add({"c", true});
    Generator plant = Generator::from_words(alpha, ws({"a u", "c"}), "plant");
    Generator spec = Generator::from_words(alpha, ws({"a"}), "spec");
    SynthesisResult r = inf_con_closed(spec, plant, {"a", "u"});
    EXPECT_EQ(marked_upto(r.supervisor, 3), ws({"", "a", "a u"}));
    for (StateId q = 0; q < r.supervisor.num_states(); ++q)
        EXPECT_TRUE(r.supervisor.marked(q));
}

TEST(InfConClosed, RequiresSpecificationInsidePlant) {
    Alphabet alpha;
    alpha.add({"a", false});
    alpha.add({"b", false});
    Generator plant = Generator::from_words(alpha, ws({"a"}), "plant");
    Generator spec = Generator::from_words(alpha, ws({"b"}), "spec");
    EXPECT_THROW(inf_con_closed(spec, plant, {"a", "b"}), SpecOutsidePlant);
}

TEST(InfConClosed, EmptySpecificationGivesEmptyResult) {
    SynthesisResult r =
        inf_con_closed(Generator::empty_language(ex1_alpha1()), ex1_g1(), {"a"});
    EXPECT_FALSE(r.supervisor.any_marked());
}

TEST(InfConClosed, OutputIsControllableClosedSuperset) {
    Sampler s(seed_from_env(204));
    int used = 0;
    for (int round = 0; round < 60 && used < 25; ++round) {
        Alphabet alpha = s.alphabet(3);
        Generator plant = s.generator("plant", alpha, 4, 0.5, 0.5);
        Generator spec = s.subautomaton(plant);
        if (!spec.any_marked()) continue;
        ++used;
        auto unc = alpha.uncontrollable_names();
        SynthesisResult r = inf_con_closed(spec, plant, unc);
        EXPECT_TRUE(is_controllable(r.supervisor, plant, unc).ok()) << "round " << round;
        EXPECT_TRUE(language_inclusion(prefix_closure(spec), r.supervisor, LanguageKind::Marked).ok())
            << "round " << round;
        EXPECT_TRUE(language_inclusion(r.supervisor, plant, LanguageKind::Generated).ok())
            << "round " << round;
        // Closed: the marked language equals its own prefix closure.
        EXPECT_TRUE(language_equal(r.supervisor, prefix_closure(r.supervisor),
                                   LanguageKind::Marked).ok())
            << "round " << round;
    }
    EXPECT_GE(used, 10);
}

TEST(InfConClosed, AgreesWithSetOracleOnFiniteInstances) {
    Sampler s(seed_from_env(205));
    for (int round = 0; round < 25; ++round) {
        FiniteInstance fi = finite_instance(s);
        if (fi.spec_words.words.empty()) continue;
        BoundedLanguage expect =
            oracle::set_infcon(fi.spec_words, fi.plant_words, fi.sigma_u);
        SynthesisResult r = inf_con_closed(fi.spec, fi.plant, fi.sigma_u);
        EXPECT_EQ(marked_upto(r.supervisor, 6), expect.words) << "round " << round;
    }
}

} // namespace
