#include <gtest/gtest.h>

#include <algorithm>

#include "test_util.hpp"

namespace {

using namespace modsup;
using namespace testutil;

// Plant over {c,x,y,z} plus one private uncontrollable event: after the
// branch named by trap_after the private event leads into a dead state.
// Two such plants trapping opposite branches force the side supervisors to
// cut different branches, so the shared prefix c strands in their product.
Generator trap_plant(const std::string& name, const std::string& trap_after,
                     const std::string& unc_name) {
    Alphabet alpha;
    alpha.add({"c", true});
    alpha.add({"x", true});
    alpha.add({"y", true});
    alpha.add({"z", true});
    alpha.add({unc_name, false});
    Generator g(name, alpha);
    g.add_state("r");
    g.add_state("m");
    g.add_state("px", true);
    g.add_state("py", true);
    g.add_state("dead");
    g.add_state("pz", true);
    g.set_initial(0);
    g.add_transition("r", "c", "m");
    g.add_transition("m", "x", "px");
    g.add_transition("m", "y", "py");
    g.add_transition("r", "z", "pz");
    g.add_transition(trap_after == "x" ? "px" : "py", unc_name, "dead");
    return g;
}

// Variant without the private event, used when only one side should trap.
Generator plain_plant(const std::string& name) {
    Alphabet alpha;
    alpha.add({"c", true});
    alpha.add({"x", true});
    alpha.add({"y", true});
    alpha.add({"z", true});
    Generator g(name, alpha);
    g.add_state("r");
    g.add_state("m");
    g.add_state("px", true);
    g.add_state("py", true);
    g.add_state("pz", true);
    g.set_initial(0);
    g.add_transition("r", "c", "m");
    g.add_transition("m", "x", "px");
    g.add_transition("m", "y", "py");
    g.add_transition("r", "z", "pz");
    return g;
}

ProblemInstance trap_instance(bool both_sides) {
    Generator g1 = trap_plant("g1", "x", "u1");
    Generator g2 = both_sides ? trap_plant("g2", "y", "u2") : plain_plant("g2");
    Alphabet whole = g1.alphabet().union_with(g2.alphabet());
    Generator spec = Generator::from_words(whole, ws({"z", "c x", "c y"}), "spec");
    return make_problem_instance(std::move(g1), std::move(g2), std::move(spec),
                                 {"c", "x", "y", "z"});
}

bool has_note(const SolveReport& report, const std::string& needle) {
    return std::any_of(report.notes.begin(), report.notes.end(), [&](const std::string& n) {
        return n.find(needle) != std::string::npos;
    });
}

TEST(MakeProblemInstance, BuildsCoordinatorAndKeepsAlphabet) {
    ProblemInstance inst = ex1_instance();
    EXPECT_EQ(inst.sigma_k.names(), ex1_sigma_k());
    EXPECT_EQ(marked_upto(inst.coordinator, 3), ws({"a d"}));
}

TEST(MakeProblemInstance, RejectsBadArguments) {
    EXPECT_THROW(make_problem_instance(ex1_g1(), ex1_g2(), ex1_g1(), ex1_sigma_k()),
                 AlphabetMismatch);
    EXPECT_THROW(make_problem_instance(ex1_g1(), ex1_g2(), ex1_k(), {"a", "zz"}),
                 AlphabetBounds);
}

TEST(MakeProblemInstance, RejectsEmptySpecification) {
    try {
        make_problem_instance(ex1_g1(), ex1_g2(), Generator::empty_language(ex1_alpha()),
                              ex1_sigma_k());
        FAIL() << "expected PreconditionViolation";
    } catch (const PreconditionViolation& e) {
        EXPECT_NE(std::string(e.what()).find("marked language is empty"), std::string::npos);
    }
}

TEST(MakeProblemInstance, RejectsSpecificationOutsidePlant) {
    Generator bad = Generator::from_words(ex1_alpha(), ws({"d"}), "bad");
    try {
        make_problem_instance(ex1_g1(), ex1_g2(), bad, ex1_sigma_k());
        FAIL() << "expected PreconditionViolation";
    } catch (const PreconditionViolation& e) {
        EXPECT_NE(std::string(e.what()).find("leaves the composed plant"), std::string::npos);
    }
}

TEST(MakeProblemInstance, GrowsCoordinatorAlphabetWhenNeeded) {
    Generator half = Generator::from_words(ex1_alpha(), ws({"a a1 a2"}), "half");
    ProblemInstance inst =
        make_problem_instance(ex1_g1(), ex1_g2(), half, ex1_sigma_k());
    std::set<std::string> expect{"a", "a2", "d"};
    EXPECT_EQ(inst.sigma_k.names(), expect);
}

TEST(MakeProblemInstance, ExtensionCanBeDisabled) {
    Generator half = Generator::from_words(ex1_alpha(), ws({"a a1 a2"}), "half");
    SolveOptions opts;
    opts.auto_extend_cd = false;
    EXPECT_THROW(make_problem_instance(ex1_g1(), ex1_g2(), half, ex1_sigma_k(), opts),
                 PreconditionViolation);
}

TEST(ExistsSolutionClosed, HoldsForTheClosedSpecification) {
    ProblemInstance inst =
        make_problem_instance(ex1_g1(), ex1_g2(), prefix_closure(ex1_k()), ex1_sigma_k());
    ClosedExistence ex = exists_solution_closed(inst);
    EXPECT_TRUE(ex.exists);
    EXPECT_EQ(ex.t1.name(), "t1");
    EXPECT_EQ(ex.t2.name(), "t2");
    EXPECT_EQ(marked_upto(ex.t1, 3), ws({"", "a", "a a1"}));
    EXPECT_EQ(marked_upto(ex.t2, 3), ws({"", "a", "a a2"}));
}

TEST(ExistsSolutionClosed, RejectsUnclosedSpecification) {
    EXPECT_THROW(exists_solution_closed(ex1_instance()), NotPrefixClosed);
}

TEST(ExistsSolutionClosed, ReportsUncontrollableTailMismatch) {
    // The private uncontrollable tail u1 inflates t1 beyond the side
    // projection, so the composition test fails on side 1.
    Alphabet a1;
    a1.add({"a", false});
    a1.add({"u1", false});
    Alphabet a2;
    a2.add({"a", false});
    Generator g1 = chain("g1", a1, w("a u1"));
    Generator g2 = chain("g2", a2, w("a"));
    Generator spec = Generator::from_words(a1.union_with(a2), ws({"", "a"}), "spec");
    ProblemInstance inst = make_problem_instance(g1, g2, spec, {"a"});
    ClosedExistence ex = exists_solution_closed(inst);
    EXPECT_FALSE(ex.exists);
    ASSERT_TRUE(ex.evidence.has_value());
    EXPECT_EQ(ex.evidence->word, w("a u1"));
    EXPECT_EQ(ex.evidence->note.rfind("side=1;", 0), 0u);
    EXPECT_EQ(marked_upto(ex.t1, 3), ws({"", "a", "a u1"}));
}

TEST(LiftMarking, RestoresSpecificationMarks) {
    ProblemInstance closed =
        make_problem_instance(ex1_g1(), ex1_g2(), prefix_closure(ex1_k()), ex1_sigma_k());
    ClosedExistence ex = exists_solution_closed(closed);
    ASSERT_TRUE(ex.exists);
    auto [s1, s2] = lift_marking(ex.t1, ex.t2, ex1_instance());
    EXPECT_EQ(s1.name(), "s1");
    EXPECT_EQ(s2.name(), "s2");
    EXPECT_EQ(marked_upto(s1, 3), ws({"a a1"}));
    EXPECT_EQ(marked_upto(s2, 3), ws({"a a2"}));
}

TEST(LiftMarking, MarksEscapedWordsBeyondTheProjection) {
    Alphabet a1;
    a1.add({"a", false});
    a1.add({"u1", false});
    Alphabet a2;
    a2.add({"a", false});
    Generator g1 = chain("g1", a1, w("a u1"));
    Generator g2 = chain("g2", a2, w("a"));
    Generator spec = Generator::from_words(a1.union_with(a2), ws({"a"}), "spec");
    ProblemInstance inst = make_problem_instance(g1, g2, spec, {"a"});
    Generator t1 = Generator::from_words(a1, ws({"", "a", "a u1"}), "t1");
    Generator t2 = Generator::from_words(a2, ws({"", "a"}), "t2");
    auto [s1, s2] = lift_marking(t1, t2, inst);
    EXPECT_EQ(marked_upto(s1, 3), ws({"a", "a u1"}));
    EXPECT_EQ(marked_upto(s2, 2), ws({"a"}));
}

TEST(LiftMarking, ClosedSpecificationMarksEverything) {
    ProblemInstance closed =
        make_problem_instance(ex1_g1(), ex1_g2(), prefix_closure(ex1_k()), ex1_sigma_k());
    ClosedExistence ex = exists_solution_closed(closed);
    auto [s1, s2] = lift_marking(ex.t1, ex.t2, closed);
    for (StateId q = 0; q < s1.num_states(); ++q) EXPECT_TRUE(s1.marked(q));
    for (StateId q = 0; q < s2.num_states(); ++q) EXPECT_TRUE(s2.marked(q));
}

TEST(LiftMarking, EmptyProjectionMarksTheWholeSupervisor) {
    ProblemInstance inst = ex1_instance();
    inst.spec = Generator::empty_language(ex1_alpha(), "spec");
    Generator t1 = chain("t1", ex1_alpha1(), w("a a1"));
    Generator t2 = chain("t2", ex1_alpha2(), w("a a2"));
    auto [s1, s2] = lift_marking(t1, t2, inst);
    for (StateId q = 0; q < s1.num_states(); ++q) EXPECT_TRUE(s1.marked(q));
}

TEST(LiftMarking, RejectsSupervisorsMissingTheProjection) {
    ProblemInstance inst = ex1_instance();
    Generator short1 = chain("t1", ex1_alpha1(), w("a"));
    Generator t2 = chain("t2", ex1_alpha2(), w("a a2"));
    EXPECT_THROW(lift_marking(short1, t2, inst), PreconditionViolation);
    Generator wrong = chain("t1", ex1_alpha2(), w("a a2"));
    EXPECT_THROW(lift_marking(wrong, t2, inst), AlphabetMismatch);
}

TEST(VerifyDistributedSolution, AcceptsTheKnownSolution) {
    SolutionCheck chk = verify_distributed_solution(chain("s1", ex1_alpha1(), w("a a1")),
                                                    chain("s2", ex1_alpha2(), w("a a2")),
                                                    ex1_instance());
    EXPECT_TRUE(chk.ok);
    EXPECT_TRUE(chk.failed_clause.empty());
}

TEST(VerifyDistributedSolution, FlagsCompositionMismatch) {
    SolutionCheck chk = verify_distributed_solution(chain("s1", ex1_alpha1(), w("a a1")),
                                                    chain("s2", ex1_alpha2(), w("a")),
                                                    ex1_instance());
    ASSERT_FALSE(chk.ok);
    EXPECT_EQ(chk.failed_clause, "side2-composition");
    ASSERT_TRUE(chk.evidence.has_value());
    EXPECT_EQ(chk.evidence->note.rfind("side=2;", 0), 0u);
}

TEST(VerifyDistributedSolution, FlagsBlockingClosedLoop) {
    Generator s1 = chain("s1", ex1_alpha1(), w("a a1"));
    StateId dead = s1.add_state("dead");
    s1.add_transition(2, ex1_alpha1().index_of("b"), dead);
    SolutionCheck chk = verify_distributed_solution(
        s1, chain("s2", ex1_alpha2(), w("a a2")), ex1_instance());
    ASSERT_FALSE(chk.ok);
    EXPECT_EQ(chk.failed_clause, "side1-blocking");
    EXPECT_EQ(chk.evidence->word, w("a a1 b"));
}

TEST(VerifyDistributedSolution, FlagsConflictingSupervisors) {
    // The extra marked word b lies outside the plant, so the closed loops
    // still satisfy the composition clauses, but the supervisors themselves
    // strand b in their product.
    Generator s1 = Generator::from_words(ex1_alpha1(), ws({"a a1", "b"}), "s1");
    SolutionCheck chk = verify_distributed_solution(
        s1, chain("s2", ex1_alpha2(), w("a a2")), ex1_instance());
    ASSERT_FALSE(chk.ok);
    EXPECT_EQ(chk.failed_clause, "parts-conflict");
    EXPECT_EQ(chk.evidence->word, w("b"));
}

TEST(VerifyDistributedSolution, RejectsWrongAlphabets) {
    EXPECT_THROW(verify_distributed_solution(chain("s1", ex1_alpha2(), w("a a2")),
                                             chain("s2", ex1_alpha2(), w("a a2")),
                                             ex1_instance()),
                 AlphabetMismatch);
}

TEST(Solve, ExampleInstanceIsExact) {
    SolutionBundle b = solve(ex1_instance());
    EXPECT_EQ(b.status, SolveStatus::Exact);
    EXPECT_EQ(to_string(b.status), "exact");
    EXPECT_EQ(marked_upto(b.s1, 3), ws({"a a1"}));
    EXPECT_EQ(marked_upto(b.s2, 3), ws({"a a2"}));
    EXPECT_FALSE(b.nc_coordinator.has_value());
    EXPECT_FALSE(b.sigma0.has_value());

    for (const char* key : {"g1", "g2", "spec", "coordinator", "t1", "t2", "s1", "s2",
                            "monolithic-trim"})
        EXPECT_TRUE(b.report.sizes.count(key)) << key;
    for (const char* key : {"solution-clauses", "composition-equals-spec",
                            "side1-controllable", "side2-controllable"}) {
        ASSERT_TRUE(b.report.certificates.count(key)) << key;
        EXPECT_TRUE(b.report.certificates.at(key)) << key;
    }
    EXPECT_TRUE(has_note(b.report, "closed behavior still bounds"));
}

TEST(Solve, VerifierAcceptsTheBundle) {
    ProblemInstance inst = ex1_instance();
    SolutionBundle b = solve(inst);
    EXPECT_TRUE(verify_distributed_solution(b.s1, b.s2, inst).ok);
}

TEST(Solve, PlantLanguageSolvesItself) {
    Generator spec = trim(compose(ex1_g1(), ex1_g2()));
    spec.set_name("spec");
    ProblemInstance inst =
        make_problem_instance(ex1_g1(), ex1_g2(), spec, ex1_sigma_k());
    SolutionBundle b = solve(inst);
    EXPECT_EQ(b.status, SolveStatus::Exact);
    EXPECT_TRUE(b.report.certificates.at("composition-equals-spec"));
}

TEST(Solve, UncontrollableSpecificationCollapsesToEmpty) {
    Generator spec = Generator::from_words(ex1_alpha(), ws({"a"}), "spec");
    ProblemInstance inst =
        make_problem_instance(ex1_g1(), ex1_g2(), spec, ex1_sigma_k());
    SolutionBundle b = solve(inst);
    EXPECT_EQ(b.status, SolveStatus::Empty);
    EXPECT_EQ(to_string(b.status), "empty");
    EXPECT_FALSE(b.s1.any_marked());
    EXPECT_FALSE(b.s2.any_marked());
    EXPECT_FALSE(b.nc_coordinator.has_value());
    EXPECT_FALSE(b.sigma0.has_value());
    EXPECT_TRUE(b.report.certificates.at("safety"));
    EXPECT_TRUE(has_note(b.report, "both relaxed parts are empty"));
}

TEST(Solve, OneSidedTrapGivesRelaxedSublanguage) {
    SolutionBundle b = solve(trap_instance(false));
    EXPECT_EQ(b.status, SolveStatus::RelaxedSublanguage);
    EXPECT_EQ(to_string(b.status), "relaxed-sublanguage");
    EXPECT_EQ(marked_upto(b.s1, 3), ws({"z", "c y"}));
    EXPECT_EQ(marked_upto(b.s2, 3), ws({"z", "c x", "c y"}));
    ASSERT_TRUE(b.nc_coordinator.has_value());
    ASSERT_TRUE(b.sigma0.has_value());
    EXPECT_TRUE(b.report.certificates.at("safety"));
    EXPECT_TRUE(b.report.certificates.at("composition-nonblocking"));
}

TEST(Solve, OpposedTrapsNeedTheNonconflictCoordinator) {
    SolutionBundle b = solve(trap_instance(true));
    EXPECT_EQ(b.status, SolveStatus::RelaxedWithNcCoordinator);
    EXPECT_EQ(to_string(b.status), "relaxed-with-nc-coordinator");
    EXPECT_EQ(marked_upto(b.s1, 3), ws({"z", "c y"}));
    EXPECT_EQ(marked_upto(b.s2, 3), ws({"z", "c x"}));
    ASSERT_TRUE(b.nc_coordinator.has_value());
    EXPECT_EQ(marked_upto(*b.nc_coordinator, 2), ws({"z"}));
    ASSERT_TRUE(b.sigma0.has_value());
    for (const auto& name : std::set<std::string>{"c", "x", "y", "z"})
        EXPECT_TRUE(b.sigma0->contains(name)) << name;

    for (const char* key : {"s1k", "s2k", "nc-coordinator", "triple", "monolithic-trim"})
        EXPECT_TRUE(b.report.sizes.count(key)) << key;
    for (const char* key : {"s1-iterations", "s1-removed-states", "s2-iterations",
                            "s2-removed-states"})
        EXPECT_TRUE(b.report.counters.count(key)) << key;
    for (const char* key : {"safety", "side1-controllable", "side2-controllable",
                            "composition-nonblocking", "closure-controllable-wrt-plant"}) {
        ASSERT_TRUE(b.report.certificates.count(key)) << key;
        EXPECT_TRUE(b.report.certificates.at(key)) << key;
    }
    EXPECT_TRUE(has_note(b.report, "parts conflict at word 'c'"));

    // The coordinator rescues the composition.
    Generator triple = compose(compose(b.s1, b.s2), *b.nc_coordinator);
    EXPECT_TRUE(is_nonblocking(triple));
    EXPECT_EQ(marked_upto(triple, 2), ws({"z"}));
}

TEST(Solve, StagedProcedureMatchesTheSolver) {
    ProblemInstance inst = ex1_instance();
    SolutionBundle a = solve(inst);
    SolutionBundle b = run_algorithm1(inst);
    EXPECT_EQ(a.status, b.status);
    EXPECT_TRUE(a.s1 == b.s1);
    EXPECT_TRUE(a.s2 == b.s2);
    EXPECT_EQ(a.report.certificates, b.report.certificates);
}

TEST(Solve, StatusNamesAreStable) {
    EXPECT_EQ(to_string(SolveStatus::Exact), "exact");
    EXPECT_EQ(to_string(SolveStatus::RelaxedSublanguage), "relaxed-sublanguage");
    EXPECT_EQ(to_string(SolveStatus::RelaxedWithNcCoordinator),
              "relaxed-with-nc-coordinator");
    EXPECT_EQ(to_string(SolveStatus::Empty), "empty");
}

} // namespace
