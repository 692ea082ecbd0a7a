#ifndef MODSUP_SOLVER_HPP
#define MODSUP_SOLVER_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modsup/check.hpp"
#include "modsup/coordination.hpp"
#include "modsup/errors.hpp"
#include "modsup/generator.hpp"
#include "modsup/ops.hpp"
#include "modsup/synthesis.hpp"

namespace modsup {

/// A fully validated two-component control problem with its coordinator.
struct ProblemInstance {
    Generator g1;
    Generator g2;
    Generator spec;
    Alphabet sigma_k;
    Generator coordinator;
};

struct SolveOptions {
    bool auto_extend_cd = true;       // grow sigma_k until decomposability holds
    bool auto_extend_observer = true; // grow sigma_0 until the observer property holds
};

enum class SolveStatus { Exact, RelaxedSublanguage, RelaxedWithNcCoordinator, Empty };

inline std::string to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Exact: return "exact";
    case SolveStatus::RelaxedSublanguage: return "relaxed-sublanguage";
    case SolveStatus::RelaxedWithNcCoordinator: return "relaxed-with-nc-coordinator";
    case SolveStatus::Empty: return "empty";
    }
    return "unknown";
}

struct ArtifactStats {
    std::size_t states = 0;
    std::size_t transitions = 0;
};

inline ArtifactStats stats_of(const Generator& g) { return {g.num_states(), g.num_transitions()}; }

/// Size, counter, and certificate bookkeeping accumulated by the pipeline.
struct SolveReport {
    std::map<std::string, ArtifactStats> sizes;
    std::map<std::string, std::size_t> counters;
    std::map<std::string, bool> certificates;
    std::vector<std::string> notes;
};

struct SolutionBundle {
    SolveStatus status = SolveStatus::Empty;
    Generator s1;
    Generator s2;
    Generator coordinator;
    std::optional<Generator> nc_coordinator;
    std::optional<Alphabet> sigma0;
    SolveReport report;
};

/// Outcome of checking the distributed-solution characterization clauses.
struct SolutionCheck {
    bool ok = true;
    std::string failed_clause; // side1-composition, side2-composition, side1-blocking,
                               // side2-blocking, parts-conflict
    std::optional<Counterexample> evidence;

    explicit operator bool() const { return ok; }
};

/// Result of the prefix-closed existence test, carrying both infimal
/// supervisor candidates whatever the verdict.
struct ClosedExistence {
    bool exists = false;
    Generator t1;
    Generator t2;
    std::optional<Counterexample> evidence;

    explicit operator bool() const { return exists; }
};

namespace detail {

inline Generator all_marked(const Generator& g) {
    Generator out = g;
    for (StateId s = 0; s < out.num_states(); ++s) out.set_marked(s, true);
    return out;
}

/// Closed loop of a supervisor with a plant: the plant contributes only its
/// generated language, the supervisor keeps the marking.
inline Generator closed_loop(const Generator& s, const Generator& plant) {
    return compose(s, all_marked(plant));
}

inline CoordinationInstance as_coordination(const ProblemInstance& inst) {
    return {inst.g1, inst.g2, inst.spec, inst.sigma_k, inst.coordinator};
}

inline Generator side_plant(const ProblemInstance& inst, int side) {
    return compose(side == 1 ? inst.g1 : inst.g2, inst.coordinator);
}

inline Generator side_spec(const ProblemInstance& inst, int side) {
    const Generator& gi = side == 1 ? inst.g1 : inst.g2;
    return project(inst.spec, side_alphabet(inst.spec.alphabet(), gi.alphabet(), inst.sigma_k));
}

inline Counterexample tag_side(Counterexample c, int side) {
    c.note = "side=" + std::to_string(side) + "; " + c.note;
    return c;
}

} // namespace detail

/// Validate a problem instance and build its coordinator. Requires a
/// nonempty specification over the union alphabet whose closure stays inside
/// the composed plant; grows the coordinator alphabet if the specification
/// or its closure is not conditionally decomposable (unless disabled, which
/// turns that into an error).
inline ProblemInstance make_problem_instance(Generator g1, Generator g2, Generator spec,
                                             const std::set<std::string>& sigma_k_names,
                                             const SolveOptions& opts = {}) {
    Alphabet whole = g1.alphabet().union_with(g2.alphabet());
    if (!spec.alphabet().same_events(whole))
        throw AlphabetMismatch("specification alphabet must equal the union alphabet");
    for (const auto& name : sigma_k_names)
        if (!whole.contains(name))
            throw AlphabetBounds("coordinator event '" + name + "' is not a plant event");
    Generator spec_trim = trim(spec);
    if (!spec_trim.any_marked())
        throw PreconditionViolation("specification marked language is empty");
    if (auto r = language_inclusion(spec_trim, compose(g1, g2), LanguageKind::Generated); !r)
        throw PreconditionViolation("specification closure leaves the composed plant at word '" +
                                    format_word(r.violation->word) + "'");

    Alphabet sigma_k = whole.restrict_to(sigma_k_names);
    detail::check_sandwich(g1.alphabet(), g2.alphabet(), sigma_k);
    Generator spec_closed = prefix_closure(spec);
    CheckResult cd1 = is_conditionally_decomposable(spec, g1.alphabet(), g2.alphabet(), sigma_k);
    CheckResult cd2 =
        is_conditionally_decomposable(spec_closed, g1.alphabet(), g2.alphabet(), sigma_k);
    if (!cd1.ok() || !cd2.ok()) {
        if (!opts.auto_extend_cd) {
            const Counterexample& c = cd1.ok() ? *cd2.violation : *cd1.violation;
            throw PreconditionViolation(
                "specification is not conditionally decomposable; extra word '" +
                format_word(c.word) + "'");
        }
        sigma_k = extend_for_cd(spec, g1.alphabet(), g2.alphabet(), sigma_k);
    }
    Generator coordinator = build_coordinator(g1, g2, sigma_k);
    return {std::move(g1), std::move(g2), std::move(spec), std::move(sigma_k),
            std::move(coordinator)};
}

/// Check the distributed-solution characterization: each side's closed loop
/// composed with the other side's coordinator projection must equal the
/// side projection of the specification, each closed loop must be
/// nonblocking, and the supervisors must be nonconflicting. The failing
/// clause is named in the result.
inline SolutionCheck verify_distributed_solution(const Generator& s1, const Generator& s2,
                                                 const ProblemInstance& inst) {
    if (!s1.alphabet().same_events(inst.g1.alphabet().union_with(inst.sigma_k)))
        throw AlphabetMismatch("first supervisor must run over the first side alphabet");
    if (!s2.alphabet().same_events(inst.g2.alphabet().union_with(inst.sigma_k)))
        throw AlphabetMismatch("second supervisor must run over the second side alphabet");

    Generator cl1 = detail::closed_loop(s1, detail::side_plant(inst, 1));
    Generator cl2 = detail::closed_loop(s2, detail::side_plant(inst, 2));
    const Generator* loops[2] = {&cl1, &cl2};
    for (int side = 1; side <= 2; ++side) {
        const Generator& own = *loops[side - 1];
        const Generator& other = *loops[2 - side];
        Generator pk_other =
            project(other, other.alphabet().restrict_to(inst.sigma_k.names()));
        CheckResult r = language_equal(compose(own, pk_other), detail::side_spec(inst, side),
                                       LanguageKind::Marked);
        if (!r.ok())
            return {false, "side" + std::to_string(side) + "-composition",
                    detail::tag_side(*r.violation, side)};
    }
    for (int side = 1; side <= 2; ++side) {
        CheckResult r = nonblocking_check(*loops[side - 1]);
        if (!r.ok())
            return {false, "side" + std::to_string(side) + "-blocking",
                    detail::tag_side(*r.violation, side)};
    }
    if (CheckResult r = is_nonconflicting(s1, s2); !r.ok())
        return {false, "parts-conflict", r.violation};
    return {true, "", std::nullopt};
}

/// Existence test for the prefix-closed problem: build each side's least
/// prefix-closed controllable superlanguage of the side projection, then
/// check that composing either one with the other's coordinator projection
/// collapses back to the side projection. The witnesses t1, t2 are returned
/// whatever the verdict.
inline ClosedExistence exists_solution_closed(const ProblemInstance& inst) {
    Generator spec_trim = trim(inst.spec);
    if (!spec_trim.any_marked())
        throw PreconditionViolation("specification marked language is empty");
    for (StateId s = 0; s < spec_trim.num_states(); ++s)
        if (!spec_trim.marked(s))
            throw NotPrefixClosed("specification marked language is not prefix-closed");

    Generator t1("t1", inst.g1.alphabet());
    Generator t2("t2", inst.g2.alphabet());
    for (int side = 1; side <= 2; ++side) {
        Generator part = detail::side_spec(inst, side);
        Generator plant = detail::side_plant(inst, side);
        Generator t = inf_con_closed(part, plant, plant.alphabet().uncontrollable_names()).supervisor;
        t.set_name(side == 1 ? "t1" : "t2");
        (side == 1 ? t1 : t2) = std::move(t);
    }
    const Generator* ts[2] = {&t1, &t2};
    for (int side = 1; side <= 2; ++side) {
        const Generator& own = *ts[side - 1];
        const Generator& other = *ts[2 - side];
        Generator pk_other = project(other, other.alphabet().restrict_to(inst.sigma_k.names()));
        CheckResult r = language_equal(compose(own, pk_other), detail::side_spec(inst, side),
                                       LanguageKind::Marked);
        if (!r.ok())
            return {false, std::move(t1), std::move(t2), detail::tag_side(*r.violation, side)};
    }
    return {true, std::move(t1), std::move(t2), std::nullopt};
}

/// Re-mark prefix-closed side supervisors for the original specification:
/// a word is marked when it lies in the side projection of the
/// specification, or when it has escaped that projection's closure. Built
/// on the product of each supervisor with a trim recognizer of the side
/// projection, with an implicit sink tracking escaped words.
inline std::pair<Generator, Generator> lift_marking(const Generator& gs1, const Generator& gs2,
                                                    const ProblemInstance& inst) {
    auto lift_one = [&](const Generator& gs, int side) {
        Generator r = trim(detail::side_spec(inst, side));
        if (!gs.alphabet().same_events(r.alphabet()))
            throw AlphabetMismatch("supervisor alphabet must match its side alphabet");
        if (auto incl = language_inclusion(r, gs, LanguageKind::Generated); !incl)
            throw PreconditionViolation(
                "side supervisor does not cover the side projection's closure; word '" +
                format_word(incl.violation->word) + "'");
        if (!r.any_marked()) return detail::all_marked(gs);

        std::vector<std::size_t> re(gs.alphabet().size());
        for (std::size_t e = 0; e < gs.alphabet().size(); ++e)
            re[e] = r.alphabet().index_of(gs.alphabet().at(e).name);

        constexpr StateId SINK = detail::npos;
        Generator out(side == 1 ? "s1" : "s2", gs.alphabet());
        std::map<std::pair<StateId, StateId>, StateId> seen;
        std::vector<std::pair<StateId, StateId>> order;
        auto intern = [&](StateId q, StateId rr) {
            auto key = std::make_pair(q, rr);
            auto it = seen.find(key);
            if (it != seen.end()) return it->second;
            bool m = rr == SINK || r.marked(rr);
            StateId id = out.add_state(std::to_string(out.num_states()), m);
            seen.emplace(key, id);
            order.push_back(key);
            return id;
        };
        intern(gs.initial(), r.initial());
        out.set_initial(0);
        for (std::size_t i = 0; i < order.size(); ++i) {
            auto [q, rr] = order[i];
            for (const auto& [e, t] : gs.transitions_from(q)) {
                StateId rt = SINK;
                if (rr != SINK)
                    if (auto x = r.target(rr, re[e])) rt = *x;
                out.add_transition(i, e, intern(t, rt));
            }
        }
        return out;
    };
    return {lift_one(gs1, 1), lift_one(gs2, 2)};
}

namespace detail {

inline SolutionBundle pipeline(const ProblemInstance& inst, const SolveOptions& opts) {
    SolveReport report;
    report.sizes["g1"] = stats_of(inst.g1);
    report.sizes["g2"] = stats_of(inst.g2);
    report.sizes["spec"] = stats_of(inst.spec);
    report.sizes["coordinator"] = stats_of(inst.coordinator);
    Generator plant12 = compose(inst.g1, inst.g2);
    if (auto r = language_inclusion(inst.spec, plant12, LanguageKind::Marked); !r)
        report.notes.push_back("specification marks words the composed plant does not; its "
                               "closed behavior still bounds the loop");

    ProblemInstance closed{inst.g1, inst.g2, prefix_closure(inst.spec), inst.sigma_k,
                           inst.coordinator};
    ClosedExistence ex = exists_solution_closed(closed);
    report.sizes["t1"] = stats_of(ex.t1);
    report.sizes["t2"] = stats_of(ex.t2);

    if (ex.exists) {
        auto [s1, s2] = lift_marking(ex.t1, ex.t2, inst);
        report.sizes["s1"] = stats_of(s1);
        report.sizes["s2"] = stats_of(s2);
        SolutionCheck chk = verify_distributed_solution(s1, s2, inst);
        report.certificates["solution-clauses"] = chk.ok;
        if (!chk.ok)
            report.notes.push_back("clause " + chk.failed_clause + " failed at word '" +
                                   format_word(chk.evidence->word) + "'");
        Generator composed = compose(s1, s2);
        report.certificates["composition-equals-spec"] =
            language_equal(composed, inst.spec, LanguageKind::Marked).ok();
        for (int side = 1; side <= 2; ++side) {
            Generator plant = side_plant(inst, side);
            report.certificates["side" + std::to_string(side) + "-controllable"] =
                is_controllable(side == 1 ? s1 : s2, plant,
                                plant.alphabet().uncontrollable_names())
                    .ok();
        }
        report.sizes["monolithic-trim"] = stats_of(trim(composed));
        return {SolveStatus::Exact, std::move(s1), std::move(s2), inst.coordinator,
                std::nullopt,       std::nullopt,  std::move(report)};
    }
    report.notes.push_back("no exact solution: " + ex.evidence->note + " at word '" +
                           format_word(ex.evidence->word) + "'");

    CoordinationInstance cinst = as_coordination(inst);
    SynthesisResult r1 = sup_rc_part(cinst, 1);
    SynthesisResult r2 = sup_rc_part(cinst, 2);
    Generator s1 = std::move(r1.supervisor);
    Generator s2 = std::move(r2.supervisor);
    report.sizes["s1k"] = stats_of(s1);
    report.sizes["s2k"] = stats_of(s2);
    report.counters["s1-iterations"] = r1.iterations;
    report.counters["s1-removed-states"] = r1.removed_states;
    report.counters["s2-iterations"] = r2.iterations;
    report.counters["s2-removed-states"] = r2.removed_states;

    auto side_certificates = [&] {
        for (int side = 1; side <= 2; ++side) {
            Generator plant = side_plant(inst, side);
            report.certificates["side" + std::to_string(side) + "-controllable"] =
                is_controllable(side == 1 ? s1 : s2, plant,
                                plant.alphabet().uncontrollable_names())
                    .ok();
        }
    };

    if (!s1.any_marked() && !s2.any_marked()) {
        report.notes.push_back("both relaxed parts are empty");
        report.certificates["safety"] =
            language_inclusion(compose(s1, s2), inst.spec, LanguageKind::Marked).ok();
        side_certificates();
        return {SolveStatus::Empty, std::move(s1), std::move(s2), inst.coordinator,
                std::nullopt,       std::nullopt,  std::move(report)};
    }

    std::set<std::string> names0 = inst.sigma_k.names();
    Alphabet whole = inst.g1.alphabet().union_with(inst.g2.alphabet());
    if (opts.auto_extend_observer) {
        for (const Generator* part : {&s1, &s2}) {
            std::set<std::string> local;
            for (const auto& name : names0)
                if (part->alphabet().contains(name)) local.insert(name);
            Alphabet grown =
                extend_for_observer(*part, part->alphabet().restrict_to(local));
            auto grown_names = grown.names();
            names0.insert(grown_names.begin(), grown_names.end());
        }
    }
    Alphabet sigma0 = whole.restrict_to(names0);
    DistributedSupervisors parts{s1, s2, std::nullopt};
    Generator c = nonconflict_coordinator(parts, sigma0);
    report.sizes["nc-coordinator"] = stats_of(c);

    CheckResult conflict = is_nonconflicting(s1, s2);
    SolveStatus status =
        conflict.ok() ? SolveStatus::RelaxedSublanguage : SolveStatus::RelaxedWithNcCoordinator;
    if (!conflict.ok())
        report.notes.push_back("parts conflict at word '" +
                               format_word(conflict.violation->word) + "'");

    Generator triple = compose(compose(s1, s2), c);
    report.sizes["triple"] = stats_of(triple);
    report.certificates["safety"] =
        language_inclusion(triple, inst.spec, LanguageKind::Marked).ok();
    side_certificates();
    report.certificates["composition-nonblocking"] = is_nonblocking(triple);
    report.certificates["closure-controllable-wrt-plant"] =
        is_controllable(triple, plant12, plant12.alphabet().uncontrollable_names()).ok();
    report.sizes["monolithic-trim"] = stats_of(trim(compose(s1, s2)));
    return {status,       std::move(s1), std::move(s2),    inst.coordinator,
            std::move(c), std::move(sigma0), std::move(report)};
}

} // namespace detail

/// End-to-end synthesis: try the exact route (prefix-closed existence test
/// plus marking lift); fall back to the relaxed route (per-side supremal
/// supervisors plus a coordinator for nonconflictingness) when no exact
/// solution exists.
inline SolutionBundle solve(const ProblemInstance& inst, const SolveOptions& opts = {}) {
    return detail::pipeline(inst, opts);
}

/// The staged synthesis procedure: (1) exact existence test, (2) per-side
/// supremal supervisors, (3) observation alphabet seeded with the
/// coordinator events, (4) observer-driven extension of that alphabet,
/// (5) coordinator for nonconflictingness. Identical to solve; both names
/// are kept because callers think of it either as a solver or as the staged
/// procedure.
inline SolutionBundle run_algorithm1(const ProblemInstance& inst, const SolveOptions& opts = {}) {
    return detail::pipeline(inst, opts);
}

} // namespace modsup

#endif
