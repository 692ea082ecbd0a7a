// Command-line surface for the modsup library: composition, projection,
// synthesis, coordination checks, alphabet extensions, the end-to-end
// solver, and the brute-force oracle. Exit codes: 0 success or verdict
// true, 1 verdict false, 2 usage or input errors.

#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "modsup/modsup.hpp"

namespace fs = std::filesystem;
using namespace modsup;

namespace {

std::set<std::string> csv_set(const std::string& s) {
    std::set<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string item =
            comma == std::string::npos ? s.substr(start) : s.substr(start, comma - start);
        if (!item.empty()) out.insert(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void size_line(const Generator& g) {
    std::cout << g.name() << ": " << g.num_states() << " states and " << g.num_transitions()
              << " transitions\n";
}

json size_json(const Generator& g) {
    json j = json_of(stats_of(g));
    j["name"] = g.name();
    return j;
}

// Prints the generator to stdout or saves it when an output path is given.
void emit_generator(const Generator& g, const std::string& out) {
    if (out.empty()) {
        std::cout << encode_generator(g);
    } else {
        save_generator(g, out);
        size_line(g);
        std::cout << "wrote " << out << "\n";
    }
}

void maybe_report(const std::string& path, const json& j) {
    if (!path.empty()) write_report(path, j);
}

void print_cex(const Counterexample& c) {
    std::cout << "counterexample: " << format_word(c.word) << "\n";
    if (c.target_word) std::cout << "continuation: " << format_word(*c.target_word) << "\n";
    if (!c.note.empty()) std::cout << "note: " << c.note << "\n";
}

// Shared tail for every checker subcommand: one verdict line, the
// counterexample when false, an optional report, and the exit code.
int finish_check(const std::string& command, const CheckResult& r, const std::string& report) {
    std::cout << "verdict: " << (r.ok() ? "true" : "false") << "\n";
    if (r.violation) print_cex(*r.violation);
    json j;
    j["command"] = command;
    j.update(json_of(r));
    maybe_report(report, j);
    return r.ok() ? 0 : 1;
}

std::set<std::string> sigma_u_or_default(const std::string& csv, const Generator& plant) {
    return csv.empty() ? plant.alphabet().uncontrollable_names() : csv_set(csv);
}

void print_words(const BoundedLanguage& l) {
    for (const auto& w : l.sorted()) std::cout << format_word(w) << "\n";
}

CoordinationInstance instance_from_files(const std::vector<std::string>& plants,
                                         const std::string& spec, const std::string& sigma_k) {
    Generator g1 = load_generator(plants[0]);
    Generator g2 = load_generator(plants[1]);
    Generator k = load_generator(spec);
    return make_coordination_instance(std::move(g1), std::move(g2), std::move(k),
                                      csv_set(sigma_k));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributed supervisor synthesis for modular discrete-event systems"};
    app.require_subcommand(1);
    int rc = 0;

    // compose A B [C ...]
    std::vector<std::string> compose_files;
    std::string compose_out, compose_report;
    auto* cmd_compose = app.add_subcommand("compose", "synchronous product of generators");
    cmd_compose->add_option("files", compose_files, "generator files")->required()->expected(2, -1);
    cmd_compose->add_option("--out", compose_out, "output generator file");
    cmd_compose->add_option("--report", compose_report, "report file");
    cmd_compose->callback([&] {
        Generator acc = load_generator(compose_files[0]);
        json inputs = json::array();
        inputs.push_back(size_json(acc));
        for (std::size_t i = 1; i < compose_files.size(); ++i) {
            Generator next = load_generator(compose_files[i]);
            inputs.push_back(size_json(next));
            acc = compose(acc, next);
        }
        emit_generator(acc, compose_out);
        json j;
        j["command"] = "compose";
        j["inputs"] = inputs;
        j["result"] = size_json(acc);
        maybe_report(compose_report, j);
    });

    // project G --events ...
    std::string project_file, project_events, project_out, project_report;
    auto* cmd_project = app.add_subcommand("project", "natural projection onto an event subset");
    cmd_project->add_option("gen", project_file, "generator file")->required();
    cmd_project->add_option("--events", project_events, "comma list of kept events")->required();
    cmd_project->add_option("--out", project_out, "output generator file");
    cmd_project->add_option("--report", project_report, "report file");
    cmd_project->callback([&] {
        Generator g = load_generator(project_file);
        Generator p = project(g, g.alphabet().restrict_to(csv_set(project_events)));
        emit_generator(p, project_out);
        json j;
        j["command"] = "project";
        j["input"] = size_json(g);
        j["result"] = size_json(p);
        maybe_report(project_report, j);
    });

    // supcon / infcon
    std::string syn_spec, syn_plant, syn_sigma_u, syn_out, syn_report;
    auto add_synthesis_flags = [&](CLI::App* cmd) {
        cmd->add_option("--spec", syn_spec, "specification generator file")->required();
        cmd->add_option("--plant", syn_plant, "plant generator file")->required();
        cmd->add_option("--sigma-u", syn_sigma_u, "comma list of uncontrollable events");
        cmd->add_option("--out", syn_out, "output generator file");
        cmd->add_option("--report", syn_report, "report file");
    };
    auto* cmd_supcon =
        app.add_subcommand("supcon", "largest controllable sublanguage supervisor");
    add_synthesis_flags(cmd_supcon);
    cmd_supcon->callback([&] {
        Generator k = load_generator(syn_spec);
        Generator plant = load_generator(syn_plant);
        SynthesisResult r = sup_con(k, plant, sigma_u_or_default(syn_sigma_u, plant));
        emit_generator(r.supervisor, syn_out);
        json j;
        j["command"] = "supcon";
        j["spec"] = size_json(k);
        j["plant"] = size_json(plant);
        j["result"] = size_json(r.supervisor);
        j["iterations"] = r.iterations;
        j["removed_states"] = r.removed_states;
        maybe_report(syn_report, j);
    });
    auto* cmd_infcon =
        app.add_subcommand("infcon", "least prefix-closed controllable superlanguage");
    add_synthesis_flags(cmd_infcon);
    cmd_infcon->callback([&] {
        Generator k = load_generator(syn_spec);
        Generator plant = load_generator(syn_plant);
        SynthesisResult r = inf_con_closed(k, plant, sigma_u_or_default(syn_sigma_u, plant));
        emit_generator(r.supervisor, syn_out);
        json j;
        j["command"] = "infcon";
        j["spec"] = size_json(k);
        j["plant"] = size_json(plant);
        j["result"] = size_json(r.supervisor);
        maybe_report(syn_report, j);
    });

    // coordinator --plant A --plant B --sigma-k ...
    std::vector<std::string> coord_plants;
    std::string coord_sigma_k, coord_out, coord_report;
    auto* cmd_coord =
        app.add_subcommand("coordinator", "composition of plant projections onto shared events");
    cmd_coord->add_option("--plant", coord_plants, "plant generator files")->required()->expected(2);
    cmd_coord->add_option("--sigma-k", coord_sigma_k, "comma list of coordinator events")
        ->required();
    cmd_coord->add_option("--out", coord_out, "output generator file");
    cmd_coord->add_option("--report", coord_report, "report file");
    cmd_coord->callback([&] {
        Generator g1 = load_generator(coord_plants[0]);
        Generator g2 = load_generator(coord_plants[1]);
        Alphabet whole = g1.alphabet().union_with(g2.alphabet());
        Generator gk = build_coordinator(g1, g2, whole.restrict_to(csv_set(coord_sigma_k)));
        emit_generator(gk, coord_out);
        json j;
        j["command"] = "coordinator";
        j["result"] = size_json(gk);
        maybe_report(coord_report, j);
    });

    // check <cd|observer|controllable|rcc|cc|nonconflicting>
    auto* cmd_check = app.add_subcommand("check", "decision procedures");
    cmd_check->require_subcommand(1);

    std::vector<std::string> chk_plants;
    std::string chk_spec, chk_sigma_k, chk_report;
    auto* chk_cd = cmd_check->add_subcommand(
        "cd", "side projections of the specification compose back to it");
    chk_cd->add_option("--spec", chk_spec, "specification generator file")->required();
    chk_cd->add_option("--plant", chk_plants, "plant generator files")->required()->expected(2);
    chk_cd->add_option("--sigma-k", chk_sigma_k, "comma list of coordinator events")->required();
    chk_cd->add_option("--report", chk_report, "report file");
    chk_cd->callback([&] {
        Generator g1 = load_generator(chk_plants[0]);
        Generator g2 = load_generator(chk_plants[1]);
        Generator k = load_generator(chk_spec);
        Alphabet sigma_k = k.alphabet().restrict_to(csv_set(chk_sigma_k));
        rc = finish_check("check cd",
                          is_conditionally_decomposable(k, g1.alphabet(), g2.alphabet(), sigma_k),
                          chk_report);
    });

    std::string obs_file, obs_events, obs_report;
    auto* chk_obs = cmd_check->add_subcommand(
        "observer", "projected continuations always have silent completions");
    chk_obs->add_option("gen", obs_file, "generator file")->required();
    chk_obs->add_option("--events", obs_events, "comma list of observed events")->required();
    chk_obs->add_option("--report", obs_report, "report file");
    chk_obs->callback([&] {
        Generator g = load_generator(obs_file);
        rc = finish_check("check observer",
                          is_observer(g, g.alphabet().restrict_to(csv_set(obs_events))),
                          obs_report);
    });

    std::string ctrl_spec, ctrl_plant, ctrl_sigma_u, ctrl_report;
    auto* chk_ctrl = cmd_check->add_subcommand(
        "controllable", "no uncontrollable plant continuation leaves the specification closure");
    chk_ctrl->add_option("--spec", ctrl_spec, "specification generator file")->required();
    chk_ctrl->add_option("--plant", ctrl_plant, "plant generator file")->required();
    chk_ctrl->add_option("--sigma-u", ctrl_sigma_u, "comma list of uncontrollable events");
    chk_ctrl->add_option("--report", ctrl_report, "report file");
    chk_ctrl->callback([&] {
        Generator k = load_generator(ctrl_spec);
        Generator plant = load_generator(ctrl_plant);
        rc = finish_check("check controllable",
                          is_controllable(k, plant, sigma_u_or_default(ctrl_sigma_u, plant)),
                          ctrl_report);
    });

    std::vector<std::string> cond_plants;
    std::string cond_spec, cond_sigma_k, cond_report;
    auto add_cond_flags = [&](CLI::App* cmd) {
        cmd->add_option("--spec", cond_spec, "specification generator file")->required();
        cmd->add_option("--plant", cond_plants, "plant generator files")->required()->expected(2);
        cmd->add_option("--sigma-k", cond_sigma_k, "comma list of coordinator events")->required();
        cmd->add_option("--report", cond_report, "report file");
    };
    auto* chk_rcc = cmd_check->add_subcommand(
        "rcc", "side projections controllable against plant-with-coordinator compositions");
    add_cond_flags(chk_rcc);
    chk_rcc->callback([&] {
        rc = finish_check(
            "check rcc",
            is_relaxed_cond_controllable(instance_from_files(cond_plants, cond_spec, cond_sigma_k)),
            cond_report);
    });
    auto* chk_cc = cmd_check->add_subcommand(
        "cc", "coordinator part controllable, sides against plant-with-part compositions");
    add_cond_flags(chk_cc);
    chk_cc->callback([&] {
        rc = finish_check(
            "check cc",
            is_cond_controllable(instance_from_files(cond_plants, cond_spec, cond_sigma_k)),
            cond_report);
    });

    std::vector<std::string> nc_files;
    std::string nc_report;
    auto* chk_nc = cmd_check->add_subcommand(
        "nonconflicting", "every joint prefix extends to a joint marked word");
    chk_nc->add_option("files", nc_files, "two generator files")->required()->expected(2);
    chk_nc->add_option("--report", nc_report, "report file");
    chk_nc->callback([&] {
        rc = finish_check(
            "check nonconflicting",
            is_nonconflicting(load_generator(nc_files[0]), load_generator(nc_files[1])), nc_report);
    });

    // extend <cd|observer>
    auto* cmd_extend = app.add_subcommand("extend", "grow event sets until a property holds");
    cmd_extend->require_subcommand(1);

    std::vector<std::string> ext_plants;
    std::string ext_spec, ext_sigma_k, ext_report;
    auto* ext_cd = cmd_extend->add_subcommand("cd", "grow the coordinator events");
    ext_cd->add_option("--spec", ext_spec, "specification generator file")->required();
    ext_cd->add_option("--plant", ext_plants, "plant generator files")->required()->expected(2);
    ext_cd->add_option("--sigma-k", ext_sigma_k, "comma list of starting coordinator events");
    ext_cd->add_option("--report", ext_report, "report file");
    ext_cd->callback([&] {
        Generator g1 = load_generator(ext_plants[0]);
        Generator g2 = load_generator(ext_plants[1]);
        Generator k = load_generator(ext_spec);
        std::set<std::string> start = csv_set(ext_sigma_k);
        if (ext_sigma_k.empty()) start = g1.alphabet().intersect(g2.alphabet()).names();
        Alphabet grown =
            extend_for_cd(k, g1.alphabet(), g2.alphabet(), k.alphabet().restrict_to(start));
        std::string csv;
        for (const auto& n : grown.names()) csv += (csv.empty() ? "" : ",") + n;
        std::cout << "sigma_k: " << csv << "\n";
        json j;
        j["command"] = "extend cd";
        j["sigma_k"] = grown.names();
        maybe_report(ext_report, j);
    });

    std::string extobs_file, extobs_events, extobs_report;
    auto* ext_obs = cmd_extend->add_subcommand("observer", "grow the observed events");
    ext_obs->add_option("gen", extobs_file, "generator file")->required();
    ext_obs->add_option("--events", extobs_events, "comma list of starting observed events")
        ->required();
    ext_obs->add_option("--report", extobs_report, "report file");
    ext_obs->callback([&] {
        Generator g = load_generator(extobs_file);
        Alphabet grown = extend_for_observer(g, g.alphabet().restrict_to(csv_set(extobs_events)));
        std::string csv;
        for (const auto& n : grown.names()) csv += (csv.empty() ? "" : ",") + n;
        std::cout << "sigma_0: " << csv << "\n";
        json j;
        j["command"] = "extend observer";
        j["sigma_0"] = grown.names();
        maybe_report(extobs_report, j);
    });

    // solve --manifest M --out-dir D [--report F]
    std::string solve_manifest, solve_out_dir, solve_report_path;
    auto* cmd_solve = app.add_subcommand("solve", "end-to-end distributed supervisor synthesis");
    cmd_solve->add_option("--manifest", solve_manifest, "problem manifest file")->required();
    cmd_solve->add_option("--out-dir", solve_out_dir, "output directory")->required();
    cmd_solve->add_option("--report", solve_report_path, "report file (default out-dir/report.json)");
    cmd_solve->callback([&] {
        LoadedProblem problem = load_problem(load_manifest(solve_manifest));
        SolutionBundle bundle = solve(problem.instance, problem.options);
        fs::create_directories(solve_out_dir);
        fs::path dir(solve_out_dir);
        save_generator(bundle.s1, dir / "s1.gen");
        save_generator(bundle.s2, dir / "s2.gen");
        save_generator(bundle.coordinator, dir / "coordinator.gen");
        std::cout << "status: " << to_string(bundle.status) << "\n";
        size_line(bundle.s1);
        size_line(bundle.s2);
        size_line(bundle.coordinator);
        json j;
        j["command"] = "solve";
        j.update(json_of(bundle));
        json files;
        files["s1"] = (dir / "s1.gen").string();
        files["s2"] = (dir / "s2.gen").string();
        files["coordinator"] = (dir / "coordinator.gen").string();
        if (bundle.nc_coordinator) {
            save_generator(*bundle.nc_coordinator, dir / "nc_coordinator.gen");
            size_line(*bundle.nc_coordinator);
            files["nc_coordinator"] = (dir / "nc_coordinator.gen").string();
        }
        j["files"] = files;
        write_report(solve_report_path.empty() ? dir / "report.json" : fs::path(solve_report_path),
                     j);
    });

    // verify --manifest M --s1 F --s2 F
    std::string ver_manifest, ver_s1, ver_s2, ver_report;
    auto* cmd_verify =
        app.add_subcommand("verify", "check a supervisor pair against a problem manifest");
    cmd_verify->add_option("--manifest", ver_manifest, "problem manifest file")->required();
    cmd_verify->add_option("--s1", ver_s1, "first supervisor file")->required();
    cmd_verify->add_option("--s2", ver_s2, "second supervisor file")->required();
    cmd_verify->add_option("--report", ver_report, "report file");
    cmd_verify->callback([&] {
        LoadedProblem problem = load_problem(load_manifest(ver_manifest));
        SolutionCheck chk = verify_distributed_solution(load_generator(ver_s1),
                                                        load_generator(ver_s2), problem.instance);
        std::cout << "verdict: " << (chk.ok ? "true" : "false") << "\n";
        if (!chk.ok) {
            std::cout << "clause: " << chk.failed_clause << "\n";
            if (chk.evidence) print_cex(*chk.evidence);
        }
        json j;
        j["command"] = "verify";
        j["verdict"] = chk.ok;
        if (!chk.ok) {
            j["failed_clause"] = chk.failed_clause;
            if (chk.evidence) j["counterexample"] = json_of(*chk.evidence);
        }
        maybe_report(ver_report, j);
        rc = chk.ok ? 0 : 1;
    });

    // oracle <enumerate|supcon|infcon|check ...> --oracle-depth N
    auto* cmd_oracle =
        app.add_subcommand("oracle", "brute-force reference semantics on bounded languages");
    cmd_oracle->require_subcommand(1);
    int oracle_depth = 8;

    std::string oenum_file, oenum_kind = "marked";
    auto* orc_enum = cmd_oracle->add_subcommand("enumerate", "list language words up to a depth");
    orc_enum->add_option("gen", oenum_file, "generator file")->required();
    orc_enum->add_option("--oracle-depth", oracle_depth, "enumeration depth")->capture_default_str();
    orc_enum->add_option("--kind", oenum_kind, "marked or generated")
        ->check(CLI::IsMember({"marked", "generated"}));
    orc_enum->callback([&] {
        Generator g = load_generator(oenum_file);
        print_words(oracle::enumerate(
            g, static_cast<std::size_t>(oracle_depth),
            oenum_kind == "marked" ? LanguageKind::Marked : LanguageKind::Generated));
    });

    std::string osyn_spec, osyn_plant, osyn_sigma_u;
    auto add_oracle_syn_flags = [&](CLI::App* cmd) {
        cmd->add_option("--spec", osyn_spec, "specification generator file")->required();
        cmd->add_option("--plant", osyn_plant, "plant generator file")->required();
        cmd->add_option("--sigma-u", osyn_sigma_u, "comma list of uncontrollable events");
        cmd->add_option("--oracle-depth", oracle_depth, "enumeration depth")->capture_default_str();
    };
    auto* orc_supcon =
        cmd_oracle->add_subcommand("supcon", "set-level largest controllable sublanguage");
    add_oracle_syn_flags(orc_supcon);
    orc_supcon->callback([&] {
        Generator k = load_generator(osyn_spec);
        Generator plant = load_generator(osyn_plant);
        std::size_t d = static_cast<std::size_t>(oracle_depth);
        print_words(oracle::set_supcon(oracle::enumerate(k, d, LanguageKind::Marked),
                                       oracle::enumerate(plant, d, LanguageKind::Generated),
                                       sigma_u_or_default(osyn_sigma_u, plant)));
    });
    auto* orc_infcon = cmd_oracle->add_subcommand(
        "infcon", "set-level least prefix-closed controllable superlanguage");
    add_oracle_syn_flags(orc_infcon);
    orc_infcon->callback([&] {
        Generator k = load_generator(osyn_spec);
        Generator plant = load_generator(osyn_plant);
        std::size_t d = static_cast<std::size_t>(oracle_depth);
        print_words(oracle::set_infcon(oracle::enumerate(k, d, LanguageKind::Marked),
                                       oracle::enumerate(plant, d, LanguageKind::Generated),
                                       sigma_u_or_default(osyn_sigma_u, plant)));
    });

    auto* orc_check = cmd_oracle->add_subcommand("check", "set-level decision procedures");
    orc_check->require_subcommand(1);

    auto word_verdict = [&](const std::optional<Word>& cex) {
        std::cout << "verdict: " << (cex ? "false" : "true") << "\n";
        if (cex) std::cout << "counterexample: " << format_word(*cex) << "\n";
        rc = cex ? 1 : 0;
    };

    std::vector<std::string> ocd_plants;
    std::string ocd_spec, ocd_sigma_k;
    auto* orc_cd = orc_check->add_subcommand("cd", "set-level decomposability");
    orc_cd->add_option("--spec", ocd_spec, "specification generator file")->required();
    orc_cd->add_option("--plant", ocd_plants, "plant generator files")->required()->expected(2);
    orc_cd->add_option("--sigma-k", ocd_sigma_k, "comma list of coordinator events")->required();
    orc_cd->add_option("--oracle-depth", oracle_depth, "enumeration depth")->capture_default_str();
    orc_cd->callback([&] {
        Generator g1 = load_generator(ocd_plants[0]);
        Generator g2 = load_generator(ocd_plants[1]);
        Generator k = load_generator(ocd_spec);
        word_verdict(oracle::set_cd_check(
            oracle::enumerate(k, static_cast<std::size_t>(oracle_depth), LanguageKind::Marked),
            g1.alphabet().names(), g2.alphabet().names(), csv_set(ocd_sigma_k)));
    });

    std::string octrl_spec, octrl_plant, octrl_sigma_u;
    auto* orc_ctrl = orc_check->add_subcommand("controllable", "set-level controllability");
    orc_ctrl->add_option("--spec", octrl_spec, "specification generator file")->required();
    orc_ctrl->add_option("--plant", octrl_plant, "plant generator file")->required();
    orc_ctrl->add_option("--sigma-u", octrl_sigma_u, "comma list of uncontrollable events");
    orc_ctrl->add_option("--oracle-depth", oracle_depth, "enumeration depth")
        ->capture_default_str();
    orc_ctrl->callback([&] {
        Generator k = load_generator(octrl_spec);
        Generator plant = load_generator(octrl_plant);
        std::size_t d = static_cast<std::size_t>(oracle_depth);
        word_verdict(oracle::set_controllability(
            oracle::enumerate(k, d, LanguageKind::Marked),
            oracle::enumerate(plant, d, LanguageKind::Generated),
            sigma_u_or_default(octrl_sigma_u, plant)));
    });

    std::string oobs_file, oobs_events;
    auto* orc_obs = orc_check->add_subcommand("observer", "set-level observer property");
    orc_obs->add_option("gen", oobs_file, "generator file")->required();
    orc_obs->add_option("--events", oobs_events, "comma list of observed events")->required();
    orc_obs->add_option("--oracle-depth", oracle_depth, "enumeration depth")->capture_default_str();
    orc_obs->callback([&] {
        Generator g = load_generator(oobs_file);
        auto cex = oracle::set_observer_check(
            oracle::enumerate(g, static_cast<std::size_t>(oracle_depth), LanguageKind::Marked),
            g.alphabet().restrict_to(csv_set(oobs_events)));
        std::cout << "verdict: " << (cex ? "false" : "true") << "\n";
        if (cex) {
            std::cout << "counterexample: " << format_word(cex->first) << "\n";
            std::cout << "continuation: " << format_word(cex->second) << "\n";
        }
        rc = cex ? 1 : 0;
    });

    std::vector<std::string> onc_files;
    auto* orc_nc = orc_check->add_subcommand("nonconflicting", "set-level nonconflict");
    orc_nc->add_option("files", onc_files, "two generator files")->required()->expected(2);
    orc_nc->add_option("--oracle-depth", oracle_depth, "enumeration depth")->capture_default_str();
    orc_nc->callback([&] {
        std::size_t d = static_cast<std::size_t>(oracle_depth);
        word_verdict(oracle::set_nonconflict(
            oracle::enumerate(load_generator(onc_files[0]), d, LanguageKind::Marked),
            oracle::enumerate(load_generator(onc_files[1]), d, LanguageKind::Marked)));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
