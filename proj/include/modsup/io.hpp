#ifndef MODSUP_IO_HPP
#define MODSUP_IO_HPP

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "modsup/check.hpp"
#include "modsup/errors.hpp"
#include "modsup/generator.hpp"
#include "modsup/solver.hpp"

namespace modsup {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string trim_copy(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

inline ParseError parse_error(const std::string& origin, std::size_t line,
                              const std::string& msg) {
    return ParseError(origin + ":" + std::to_string(line) + ": " + msg);
}

} // namespace detail

/// Canonical text encoding of a generator: name first, then events, states,
/// initial, marked states, and transitions, each on its own line. Events and
/// states are sorted by name, transitions by source then event, so equal
/// generators encode identically.
inline std::string encode_generator(const Generator& g) {
    g.validate();
    std::ostringstream out;
    out << "name " << g.name() << "\n";
    std::vector<std::pair<std::string, bool>> events;
    for (std::size_t e = 0; e < g.alphabet().size(); ++e)
        events.emplace_back(g.alphabet().at(e).name, g.alphabet().at(e).controllable);
    std::sort(events.begin(), events.end());
    for (const auto& [name, controllable] : events)
        out << "event " << name << (controllable ? " c" : " u") << "\n";

    std::vector<std::string> states;
    for (StateId s = 0; s < g.num_states(); ++s) states.push_back(g.state_name(s));
    std::sort(states.begin(), states.end());
    for (const auto& s : states) out << "state " << s << "\n";
    out << "initial " << g.state_name(g.initial()) << "\n";
    for (const auto& s : states)
        if (g.marked(g.state_of(s))) out << "marked " << s << "\n";

    std::vector<std::tuple<std::string, std::string, std::string>> trans;
    for (StateId s = 0; s < g.num_states(); ++s)
        for (const auto& [e, t] : g.transitions_from(s))
            trans.emplace_back(g.state_name(s), g.alphabet().at(e).name, g.state_name(t));
    std::sort(trans.begin(), trans.end());
    for (const auto& [src, ev, dst] : trans)
        out << "transition " << src << " " << ev << " " << dst << "\n";
    return out.str();
}

/// Parse the text encoding. Accepts lines in any order, blank lines, and
/// whole-line comments starting with '#'. Syntax problems and dangling
/// references raise ParseError with origin and line; violations of generator
/// structure (duplicate states, nondeterminism) raise InvariantError.
inline Generator decode_generator(const std::string& text,
                                  const std::string& origin = "<string>") {
    struct Line {
        std::size_t no;
        std::vector<std::string> toks;
    };
    std::vector<Line> lines;
    {
        std::istringstream in(text);
        std::string raw;
        for (std::size_t no = 1; std::getline(in, raw); ++no) {
            std::string s = detail::trim_copy(raw);
            if (s.empty() || s[0] == '#') continue;
            lines.push_back({no, detail::tokens_of(s)});
        }
    }
    auto want = [&](const Line& l, std::size_t arity, const char* what) {
        if (l.toks.size() != arity + 1)
            throw detail::parse_error(origin, l.no, std::string("'") + what + "' expects " +
                                                        std::to_string(arity) + " fields");
    };

    std::optional<std::string> name;
    Alphabet alpha;
    for (const auto& l : lines) {
        if (l.toks[0] == "name") {
            if (l.toks.size() < 2) throw detail::parse_error(origin, l.no, "'name' expects a value");
            if (name) throw detail::parse_error(origin, l.no, "duplicate 'name'");
            std::string n = l.toks[1];
            for (std::size_t i = 2; i < l.toks.size(); ++i) n += " " + l.toks[i];
            name = n;
        } else if (l.toks[0] == "event") {
            want(l, 2, "event");
            if (!valid_event_name(l.toks[1]))
                throw detail::parse_error(origin, l.no, "invalid event name '" + l.toks[1] + "'");
            if (alpha.contains(l.toks[1]))
                throw detail::parse_error(origin, l.no, "duplicate event '" + l.toks[1] + "'");
            if (l.toks[2] != "c" && l.toks[2] != "u")
                throw detail::parse_error(origin, l.no,
                                          "event flag must be 'c' or 'u', got '" + l.toks[2] + "'");
            alpha.add({l.toks[1], l.toks[2] == "c"});
        }
    }
    if (!name) throw ParseError(origin + ": missing 'name' line");

    Generator g(*name, alpha);
    for (const auto& l : lines)
        if (l.toks[0] == "state") {
            want(l, 1, "state");
            g.add_state(l.toks[1]);
        }
    auto state_ref = [&](const Line& l, const std::string& s) {
        auto id = g.find_state(s);
        if (!id) throw detail::parse_error(origin, l.no, "unknown state '" + s + "'");
        return *id;
    };

    bool saw_initial = false;
    std::set<std::pair<StateId, std::size_t>> seen_trans;
    for (const auto& l : lines) {
        if (l.toks[0] == "name" || l.toks[0] == "event" || l.toks[0] == "state") continue;
        if (l.toks[0] == "initial") {
            want(l, 1, "initial");
            if (saw_initial) throw detail::parse_error(origin, l.no, "duplicate 'initial'");
            g.set_initial(state_ref(l, l.toks[1]));
            saw_initial = true;
        } else if (l.toks[0] == "marked") {
            if (l.toks.size() < 2)
                throw detail::parse_error(origin, l.no, "'marked' expects at least one state");
            for (std::size_t i = 1; i < l.toks.size(); ++i)
                g.set_marked(state_ref(l, l.toks[i]), true);
        } else if (l.toks[0] == "transition") {
            want(l, 3, "transition");
            if (!alpha.contains(l.toks[2]))
                throw detail::parse_error(origin, l.no, "unknown event '" + l.toks[2] + "'");
            StateId src = state_ref(l, l.toks[1]);
            std::size_t ev = alpha.index_of(l.toks[2]);
            if (!seen_trans.emplace(src, ev).second)
                throw InvariantError("duplicate transition from state '" + l.toks[1] +
                                     "' on event '" + l.toks[2] + "' (line " +
                                     std::to_string(l.no) + "); generators are deterministic");
            g.add_transition(src, ev, state_ref(l, l.toks[3]));
        } else {
            throw detail::parse_error(origin, l.no, "unknown keyword '" + l.toks[0] + "'");
        }
    }
    if (g.num_states() == 0) throw ParseError(origin + ": no states");
    if (!saw_initial) throw ParseError(origin + ": missing 'initial' line");
    return g;
}

/// Write-temp-then-rename so readers never observe a half-written file.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out) throw ParseError("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

inline void save_generator(const Generator& g, const std::filesystem::path& path) {
    write_text_atomic(path, encode_generator(g));
}

inline Generator load_generator(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return decode_generator(buf.str(), path.string());
}

struct ManifestOptions {
    bool auto_extend_cd = true;
    bool auto_extend_observer = true;
    int oracle_depth = 8;
};

/// A problem instance on disk: two plant files, a specification file, an
/// optional coordinator event list (defaults to the shared events), and
/// solver options.
struct InstanceManifest {
    std::vector<std::filesystem::path> plants;
    std::filesystem::path spec;
    std::optional<std::vector<std::string>> sigma_k;
    ManifestOptions options;
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        else if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

inline std::string parse_toml_string(const std::string& origin, std::size_t no,
                                     const std::string& v) {
    if (v.size() < 2 || v.front() != '"' || v.back() != '"')
        throw parse_error(origin, no, "expected a quoted string, got '" + v + "'");
    return v.substr(1, v.size() - 2);
}

inline std::vector<std::string> parse_toml_array(const std::string& origin, std::size_t no,
                                                 const std::string& v) {
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        throw parse_error(origin, no, "expected an array, got '" + v + "'");
    std::vector<std::string> out;
    std::string inner = trim_copy(v.substr(1, v.size() - 2));
    if (inner.empty()) return out;
    std::size_t start = 0;
    while (start <= inner.size()) {
        std::size_t comma = inner.find(',', start);
        std::string item = trim_copy(comma == std::string::npos ? inner.substr(start)
                                                                : inner.substr(start, comma - start));
        out.push_back(parse_toml_string(origin, no, item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline bool parse_toml_bool(const std::string& origin, std::size_t no, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw parse_error(origin, no, "expected true or false, got '" + v + "'");
}

inline int parse_toml_int(const std::string& origin, std::size_t no, const std::string& v) {
    char* end = nullptr;
    long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw parse_error(origin, no, "expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

} // namespace detail

/// Parse a manifest in a small key = value dialect with one optional
/// [options] section. Relative file paths are resolved against base_dir.
inline InstanceManifest parse_manifest(const std::string& text, const std::string& origin,
                                       const std::filesystem::path& base_dir) {
    InstanceManifest m;
    bool saw_plants = false, saw_spec = false;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base_dir / fp;
    };
    for (std::size_t no = 1; std::getline(in, raw); ++no) {
        std::string line = detail::trim_copy(detail::strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line != "[options]")
                throw detail::parse_error(origin, no, "unknown section '" + line + "'");
            section = "options";
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw detail::parse_error(origin, no, "expected 'key = value'");
        std::string key = detail::trim_copy(line.substr(0, eq));
        std::string val = detail::trim_copy(line.substr(eq + 1));
        if (section.empty()) {
            if (key == "plants") {
                for (const auto& p : detail::parse_toml_array(origin, no, val))
                    m.plants.push_back(resolve(p));
                saw_plants = true;
            } else if (key == "spec") {
                m.spec = resolve(detail::parse_toml_string(origin, no, val));
                saw_spec = true;
            } else if (key == "sigma_k") {
                m.sigma_k = detail::parse_toml_array(origin, no, val);
            } else {
                throw detail::parse_error(origin, no, "unknown key '" + key + "'");
            }
        } else {
            if (key == "auto_extend_cd")
                m.options.auto_extend_cd = detail::parse_toml_bool(origin, no, val);
            else if (key == "auto_extend_observer")
                m.options.auto_extend_observer = detail::parse_toml_bool(origin, no, val);
            else if (key == "oracle_depth") {
                m.options.oracle_depth = detail::parse_toml_int(origin, no, val);
                if (m.options.oracle_depth < 0)
                    throw detail::parse_error(origin, no, "oracle_depth must be nonnegative");
            } else {
                throw detail::parse_error(origin, no, "unknown option '" + key + "'");
            }
        }
    }
    if (!saw_plants) throw ParseError(origin + ": missing 'plants'");
    if (m.plants.size() != 2)
        throw ParseError(origin + ": 'plants' must list exactly two files");
    if (!saw_spec) throw ParseError(origin + ": missing 'spec'");
    return m;
}

inline InstanceManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str(), path.string(), path.parent_path());
}

struct LoadedProblem {
    ProblemInstance instance;
    SolveOptions options;
    int oracle_depth = 8;
};

/// Load the manifest's generators and assemble a validated problem
/// instance. When sigma_k is not given it defaults to the shared events.
inline LoadedProblem load_problem(const InstanceManifest& m) {
    Generator g1 = load_generator(m.plants[0]);
    Generator g2 = load_generator(m.plants[1]);
    Generator spec = load_generator(m.spec);
    std::set<std::string> sk;
    if (m.sigma_k) sk.insert(m.sigma_k->begin(), m.sigma_k->end());
    else sk = g1.alphabet().intersect(g2.alphabet()).names();
    SolveOptions opts{m.options.auto_extend_cd, m.options.auto_extend_observer};
    ProblemInstance inst =
        make_problem_instance(std::move(g1), std::move(g2), std::move(spec), sk, opts);
    return {std::move(inst), opts, m.options.oracle_depth};
}

inline json json_of(const Word& w) {
    json a = json::array();
    for (const auto& e : w) a.push_back(e);
    return a;
}

inline json json_of(const Counterexample& c) {
    json j;
    j["word"] = json_of(c.word);
    j["reason"] = to_string(c.reason);
    if (c.target_word) j["target_word"] = json_of(*c.target_word);
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

inline json json_of(const CheckResult& r) {
    json j;
    j["verdict"] = r.ok();
    if (r.violation) j["counterexample"] = json_of(*r.violation);
    return j;
}

inline json json_of(const ArtifactStats& s) {
    json j;
    j["states"] = s.states;
    j["transitions"] = s.transitions;
    return j;
}

inline json json_of(const SolveReport& r) {
    json j;
    json sizes = json::object();
    for (const auto& [name, st] : r.sizes) sizes[name] = json_of(st);
    j["sizes"] = sizes;
    json counters = json::object();
    for (const auto& [name, v] : r.counters) counters[name] = v;
    j["counters"] = counters;
    json certs = json::object();
    for (const auto& [name, v] : r.certificates) certs[name] = v;
    j["certificates"] = certs;
    j["notes"] = r.notes;
    return j;
}

inline json json_of(const SolutionBundle& b) {
    json j;
    j["status"] = to_string(b.status);
    if (b.sigma0) {
        json a = json::array();
        for (const auto& n : b.sigma0->names()) a.push_back(n);
        j["sigma0"] = a;
    }
    j["report"] = json_of(b.report);
    return j;
}

inline void write_report(const std::filesystem::path& path, const json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

} // namespace modsup

#endif
