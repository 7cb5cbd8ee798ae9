#pragma once

// The domopt command line. `run` takes the arguments after the program name
// and writes to the given streams, so tests can drive it in-process.

#include <CLI11.hpp>
#include <gmpxx.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "domopt/domopt.hpp"
#include "domopt/verify.hpp"

namespace domopt::cli {

inline constexpr const char* tool_version = "1.0.0";

enum ExitCode : int { ok = 0, claim_failure = 1, usage = 2, parse_failure = 3, cap = 4 };

/// Raised for bad command-line values that CLI11 itself cannot detect.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Unreadable or corrupt input files.
class InputError : public Error {
public:
    using Error::Error;
};

inline std::string fnv1a64(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write '" + tmp + "'");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

inline std::string utc_timestamp()
{
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct RunManifest {
    RunManifest(std::string cmd, json params) : command(std::move(cmd)), parameters(std::move(params)) {}

    std::string command;
    json parameters;
    json input_digests = json::object();
    std::vector<std::string> outputs;
    double wall_time_seconds = 0;

    json to_json(bool deterministic) const
    {
        json j{{"command", command},
               {"parameters", parameters},
               {"input_digests", input_digests},
               {"tool_version", tool_version},
               {"outputs", outputs}};
        if (!deterministic) {
            j["wall_time_seconds"] = wall_time_seconds;
            j["timestamp"] = utc_timestamp();
        }
        return j;
    }
};

struct Settings {
    int jobs = 1;
    std::string cache_dir;
    bool deterministic = false;
};

// ---------------------------------------------------------------------------
// Input helpers.

/// Decimal or fraction literal: "3", "-1/2", "0.25".
inline mpq_class parse_rational(const std::string& s)
{
    const auto bad = [&] { return UsageError("'" + s + "' is not a rational number"); };
    if (s.empty()) throw bad();
    mpq_class q;
    try {
        if (auto dot = s.find('.'); dot != std::string::npos) {
            const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
            if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) throw bad();
            const bool neg = !whole.empty() && whole[0] == '-';
            const std::string digits = (neg ? whole.substr(1) : whole) + frac;
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) throw bad();
            mpz_class den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            q = mpq_class(mpz_class(digits, 10), den);
            if (neg) q = -q;
        } else {
            if (s.find_first_not_of("-0123456789/") != std::string::npos) throw bad();
            if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw bad();
        }
    } catch (const std::invalid_argument&) {
        throw bad();
    }
    q.canonicalize();
    return q;
}

inline std::pair<mpq_class, mpq_class> parse_range(const std::string& s)
{
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("range '" + s + "' must look like lo:hi");
    auto lo = parse_rational(s.substr(0, colon)), hi = parse_rational(s.substr(colon + 1));
    if (hi < lo) throw UsageError("range '" + s + "' is empty");
    return {lo, hi};
}

/// "family:name:p1:p2" for the built-in families.
inline Graph parse_family_spec(const std::string& spec)
{
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() < 2) throw UsageError("family spec needs a name: family:<name>:<params>");
    std::vector<int> params;
    for (std::size_t i = 2; i < parts.size(); ++i) {
        try {
            std::size_t used = 0;
            params.push_back(std::stoi(parts[i], &used));
            if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
        } catch (const std::exception&) {
            throw UsageError("family parameter '" + parts[i] + "' is not an integer");
        }
    }
    return family::by_name(parts[1], params);
}

/// Graph text: a graph6 line (optionally with the >>graph6<< header) or an
/// edge list "n; u v; ...". graph6 bytes start at '?', so a leading digit
/// means an edge list.
inline Graph parse_graph_text(std::string_view text)
{
    std::size_t start = 0;
    while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
    if (start < text.size() && std::isdigit(static_cast<unsigned char>(text[start]))) return parse_edge_list(text);
    std::string_view line = text;
    if (auto nl = line.find('\n'); nl != std::string_view::npos) {
        for (std::size_t i = nl + 1; i < line.size(); ++i)
            if (!std::isspace(static_cast<unsigned char>(line[i])))
                throw ParseError("expected a single graph6 line", i);
        line = line.substr(0, nl + 1);
    }
    return parse_graph6(line);
}

/// A graph argument: "-" for stdin, "family:..." , an existing file path, or
/// literal graph text. Returns the graph and a digest of the bytes read.
inline std::pair<Graph, std::string> load_graph_argument(const std::string& arg, std::istream& in)
{
    if (arg == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        const std::string text = ss.str();
        return {parse_graph_text(text), fnv1a64(text)};
    }
    if (arg.rfind("family:", 0) == 0) return {parse_family_spec(arg), fnv1a64(arg)};
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        const std::string text = read_file(arg);
        return {parse_graph_text(text), fnv1a64(text)};
    }
    return {parse_graph_text(arg), fnv1a64(arg)};
}

inline void warn_large_order(int n, std::ostream& err)
{
    if (n >= 9) err << "warning: exhaustive work at order " << n << " is slow (n = 9 takes seconds per class, n = 10 much longer)\n";
}

inline std::string render_decimal(const mpq_class& q, int digits)
{
    if (q == 0) return "0";
    const auto bits = static_cast<mp_bitcnt_t>(64 + 4 * digits);
    mpf_class f(q, bits);
    char* raw = nullptr;
    gmp_asprintf(&raw, "%.*Fg", digits, f.get_mpf_t());
    std::string s(raw);
    void (*free_fn)(void*, std::size_t) = nullptr;
    mp_get_memory_functions(nullptr, nullptr, &free_fn);
    free_fn(raw, std::strlen(raw) + 1);
    return s;
}

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

// ---------------------------------------------------------------------------
// Atlas cache: atlas/<n>/<m>.jsonl with report and manifest sidecars.

class Atlas : public ClassCache {
public:
    explicit Atlas(std::filesystem::path root, std::ostream* warnings = nullptr, bool deterministic = false)
        : root_(std::move(root)), warnings_(warnings), deterministic_(deterministic) {}

    std::map<std::string, DomPoly> load(int n, int m) override { return load(n, m, warnings_ ? *warnings_ : std::cerr); }

    void store(const ClassReport& rep) override
    {
        RunManifest manifest{"verify characterization", {{"n", rep.n}, {"m", rep.m}}};
        manifest.input_digests["generated"] = fnv1a64("class " + std::to_string(rep.n) + " " + std::to_string(rep.m));
        store(rep, manifest, deterministic_);
    }

    std::filesystem::path class_path(int n, int m) const
    {
        return root_ / "atlas" / std::to_string(n) / (std::to_string(m) + ".jsonl");
    }

    /// Known polynomials for the class; a corrupt file is reported and ignored.
    std::map<std::string, DomPoly> load(int n, int m, std::ostream& err) const
    {
        std::map<std::string, DomPoly> polys;
        const auto path = class_path(n, m);
        std::ifstream in(path);
        if (!in) return polys;
        std::string line;
        std::size_t line_no = 0;
        try {
            while (std::getline(in, line)) {
                ++line_no;
                if (line.empty()) continue;
                const auto j = json::parse(line);
                const std::string g6 = j.at("graph6").get<std::string>();
                const Graph g = parse_graph6(g6);
                DomPoly p = dom_poly_from_json(j.at("poly"));
                if (g.order() != n || g.size() != m || p.n != n || !invariant_violation(p).empty())
                    throw InvalidArgument("entry does not belong to the class");
                polys.emplace(g6, std::move(p));
            }
        } catch (const std::exception& e) {
            err << "warning: ignoring cache " << path.string() << " (line " << line_no << ": " << e.what() << ")\n";
            polys.clear();
        }
        return polys;
    }

    std::vector<std::string> store(const ClassReport& rep, RunManifest manifest, bool deterministic) const
    {
        const auto base = class_path(rep.n, rep.m);
        std::string lines;
        for (const auto& mb : rep.members)
            lines += json{{"graph6", mb.graph6}, {"poly", to_json(mb.poly)}}.dump() + "\n";
        const auto report_path = std::filesystem::path(base).replace_extension(".report.json");
        const auto manifest_path = std::filesystem::path(base).replace_extension(".manifest.json");
        write_file(base, lines);
        write_file(report_path, to_json(rep).dump(2) + "\n");
        manifest.outputs = {base.string(), report_path.string()};
        write_file(manifest_path, manifest.to_json(deterministic).dump(2) + "\n");
        return {base.string(), report_path.string(), manifest_path.string()};
    }

private:
    std::filesystem::path root_;
    std::ostream* warnings_;
    bool deterministic_;
};

// ---------------------------------------------------------------------------
// Subcommands.

inline int cmd_poly(const std::string& input, const std::string& engine, int order_cap, const Settings& s,
                    std::istream& in, std::ostream& out)
{
    const auto [g, digest] = load_graph_argument(input, in);
    CountOptions opt{order_cap, s.jobs};
    const DomPoly d = engine == "inclusion-exclusion" ? count_by_inclusion_exclusion(g, opt) : count_by_subsets(g, opt);

    json checks = json::array();
    bool all = true;
    auto check = [&](const std::string& name, bool pass, const std::string& detail) {
        all = all && pass;
        checks.push_back({{"check", name}, {"pass", pass}, {"detail", detail}});
    };
    const auto violation = invariant_violation(d);
    check("coefficient invariants", violation.empty(), violation);
    const int n = g.order();
    if (engine == "both") {
        const DomPoly e = count_by_inclusion_exclusion(g, opt);
        std::string detail;
        for (int i = 0; i <= n && detail.empty(); ++i)
            if (e.d[static_cast<std::size_t>(i)] != d.d[static_cast<std::size_t>(i)])
                detail = "index " + std::to_string(i) + ": subsets " + d.d[static_cast<std::size_t>(i)].get_str() +
                         ", inclusion-exclusion " + e.d[static_cast<std::size_t>(i)].get_str();
        check("engines agree", detail.empty(), detail);
    }
    if (n > 0) {
        const int delta = g.min_degree();
        std::string detail;
        for (int j = 0; j <= delta && detail.empty(); ++j)
            if (tail_coefficient(g, j) != d.d[static_cast<std::size_t>(n - j)])
                detail = "index " + std::to_string(n - j) + ": expected C(" + std::to_string(n) + "," + std::to_string(j) + ")";
        check("tail binomials d(n-j) = C(n,j), j <= " + std::to_string(delta), detail.empty(), detail);
        const auto expect = delta_plus_one_coefficient(g);
        const auto got = d.d[static_cast<std::size_t>(n - delta - 1)];
        check("defect at d(n-delta-1)", expect == got,
              "index " + std::to_string(n - delta - 1) + ": formula " + expect.get_str() + ", counted " + got.get_str());
        const auto universal = universal_vertex_coefficient(g);
        check("d(1) = universal vertex count", universal == d.d[1],
              "formula " + universal.get_str() + ", counted " + d.d[1].get_str());
    }

    json j{{"graph6", to_graph6(g)}, {"n", n}, {"m", g.size()}, {"input_digest", digest}};
    const json p = to_json(d);
    j["gamma"] = p["gamma"];
    j["d"] = p["d"];
    j["checks"] = std::move(checks);
    out << j.dump(2) << "\n";
    return all ? ok : claim_failure;
}

inline std::vector<Graph> load_class(int n, int m, const std::string& from_file, RunManifest& manifest)
{
    if (from_file.empty()) {
        manifest.input_digests["generated"] = fnv1a64("class " + std::to_string(n) + " " + std::to_string(m));
        return enumerate_class(n, m);
    }
    const std::string text = read_file(from_file);
    manifest.input_digests[from_file] = fnv1a64(text);
    std::istringstream in(text);
    return ingest_graph6_class(in, n, m);
}

inline int cmd_enumerate(int n, int m, const std::string& from_file, const std::string& format, const Settings& s,
                         std::ostream& out, std::ostream& err)
{
    warn_large_order(n, err);
    const auto t0 = std::chrono::steady_clock::now();
    RunManifest manifest{"enumerate", {{"n", n}, {"m", m}, {"from_file", from_file}}};
    const auto graphs = load_class(n, m, from_file, manifest);
    ClassIndex idx{n, m, {}};
    for (const auto& g : graphs) idx.members.emplace_back(to_graph6(g));
    if (format == "json")
        out << to_json(idx).dump(2) << "\n";
    else
        for (const auto& l : idx.members) out << l.graph6() << "\n";
    if (!s.cache_dir.empty()) {
        const auto base = Atlas(s.cache_dir).class_path(n, m);
        const auto index_path = std::filesystem::path(base).replace_extension(".class.json");
        write_file(index_path, to_json(idx).dump(2) + "\n");
        manifest.outputs = {index_path.string()};
        manifest.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_file(std::filesystem::path(base).replace_extension(".class.manifest.json"),
                   manifest.to_json(s.deterministic).dump(2) + "\n");
    }
    return ok;
}

inline ClassifyOptions classify_options(const Settings& s)
{
    ClassifyOptions opt;
    opt.jobs = s.jobs;
    opt.order_bound = canonical_order_bound;
    return opt;
}

inline int cmd_classify(int n, int m, const std::string& from_file, bool members, const Settings& s, std::ostream& out,
                        std::ostream& err)
{
    warn_large_order(n, err);
    const auto t0 = std::chrono::steady_clock::now();
    RunManifest manifest{"classify", {{"n", n}, {"m", m}, {"from_file", from_file}, {"jobs", s.jobs}}};
    const auto graphs = load_class(n, m, from_file, manifest);
    std::optional<Atlas> atlas;
    std::map<std::string, DomPoly> cached;
    if (!s.cache_dir.empty()) {
        atlas.emplace(s.cache_dir);
        cached = atlas->load(n, m, err);
    }
    const ClassReport rep = classify_members(n, m, graphs, classify_options(s), &cached);
    out << to_json(rep, members).dump(2) << "\n";
    if (atlas) {
        manifest.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        atlas->store(rep, manifest, s.deterministic);
    }
    return ok;
}

inline int cmd_verify(const std::string& target, const std::vector<int>& params, const Settings& s,
                      std::ostream& out, std::ostream& err)
{
    const auto need = [&](std::size_t count) {
        if (params.size() != count)
            throw UsageError("verify " + target + " takes " + std::to_string(count) + " integer parameter(s)");
    };
    const auto t0 = std::chrono::steady_clock::now();
    const ClassifyOptions opt = classify_options(s);
    ClaimReport rep;
    if (target == "characterization") {
        need(1);
        warn_large_order(params[0], err);
        std::optional<Atlas> atlas;
        if (!s.cache_dir.empty()) atlas.emplace(s.cache_dir, &err, s.deterministic);
        rep = verify_characterization_claims(params[0], opt, atlas ? &*atlas : nullptr);
    } else if (target == "dense") {
        need(2);
        rep = verify_dense_claims(params[0], params[1], opt.counting);
    } else if (target == "least-optimal") {
        need(2);
        rep = verify_least_optimal_claims(params[0], params[1], opt);
    } else if (target == "lemmas") {
        need(1);
        warn_large_order(params[0], err);
        rep = verify_lemma_claims(params[0], opt);
    } else if (target == "reliability") {
        need(1);
        rep = verify_reliability_claims(params[0], opt);
    } else {
        throw UsageError("unknown verify target '" + target + "'");
    }
    const json report = to_json(rep);
    out << report.dump(2) << "\n";
    if (!s.cache_dir.empty()) {
        std::string stem = target;
        for (int p : params) stem += "-" + std::to_string(p);
        const auto path = std::filesystem::path(s.cache_dir) / "verify" / (stem + ".json");
        write_file(path, report.dump(2) + "\n");
        RunManifest manifest{"verify", {{"target", target}, {"params", params}}};
        manifest.input_digests["generated"] = fnv1a64("verify " + stem);
        manifest.outputs = {path.string()};
        manifest.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_file(std::filesystem::path(path).replace_extension(".manifest.json"),
                   manifest.to_json(s.deterministic).dump(2) + "\n");
    }
    return rep.all_pass() ? ok : claim_failure;
}

inline int cmd_grid(const std::vector<std::string>& graphs, const std::string& x_range, const std::string& p_range,
                    int steps, int precision, std::istream& in, std::ostream& out)
{
    if (graphs.empty()) throw UsageError("grid needs at least one --graph");
    if (steps < 2) throw UsageError("grid needs --steps >= 2");
    if (precision < 1) throw UsageError("grid needs --precision >= 1");
    const bool reliability = !p_range.empty();
    const auto [lo, hi] = parse_range(reliability ? p_range : x_range);
    if (reliability && (lo < 0 || hi > 1)) throw UsageError("probability range must lie in [0,1]");

    std::vector<IntPoly> polys;
    for (const auto& arg : graphs) {
        const DomPoly d = count_by_subsets(load_graph_argument(arg, in).first);
        polys.push_back(reliability ? reliability_polynomial(d).coeffs : d.poly());
    }
    out << (reliability ? "p" : "x");
    for (const auto& arg : graphs) out << "," << csv_field(arg);
    out << "\n";
    for (int i = 0; i < steps; ++i) {
        mpq_class t = lo + (hi - lo) * mpq_class(i, steps - 1);
        t.canonicalize();
        out << render_decimal(t, precision);
        for (const auto& p : polys) out << "," << render_decimal(p.eval(t), precision);
        out << "\n";
    }
    return ok;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in = std::cin)
{
    CLI::App app{"Exact domination polynomials and optimal-graph classification", "domopt"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    Settings s;
    if (const char* env = std::getenv("DOMOPT_CACHE_DIR")) s.cache_dir = env;
    app.add_option("--jobs,-j", s.jobs, "Worker threads")->check(CLI::Range(1, 256));
    app.add_option("--cache-dir", s.cache_dir, "Atlas directory (overrides DOMOPT_CACHE_DIR)");
    app.add_flag("--deterministic", s.deterministic, "Omit timestamps and wall times from manifests");

    auto* poly = app.add_subcommand("poly", "Domination polynomial of one graph");
    std::string poly_input, engine = "both";
    int order_cap = CountOptions{}.order_cap;
    poly->add_option("graph", poly_input, "graph6 line, edge list, file path, family:<name>:<params>, or - for stdin")
        ->required();
    poly->add_option("--engine", engine, "Counting engine")
        ->check(CLI::IsMember({"subsets", "inclusion-exclusion", "both"}));
    poly->add_option("--order-cap", order_cap, "Largest order accepted for counting")->check(CLI::Range(0, 62));

    auto* enumerate = app.add_subcommand("enumerate", "List a class up to isomorphism");
    int en = 0, em = 0;
    std::string en_file, format = "lines";
    enumerate->add_option("n", en)->required();
    enumerate->add_option("m", em)->required();
    enumerate->add_option("--from-file", en_file, "Read the class from a graph6 file");
    enumerate->add_option("--format", format)->check(CLI::IsMember({"lines", "json"}));

    auto* classify = app.add_subcommand("classify", "Decide optimal and least-optimal graphs of a class");
    int cn = 0, cm = 0;
    std::string cl_file;
    bool with_members = false;
    classify->add_option("n", cn)->required();
    classify->add_option("m", cm)->required();
    classify->add_option("--from-file", cl_file, "Read the class from a graph6 file");
    classify->add_flag("--members", with_members, "Include every member and its polynomial");

    auto* verify = app.add_subcommand("verify", "Check a family of claims");
    std::string target;
    std::vector<int> params;
    verify->add_option("target", target)
        ->required()
        ->check(CLI::IsMember({"characterization", "dense", "least-optimal", "lemmas", "reliability"}));
    verify->add_option("params", params, "n, or n k");

    auto* grid = app.add_subcommand("grid", "CSV of D(G,x) or Drel(G,p) over a range");
    std::vector<std::string> grid_graphs;
    std::string x_range, p_range;
    int steps = 11, precision = 12;
    grid->add_option("--graph,-g", grid_graphs, "Graph argument (repeatable)");
    auto* xr = grid->add_option("--x-range", x_range, "lo:hi for D(G,x)");
    auto* pr = grid->add_option("--p-range", p_range, "lo:hi for Drel(G,p)");
    xr->excludes(pr);
    grid->add_option("--steps", steps, "Number of points, at least 2");
    grid->add_option("--precision", precision, "Significant digits in the rendering");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return ok;
        }
        err << "domopt: " << e.what() << "\n";
        return usage;
    }

    try {
        if (poly->parsed()) return cmd_poly(poly_input, engine, order_cap, s, in, out);
        if (enumerate->parsed()) return cmd_enumerate(en, em, en_file, format, s, out, err);
        if (classify->parsed()) return cmd_classify(cn, cm, cl_file, with_members, s, out, err);
        if (verify->parsed()) return cmd_verify(target, params, s, out, err);
        if (grid->parsed()) {
            if (x_range.empty() && p_range.empty()) throw UsageError("grid needs --x-range or --p-range");
            return cmd_grid(grid_graphs, x_range, p_range, steps, precision, in, out);
        }
    } catch (const ParseError& e) {
        err << "domopt: parse error: " << e.what() << "\n";
        return parse_failure;
    } catch (const InputError& e) {
        err << "domopt: " << e.what() << "\n";
        return parse_failure;
    } catch (const CapExceeded& e) {
        err << "domopt: cap exceeded: " << e.what() << "\n";
        return cap;
    } catch (const Error& e) {
        err << "domopt: " << e.what() << "\n";
        return usage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "domopt: " << e.what() << "\n";
        return parse_failure;
    }
    return usage;
}

} // namespace domopt::cli
