#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"

using namespace domopt;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "")
{
    std::ostringstream out, err;
    std::istringstream in(stdin_text);
    const int code = cli::run(args, out, err, in);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("domopt-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> csv_column(const std::string& csv, std::size_t col)
{
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string cell;
        for (std::size_t i = 0; i <= col; ++i) std::getline(row, cell, ',');
        out.push_back(cell);
    }
    return out;
}

} // namespace

TEST(Cli, PolyGraph6)
{
    const auto r = run({"poly", "A_"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["d"], json({"0", "2", "1"}));
    EXPECT_EQ(j["gamma"], 1);
}

TEST(Cli, PolyEdgeListFileAndStdin)
{
    const auto dir = scratch("poly");
    const auto file = dir / "p4.txt";
    std::ofstream(file) << "4\n0 1\n1 2\n2 3\n";
    for (const auto& r : {run({"poly", file.string()}), run({"poly", "-"}, "4; 0 1; 1 2; 2 3")}) {
        ASSERT_EQ(r.code, 0) << r.err;
        const auto j = json::parse(r.out);
        EXPECT_EQ(j["d"], json({"0", "0", "4", "4", "1"}));
        for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
    }
    fs::remove_all(dir);
}

TEST(Cli, PolyFamily)
{
    const auto r = run({"poly", "family:complete-minus-matching:6:2", "--engine", "subsets"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["d"], json({"0", "2", "15", "20", "15", "6", "1"}));
}

TEST(Cli, ExitCodes)
{
    const auto parse = run({"poly", "C!x"});
    EXPECT_EQ(parse.code, 3);
    EXPECT_NE(parse.err.find("byte 1"), std::string::npos) << parse.err;
    EXPECT_EQ(run({"poly", "family:complete:30"}).code, 4);
    EXPECT_EQ(run({"poly", "family:complete:30", "--order-cap", "30", "--engine", "subsets"}).code, 0);
    EXPECT_EQ(run({"classify", "11", "3"}).code, 4);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"verify", "everything", "5"}).code, 2);
    EXPECT_EQ(run({"verify", "dense", "6"}).code, 2);
    EXPECT_EQ(run({"classify", "5", "3", "--from-file", "/nonexistent/file"}).code, 3);
    EXPECT_EQ(run({"--version"}).code, 0);
}

TEST(Cli, ClassifyOutcomes)
{
    const auto none = run({"classify", "6", "5"});
    ASSERT_EQ(none.code, 0);
    const auto j = json::parse(none.out);
    EXPECT_FALSE(j["optimal_exists"].get<bool>());
    EXPECT_EQ(j["witness"]["verdict"]["relation"], "crossing");
    const auto three = json::parse(run({"classify", "6", "3"}).out);
    ASSERT_EQ(three["optimal_members"].size(), 1U);
    EXPECT_TRUE(isomorphic(parse_graph6(three["optimal_members"][0].get<std::string>()),
                           family::matching_plus_isolates(3, 0)));
}

TEST(Cli, ClassifyFromFile)
{
    const auto dir = scratch("from-file");
    const auto file = dir / "class.g6";
    std::ofstream out(file);
    for (const auto& g : enumerate_class(5, 4)) out << to_graph6(g.permuted(std::vector<int>{4, 3, 2, 1, 0})) << "\n";
    out.close();
    const auto r = run({"classify", "5", "4", "--from-file", file.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out), json::parse(run({"classify", "5", "4"}).out));
    fs::remove_all(dir);
}

TEST(Cli, EnumerateFormats)
{
    const auto lines = run({"enumerate", "5", "4"});
    ASSERT_EQ(lines.code, 0);
    EXPECT_EQ(std::count(lines.out.begin(), lines.out.end(), '\n'), 6);
    const auto j = json::parse(run({"enumerate", "5", "4", "--format", "json"}).out);
    EXPECT_EQ(j["count"], 6);
    EXPECT_EQ(j["members"].size(), 6U);
}

TEST(Cli, CacheIsDeterministicAndReused)
{
    const auto dir = scratch("cache");
    const std::vector<std::string> args{"--cache-dir", dir.string(), "--deterministic", "classify", "6", "7"};
    const auto first = run(args);
    ASSERT_EQ(first.code, 0) << first.err;
    const auto jsonl = dir / "atlas" / "6" / "7.jsonl";
    const auto manifest = dir / "atlas" / "6" / "7.manifest.json";
    ASSERT_TRUE(fs::exists(jsonl));
    ASSERT_TRUE(fs::exists(manifest));
    ASSERT_TRUE(fs::exists(dir / "atlas" / "6" / "7.report.json"));
    const auto a = slurp(jsonl), ma = slurp(manifest);
    const auto second = run(args);
    EXPECT_EQ(first.out, second.out);
    EXPECT_EQ(a, slurp(jsonl));
    EXPECT_EQ(ma, slurp(manifest));
    EXPECT_FALSE(json::parse(ma).contains("timestamp"));

    std::ofstream(jsonl, std::ios::app) << "not json\n";
    const auto third = run(args);
    EXPECT_EQ(third.code, 0);
    EXPECT_NE(third.err.find("ignoring cache"), std::string::npos);
    EXPECT_EQ(third.out, first.out);
    fs::remove_all(dir);
}

TEST(Cli, CacheDirFromEnvironment)
{
    const auto dir = scratch("env");
    ::setenv("DOMOPT_CACHE_DIR", dir.c_str(), 1);
    const auto r = run({"classify", "4", "2"});
    ::unsetenv("DOMOPT_CACHE_DIR");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(fs::exists(dir / "atlas" / "4" / "2.jsonl"));
    EXPECT_TRUE(json::parse(slurp(dir / "atlas" / "4" / "2.manifest.json")).contains("timestamp"));
    fs::remove_all(dir);
}

TEST(Cli, VerifyTargets)
{
    EXPECT_EQ(run({"verify", "characterization", "5"}).code, 0);
    EXPECT_EQ(run({"verify", "dense", "6", "3"}).code, 0);
    EXPECT_EQ(run({"verify", "lemmas", "5"}).code, 0);
    EXPECT_EQ(run({"verify", "reliability", "5"}).code, 0);
    const auto j = json::parse(run({"verify", "lemmas", "4"}).out);
    EXPECT_EQ(j["failed"], 0);
    EXPECT_EQ(j["claims"].size(), 8U);
}

TEST(Cli, VerifyNamesDiscrepancies)
{
    // The stated crossing (k-1)/(k-2) = 2 differs from the counted one at 1.
    const auto r = run({"verify", "least-optimal", "8", "3"});
    EXPECT_EQ(r.code, 1);
    const auto j = json::parse(r.out);
    bool named = false;
    for (const auto& c : j["claims"])
        if (!c["pass"].get<bool>()) named = named || c["detail"].get<std::string>().find("found 1") != std::string::npos;
    EXPECT_TRUE(named) << r.out;

    const auto six = json::parse(run({"verify", "characterization", "6"}).out);
    EXPECT_EQ(six["failed"], 1);
    for (const auto& c : six["claims"]) {
        if (!c["pass"].get<bool>()) {
            EXPECT_NE(c["detail"].get<std::string>().find("n=6 m=11"), std::string::npos);
        }
    }
}

TEST(Cli, GridReliabilityOfK2)
{
    const auto r = run({"grid", "-g", "A_", "--p-range", "0:1", "--steps", "11"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto col = csv_column(r.out, 1);
    ASSERT_EQ(col.size(), 11U);
    EXPECT_EQ(col.front(), "0");
    EXPECT_EQ(col.back(), "1");
    for (std::size_t i = 1; i < col.size(); ++i) EXPECT_LT(std::stod(col[i - 1]), std::stod(col[i]));
    EXPECT_EQ(col[5], "0.75");
}

TEST(Cli, GridCrossing)
{
    const auto r = run({"grid", "-g", "family:complete-minus-matching:6:2", "-g", "family:complete-minus-p3:6",
                        "--x-range", "0:3", "--steps", "31"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto h = csv_column(r.out, 1), k = csv_column(r.out, 2);
    ASSERT_EQ(h.size(), 31U);
    // H_2 - (K_6 - P_3) = x^2 - x: below at x = 0.5, equal at 1, above at 2.
    EXPECT_LT(std::stod(h[5]), std::stod(k[5]));
    EXPECT_EQ(h[10], k[10]);
    EXPECT_GT(std::stod(h[20]), std::stod(k[20]));
}

TEST(Cli, GridUsageErrors)
{
    EXPECT_EQ(run({"grid", "-g", "A_", "--x-range", "0:1", "--steps", "1"}).code, 2);
    EXPECT_EQ(run({"grid", "--x-range", "0:1"}).code, 2);
    EXPECT_EQ(run({"grid", "-g", "A_"}).code, 2);
    EXPECT_EQ(run({"grid", "-g", "A_", "--p-range", "0:2"}).code, 2);
    EXPECT_EQ(run({"grid", "-g", "A_", "--x-range", "3:1"}).code, 2);
}

TEST(Cli, RationalParsing)
{
    EXPECT_EQ(cli::parse_rational("0.25"), mpq_class(1, 4));
    EXPECT_EQ(cli::parse_rational("-3/6"), mpq_class(-1, 2));
    EXPECT_EQ(cli::parse_rational("7"), 7);
    EXPECT_THROW(cli::parse_rational("x"), cli::UsageError);
    EXPECT_EQ(cli::render_decimal(mpq_class(1, 3), 12), "0.333333333333");
}
