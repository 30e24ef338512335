#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
    int code = 0;
    std::string out, err;
};

Result run(std::vector<std::string> args, std::string const& stdin_text = "") {
    args.insert(args.begin(), "onlz");
    std::vector<char const*> argv;
    for(auto const& a : args) argv.push_back(a.c_str());
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    Result r;
    r.code = onlz::cli::main(static_cast<int>(argv.size()), argv.data(), in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class TempFile {
public:
    explicit TempFile(std::string const& content) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("onlz_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::ofstream(path_, std::ios::binary) << content;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

std::string random_bytes(std::mt19937_64& rng, std::size_t n, std::string const& alphabet) {
    std::string s(n, ' ');
    for(auto& c : s) c = alphabet[rng() % alphabet.size()];
    return s;
}

struct Row {
    std::uint64_t i, start, len;
    std::string kind;
    friend bool operator==(Row const&, Row const&) = default;
};

std::vector<Row> parse_text(std::string const& out) {
    std::vector<Row> rows;
    std::istringstream s(out);
    std::string line;
    while(std::getline(s, line)) {
        if(line.empty() || line[0] == '#') continue;
        std::istringstream f(line);
        Row r;
        f >> r.i >> r.start >> r.len >> r.kind;
        rows.push_back(r);
    }
    return rows;
}

std::vector<Row> parse_json(std::string const& out) {
    std::vector<Row> rows;
    for(auto const& j : nlohmann::json::parse(out)) {
        if(j.contains("stats")) continue;
        rows.push_back({j.at("i"), j.at("start"), j.at("len"), j.at("kind")});
    }
    return rows;
}

} // namespace

TEST(Cli, ThreeLiterals) {
    TempFile f("abc");
    auto const r = run({"--input", f.path(), "--sigma", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1\t1\t1\tliteral\n2\t2\t1\tliteral\n3\t3\t1\tliteral\n");
}

TEST(Cli, RunOfOneCharacter) {
    TempFile f("aaaa");
    auto const r = run({"--input", f.path(), "--sigma", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1\t1\t1\tliteral\n2\t2\t3\tcopy\n");
}

TEST(Cli, MissingFileIsIoError) {
    auto const r = run({"--input", "/nonexistent/onlz/input", "--sigma", "2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, AlphabetViolation) {
    TempFile f("abca");
    EXPECT_EQ(run({"--input", f.path(), "--sigma", "2"}).code, 2);
    TempFile g("ACGTN");
    EXPECT_EQ(run({"--input", g.path(), "--dna"}).code, 2);
}

TEST(Cli, LengthMismatch) {
    EXPECT_EQ(run({"--stdin", "--sigma", "2", "--length", "5"}, "abab").code, 3);
    EXPECT_EQ(run({"--stdin", "--sigma", "2", "--length", "3"}, "abab").code, 3);
    EXPECT_EQ(run({"--stdin", "--sigma", "2", "--length", "4"}, "abab").code, 0);
}

TEST(Cli, UsageErrors) {
    TempFile f("abc");
    EXPECT_EQ(run({"--input", f.path(), "--sigma", "3", "--infer"}).code, 2);
    EXPECT_EQ(run({"--input", f.path()}).code, 2);
    EXPECT_EQ(run({"--stdin", "--sigma", "3"}, "abc").code, 2);
    EXPECT_EQ(run({"--input", f.path(), "--sigma", "3", "--block-size", "0"}).code, 2);
    EXPECT_EQ(run({"--input", f.path(), "--sigma", "3", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"--sigma", "3"}).code, 2);
}

TEST(Cli, InferWarnsAndFactorizes) {
    auto const r = run({"--stdin", "--infer"}, "abcabc");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("warning"), std::string::npos);
    EXPECT_EQ(r.out, "1\t1\t1\tliteral\n2\t2\t1\tliteral\n3\t3\t1\tliteral\n4\t4\t3\tcopy\n");
}

TEST(Cli, JsonRoundTripsAndMatchesText) {
    std::mt19937_64 rng(8);
    for(int it = 0; it < 40; ++it) {
        std::size_t const n = 1 + rng() % 600;
        TempFile f(random_bytes(rng, n, it % 2 ? "ab" : "acgt"));
        std::string const sigma = it % 2 ? "2" : "4";
        auto const text = run({"--input", f.path(), "--sigma", sigma});
        auto const json = run({"--input", f.path(), "--sigma", sigma, "--format", "json", "--stats"});
        ASSERT_EQ(text.code, 0);
        ASSERT_EQ(json.code, 0);
        auto const rows = parse_json(json.out);
        ASSERT_EQ(rows, parse_text(text.out));
        std::uint64_t next = 1;
        for(auto const& row : rows) {
            ASSERT_EQ(row.start, next);
            next += row.len;
        }
        ASSERT_EQ(next, n + 1);
        auto const doc = nlohmann::json::parse(json.out);
        ASSERT_EQ(doc.back().at("stats").at("n"), n);
        ASSERT_EQ(doc.back().at("stats").at("z"), rows.size());
    }
}

TEST(Cli, StatsLine) {
    TempFile f("abababab");
    auto const r = run({"--input", f.path(), "--sigma", "2", "--stats"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("#stats\t"), std::string::npos);
    EXPECT_NE(r.out.find("\tn=8"), std::string::npos);
    EXPECT_NE(r.out.find("\tz=3"), std::string::npos);
}

TEST(Cli, VerifyPasses) {
    std::mt19937_64 rng(21);
    for(int it = 0; it < 20; ++it) {
        TempFile f(random_bytes(rng, 1 + rng() % 3000, "abc"));
        auto const r = run({"--input", f.path(), "--sigma", "3", "--verify"});
        ASSERT_EQ(r.code, 0) << r.out << r.err;
        ASSERT_EQ(r.out.rfind("PASS", 0), 0u);
    }
}

TEST(Cli, VerifyDetectsInjectedFault) {
    TempFile f("abaababaabaab"); // a|b|a|aba|baaba|ab
    auto const r = run({"--input", f.path(), "--sigma", "2", "--verify", "--inject-fault"});
    EXPECT_EQ(r.code, 4);
    EXPECT_EQ(r.out.rfind("FAIL factor 4", 0), 0u) << r.out;

    std::mt19937_64 rng(2);
    TempFile big(random_bytes(rng, 30000, "ACGT"));
    auto const s = run({"--input", big.path(), "--dna", "--verify", "--spot-check", "--inject-fault"});
    EXPECT_EQ(s.code, 4);
    auto const injected = s.err.substr(s.err.find("factor ") + 7);
    EXPECT_EQ(s.out, "FAIL factor " + injected.substr(0, injected.find('\n')) + ": breaks the tiling\n");
}

TEST(Cli, VerifyRefusesOversizedInput) {
    std::mt19937_64 rng(3);
    TempFile f(random_bytes(rng, 12000, "ACGT"));
    EXPECT_EQ(run({"--input", f.path(), "--dna", "--verify"}).code, 2);
    auto const r = run({"--input", f.path(), "--dna", "--verify", "--spot-check"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("mode=spot-check"), std::string::npos);
    EXPECT_EQ(run({"--input", f.path(), "--dna", "--verify", "--spot-check", "--oracle-cap", "5000"}).code, 2);
}

TEST(Cli, BenchEmptyListPrintsHeader) {
    auto const r = run({"--bench"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "n,seconds,leaves,trie_nodes,wavelet_bits,ratio\n");
}

TEST(Cli, BenchRows) {
    auto const r = run({"--bench", "2048,4096", "--seed", "4"});
    ASSERT_EQ(r.code, 0);
    std::istringstream s(r.out);
    std::string header, row1, row2, extra;
    std::getline(s, header);
    std::getline(s, row1);
    std::getline(s, row2);
    EXPECT_FALSE(std::getline(s, extra));
    EXPECT_EQ(row1.rfind("2048,", 0), 0u);
    EXPECT_EQ(row2.rfind("4096,", 0), 0u);
    EXPECT_EQ(row1.back(), ',');   // no ratio for the first row
    EXPECT_NE(row2.back(), ',');
}

TEST(Cli, BenchRejectsBadSizes) {
    EXPECT_EQ(run({"--bench", "4096,2048"}).code, 2);
    EXPECT_EQ(run({"--bench", "100", "--length", "50"}).code, 2);
    TempFile f("abcabc");
    EXPECT_EQ(run({"--bench", "10", "--input", f.path(), "--sigma", "3"}).code, 2);
    EXPECT_EQ(run({"--bench", "6", "--input", f.path(), "--sigma", "3"}).code, 0);
}
