#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "berge/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::vector<json> lines;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = berge::cli::run(args, out, err);
    Run r{code, {}, err.str()};
    std::istringstream in(out.str());
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.front() == '{') r.lines.push_back(json::parse(line));
    }
    return r;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("berge_cli_" + name + "_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST(Cli, BoundCommand) {
    const auto r = run({"bound", "--theorem", "gkl-path", "--k", "6", "--r", "3", "--n", "60"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.lines.back()["value"], "200");
}

TEST(Cli, SearchCommand) {
    const auto r = run({"search", "--n", "5", "--r", "3", "--pattern", "K4"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.lines.back()["optimum"], 5);
    EXPECT_EQ(r.lines.back()["exact"], true);
    EXPECT_EQ(run({"search", "--n", "9", "--r", "3", "--pattern", "K4"}).code, 1);
    EXPECT_EQ(run({"search", "--n", "6", "--r", "3", "--pattern", "K4", "--budget", "5"}).code, 2);
}

TEST(Cli, CheckBergeCommand) {
    const auto dir = scratch_dir("check");
    const auto h = write_file(dir, "h.txt", "6 3 5\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n1 2 5\n");
    const auto r = run({"check-berge", "--hypergraph", h.string(), "--pattern", "K3"});
    ASSERT_EQ(r.code, 0);
    const auto& j = r.lines.back();
    EXPECT_EQ(j["contains"], true);
    const auto hyper = berge::hypergraph_from_text("6 3 5\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n1 2 5\n");
    // coreMap: [pattern vertex, host vertex]; edgeMap: [[u, v], hyperedge index]
    berge::BergeCertificate c;
    for (const auto& pair : j["certificate"]["coreMap"]) c.core_map.push_back(pair[1].get<int>());
    for (const auto& pair : j["certificate"]["edgeMap"]) c.edge_map.push_back(pair[1].get<std::size_t>());
    EXPECT_TRUE(berge::is_valid_certificate(hyper, berge::parse_pattern("K3"), c));
    EXPECT_EQ(run({"check-berge", "--hypergraph", (dir / "missing.txt").string(), "--pattern", "K3"}).code, 1);
    fs::remove_all(dir);
}

TEST(Cli, ErrorsExitOne) {
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"bound", "--theorem", "gkl-path", "--k", "2", "--r", "3", "--n", "6"}).code, 1);
    EXPECT_EQ(run({"bound", "--theorem", "nope"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SymmetrizeCommand) {
    const auto r = run({"symmetrize", "--turan", "6,3", "--color", "blue", "--k", "4", "--r", "3"});
    ASSERT_EQ(r.code, 0);
    ASSERT_GE(r.lines.size(), 2u);
    EXPECT_EQ(r.lines.back()["g"], 12);
}

TEST(Cli, ThresholdCommand) {
    const auto r = run({"threshold", "--k", "4", "--r", "3", "--n-max", "6"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.lines.size(), 8u);
    EXPECT_EQ(r.lines.back()["n0"], 6);
}

TEST(Cli, ShippedCorpusPasses) {
    const auto r = run({"verify-corpus", "--dir", BERGE_CORPUS_DIR});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, EmptyDirectoryIsAnError) {
    const auto dir = scratch_dir("empty");
    const auto r = run({"verify-corpus", "--dir", dir.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("manifest"), std::string::npos);
    fs::remove_all(dir);
}

TEST(Cli, PerturbedCorpusReportsOneFailure) {
    const auto dir = scratch_dir("perturbed");
    for (const auto& entry : fs::directory_iterator(BERGE_CORPUS_DIR)) fs::copy(entry.path(), dir / entry.path().filename());
    json manifest = json::parse(std::ifstream(dir / "manifest.json"));
    ASSERT_EQ(manifest[1]["expected"]["optimum"], 5);
    manifest[1]["expected"]["optimum"] = 6;
    std::ofstream(dir / "manifest.json") << manifest.dump();
    std::ostringstream out, err;
    EXPECT_EQ(berge::cli::verify_corpus(dir.string(), out, err), 1);
    fs::remove_all(dir);
}
