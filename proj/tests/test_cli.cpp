#include <gtest/gtest.h>

#include "json.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string(TETRA_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json report(const Run& r) { return nlohmann::json::parse(r.out); }

nlohmann::json strip_times(nlohmann::json j) {
    for (auto& c : j["cases"]) c.erase("time_ms");
    return j;
}

TEST(Verify, ExampleA10) {
    auto r = cli("verify --suite examples --name A10 --qroot 1/2 --z 3/5");
    ASSERT_EQ(r.code, 0);
    auto j = report(r);
    EXPECT_EQ(j["suite"], "examples");
    EXPECT_EQ(j["status"], "pass");
    ASSERT_EQ(j["cases"].size(), 3u);
    for (auto& c : j["cases"]) {
        EXPECT_EQ(c["status"], "pass");
        EXPECT_EQ(c["residual"], "0");
    }
}

TEST(Verify, TetrahedronRRRR) {
    auto r = cli("verify --suite tetrahedron --kind RRRR --bound 2");
    ASSERT_EQ(r.code, 0);
    auto j = report(r);
    for (auto& c : j["cases"]) EXPECT_EQ(c["residual"], "0");
}

TEST(Verify, BoundaryResidualBelowTolerance) {
    auto r = cli("verify --suite boundary --s 1 --cutoff 40 --precision 256");
    ASSERT_EQ(r.code, 0);
    for (auto& c : report(r)["cases"]) EXPECT_LT(std::stod(c["residual"].get<std::string>()), 1e-40);
}

TEST(Verify, ReportSchemaAndDeterminism) {
    std::string path = testing::TempDir() + "spectral_report.json";
    auto a = cli("verify --suite spectral --eps 110 --bound 2 --json " + path);
    auto b = cli("verify --suite spectral --eps 110 --bound 2");
    ASSERT_EQ(a.code, 0);
    std::ifstream in(path);
    auto file = nlohmann::json::parse(in);
    EXPECT_EQ(strip_times(file), strip_times(report(b)));
    EXPECT_EQ(file["config"]["eps"], "110");
    for (auto& c : file["cases"])
        for (auto key : {"name", "status", "residual", "diagnostics", "time_ms"}) EXPECT_TRUE(c.contains(key)) << key;
}

TEST(Verify, FailingCheckExitsOne) {
    auto r = cli("verify --suite boundary --s 1 --tol 1e-200");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(report(r)["status"], "fail");
}

TEST(Verify, BadConfigExitsTwo) {
    EXPECT_EQ(cli("verify --suite nonsense").code, 2);
    EXPECT_EQ(cli("verify --suite examples --qroot abc").code, 2);
    EXPECT_EQ(cli("verify --suite examples --name C7").code, 2);
    EXPECT_EQ(cli("verify").code, 2);
}

TEST(Compute, ThreeDElement) {
    auto r = cli("compute threed-element --indices 0,1,0,1,0,1 --qroot 1/2");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "15/16\n");
}

TEST(Compute, TraceDumpNormalizationRow) {
    auto r = cli("compute rmatrix-trace --eps 11 --sector 1,1 --z 3/5");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0,1 | 0,1 <- 0,1 | 0,1 : 1\n"), std::string::npos);
    EXPECT_EQ(r.out.find("<- 0,1 | 0,1 : -"), std::string::npos);
}

TEST(Compute, SolverDumpMatchesExampleRows) {
    auto r = cli("compute rmatrix-solver --family B --eps 10 --z 3/5 --truncation 2");
    ASSERT_EQ(r.code, 0);
    // (1+q)z/(1+qz) and -q(1-z)/(1+qz) at q = 1/4, z = 3/5
    EXPECT_NE(r.out.find("1,0 | 0,0 <- 0,0 | 1,0 : 15/23\n"), std::string::npos);
    EXPECT_NE(r.out.find("0,0 | 1,0 <- 0,0 | 1,0 : -2/23\n"), std::string::npos);
    EXPECT_NE(r.out.find("1,0 | 1,0 <- 1,0 | 1,0 : 1\n"), std::string::npos);
}

TEST(Compute, SolverErrorExitsThree) { EXPECT_EQ(cli("compute rmatrix-solver --eps 11 --sector 3,3").code, 3); }

}  // namespace
