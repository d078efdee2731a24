#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "cli.hpp"
#include "report.hpp"

using namespace asymdof;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "asymdof");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

int run_binary(const std::string& args) {
    const std::string cmd = std::string(ASYMDOF_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ClassifyDocument) {
    const auto r = call({"classify", "--m", "11.25", "--n", "9"});
    ASSERT_EQ(r.code, cli::kExitPass) << r.err;
    const auto doc = json::parse(r.out);
    for (const char* key : {"command", "input", "regime", "result", "seed", "tolerances", "version"}) {
        EXPECT_TRUE(doc.contains(key)) << key;
    }
    EXPECT_EQ(doc["command"], "classify");
    EXPECT_EQ(doc["version"], cli::kVersion);
    EXPECT_EQ(doc["regime"]["loss_class"], "LOSSLESS_I");
    EXPECT_EQ(doc["regime"]["L"], 4);
    EXPECT_EQ(doc["input"]["scale"], 4);
    EXPECT_EQ(doc["input"]["m"], "11.25");
}

TEST(Cli, EqualAntennaClassify) {
    const auto r = call({"classify", "--m", "3", "--n", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["regime"]["loss_class"], "EQUAL_ANTENNAS");
}

TEST(Cli, RegionCheckExitCodes) {
    EXPECT_EQ(call({"region", "--m", "45", "--n", "36", "--check", "18,24,18"}).code, cli::kExitPass);
    EXPECT_EQ(call({"region", "--m", "45", "--n", "36", "--check", "21,21,21"}).code, cli::kExitNegative);
    EXPECT_EQ(call({"region", "--m", "3", "--n", "3", "--check", "1.5,1.5,1.5"}).code, cli::kExitPass);
    EXPECT_EQ(call({"region", "--m", "3", "--n", "3", "--check", "2,2,0"}).code, cli::kExitNegative);
}

TEST(Cli, RegionEnumerate) {
    const auto r = call({"region", "--m", "45", "--n", "36", "--enumerate"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc["result"]["max_sum_dof"], "60");
    std::vector<RegionPoint> pts = doc["result"]["frontier"];
    EXPECT_FALSE(pts.empty());
    const auto v = json::parse(call({"region", "--m", "2", "--n", "2", "--enumerate"}).out);
    EXPECT_EQ(v["result"]["vertices"].size(), 5u);
}

TEST(Cli, SchemeAndVerify) {
    const auto s = call({"scheme", "--m", "11.25", "--n", "9", "--target", "4.5,6,4.5"});
    ASSERT_EQ(s.code, 0) << s.err;
    const auto sdoc = json::parse(s.out);
    EXPECT_TRUE(sdoc["result"].contains("allocation"));
    EXPECT_TRUE(sdoc["result"].contains("chains"));

    const auto v = call({"verify", "--m", "11.25", "--n", "9", "--target", "4.5,6,4.5", "--trials", "2"});
    ASSERT_EQ(v.code, 0) << v.err;
    const VerificationReport rep = json::parse(v.out)["result"];
    EXPECT_TRUE(rep.overall_pass);
    EXPECT_EQ(rep.records.size(), 2u);

    const auto bad = call({"verify", "--m", "45", "--n", "36", "--target", "21,21,21", "--trials", "1"});
    EXPECT_EQ(bad.code, cli::kExitNegative);
    EXPECT_EQ(json::parse(bad.out)["result"]["feasible"], false);
}

TEST(Cli, VerifyRecordsRoundTrip) {
    const auto v = call({"verify", "--m", "5", "--n", "4", "--target", "1,2,2", "--trials", "2", "--seed", "5"});
    ASSERT_EQ(v.code, 0) << v.err;
    const auto doc = json::parse(v.out);
    const VerificationReport rep = doc["result"];
    EXPECT_EQ(json(rep), doc["result"]);
    EXPECT_EQ(rep.records.front().seed, 5u);
}

TEST(Cli, OracleExitCodes) {
    const auto yes = call({"oracle", "--m", "3", "--n", "2", "--target", "1,1,1", "--trials", "2"});
    EXPECT_EQ(yes.code, cli::kExitPass) << yes.err;
    const OracleResult res = json::parse(yes.out)["result"];
    EXPECT_EQ(res.verdict, OracleVerdict::FeasibleEvidence);
    const auto no =
        call({"oracle", "--m", "3", "--n", "2", "--target", "2,2,2", "--trials", "1", "--max-iters", "100"});
    EXPECT_EQ(no.code, cli::kExitNegative);
}

TEST(Cli, ByteDeterministic) {
    const std::vector<std::string> args{"verify", "--m", "5", "--n", "4", "--target", "1,2,2", "--trials", "3"};
    EXPECT_EQ(call(args).out, call(args).out);
    const std::vector<std::string> o{"oracle", "--m", "3", "--n", "2", "--target", "1,1,1", "--trials", "2"};
    EXPECT_EQ(call(o).out, call(o).out);
}

TEST(Cli, OutFile) {
    const auto path = std::filesystem::temp_directory_path() / "asymdof_cli_test.json";
    const auto r = call({"classify", "--m", "5", "--n", "4", "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    const auto doc = json::parse(in);
    EXPECT_EQ(doc["command"], "classify");
    std::filesystem::remove(path);
}

TEST(Cli, SweepCsv) {
    const auto r = call({"sweep", "--n", "36", "--gamma-min", "44/36", "--gamma-max", "46/36"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, kSweepCsvHeader);
    std::getline(lines, line);
    EXPECT_EQ(line, "11/9,4,LOSSLESS_I,60,24");
    std::getline(lines, line);
    EXPECT_EQ(line, "1.25,4,LOSSLESS_I,60,24");
    const auto j = call({"sweep", "--n", "36", "--gamma-min", "2", "--gamma-max", "2", "--format", "json"});
    ASSERT_EQ(j.code, 0) << j.err;
    EXPECT_EQ(json::parse(j.out)["result"]["rows"][0]["skipped"], true);
}

TEST(Cli, UsageErrorsNameTheFlag) {
    struct Case {
        std::vector<std::string> args;
        std::string flag;
    };
    const std::vector<Case> cases{
        {{"classify", "--m", "abc", "--n", "4"}, "--m"},
        {{"verify", "--m", "5", "--n", "4", "--target", "1,2"}, "--target"},
        {{"region", "--m", "5", "--n", "4", "--check", "1,x,1"}, "--check"},
        {{"classify", "--m", "5", "--n", "4", "--format", "csv"}, "--format"},
        {{"verify", "--m", "5", "--n", "4", "--target", "1,1,1", "--trials", "0"}, "--trials"},
        {{"classify", "--m", "5", "--n", "4", "--bogus"}, "--bogus"},
    };
    for (const auto& c : cases) {
        const auto r = call(c.args);
        EXPECT_EQ(r.code, cli::kExitError);
        EXPECT_NE(r.err.find(c.flag), std::string::npos) << r.err;
        EXPECT_EQ(r.err.find('\n'), r.err.size() - 1) << "one-line diagnostic: " << r.err;
    }
}

TEST(Cli, DomainErrors) {
    EXPECT_EQ(call({"classify", "--m", "3", "--n", "4"}).code, cli::kExitError);
    EXPECT_EQ(call({"classify", "--m", "8", "--n", "4"}).code, cli::kExitError);
    EXPECT_EQ(call({"oracle", "--m", "3", "--n", "2", "--target", "3,0,0"}).code, cli::kExitError);
}

TEST(CliBinary, ExitCodes) {
    EXPECT_EQ(run_binary("classify --m 11.25 --n 9"), 0);
    EXPECT_EQ(run_binary("region --m 45 --n 36 --check 21,21,21"), 2);
    EXPECT_EQ(run_binary("classify --m x --n 9"), 1);
    EXPECT_EQ(run_binary("--version"), 0);
}
