#include <gtest/gtest.h>

#include <sstream>

#include "rainbow/cli.hpp"

using namespace rainbow;

namespace {

const char* kZ13Singleton = "p=13;A=0;B=1,3,4,9,10,12;C=2,5,6,7,8,11";

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> keys(const nlohmann::ordered_json& j) {
    std::vector<std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
    return out;
}

}  // namespace

TEST(CliClassify, Examples) {
    auto r1 = run({"classify", "--eq", "p=13;eq=1,-4,3,0"});
    EXPECT_EQ(r1.code, 0);
    EXPECT_NE(r1.out.find("verdict: non-rainbow"), std::string::npos);
    EXPECT_NE(r1.out.find(std::string("witness: ") + kZ13Singleton), std::string::npos);

    auto r2 = run({"classify", "--eq", "p=17;eq=1,8,-2,3", "--json"});
    auto j = nlohmann::ordered_json::parse(r2.out);
    EXPECT_EQ(j["verdict"], "non-rainbow");
    EXPECT_EQ(j["s"], 15);

    auto r3 = run({"classify", "--eq", "p=5;eq=1,1,-2,0", "--json"});
    EXPECT_EQ(nlohmann::ordered_json::parse(r3.out)["verdict"], "rainbow");
}

TEST(CliClassify, JsonFieldOrderIsFixed) {
    auto j = nlohmann::ordered_json::parse(run({"classify", "--eq", "p=13;eq=1,-4,3,0", "--json"}).out);
    EXPECT_EQ(keys(j), (std::vector<std::string>{"equation", "verdict", "reason", "subgroup", "s", "witness"}));
    EXPECT_EQ(keys(j["subgroup"]), (std::vector<std::string>{"order", "elements"}));
    EXPECT_EQ(j["s"], "free");
    // identical output on a second run
    EXPECT_EQ(run({"classify", "--eq", "p=13;eq=1,-4,3,0", "--json"}).out, j.dump() + "\n");
}

TEST(CliClassify, ExitCodes) {
    EXPECT_EQ(run({"classify", "--eq", "p=3;eq=1,1,1,0"}).code, 65);
    EXPECT_EQ(run({"classify", "--eq", "p=12;eq=1,1,1,0"}).code, 64);
    EXPECT_EQ(run({"classify", "--eq", "p=13;eq=0,1,1,0"}).code, 64);
    EXPECT_EQ(run({"classify"}).code, 64);
    EXPECT_EQ(run({"nonsense"}).code, 64);

    auto small = run({"classify", "--eq", "p=3;eq=1,1,1,0", "--oracle", "--json"});
    EXPECT_EQ(small.code, 0);
    auto j = nlohmann::ordered_json::parse(small.out);
    EXPECT_EQ(j["verdict"], "rainbow");
    EXPECT_EQ(j["reason"], "oracle_exhaustive");
}

TEST(CliConstruct, Examples) {
    auto r1 = run({"construct", "--eq", "p=13;eq=1,-4,3,0"});
    EXPECT_EQ(r1.code, 0);
    EXPECT_EQ(r1.out, std::string(kZ13Singleton) + "\n");

    auto r2 = run({"construct", "--eq", "p=13;eq=1,1,1,2", "--variant", "ii", "--d", "2", "--cuts", "1,5,9"});
    EXPECT_EQ(r2.out, "p=13;A=2,4,6,8;B=1,3,10,12;C=0,5,7,9,11\n");

    auto r3 = run({"construct", "--eq", "p=11;eq=1,1,1,0", "--variant", "i", "--split", "0,2"});
    EXPECT_EQ(Coloring::parse(lines(r3.out).at(0)).class_of(Label::B), ResidueSet(Modulus(11), {1, 3, 8, 10}));

    auto r4 = run({"construct", "--eq", "p=17;eq=1,8,-2,3", "--json"});
    auto j = nlohmann::ordered_json::parse(r4.out);
    EXPECT_EQ(keys(j), (std::vector<std::string>{"equation", "coloring", "structure"}));
    EXPECT_EQ(j["structure"]["clause"], "MainThm_singleton");

    EXPECT_EQ(run({"construct", "--eq", "p=13;eq=1,1,1,2", "--variant", "ii", "--d", "2", "--cuts", "1,5,8"}).code, 65);
    EXPECT_EQ(run({"construct", "--eq", "p=13;eq=1,1,1,2", "--variant", "x"}).code, 64);
    EXPECT_EQ(run({"construct", "--eq", "p=5;eq=1,1,-2,0"}).code, 65);
}

TEST(CliVerify, Examples) {
    auto ok = run({"verify", "--eq", "p=13;eq=1,-4,3,0", "--coloring", kZ13Singleton});
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(lines(ok.out).at(0), "rainbow-free");
    EXPECT_EQ(lines(ok.out).at(1), "structure: MainThm_singleton");

    auto bad = run({"verify", "--eq", "p=13;eq=1,-4,3,1", "--coloring", kZ13Singleton});
    EXPECT_EQ(bad.code, 1);
    int x = -1, y = -1, z = -1;
    ASSERT_EQ(std::sscanf(bad.out.c_str(), "rainbow x=%d y=%d z=%d", &x, &y, &z), 3);
    auto eq = Equation::parse("p=13;eq=1,-4,3,1");
    EXPECT_EQ(eq.evaluate(x, y, z).value(), 1);

    EXPECT_EQ(run({"verify", "--eq", "p=13;eq=1,-4,3,0", "--coloring", "p=13;A=0;B=1"}).code, 64);
    EXPECT_EQ(run({"verify", "--eq", "p=7;eq=1,1,1,0", "--coloring", kZ13Singleton}).code, 64);

    auto j = nlohmann::ordered_json::parse(
        run({"verify", "--eq", "p=13;eq=1,-4,3,0", "--coloring", kZ13Singleton, "--json"}).out);
    EXPECT_EQ(keys(j), (std::vector<std::string>{"equation", "coloring", "rainbow_free", "witness", "structure"}));
    EXPECT_EQ(j["rainbow_free"], true);
}

TEST(CliEnumerate, Examples) {
    auto r = run({"enumerate", "--eq", "p=7;eq=1,1,1,0"});
    EXPECT_EQ(r.code, 0);
    auto ls = lines(r.out);
    ASSERT_GT(ls.size(), 1u);
    auto eq = Equation::parse("p=7;eq=1,1,1,0");
    // every printed coloring re-parses to an equal, rainbow-free value
    for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
        auto c = Coloring::parse(ls[i]);
        EXPECT_EQ(c.to_string(), ls[i]);
        EXPECT_TRUE(is_rainbow_free(eq, c));
    }
    auto summary = nlohmann::ordered_json::parse(ls.back());
    EXPECT_EQ(summary["rainbow_free"], ls.size() - 1);

    auto empty = run({"enumerate", "--eq", "p=5;eq=1,1,-2,0"});
    EXPECT_EQ(empty.code, 0);
    EXPECT_EQ(lines(empty.out).size(), 1u);
    EXPECT_EQ(nlohmann::ordered_json::parse(empty.out)["rainbow_free"], 0);
}

TEST(CliEnumerate, BudgetAndCheck) {
    EXPECT_EQ(run({"enumerate", "--eq", "p=17;eq=1,8,-2,3"}).code, 66);
    auto fixed = run({"enumerate", "--eq", "p=17;eq=1,8,-2,3", "--fixed", "A=15"});
    EXPECT_EQ(fixed.code, 0);
    EXPECT_NE(fixed.out.find("p=17;A=15;B=0,2,6,7,11,13,14,16;C=1,3,4,5,8,9,10,12"), std::string::npos);

    auto check = run({"enumerate", "--eq", "p=7;eq=1,6,1,0", "--dedupe", "--check"});
    EXPECT_EQ(check.code, 0);
    auto j = nlohmann::ordered_json::parse(lines(check.out).back());
    EXPECT_EQ(j["all_matched_structure"], true);
    EXPECT_EQ(run({"enumerate", "--eq", "p=7;eq=1,1,1,0", "--fixed", "D=0"}).code, 64);
}

TEST(CliSurvey, P5MatchesOracle) {
    auto r = run({"survey", "--p", "5", "--check"});
    EXPECT_EQ(r.code, 0) << r.err;
    auto ls = lines(r.out);
    ASSERT_GT(ls.size(), 1u);
    EXPECT_EQ(ls[0], "p,a1,a2,a3,b,verdict,reason,subgroup_order,s,witness");
    EXPECT_NE(r.err.find(" 0 mismatches"), std::string::npos);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        int p, a1, a2, a3, b;
        ASSERT_EQ(std::sscanf(ls[i].c_str(), "%d,%d,%d,%d,%d", &p, &a1, &a2, &a3, &b), 5);
        if (a1 == a2 && a2 == a3) {
            EXPECT_NE(ls[i].find(",non-rainbow,"), std::string::npos) << ls[i];
        }
    }
}

TEST(CliSurvey, Z13SingletonClassAtP13) {
    auto r = run({"survey", "--p", "13"});
    EXPECT_EQ(r.code, 0);
    const auto key = cli::canonical_class(Equation::parse("p=13;eq=1,-4,3,0"));
    std::string prefix = "13";
    for (value_t v : key) prefix += "," + std::to_string(v);
    bool found = false;
    for (const auto& line : lines(r.out))
        if (line.rfind(prefix + ",", 0) == 0) {
            found = true;
            EXPECT_NE(line.find(",non-rainbow,"), std::string::npos);
        }
    EXPECT_TRUE(found) << prefix;
}

TEST(CliSurvey, Errors) {
    EXPECT_EQ(run({"survey", "--p", "9"}).code, 64);
    EXPECT_EQ(run({"survey", "--p", "3"}).code, 65);
    EXPECT_EQ(run({"survey", "--p", "11", "--check"}).code, 66);
    auto raw = run({"survey", "--p", "5", "--raw"});
    EXPECT_EQ(lines(raw.out).size(), 321u);
}

TEST(CliScan, Examples) {
    auto l = run({"scan", "lemma43", "--p", "11"});
    EXPECT_EQ(l.code, 0);
    EXPECT_EQ(nlohmann::ordered_json::parse(l.out)["violations"], 0);

    auto mc = run({"scan", "minclass", "--p", "13", "--eq", "p=13;eq=1,-4,3,0", "--k", "2"});
    EXPECT_EQ(mc.code, 0);
    auto j = nlohmann::ordered_json::parse(mc.out);
    EXPECT_EQ(keys(j), (std::vector<std::string>{"scan", "p", "equation", "k", "checked", "violations"}));
    EXPECT_EQ(j["violations"], 0);

    EXPECT_EQ(run({"scan", "cd", "--p", "7"}).code, 0);
    EXPECT_EQ(run({"scan", "hr", "--p", "11"}).code, 0);
    EXPECT_EQ(run({"scan", "vosper", "--p", "37", "--seed", "5", "--samples", "500"}).code, 0);
    EXPECT_EQ(run({"scan", "lemma43", "--p", "7"}).code, 65);
    EXPECT_EQ(run({"scan", "lemma43", "--p", "23"}).code, 66);
    EXPECT_EQ(run({"scan", "bogus", "--p", "7"}).code, 64);
    EXPECT_EQ(run({"scan", "cd"}).code, 64);
    EXPECT_EQ(run({"scan", "minclass", "--eq", "p=13;eq=1,1,1,2"}).code, 65);
}

TEST(CliScan, SeededScansAreDeterministic) {
    auto a = run({"scan", "cd", "--p", "101", "--seed", "9", "--samples", "300"});
    auto b = run({"scan", "cd", "--p", "101", "--seed", "9", "--samples", "300"});
    EXPECT_EQ(a.out, b.out);
}

TEST(CliHelp, PrintsUsage) {
    auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("classify"), std::string::npos);
}
