#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"

using painleve::cli::json;
using painleve::cli::run;
using C = std::complex<double>;

namespace {

struct Outcome {
    int status;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

Outcome call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = run(args, out, err);
    return {status, out.str(), err.str()};
}

C value_of(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

}  // namespace

TEST(CliLiterals, ComplexParsing) {
    using painleve::cli::parse_complex;
    EXPECT_EQ(parse_complex("0.3"), C(0.3));
    EXPECT_EQ(parse_complex("-2"), C(-2));
    EXPECT_EQ(parse_complex("0.26+0.1i"), C(0.26, 0.1));
    EXPECT_EQ(parse_complex("0.26-0.1i"), C(0.26, -0.1));
    EXPECT_EQ(parse_complex("2i"), C(0, 2));
    EXPECT_EQ(parse_complex("-i"), C(0, -1));
    EXPECT_EQ(parse_complex("1e-3-2e-4i"), C(1e-3, -2e-4));
    EXPECT_EQ(parse_complex("+1.5E+2+3j"), C(150, 3));
    EXPECT_THROW(parse_complex(""), std::invalid_argument);
    EXPECT_THROW(parse_complex("abc"), std::invalid_argument);
    EXPECT_THROW(parse_complex("1+2"), std::invalid_argument);
}

TEST(CliLiterals, FormatRoundTrip) {
    using painleve::cli::format_complex;
    using painleve::cli::parse_complex;
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> d(-1e3, 1e3);
    for (int i = 0; i < 2000; ++i) {
        const C z(d(gen) * std::pow(10.0, d(gen) / 100), i % 3 ? d(gen) : 0.0);
        EXPECT_EQ(parse_complex(format_complex(z)), z) << format_complex(z);
    }
    EXPECT_EQ(format_complex(C(0.3, -0.1)), "0.3-0.1i");
    EXPECT_EQ(format_complex(C(1)), "1");
}

TEST(CliLiterals, Partitions) {
    using painleve::cli::parse_partition;
    EXPECT_EQ(parse_partition(""), painleve::Partition{});
    EXPECT_EQ(parse_partition("3,1"), painleve::Partition({3, 1}));
    EXPECT_THROW(parse_partition("1,3"), std::invalid_argument);
    EXPECT_THROW(parse_partition("1,,1"), std::invalid_argument);
}

TEST(Cli, CoeffSingleBox) {
    const auto r = call({"coeff", "--lambda", "1", "--mu", "", "--a", "", "--sigma", "0.3"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto doc = r.doc();
    EXPECT_EQ(doc["schema_version"], 1);
    EXPECT_EQ(doc["command"], "coeff");
    EXPECT_NEAR(value_of(doc["value"]).real(), 1 / 0.36, 1e-14);
    for (const char* key : {"inputs", "value", "route", "tail_estimate", "warnings", "timing_ms"})
        EXPECT_TRUE(doc.contains(key)) << key;

    const auto p = call({"coeff", "--lambda", "2,1", "--mu", "1", "--a", "0.4,-0.2+0.1i", "--sigma", "0.27", "--form",
                         "product", "--K", "3"});
    const auto d = call({"coeff", "--lambda", "2,1", "--mu", "1", "--a", "0.4,-0.2+0.1i", "--sigma", "0.27"});
    ASSERT_EQ(p.status, 0) << p.err;
    const C vp = value_of(p.doc()["value"]), vd = value_of(d.doc()["value"]);
    EXPECT_LT(std::abs(vp - vd) / std::abs(vd), 1e-10);
}

TEST(Cli, PartialSumAllRoutesAtZero) {
    const auto r = call({"partial-sum", "--a", "", "--sigma", "0.3", "--K", "1", "--t", "0", "--route", "all"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto doc = r.doc();
    for (const char* route : {"direct", "balanced", "hankel"})
        EXPECT_NEAR(std::abs(value_of(doc["routes"][route]["value"]) - 1.0), 0.0, 1e-13) << route;
    for (const auto& [name, diff] : doc["pairwise_rel_diff"].items()) EXPECT_LT(diff.get<double>(), 1e-12) << name;
}

TEST(Cli, PartialSumRoutesAgreeInRegime) {
    const auto r = call({"partial-sum", "--a", "0.4,-0.1,0.7", "--sigma", "0.26", "--K", "2", "--t", "0.05",
                         "--route", "all"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto doc = r.doc();
    EXPECT_TRUE(doc["warnings"].empty()) << doc["warnings"].dump();
    for (const auto& [name, diff] : doc["pairwise_rel_diff"].items()) EXPECT_LT(diff.get<double>(), 1e-7) << name;
}

TEST(Cli, TAndUAreExclusive) {
    const auto r = call({"partial-sum", "--t", "0.1", "--u", "-2"});
    EXPECT_EQ(r.status, 2);
    const auto u = call({"partial-sum", "--u", "-2.302585092994046", "--route", "hankel"});
    const auto t = call({"partial-sum", "--t", "0.1", "--route", "hankel"});
    ASSERT_EQ(u.status, 0);
    EXPECT_LT(std::abs(value_of(u.doc()["value"]) - value_of(t.doc()["value"])), 1e-12);
}

TEST(Cli, MgfMethodsAgree) {
    const auto a = call({"mgf", "--a", "0.2,0.1-0.3i", "--sigma", "0.31", "--K", "2", "--t", "0.4"});
    const auto b = call({"mgf", "--a", "0.2,0.1-0.3i", "--sigma", "0.31", "--K", "2", "--t", "0.4", "--method", "lattice"});
    ASSERT_EQ(a.status, 0) << a.err;
    ASSERT_EQ(b.status, 0) << b.err;
    for (const char* comp : {"q", "q_inv"}) {
        const C x = value_of(a.doc()["components"][comp]), y = value_of(b.doc()["components"][comp]);
        EXPECT_LT(std::abs(x - y) / std::abs(y), 1e-12) << comp;
    }
}

TEST(Cli, Tau) {
    const auto r = call({"tau", "--equation", "PIII3", "--sigma", "0.3", "--s", "1", "--t", "0.05", "--K", "2"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto doc = r.doc();
    EXPECT_EQ(doc["terms"].size(), 5u);
    EXPECT_EQ(doc["inputs"]["a"].size(), 0u);

    const auto pv = call({"tau", "--equation", "PV", "--theta-star", "0.3", "--theta0", "0.1", "--theta-t", "0.25",
                          "--sigma", "0.27", "--K", "1", "--t", "0.04"});
    ASSERT_EQ(pv.status, 0) << pv.err;
    EXPECT_EQ(pv.doc()["inputs"]["a"].size(), 3u);
    EXPECT_NEAR(value_of(pv.doc()["prefactor"]).real(), std::exp(-0.25 * 0.04), 1e-15);

    EXPECT_EQ(call({"tau", "--equation", "PV", "--theta0", "0.1"}).status, 2);  // missing parameters
    EXPECT_EQ(call({"tau", "--equation", "PII"}).status, 2);
}

TEST(Cli, VerifySweep) {
    const auto r = call({"verify", "--seed", "7", "--max-weight", "8", "--K", "3"});
    ASSERT_EQ(r.status, 0) << r.out;
    const auto doc = r.doc();
    EXPECT_TRUE(doc["all_pass"].get<bool>());
    EXPECT_LT(doc["max_rel_error"].get<double>(), 1e-9);
    for (const auto& id : doc["identities"]) {
        EXPECT_TRUE(id["pass"].get<bool>()) << id.dump();
        EXPECT_GT(id["checks"].get<long>(), 0);
    }
}

TEST(Cli, ExitStatuses) {
    EXPECT_EQ(call({}).status, 2);
    EXPECT_EQ(call({"nonsense"}).status, 2);
    EXPECT_EQ(call({"coeff", "--lambda", "1"}).status, 2);  // --mu missing
    EXPECT_EQ(call({"coeff", "--lambda", "1,2", "--mu", ""}).status, 2);
    EXPECT_EQ(call({"coeff", "--lambda", "1", "--mu", "", "--sigma", "x"}).status, 2);
    EXPECT_EQ(call({"partial-sum", "--route", "magic"}).status, 2);
    // numerical failures
    const auto degenerate = call({"coeff", "--lambda", "1", "--mu", "", "--sigma", "0.5"});
    EXPECT_EQ(degenerate.status, 1);
    EXPECT_FALSE(degenerate.err.empty());
    EXPECT_EQ(call({"mgf", "--a", "0.1,0.2,0.3,0.4", "--t", "2"}).status, 1);
    EXPECT_EQ(call({"--help"}).status, 0);
}

TEST(Cli, DeterministicApartFromTiming) {
    const std::vector<std::string> args = {"partial-sum", "--a", "0.3+0.1i", "--sigma", "0.26+0.1i", "--K", "3",
                                           "--t", "0.05", "--route", "all"};
    auto a = call(args).doc(), b = call(args).doc();
    a.erase("timing_ms");
    b.erase("timing_ms");
    EXPECT_EQ(a.dump(), b.dump());
    auto v1 = call({"verify", "--seed", "3"}).doc(), v2 = call({"verify", "--seed", "3"}).doc();
    v1.erase("timing_ms");
    v2.erase("timing_ms");
    EXPECT_EQ(v1.dump(), v2.dump());
}

TEST(Cli, CsvAndOutputFile) {
    const auto r = call({"partial-sum", "--t", "0.05", "--route", "all", "--format", "csv"});
    ASSERT_EQ(r.status, 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    EXPECT_EQ(header, "command,route,re,im,tail_estimate,warnings");
    int rows = 0;
    while (std::getline(lines, row)) ++rows;
    EXPECT_EQ(rows, 3);

    const auto path = std::filesystem::temp_directory_path() / "painleve_cli_test.json";
    const auto f = call({"coeff", "--lambda", "2", "--mu", "1", "--out", path.string()});
    ASSERT_EQ(f.status, 0);
    EXPECT_TRUE(f.out.empty());
    std::ifstream in(path);
    const auto doc = json::parse(in);
    EXPECT_EQ(doc["command"], "coeff");
    std::filesystem::remove(path);
}
