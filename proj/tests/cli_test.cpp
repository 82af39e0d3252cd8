#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <wdcalc/cli.hpp>
#include <wdcalc/json_io.hpp>

using namespace wdcalc;
using nlohmann::json;
namespace fs = std::filesystem;

namespace
{

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args, const std::string& input = "")
{
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& rel) { return std::string(WDCALC_FIXTURES) + "/" + rel; }

Result run_fixture(const std::string& command, const std::string& name)
{
    return invoke({command, "--input", fixture(command + "/" + name + ".json")});
}

json parsed(const Result& r) { return json::parse(r.out); }

} // namespace

TEST(Cli, SpecializeSpecialRep)
{
    const auto r = run_fixture("specialize", "special_1_2_p5");
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = parsed(r);
    EXPECT_TRUE(j.at("is_isomorphism").get<bool>());
    EXPECT_TRUE(j.at("dominance_ok").get<bool>());
    EXPECT_EQ(j.at("S_bar"), j.at("S_prime"));
    EXPECT_EQ(j.at("generic_profile"), json::array({1, 0}));
}

TEST(Cli, SpecializeScaledMonodromy)
{
    const auto r = run_fixture("specialize", "scaled_monodromy_p5");
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = parsed(r);
    EXPECT_FALSE(j.at("is_isomorphism").get<bool>());
    EXPECT_TRUE(j.at("dominance_ok").get<bool>());
    EXPECT_EQ(j.at("S_prime").at("segments").size(), 2U);
    EXPECT_EQ(j.at("reduced_profile"), json::array({0, 0}));
}

TEST(Cli, LeqFixtures)
{
    auto r = run_fixture("leq", "two_segment_pair");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parsed(r), (json{{"leq", true}}));
    r = run_fixture("leq", "reversed_pair");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parsed(r), (json{{"leq", false}}));
}

TEST(Cli, LengthBound)
{
    const auto r = run_fixture("length-bound", "n3");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(parsed(r), (json{{"bound", 21}}));
    const auto bad = run_fixture("length-bound", "n0");
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(parsed(bad).at("error").at("kind"), "schema");
}

TEST(Cli, FssAcceptsGaloisSamples)
{
    auto r = run_fixture("fss", "galois_sample");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto w = json_io::decode_rep(parsed(r));
    EXPECT_EQ(w.monodromy(), Matrix::parse(Field::rational(), {{"0", "0"}, {"1", "0"}}));

    r = run_fixture("fss", "unipotent_frobenius");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(json_io::decode_rep(parsed(r)).frobenius().is_identity());

    r = run_fixture("fss", "invalid_galois_sample");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(parsed(r).at("error").at("kind"), "invalid_input");
}

TEST(Cli, PrimeFieldRepRoundTrips)
{
    const auto r = run_fixture("fss", "prime_field");
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = parsed(r);
    EXPECT_EQ(j.at("P").at("field"), (json{{"type", "prime"}, {"p", 7}}));
    const auto w = json_io::decode_rep(j);
    EXPECT_EQ(json_io::encode(w), j);
    const Field f7 = Field::prime(7);
    EXPECT_EQ(w.frobenius(), Matrix::diagonal(f7, {Scalar::residue(2, f7), Scalar::residue(2, f7), Scalar::one(f7)}));
}

TEST(Cli, MultisegmentCommands)
{
    auto r = run_fixture("to-multisegment", "special_1_2");
    ASSERT_EQ(r.code, 0) << r.err;
    json j = parsed(r);
    EXPECT_EQ(j.at("half_twist"), -1);
    EXPECT_EQ(j.at("segments"), json::parse(R"([{"line":"Q:1","start":0,"len":2}])"));
    EXPECT_EQ(json_io::encode(json_io::decode_multisegment(j)).at("segments"), j.at("segments"));

    r = run_fixture("to-multisegment", "non_split");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(parsed(r).at("error").at("kind"), "non_split_spectrum");

    r = run_fixture("bs", "mixed");
    ASSERT_EQ(r.code, 0) << r.err;
    j = parsed(r);
    const auto segs = j.at("segments");
    ASSERT_EQ(segs.size(), 2U);
    for (std::size_t a = 0; a < segs.size(); ++a) {
        for (std::size_t b = a + 1; b < segs.size(); ++b) {
            EXPECT_FALSE(precedes(json_io::decode_segment(segs[a]), json_io::decode_segment(segs[b])));
        }
    }

    r = run_fixture("generic-support", "two_layers");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json_io::decode_multisegment(parsed(r)),
              (Multisegment{Segment::interval("L", 0, 1), Segment::interval("L", 1, 1)}));
}

TEST(Cli, Downset)
{
    auto r = run_fixture("downset", "four_points");
    ASSERT_EQ(r.code, 0) << r.err;
    const json list = parsed(r).at("down_set");
    const auto start = json_io::decode_multisegment(
        json::parse(std::ifstream(fixture("downset/four_points.json"))));
    EXPECT_EQ(list.size(), down_set(start, default_search_bound).size());
    bool found_self = false;
    for (const auto& item : list) {
        const auto m = json_io::decode_multisegment(item);
        EXPECT_TRUE(leq(m, start));
        found_self = found_self || m == start;
    }
    EXPECT_TRUE(found_self);

    r = run_fixture("downset", "over_bound");
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, Gl2Table)
{
    auto r = run_fixture("gl2-modp", "q_one_split");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parsed(r).at("constituents"), json::parse(R"(["St","1","1"])"));
    r = run_fixture("gl2-modp", "q_minus_one_split");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(parsed(r).at("constituents").size(), 3U);
    r = run_fixture("gl2-modp", "banal_nonsplit");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(parsed(r).at("constituents").size(), 1U);
    r = run_fixture("gl2-modp", "even_prime");
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, ErrorKindsAndCodes)
{
    auto r = run_fixture("leq", "malformed");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(parsed(r).at("error").at("kind"), "malformed_json");

    r = run_fixture("specialize", "not_integral");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(parsed(r).at("error").at("kind"), "not_p_integral");

    r = invoke({"leq"}, R"({"lhs": {"segments": []}})");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(parsed(r).at("error").at("kind"), "schema");

    r = invoke({"leq", "--input", fixture("does/not/exist.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(parsed(r).at("error").at("kind"), "io");

    EXPECT_EQ(invoke({"frobnicate"}).code, 1);
    EXPECT_EQ(invoke({}).code, 1);
    EXPECT_EQ(invoke({"leq", "--bogus"}).code, 1);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, StdinAndOutputFile)
{
    const auto r = invoke({"length-bound"}, R"({"n": 5})");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\n  \"bound\": 9765\n}\n");

    const fs::path out = fs::temp_directory_path() / "wdcalc_cli_test_output.json";
    const auto f = invoke({"length-bound", "--output", out.string()}, R"({"n": 4})");
    ASSERT_EQ(f.code, 0);
    EXPECT_TRUE(f.out.empty());
    std::ifstream back(out);
    EXPECT_EQ(json::parse(back), (json{{"bound", 315}}));
    fs::remove(out);
}

TEST(Cli, EveryFixtureIsDeterministic)
{
    std::size_t seen = 0;
    for (const auto& dir : fs::directory_iterator(WDCALC_FIXTURES)) {
        if (!dir.is_directory()) {
            continue;
        }
        for (const auto& file : fs::directory_iterator(dir.path())) {
            const std::string command = dir.path().filename().string();
            const auto first = invoke({command, "--input", file.path().string()});
            const auto second = invoke({command, "--input", file.path().string()});
            ASSERT_EQ(first.out, second.out) << file.path();
            ASSERT_EQ(first.code, second.code) << file.path();
            ASSERT_LE(first.code, 2) << file.path();
            ASSERT_TRUE(json::accept(first.out)) << file.path();
            ++seen;
        }
    }
    EXPECT_GE(seen, 20U);
}
