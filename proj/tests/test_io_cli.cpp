#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ectff/cli.hpp"
#include "ectff/error.hpp"
#include "ectff/io.hpp"

using namespace ectff;
using io::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run ectff_run(std::vector<std::string> args, const std::string& stdin_text = "") {
    args.insert(args.begin(), "ectff");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    std::istringstream in(stdin_text);
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err, in);
    return {code, out.str(), err.str()};
}

std::string data_path(const std::string& rel) { return std::string(ECTFF_SOURCE_DIR) + "/" + rel; }

}  // namespace

TEST_CASE("triple JSON") {
    CHECK(io::to_json(ParamTriple{9, 19, 3}).dump() == "[9,19,3]");
    CHECK(io::triple_from_json(json::parse("[6,13,2]")) == ParamTriple{6, 13, 2});
    CHECK_THROWS_AS(io::triple_from_json(json::parse("[6,13]")), DomainError);
}

TEST_CASE("frame JSON round trip") {
    auto f = construct_2R_4_R(2, Field::Complex);
    auto j = io::to_json(f);
    CHECK(j["schema"] == "ectff-frame/1");
    auto g = io::frame_from_json(j);
    CHECK(g.params() == f.params());
    CHECK((fusion_gram(g) - fusion_gram(f)).cwiseAbs().maxCoeff() < 1e-15);
    auto bad = j;
    bad["n"] = 5;
    CHECK_THROWS_AS(io::frame_from_json(bad), DomainError);
    CHECK_THROWS_AS(io::frame_from_json(json::parse("{\"schema\":\"x\"}")), DomainError);
}

TEST_CASE("DF JSON round trip") {
    AbelianGroup G({13, 2});
    auto df = *verify_df(AbelianGroup({13}), {{1, 3, 9}, {2, 5, 6}});
    auto j = io::to_json(df);
    CHECK(j["blocks"][0][0].is_number_integer());
    auto back = io::df_from_json(j);
    CHECK(back.blocks == df.blocks);
    auto wrong = j;
    wrong["lambda"] = 2;
    CHECK_THROWS_AS(io::df_from_json(wrong), DomainError);
    auto s = io::df_from_json(json{{"families", json::array({j})}});
    CHECK(s.blocks == df.blocks);
}

TEST_CASE("verification report JSON") {
    auto j = io::to_json(verify(construct_2R_4_R(1, Field::Complex)));
    CHECK(j["schema"] == "ectff-report/1");
    CHECK(j["tight"] == true);
    CHECK(j["equiisoclinic"] == true);
    CHECK(j["trace_target"] == "1/3");
}

TEST_CASE("parse errors are domain errors") {
    CHECK_THROWS_AS(io::parse_text("{", "x"), DomainError);
    CHECK_THROWS_AS(io::read_file("/nonexistent/x.json"), DomainError);
}

TEST_CASE("CLI exit codes") {
    CHECK(ectff_run({"classify", "9", "19", "3"}).code == 0);
    CHECK(ectff_run({}).code == 2);
    CHECK(ectff_run({"frobnicate"}).code == 2);
    CHECK(ectff_run({"classify", "9", "19"}).code == 2);
    CHECK(ectff_run({"--json", "--pretty", "classify", "9", "19", "3"}).code == 2);
    auto bad = ectff_run({"classify", "0", "19", "3"});
    CHECK(bad.code == 1);
    CHECK_FALSE(bad.err.empty());
    CHECK(ectff_run({"orbit", "3", "7", "1", "--kmin", "-100", "--kmax", "100"}).code == 1);
    CHECK(ectff_run({"construct", "c2r4r", "--r", "3", "--field", "real"}).code == 1);
    CHECK(ectff_run({"--help"}).code == 0);
}

TEST_CASE("CLI orbit") {
    auto r = ectff_run({"orbit", "3", "7", "1", "--window", "6", "--json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out).dump() == "[[11,7,9],[11,7,2],[3,7,2],[3,7,1],[4,7,1],[4,7,3],[17,7,3]]");
    auto c = ectff_run({"orbit", "1", "4", "1", "--chain", "naimark", "--steps", "3", "--json"});
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out).size() == 4);
    auto t = ectff_run({"orbit", "3", "7", "1", "--window", "2"});
    CHECK(t.out.find("(3,7,1)  *") != std::string::npos);
}

TEST_CASE("CLI certify") {
    auto r = ectff_run({"--json", "certify", "9", "19", "3"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["schema"] == "ectff-certification/1");
    CHECK(j["verdict"] == "Novel");
    CHECK(j["f"] == 261);
    auto t = ectff_run({"certify", "9", "19", "3"});
    CHECK(t.out.find("Gerzon") != std::string::npos);
    CHECK(t.out.find("Fisher") != std::string::npos);
}

TEST_CASE("CLI certify batch from stdin") {
    auto r = ectff_run({"--json", "certify", "--batch", "-"}, "# header\n9 19 3\n\n6 13 2  # harmonic\n7 4 2\n");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j.size() == 3);
    CHECK(j[0]["verdict"] == "Novel");
    CHECK(j[1]["verdict"] == "CoveredByCatalog");
    CHECK(j[2]["verdict"] == "SettledByFNeg");
    CHECK(ectff_run({"certify", "--batch", "-"}, "9 19\n").code == 1);
}

TEST_CASE("CLI catalog selection") {
    auto def = json::parse(ectff_run({"--json", "certify", "9", "19", "3"}).out);
    auto file = json::parse(ectff_run({"--json", "certify", "9", "19", "3", "--catalog", data_path("data/catalog.json")}).out);
    CHECK(def["catalog"]["hash"] == file["catalog"]["hash"]);
    CHECK(ectff_run({"certify", "9", "19", "3", "--catalog", "/nonexistent.json"}).code == 1);
    ::setenv("ECTFF_CATALOG", "/nonexistent.json", 1);
    CHECK(ectff_run({"certify", "9", "19", "3"}).code == 1);
    // the flag wins over the environment
    CHECK(ectff_run({"certify", "9", "19", "3", "--catalog", data_path("data/catalog.json")}).code == 0);
    ::unsetenv("ECTFF_CATALOG");
}

TEST_CASE("CLI construct and verify") {
    auto c = ectff_run({"construct", "from-df", data_path("tests/data/df13.json")});
    REQUIRE(c.code == 0);
    auto v = ectff_run({"verify", "--tol", "1e-9"}, c.out);
    REQUIRE(v.code == 0);
    CHECK(v.out.find("equichordal=true") != std::string::npos);
    CHECK(v.out.find("equiisoclinic=false") != std::string::npos);
    auto z = ectff_run({"construct", "zauner", "--complete", "4", "2"});
    REQUIRE(z.code == 0);
    auto vz = json::parse(ectff_run({"--json", "verify"}, z.out).out);
    CHECK(vz["params"].dump() == "[6,4,3]");
    CHECK(vz["tight"] == true);
    auto h = ectff_run({"construct", "harmonic", "--group", "Z7", "--set", "[1,2,4]"});
    REQUIRE(h.code == 0);
    CHECK(json::parse(ectff_run({"--json", "verify"}, h.out).out)["equiisoclinic"] == true);
    auto n = ectff_run({"complement", "naimark"}, h.out);
    REQUIRE(n.code == 0);
    CHECK(json::parse(n.out)["dim"] == 4);
    CHECK(ectff_run({"construct", "nonsense"}).code == 1);
}

TEST_CASE("CLI search-df") {
    auto r = ectff_run({"--json", "search-df", "--group", "Z19", "--k", "3", "--lambda", "1"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["families"].size() == 1);
    auto df = io::df_from_json(j);
    CHECK(df.lambda == 1);
}

TEST_CASE("CLI output is deterministic") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--json", "certify", "12", "25", "4"}, {"--json", "classify", "48", "19", "45"}, {"--json", "exists", "5", "7", "2"}}) {
        CHECK(ectff_run(args).out == ectff_run(args).out);
    }
}
