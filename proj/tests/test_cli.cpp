#include "siegel/cli.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace siegel;

namespace {

RunConfig cfg(const std::string& sub, std::vector<std::string> theta = {}) {
    RunConfig c;
    c.subcommand = sub;
    c.theta = std::move(theta);
    return c;
}

}  // namespace

TEST_CASE("hash and number formatting", "[report]") {
    CHECK(fnv1a("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(hex64(0xabcull) == "0000000000000abc");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("config JSON round trip and strict keys", "[cli]") {
    RunConfig c = cfg("radius", {"golden", "2/7"});
    c.radii = {11.5};
    c.seed = 77;
    RunConfig back = config_from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));

    CHECK_THROWS_AS(parse_config_text(R"({"subcommand": "brjuno", "depht": 3})"), ParseError);
    CHECK_THROWS_AS(parse_config_text(R"({"N": "many"})"), ParseError);
    try {
        parse_config_text("{\n  \"N\": 12,\n  \"bits\": ,\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("family descriptors", "[cli]") {
    Angle t = Angle::golden();
    CHECK(make_family("quad", t, 64, 53).degree == 2);
    CHECK(make_family("dstar:4", t, 64, 53).degree == 4);
    CHECK(make_family("geyer:3", t, 64, 53).degree == 3);
    CHECK(make_family("unicritical:3", t, 64, 53).degree == 3);
    CHECK(make_family("conjugate:exp", t, 64, 53).N() == 64);
    CHECK(make_family("pole", t, 64, 53).rational.has_value());
    CHECK_THROWS_AS(make_family("dstar:x", t, 64, 53), ParseError);
    CHECK_THROWS_AS(make_family("dstar:1", t, 64, 53), ParseError);
    CHECK_THROWS_AS(make_family("henon", t, 64, 53), ParseError);
}

TEST_CASE("brjuno subcommand output", "[cli]") {
    std::ostringstream out, err;
    CHECK(run(cfg("brjuno", {"quad:-1,1,5,2"}), out, err) == 0);
    std::string s = out.str();
    CHECK(s.rfind("# brjuno config=", 0) == 0);
    CHECK(s.find("\n# config_hash=") != std::string::npos);
    CHECK(s.find(",1.25982891379435") != std::string::npos);
}

TEST_CASE("exit statuses", "[cli]") {
    std::ostringstream out, err;
    CHECK(run(cfg("brjuno", {"quad:1,2,x"}), out, err) == 2);
    CHECK(err.str().find("error:") == 0);
    CHECK(run(cfg("bogus"), out, err) == 2);
    CHECK(run(cfg("brjuno", {"2/7", "golden"}), out, err) == 1);
    RunConfig lax = cfg("brjuno", {"2/7", "golden"});
    lax.max_flagged_fraction = 0.5;
    CHECK(run(lax, out, err) == 0);
    RunConfig harm = cfg("check-harmonic");
    harm.radii = {5.0};
    CHECK(run(harm, out, err) == 2);
}

TEST_CASE("reruns are byte-identical", "[cli]") {
    RunConfig c = cfg("scan-conjecture");
    c.samples = 4;
    c.N = 256;
    std::ostringstream a, b, e;
    CHECK(run(c, a, e) == 0);
    CHECK(run(c, b, e) == 0);
    CHECK(a.str() == b.str());
    c.seed = 2;
    std::ostringstream d;
    run(c, d, e);
    CHECK(d.str() != a.str());
}

TEST_CASE("JSON summary document", "[report]") {
    RunConfig c = cfg("semiconj");
    RunResult r = execute(c);
    nlohmann::json j = summary_json(r.report, to_json(c));
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["row_count"] == 7);
    CHECK(j["flags"] == 0);
    CHECK(j["config"]["subcommand"] == "semiconj");
    CHECK(j["summary"]["max_residual"].get<double>() < 1e-12);
    CHECK(j["config_hash"] == config_hash(to_json(c)));
}
