#include <doctest.h>

#include "json.hpp"
#include <sstream>

#include "valkey/cli.hpp"
#include "valkey/parse.hpp"
#include "valkey/xval.hpp"

using namespace valkey;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("eps on a linear polynomial")
{
    const auto r = run({"eps", "--val", "gauss:qp:3:1", "--poly", "x-3"});
    CHECK(r.code == 0);
    const auto d = r.doc();
    CHECK(d["operation"] == "eps");
    CHECK(d["result"]["epsilon"] == "1");
    CHECK(d["result"]["I"] == json::array({1}));
    CHECK(d["result"]["b"] == 1);
    for (const char *k : {"inputs", "certificates", "grid-parameters", "budget", "seed"})
        CHECK(d.contains(k));
}

TEST_CASE("truncation counterexample exits with a witness")
{
    const auto r = run({"verify", "--suite", "truncation-counterexample"});
    CHECK(r.code == 1);
    CHECK(r.doc()["result"]["details"]["witness"] == json::array({"x-3", "x+3"}));
}

TEST_CASE("classify a hensel sequence")
{
    const auto r = run({"pcs", "classify", "--gen", "hensel:qp:7;g=x^2-2;a0=3", "--degree-bound", "2", "--window", "8"});
    CHECK(r.code == 0);
    CHECK(r.doc()["result"]["type"] == "algebraic");
    CHECK(r.doc()["result"]["q_min"] == "x^2-2");
}

TEST_CASE("exit codes")
{
    CHECK(run({"verify", "--suite", "no-such"}).code == 2);
    CHECK(run({"eps", "--val", "gauss:qp:3:1", "--poly", "x^2+"}).code == 2);
    CHECK(run({"eps", "--val", "gauss:qp:4:1", "--poly", "x"}).code == 2);
    CHECK(run({"chain", "--val", "root:qp:7;g=x^2-2;a0=3"}).code == 2);
    CHECK(run({"check-key", "--val", "gauss:qp:3:1", "--poly", "x^2"}).code == 1);
    CHECK(run({"pcs", "keys", "--gen", "series:qp:5;expr=geom"}).code == 1);
    CHECK(run({"chain", "--val", "aug:(gauss:qp:7:0);Q=x^2-2;g=1"}).code == 1);
    CHECK(run({"eps", "--val", "aug:(gauss:qp:7:0);Q=x^2-2;g=1", "--poly", "x"}).code == 2);
    CHECK(run({"eps"}).code == 2);
}

TEST_CASE("errors are reported as documents")
{
    const auto r = run({"eps", "--val", "gauss:qp:3:1", "--poly", "x^2+?"});
    CHECK(r.doc()["error"]["kind"] == "input");
    CHECK(r.err.find("position") != std::string::npos);
}

TEST_CASE("falsified keys carry a verifiable witness")
{
    const auto r = run({"check-key", "--val", "gauss:qp:3:1", "--poly", "x^2"});
    const auto d = r.doc();
    REQUIRE(d["result"].contains("witness"));
    const auto w = d["result"]["witness"].get<std::string>();
    const auto e = run({"eps", "--val", "gauss:qp:3:1", "--poly", w}).doc();
    CHECK(parse_value(e["result"]["epsilon"].get<std::string>()) >= parse_value(d["result"]["epsilon"].get<std::string>()));
}

TEST_CASE("reports are deterministic")
{
    const std::vector<std::string> args{"verify", "--suite", "prop-truncation-valuation", "--samples", "20", "--seed", "7"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> cs{"complete-set", "--val", "root:qp:7;g=x^2-2;a0=3", "--corpus", "x^2-2;x^2+x+1"};
    CHECK(run(cs).out == run(cs).out);
}

TEST_CASE("printed objects re-parse")
{
    const auto d = run({"complete-set", "--val", "root:qp:7;g=x^2-2;a0=3", "--corpus", "x^2-2"}).doc();
    const auto V = parse_valuation(d["inputs"]["val"].get<std::string>());
    CHECK(V.descriptor() == d["inputs"]["val"]);
    for (const auto &k : d["result"]["keys"])
        CHECK(parse_poly(V.field(), k["key"].get<std::string>()).str() == k["key"].get<std::string>());
}

TEST_CASE("text output")
{
    const auto r = run({"eps", "--val", "gauss:qp:3:1", "--poly", "x-3", "--output", "text"});
    CHECK(r.code == 0);
    CHECK(r.out.find("epsilon: 1") != std::string::npos);
}
