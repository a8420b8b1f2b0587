#include <doctest.h>

#include <json.hpp>
#include <cmath>
#include <string>

#include "nakt/nakt.h"

using Json = nlohmann::ordered_json;

namespace {

const char* kInstance = R"({
  "field": {"kind": "p-adic-rational", "p": 2},
  "points": ["a", "b", "c"],
  "metric": {"type": "matrix", "values": [["0","1","2"],["1","0","2"],["2","2","0"]]},
  "vector": [{"point": "a", "coeff": "1"}, {"point": "b", "coeff": "2"},
             {"point": "c", "coeff": "-3"}]
})";

struct Result {
    int status;
    Json json;
    std::string error;
};

Result take(nakt_result* r) {
    Result out;
    out.status = nakt_result_status(r);
    std::string payload = nakt_result_json(r);
    if (!payload.empty()) out.json = Json::parse(payload);
    out.error = nakt_result_error(r);
    nakt_result_free(r);
    return out;
}

}  // namespace

TEST_CASE("version string") {
    CHECK(std::string(nakt_version()).find('.') != std::string::npos);
}

TEST_CASE("norm over the C API") {
    Result r = take(nakt_norm(kInstance));
    REQUIRE(r.status == NAKT_OK);
    CHECK(r.json.at("verified") == true);
    CHECK(r.json.at("certificate").at("value").at("mantissa") == "2");
}

TEST_CASE("invalid input surfaces as EINVAL") {
    Result r = take(nakt_norm("{broken"));
    CHECK(r.status == NAKT_EINVAL);
    CHECK(!r.error.empty());
    Result r2 = take(nakt_norm(nullptr));
    CHECK(r2.status == NAKT_EINVAL);
}

TEST_CASE("oracle agrees with the norm") {
    Result n = take(nakt_norm(kInstance));
    Result o = take(nakt_oracle(kInstance, 3));
    REQUIRE(o.status == NAKT_OK);
    CHECK(o.json.at("value").at("mantissa") == n.json.at("certificate").at("value").at("mantissa"));
    CHECK(o.json.at("value").at("exponent") == n.json.at("certificate").at("value").at("exponent"));
}

TEST_CASE("certify round-trip and tamper detection") {
    Result n = take(nakt_norm(kInstance));
    std::string cert = n.json.at("certificate").dump();
    Result ok = take(nakt_certify(kInstance, cert.c_str()));
    CHECK(ok.status == NAKT_OK);
    CHECK(ok.json.at("verified") == true);

    Json tampered = n.json.at("certificate");
    tampered["value"]["mantissa"] = "1";
    Result bad = take(nakt_certify(kInstance, tampered.dump().c_str()));
    CHECK(bad.status == NAKT_EVERIFY);
    CHECK(bad.json.at("verified") == false);
    CHECK(!bad.json.at("failures").empty());
}

TEST_CASE("classical bipartite and democratic agree") {
    const char* real_inst = R"({
      "field": {"kind": "real"},
      "points": ["a", "b", "c"],
      "metric": {"type": "matrix", "values": [["0","1","2"],["1","0","1"],["2","1","0"]]},
      "vector": [{"point": "a", "coeff": "1"}, {"point": "b", "coeff": "1"},
                 {"point": "c", "coeff": "-2"}]
    })";
    Result b = take(nakt_classical(real_inst, 0));
    Result d = take(nakt_classical(real_inst, 1));
    REQUIRE(b.status == NAKT_OK);
    REQUIRE(d.status == NAKT_OK);
    CHECK(b.json.at("value") == "3");
    CHECK(d.json.at("value") == "3");
}

TEST_CASE("graev comparison over the C API") {
    Result g = take(nakt_graev(kInstance));
    REQUIRE(g.status == NAKT_OK);
    CHECK(g.json.at("comparison").at("valuation_trivial_on_q") == false);
}

TEST_CASE("generate is deterministic and feeds the norm") {
    Result a = take(nakt_generate(5, 3, 42, "p-adic-rational"));
    Result b = take(nakt_generate(5, 3, 42, "p-adic-rational"));
    REQUIRE(a.status == NAKT_OK);
    CHECK(a.json == b.json);
    Result n = take(nakt_norm(a.json.dump().c_str()));
    CHECK(n.status == NAKT_OK);
    CHECK(n.json.at("verified") == true);
}

TEST_CASE("appendix values") {
    Result r = take(nakt_appendix(1e-9));
    REQUIRE(r.status == NAKT_OK);
    CHECK(std::abs(r.json.at("support_restricted").get<double>() - std::sqrt(3.0)) < 1e-6);
    CHECK(std::abs(r.json.at("full").get<double>() - 1.5) < 1e-6);
    auto fp = r.json.at("fermat_point");
    CHECK(std::abs(fp[0].get<double>() - fp[1].get<double>()) < 1e-6);
}
