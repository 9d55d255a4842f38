#include <doctest.h>

#include "oracles.hpp"
#include "qeta/json_io.hpp"
#include "test_helpers.hpp"

using namespace qeta;
using testing::R;

TEST_CASE("series round trip")
{
    oracle::SeriesGen gen(5);
    for (int i = 0; i < 50; ++i) {
        const QSeries s = gen.sparse(gen.grid());
        const Json j = to_json(s);
        CHECK(series_from_json(j) == s);
        CHECK(series_from_json(Json::parse(j.dump())) == s);
    }
    const QSeries exact = QSeries::monomial(R(-7, 3), R(5, 2));
    CHECK(series_from_json(to_json(exact)) == exact);
    CHECK(to_json(exact)["truncation"].is_null());
    CHECK(to_json(exact)["terms"][0]["coeff"] == "-7/3");
}

TEST_CASE("off-grid exponents are rejected")
{
    Json j = {{"grid", 2}, {"truncation", nullptr}, {"terms", Json::array({{{"exponent", "1/3"}, {"coeff", "1"}}})}};
    CHECK_THROWS_AS(series_from_json(j), std::invalid_argument);
}

TEST_CASE("cusp and order tables round trip")
{
    for (std::int64_t n : {1, 12, 16, 24}) {
        const CuspTable t = cusp_set(n);
        const CuspTable back = cusp_table_from_json(to_json(t));
        REQUIRE(back.entries.size() == t.entries.size());
        for (std::size_t i = 0; i < t.entries.size(); ++i) {
            CHECK(back.entries[i].cusp == t.entries[i].cusp);
            CHECK(back.entries[i].width == t.entries[i].width);
        }
    }
    for (const auto& table : order_tables()) {
        for (const auto& row : table.rows) {
            const OrderTable back = order_table_from_json(to_json(row));
            CHECK(back == row);
            CHECK(back.label == row.label);
        }
    }
}

TEST_CASE("certificates round trip")
{
    for (const char* id : {"eq1.4", "eq1.5", "rel.S", "bailey16.3", "eq1.9"}) {
        CAPTURE(id);
        const IdentityStatement& s = lookup(id);
        const Certificate c = verify(s, default_depth(s));
        const Json j = to_json(c);
        CHECK(certificate_from_json(j) == c);
        CHECK(certificate_from_json(Json::parse(j.dump(2))) == c);
        for (const char* key : {"id", "mode", "axioms", "level", "generator", "bounds", "poly", "window", "verdict"}) {
            CHECK(j.contains(key));
        }
    }
    const Certificate refuted = verify(perturbed(lookup("eq3.3"), R(4), R(2)), 50);
    const Json j = to_json(refuted);
    CHECK(j["failure"]["exponent"] == "4");
    CHECK(certificate_from_json(j) == refuted);
}

TEST_CASE("report serialization")
{
    const Json j = to_json(reproduce_paper(60));
    CHECK(j["ok"] == true);
    CHECK(j["cusps"].size() == 3);
    CHECK(j["tables"].size() == 7);
    CHECK(j["failures"].empty());
}

TEST_CASE("error objects")
{
    const Json e = error_json("parse", "unexpected token");
    CHECK(e["error"] == "parse");
    CHECK(e["message"] == "unexpected token");
}
