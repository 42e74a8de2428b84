#include <doctest.h>

#include <vector>

#include "masseykit/parse_error.hpp"
#include "masseykit/reports.hpp"

using namespace masseykit;
using reports::Json;

namespace {

std::vector<Json> run(const std::function<bool(const reports::Sink&)>& f, bool& ok) {
    std::vector<Json> out;
    ok = f([&](const Json& j) { out.push_back(j); });
    return out;
}

}  // namespace

TEST_CASE("cochain json round trip") {
    GroupPtr g = parse_group_spec("heisenberg:3");
    Rng rng(5);
    std::vector<fp_t> values(g->order() * g->order());
    for (auto& v : values) v = static_cast<fp_t>(rng.below(3));
    Cochain c(g, 2, 3, values);
    Json j = reports::cochain_to_json(c, "heisenberg:3");
    CHECK(j.at("p") == 3);
    Cochain back = reports::cochain_from_json(j);
    CHECK(back.values() == c.values());
    CHECK(back.degree() == 2);

    j.erase("p");
    CHECK(reports::cochain_from_json(j).modulus() == 3);

    Json bad = j;
    bad["values"].push_back(0);
    CHECK_THROWS_AS(reports::cochain_from_json(bad), std::invalid_argument);
    bad = j;
    bad["group"] = "heisenburg:3";
    CHECK_THROWS_AS(reports::cochain_from_json(bad), ParseError);
}

TEST_CASE("cohomology report") {
    bool ok = false;
    auto recs = run([](const reports::Sink& s) { return reports::cohomology("heisenberg:3", std::nullopt, true, s); },
                    ok);
    REQUIRE(recs.size() == 1);
    CHECK(ok);
    CHECK(recs[0].at("h1").at("dimension") == 2);
    CHECK(recs[0].at("h2").at("dimension") == 4);
    CHECK(recs[0].at("basis").at("h1").size() == 2);

    recs = run([](const reports::Sink& s) { return reports::cohomology("cyclic:128", 2, false, s); }, ok);
    CHECK(recs[0].at("h1").at("dimension") == 1);
    CHECK(recs[0].at("h2").is_null());

    CHECK_THROWS_AS(reports::run_prime("cyclic:4", 4), std::invalid_argument);
}

TEST_CASE("massey scan and dwyer reports") {
    bool ok = false;
    auto recs = run([](const reports::Sink& s) { return reports::massey_scan("heisenberg:2", std::nullopt, s); }, ok);
    CHECK(ok);
    for (const auto& r : recs) CHECK(r.at("agree") == true);

    auto a = run([](const reports::Sink& s) { return reports::dwyer_check("heisenberg:3", 3, 10, 7, s); }, ok);
    CHECK(ok);
    auto b = run([](const reports::Sink& s) { return reports::dwyer_check("heisenberg:3", 3, 10, 7, s); }, ok);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].dump() == b[i].dump());
    CHECK(a.back().at("rng") == Rng::kName);
    CHECK(a.back().at("samples") == 10);
}

TEST_CASE("tower and crossed reports") {
    auto field = PrimeFieldSpec::make(7, 3);
    bool ok = false;
    auto recs = run([&](const reports::Sink& s) { return reports::tower(field, "t", "x+t", 0, s); }, ok);
    CHECK(ok);
    for (const auto& [k, v] : recs[0].at("checks").items()) CHECK_MESSAGE(v == true, k);

    reports::CrossedOptions opts{"x2+t", 20, true};
    recs = run([&](const reports::Sink& s) { return reports::crossed(field, "t", opts, 1, s); }, ok);
    CHECK(ok);
    CHECK(recs[0].at("rank") == 81);
    CHECK(recs[0].at("associativity").at("failures") == 0);
    CHECK(recs[0].at("center").at("center_is_f") == true);

    CHECK_THROWS_AS(reports::crossed(PrimeFieldSpec::make(7, 3), "t^3", opts, 1, [](const Json&) {}),
                    std::invalid_argument);
}
