#include <quivinv/generators.hpp>
#include <quivinv/json_io.hpp>

#include <doctest.h>

using namespace quivinv;

namespace {

std::pair<SymQuiver, DimVector> mixed_quiver() {
    SymQuiver q;
    q.add_vertex("s", VertexKind::Orthogonal);
    q.add_vertex("t", VertexKind::Symplectic);
    q.add_gl_pair("u", "us");
    q.add_arrow("a", "s", "t");
    q.add_arrow("b", "u", "s");
    q.add_arrow("c", "t", "t");
    DimVector alpha{{"s", 2}, {"t", 2}, {"u", 1}, {"us", 1}};
    return {q, alpha};
}

}  // namespace

TEST_CASE("quiver round trip") {
    auto [q, alpha] = mixed_quiver();
    const Json j = quiver_to_json(q, alpha);
    auto [q2, alpha2] = quiver_from_json(j);
    CHECK(alpha2 == alpha);
    CHECK(quiver_to_json(q2, alpha2) == j);
    CHECK(q2.vertices().size() == q.vertices().size());
    CHECK(q2.arrows().size() == q.arrows().size());
}

TEST_CASE("quiver parse errors") {
    CHECK_THROWS_AS(quiver_from_json(Json::object()), BadInput);
    CHECK_THROWS_AS(quiver_from_json(Json::parse(R"({"vertices":[{"id":"s"}],"arrows":[],"dims":{}})")),
                    BadInput);
    CHECK_THROWS_AS(
        quiver_from_json(Json::parse(
            R"({"vertices":[{"id":"s","class":"unitary"}],"arrows":[],"dims":{"s":1}})")),
        BadInput);
    // inadmissible dimension surfaces as the domain error, not BadInput
    CHECK_THROWS_AS(
        quiver_from_json(Json::parse(
            R"({"vertices":[{"id":"t","class":"symplectic"}],"arrows":[],"dims":{"t":3}})")),
        OddSymplecticDim);
}

TEST_CASE("word round trip") {
    const TraceWord w{{{"a", false}, {"b", true}, {"a", true}}};
    CHECK(word_from_json(word_to_json(w)) == w);
    CHECK_THROWS_AS(word_from_json(Json::object()), BadInput);
}

TEST_CASE("representation round trip keeps exact rationals") {
    Representation rho;
    Mat m(2, 2);
    m(0, 0) = rat(3, 7);
    m(1, 0) = rat(-1, 2);
    rho.maps["a"] = m;
    const Json j = representation_to_json(rho);
    CHECK(j["a"]["data"][0] == "3/7");
    const Representation back = representation_from_json(j);
    CHECK(back.at("a")(0, 0) == rat(3, 7));
    CHECK(back.at("a")(1, 1) == 0);
}

TEST_CASE("spec round trip") {
    DecompositionSpec spec;
    spec.genus = 3;
    spec.flavor = Flavor::Symplectic;
    spec.summands.push_back({SummandKind::OrthogonalStable, 1, 2});
    spec.summands.push_back({SummandKind::NonSelfDualPair, 2, 1});
    const Json j = spec_to_json(spec);
    const DecompositionSpec back = spec_from_json(j);
    CHECK(back.genus == 3);
    CHECK(back.flavor == Flavor::Symplectic);
    REQUIRE(back.summands.size() == 2);
    CHECK(back.summands[1].kind == SummandKind::NonSelfDualPair);
    CHECK(spec_to_json(back) == j);
    CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"genus":2,"flavor":"weird","summands":[]})")),
                    BadInput);
}

TEST_CASE("report serialization is deterministic byte for byte") {
    auto [q, alpha] = mixed_quiver();
    auto words = generators(q, alpha, 3);
    Rng rng1(11), rng2(11);
    const std::string a = invariance_report_to_json(invariance_report(words, q, alpha, 5, rng1)).dump();
    const std::string b = invariance_report_to_json(invariance_report(words, q, alpha, 5, rng2)).dump();
    CHECK(a == b);

    DecompositionSpec spec;
    spec.genus = 2;
    spec.summands.push_back({SummandKind::OrthogonalStable, 1, 1});
    spec.summands.push_back({SummandKind::OrthogonalStable, 2, 1});
    CHECK(local_model_report_to_json(local_model_report(spec)).dump() ==
          local_model_report_to_json(local_model_report(spec)).dump());
}

TEST_CASE("local model report JSON carries the headline numbers") {
    DecompositionSpec spec;
    spec.genus = 2;
    spec.summands.push_back({SummandKind::OrthogonalStable, 1, 1});
    spec.summands.push_back({SummandKind::OrthogonalStable, 2, 1});
    const Json j = local_model_report_to_json(local_model_report(spec));
    CHECK(j["multiplicity"] == 2);
    CHECK(j["tangent_dim"] == 4);
    CHECK(j["fiber_cardinality"] == 1);
    CHECK(j["h1ad"]["total"] == 3);
}
