#include <quivinv/evaluate.hpp>
#include <quivinv/generators.hpp>

#include <doctest.h>

using namespace quivinv;

namespace {

struct Fixture {
    SymQuiver q;
    DimVector alpha;
    DoubledQuiver dq;
    FormAssignment forms;

    Fixture(SymQuiver quiver, DimVector dims)
        : q(std::move(quiver)), alpha(std::move(dims)), dq(build_doubled(q)), forms(q, alpha) {}

    Rat eval(const TraceWord& w, const Representation& rho) const {
        return evaluate_word(w, rho, q, alpha, dq, forms);
    }
};

Fixture orthogonal_loop(std::size_t dim) {
    SymQuiver q;
    q.add_vertex("s", VertexKind::Orthogonal);
    q.add_arrow("a", "s", "s");
    return Fixture(std::move(q), {{"s", dim}});
}

Fixture symplectic_loop() {
    SymQuiver q;
    q.add_vertex("t", VertexKind::Symplectic);
    q.add_arrow("a", "t", "t");
    return Fixture(std::move(q), {{"t", 2}});
}

}  // namespace

TEST_CASE("adjoint with identity forms is the transpose") {
    Fixture f = orthogonal_loop(2);
    Mat m{{rat(1), rat(2)}, {rat(3), rat(4)}};
    CHECK(adjoint(m, f.forms, "s", "s") == m.transpose());
}

TEST_CASE("adjoint of J on the symplectic loop is -J") {
    // Direct 2x2 evaluation: J^{-1} J^T J = (-J)(-J)(J) = -J.
    Fixture f = symplectic_loop();
    const Mat j = symplectic_j(2);
    CHECK(adjoint(j, f.forms, "t", "t") == -j);
}

TEST_CASE("adjoint is an involution on orthogonal data and order 4 on mixed data") {
    SymQuiver q;
    q.add_vertex("s", VertexKind::Orthogonal);
    q.add_vertex("t", VertexKind::Symplectic);
    q.add_arrow("a", "s", "t");
    DimVector alpha{{"s", 3}, {"t", 2}};
    FormAssignment forms(q, alpha);
    Rng rng(31);

    for (int trial = 0; trial < 5; ++trial) {
        Mat f(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) f(i, j) = rng.next_entry(5);
        CHECK(adjoint(adjoint(f, forms, "s", "s"), forms, "s", "s") == f);

        Mat g(2, 3);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 3; ++j) g(i, j) = rng.next_entry(5);
        // s -> t, adjoint lands t -> s, and twice gives -g; four times gives g.
        Mat once = adjoint(g, forms, "s", "t");
        Mat twice = adjoint(once, forms, "t", "s");
        CHECK(twice == -g);
        CHECK(adjoint(adjoint(twice, forms, "s", "t"), forms, "t", "s") == g);
    }
}

TEST_CASE("adjoint is form-compatible with sampled group elements") {
    SymQuiver q;
    q.add_vertex("s", VertexKind::Orthogonal);
    q.add_vertex("t", VertexKind::Symplectic);
    q.add_arrow("a", "s", "t");
    DimVector alpha{{"s", 2}, {"t", 2}};
    FormAssignment forms(q, alpha);
    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        Mat f(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) f(i, j) = rng.next_entry(5);
        const Mat gs = sample_orthogonal(2, rng);
        const Mat gt = sample_symplectic(2, rng);
        CHECK(adjoint(gt * f * inverse(gs), forms, "s", "t") ==
              gs * adjoint(f, forms, "s", "t") * inverse(gt));
    }
}

TEST_CASE("word evaluation basics") {
    Fixture f = orthogonal_loop(2);
    Representation rho;
    rho.maps["a"] = Mat{{rat(1), rat(2)}, {rat(3), rat(4)}};
    CHECK(f.eval(TraceWord{{{"a", false}}}, rho) == 5);

    rho.maps["a"] = Mat{{rat(0), rat(1)}, {rat(0), rat(0)}};
    CHECK(f.eval(TraceWord{{{"a", false}, {"a", true}}}, rho) == 1);

    CHECK(f.eval(TraceWord{{{"a", false}, {"a", true}}},
                 zero_representation(f.q, f.alpha)) == 0);
}

TEST_CASE("evaluation is invariant under cyclic rotation of the word") {
    Fixture f = orthogonal_loop(2);
    Rng rng(33);
    TraceWord w{{{"a", false}, {"a", true}, {"a", false}}};
    TraceWord rot{{{"a", true}, {"a", false}, {"a", false}}};
    for (int trial = 0; trial < 10; ++trial) {
        const Representation rho = random_representation(f.q, f.alpha, rng);
        CHECK(f.eval(w, rho) == f.eval(rot, rho));
    }
}

TEST_CASE("trace of a word equals trace of its adjoint-reversal on random data") {
    Fixture f = symplectic_loop();
    Rng rng(34);
    TraceWord w{{{"a", false}, {"a", false}, {"a", true}}};
    TraceWord rev{{{"a", false}, {"a", true}, {"a", true}}};
    for (int trial = 0; trial < 10; ++trial) {
        const Representation rho = random_representation(f.q, f.alpha, rng);
        CHECK(f.eval(w, rho) == f.eval(rev, rho));
    }
}

TEST_CASE("group action: identity, conjugation by -1, composition") {
    Fixture f = orthogonal_loop(2);
    Rng rng(35);
    const Representation rho = random_representation(f.q, f.alpha, rng);

    CHECK(act(f.q, f.alpha, identity_element(f.q, f.alpha), rho).at("a") == rho.at("a"));

    GroupElement minus;
    minus.blocks["s"] = -Mat::identity(2);
    CHECK(act(f.q, f.alpha, minus, rho).at("a") == rho.at("a"));

    for (int trial = 0; trial < 5; ++trial) {
        const GroupElement g = random_group_element(f.q, f.alpha, rng);
        const GroupElement h = random_group_element(f.q, f.alpha, rng);
        const Representation lhs = act(f.q, f.alpha, g, act(f.q, f.alpha, h, rho));
        const Representation rhs = act(f.q, f.alpha, compose(f.q, g, h), rho);
        CHECK(lhs.at("a") == rhs.at("a"));
    }
}

TEST_CASE("act rejects blocks outside the group") {
    Fixture f = orthogonal_loop(2);
    Rng rng(36);
    GroupElement bad;
    bad.blocks["s"] = Mat{{rat(1), rat(1)}, {rat(0), rat(1)}};
    CHECK_THROWS_AS(act(f.q, f.alpha, bad, random_representation(f.q, f.alpha, rng)), NotInGroup);
}

TEST_CASE("invariance fuzzing on the orthogonal loop") {
    Fixture f = orthogonal_loop(2);
    auto rep = invariance_report({TraceWord{{{"a", false}}}}, f.q, f.alpha, 100, Rng(37));
    CHECK(rep.total_samples == 100);
    CHECK(rep.total_failures == 0);
}

TEST_CASE("invariance fuzzing across a mixed orthogonal/symplectic arrow") {
    SymQuiver q;
    q.add_vertex("s", VertexKind::Orthogonal);
    q.add_vertex("t", VertexKind::Symplectic);
    q.add_arrow("a", "s", "t");
    DimVector alpha{{"s", 2}, {"t", 2}};
    auto rep = invariance_report({TraceWord{{{"a", false}, {"a", true}}}}, q, alpha, 100, Rng(38));
    CHECK(rep.total_failures == 0);
}

TEST_CASE("negative control: corrupted adjoint breaks invariance") {
    SymQuiver q;
    q.add_vertex("s", VertexKind::Orthogonal);
    q.add_vertex("t", VertexKind::Symplectic);
    q.add_arrow("a", "s", "t");
    DimVector alpha{{"s", 2}, {"t", 2}};
    auto rep = invariance_report({TraceWord{{{"a", false}, {"a", true}}}}, q, alpha, 50, Rng(39),
                                 /*corrupt_adjoint=*/true);
    CHECK(rep.total_failures > 0);
}

TEST_CASE("generator words stay invariant across vertex classes and small dims") {
    struct Instance {
        SymQuiver q;
        DimVector alpha;
    };
    std::vector<Instance> instances;
    {
        SymQuiver q;
        q.add_vertex("s", VertexKind::Orthogonal);
        q.add_vertex("t", VertexKind::Symplectic);
        q.add_arrow("a", "s", "t");
        q.add_arrow("b", "s", "s");
        instances.push_back({q, {{"s", 3}, {"t", 2}}});
    }
    {
        SymQuiver q;
        q.add_gl_pair("u", "u*");
        q.add_vertex("s", VertexKind::Orthogonal);
        q.add_arrow("a", "s", "u");
        q.add_arrow("b", "u", "s");
        instances.push_back({q, {{"s", 2}, {"u", 2}, {"u*", 2}}});
    }
    for (const auto& [q, alpha] : instances) {
        auto gens = generators(q, alpha, 3);
        auto rep = invariance_report(gens, q, alpha, 20, Rng(40));
        CHECK(rep.total_failures == 0);
    }
}
