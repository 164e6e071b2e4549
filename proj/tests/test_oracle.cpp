#include <quivinv/generators.hpp>
#include <quivinv/oracle.hpp>

#include <doctest.h>

using namespace quivinv;

namespace {

SymQuiver orthogonal_loop(const char* id = "s") {
    SymQuiver q;
    q.add_vertex(id, VertexKind::Orthogonal);
    q.add_arrow("a", id, id);
    return q;
}

}  // namespace

TEST_CASE("lie_invariant_dim on pinned small instances") {
    SUBCASE("O(1) loop, degree 1") {
        CHECK(lie_invariant_dim(orthogonal_loop(), {{"s", 1}}, 1) == 1);
    }
    SUBCASE("O(2) loop, degree 1: only tr f") {
        CHECK(lie_invariant_dim(orthogonal_loop(), {{"s", 2}}, 1) == 1);
    }
    SUBCASE("Sp(2) loop, degree 2: tr f^2 and (tr f)^2") {
        SymQuiver q;
        q.add_vertex("t", VertexKind::Symplectic);
        q.add_arrow("a", "t", "t");
        CHECK(lie_invariant_dim(q, {{"t", 2}}, 2) == 2);
    }
}

TEST_CASE("dropping the reflection never decreases the invariant dimension") {
    // O(2) conjugation on one loop: compare against the SO-only kernel by
    // re-running with the reflection constraint removed.
    SymQuiver q = orthogonal_loop();
    DimVector alpha{{"s", 2}};
    const QuiverCoords coords(q, alpha);
    auto ops = detail::gamma_actions(q, alpha, coords);
    std::vector<LinearAction> lie_only;
    for (const auto& op : ops)
        if (op.derivation) lie_only.push_back(op);
    for (unsigned d = 1; d <= 3; ++d) {
        const auto basis = monomials_of_degree(coords.nvars(), d);
        const std::size_t so_dim = invariant_space(basis, coords.nvars(), lie_only).cols();
        const std::size_t o_dim = invariant_space(basis, coords.nvars(), ops).cols();
        CHECK(so_dim >= o_dim);
    }
}

TEST_CASE("span_dim basics") {
    SymQuiver q = orthogonal_loop();
    DimVector alpha{{"s", 2}};
    const TraceWord tr_f{{{"a", false}}};
    const TraceWord tr_f2{{{"a", false}, {"a", false}}};

    CHECK(span_dim({tr_f, tr_f2}, q, alpha, 2) == 2);
    CHECK(span_dim({}, q, alpha, 2) == 0);
    CHECK(span_dim({tr_f, tr_f, tr_f2, tr_f2}, q, alpha, 2) == 2);
}

TEST_CASE("span never exceeds the oracle dimension") {
    SymQuiver q;
    q.add_vertex("s", VertexKind::Orthogonal);
    q.add_vertex("t", VertexKind::Symplectic);
    q.add_arrow("a", "s", "t");
    DimVector alpha{{"s", 2}, {"t", 2}};
    auto words = generators(q, alpha, 4);
    for (unsigned d = 1; d <= 3; ++d)
        CHECK(span_dim(words, q, alpha, d) <= lie_invariant_dim(q, alpha, d));
}

TEST_CASE("check_spanning passes on the orthogonal loop up to degree 4") {
    SymQuiver q = orthogonal_loop();
    DimVector alpha{{"s", 2}};
    auto words = generators(q, alpha, 4);
    for (unsigned d = 1; d <= 4; ++d) {
        auto rep = check_spanning(q, alpha, d, 4, words);
        CHECK(rep.pass);
        CHECK(rep.oracle_dim == rep.span_dim);
    }
}

TEST_CASE("check_spanning passes on two orthogonal vertices with arrows both ways") {
    SymQuiver q;
    q.add_vertex("s1", VertexKind::Orthogonal);
    q.add_vertex("s2", VertexKind::Orthogonal);
    q.add_arrow("a", "s1", "s2");
    q.add_arrow("b", "s2", "s1");
    DimVector alpha{{"s1", 1}, {"s2", 2}};
    auto words = generators(q, alpha, 3);
    for (unsigned d = 1; d <= 3; ++d) CHECK(check_spanning(q, alpha, d, 3, words).pass);
}

TEST_CASE("check_spanning passes on the mixed orthogonal/symplectic arrow") {
    SymQuiver q;
    q.add_vertex("s", VertexKind::Orthogonal);
    q.add_vertex("t", VertexKind::Symplectic);
    q.add_arrow("a", "s", "t");
    DimVector alpha{{"s", 2}, {"t", 2}};
    auto words = generators(q, alpha, 4);
    for (unsigned d = 1; d <= 4; ++d) CHECK(check_spanning(q, alpha, d, 4, words).pass);
}

TEST_CASE("guard rail fires") {
    SymQuiver q = orthogonal_loop();
    CHECK_THROWS_AS(lie_invariant_dim(q, {{"s", 3}}, 4, /*guard_rail=*/10), TooLarge);
}

TEST_CASE("fft_check pinned tiny cases") {
    SUBCASE("N=1, N'=0, i=1") {
        auto rep = fft_check(1, 0, 1);
        CHECK(rep.pass);
        CHECK(rep.oracle_dim == 1);
        CHECK(rep.pairing_span_dim == 1);
    }
    SUBCASE("N=0, N'=2, i=1: the symplectic form") {
        auto rep = fft_check(0, 2, 1);
        CHECK(rep.pass);
        CHECK(rep.oracle_dim == 1);
    }
    SUBCASE("N=2, N'=2, i=2") {
        auto rep = fft_check(2, 2, 2);
        CHECK(rep.pass);
    }
}

TEST_CASE("fft_check stable range reproduces (2i-1)!! for the orthogonal group") {
    CHECK(fft_check(2, 0, 1).pairing_span_dim == 1);
    auto rep = fft_check(4, 0, 2);
    CHECK(rep.pairing_span_dim == 3);
    CHECK(rep.pass);
}
