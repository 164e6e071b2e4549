// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Everything is exact rational arithmetic; no tolerances anywhere.

#include <quivinv/generators.hpp>
#include <quivinv/json_io.hpp>
#include <quivinv/local_model.hpp>
#include <quivinv/oracle.hpp>
#include <quivinv/pfaffian_ext.hpp>
#include <quivinv/sampling.hpp>

#include <array>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace quivinv;

namespace {

struct Instance {
    std::string name;
    SymQuiver q;
    DimVector alpha;
};

std::vector<Instance> suite_instances() {
    std::vector<Instance> out;
    {
        SymQuiver q;
        q.add_vertex("s", VertexKind::Orthogonal);
        q.add_arrow("a", "s", "s");
        out.push_back({"orth-loop", q, {{"s", 2}}});
    }
    {
        SymQuiver q;
        q.add_vertex("s", VertexKind::Orthogonal);
        q.add_arrow("a", "s", "s");
        out.push_back({"orth-loop-3", q, {{"s", 3}}});
    }
    {
        SymQuiver q;
        q.add_vertex("t", VertexKind::Symplectic);
        q.add_arrow("a", "t", "t");
        out.push_back({"symp-loop", q, {{"t", 2}}});
    }
    {
        SymQuiver q;
        q.add_gl_pair("u", "us");
        q.add_arrow("a", "u", "u");
        q.add_arrow("b", "u", "us");
        out.push_back({"gl-pair", q, {{"u", 2}, {"us", 2}}});
    }
    {
        SymQuiver q;
        q.add_vertex("s", VertexKind::Orthogonal);
        q.add_vertex("t", VertexKind::Symplectic);
        q.add_arrow("a", "s", "t");
        out.push_back({"orth-symp", q, {{"s", 2}, {"t", 2}}});
    }
    {
        SymQuiver q;
        q.add_vertex("s1", VertexKind::Orthogonal);
        q.add_vertex("s2", VertexKind::Orthogonal);
        q.add_arrow("a", "s1", "s2");
        q.add_arrow("b", "s2", "s1");
        out.push_back({"orth-orth", q, {{"s1", 1}, {"s2", 2}}});
    }
    {
        SymQuiver q;
        q.add_gl_pair("u", "us");
        q.add_vertex("s", VertexKind::Orthogonal);
        q.add_arrow("a", "u", "s");
        q.add_arrow("b", "s", "u");
        out.push_back({"gl-orth", q, {{"u", 1}, {"us", 1}, {"s", 2}}});
    }
    return out;
}

bool criterion_fft(std::string& detail) {
    const std::array<std::array<std::size_t, 3>, 9> cases = {{{1, 0, 1},
                                                              {2, 0, 1},
                                                              {2, 0, 2},
                                                              {3, 0, 2},
                                                              {0, 2, 1},
                                                              {0, 2, 2},
                                                              {1, 2, 1},
                                                              {2, 2, 1},
                                                              {2, 2, 2}}};
    bool ok = true;
    std::ostringstream d;
    for (const auto& c : cases) {
        const auto rep = fft_check(c[0], c[1], c[2]);
        if (!rep.pass) ok = false;
        d << "(" << c[0] << "," << c[1] << "," << c[2] << ")=" << rep.pairing_span_dim << "/"
          << rep.oracle_dim << " ";
    }
    detail = d.str();
    return ok;
}

bool criterion_spanning(std::string& detail) {
    bool ok = true;
    std::size_t checks = 0;
    for (const auto& inst : suite_instances()) {
        const auto words = generators(inst.q, inst.alpha, 4);
        for (unsigned deg = 1; deg <= 4; ++deg) {
            const auto rep = check_spanning(inst.q, inst.alpha, deg, 4, words, kDefaultGuardRail,
                                            inst.name);
            ok = ok && rep.pass;
            ++checks;
        }
    }
    detail = std::to_string(checks) + " spanning checks over 7 instances";
    return ok;
}

bool criterion_invariance(std::string& detail) {
    std::size_t samples = 0, failures = 0;
    Rng rng(0xfeed);
    for (const auto& inst : suite_instances()) {
        const auto words = generators(inst.q, inst.alpha, 4);
        const auto rep = invariance_report(words, inst.q, inst.alpha, 40, rng.fork(inst.name));
        samples += rep.total_samples;
        failures += rep.total_failures;
    }
    detail = std::to_string(failures) + " failures / " + std::to_string(samples) + " samples";
    return failures == 0 && samples >= 1000;
}

bool criterion_pfaffian(std::string& detail) {
    Rng rng(0xabc);
    std::size_t congruence_fails = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 * (1 + trial % 4);  // sizes 2, 4, 6, 8
        Mat a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                a(i, j) = rng.next_entry(9);
                a(j, i) = -a(i, j);
            }
        Mat g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.next_entry(4);
        if (pfaffian(g * a * g.transpose()) != det(g) * pfaffian(a)) ++congruence_fails;
    }

    bool degree_ok = true;
    for (std::size_t m = 1; m <= 3; ++m)
        degree_ok = degree_ok && generic_degree_report({2, m}, 4).all_accounted();

    const bool square_ok = so_extension_check({2, 1}, 10, 5).pf_square_in_span &&
                           so_extension_check({4, 1}, 10, 5).pf_square_in_span;

    detail = std::to_string(congruence_fails) + " congruence failures; degree gaps " +
             (degree_ok ? "accounted" : "NOT accounted") + "; pf^2 span " +
             (square_ok ? "ok" : "FAILED");
    return congruence_fails == 0 && degree_ok && square_ok;
}

DecompositionSpec stable_spec(std::size_t g, const std::vector<std::size_t>& ranks) {
    DecompositionSpec spec;
    spec.genus = g;
    for (auto r : ranks) spec.summands.push_back({SummandKind::OrthogonalStable, r, 1});
    return spec;
}

bool criterion_multiplicity(std::string& detail) {
    const std::vector<std::pair<DecompositionSpec, std::size_t>> cases = {
        {stable_spec(2, {1, 1}), 1},       {stable_spec(2, {1, 2}), 2},
        {stable_spec(3, {1, 1}), 2},       {stable_spec(2, {2, 2}), 8},
        {stable_spec(2, {1, 1, 1}), 2},    {stable_spec(2, {1, 1, 1, 1}), 8}};
    std::ostringstream d;
    bool ok = true;
    for (const auto& [spec, expect] : cases) {
        const std::size_t got = multiplicity(spec);
        ok = ok && got == expect;
        d << got << (got == expect ? "" : "!=" + std::to_string(expect)) << " ";
    }
    detail = "computed: " + d.str();
    return ok;
}

bool criterion_tangent(std::string& detail) {
    bool ok = true;
    for (std::size_t g : {2, 3})
        for (std::size_t r1 : {1, 2})
            for (std::size_t r2 : {1, 2}) {
                const auto spec = stable_spec(g, {r1, r2});
                const std::size_t d = r1 * r2 * (g - 1);
                const std::size_t formula = form_split(SummandKind::OrthogonalStable, r1, g).alt +
                                            form_split(SummandKind::OrthogonalStable, r2, g).alt +
                                            d * (d + 1) / 2;
                ok = ok && tangent_dim(spec) == formula;
            }
    const std::size_t anchor = tangent_dim(stable_spec(2, {1, 2}));
    ok = ok && anchor == 4;
    detail = "n=2 grid consistent; (g,r)=(2,(1,2)) -> " + std::to_string(anchor);
    return ok;
}

bool criterion_fiber(std::string& detail) {
    bool ok = true;
    std::size_t cases = 0;
    auto check = [&](const std::vector<std::size_t>& ranks) {
        const auto spec = stable_spec(2, ranks);
        const std::size_t got = fiber_cardinality(spec);
        std::size_t total = 0;
        bool all_even = true;
        for (auto r : ranks) {
            total += r;
            all_even = all_even && r % 2 == 0;
        }
        const std::size_t expect = (total % 2 != 0) ? 1 : (all_even ? 2 : 1);
        ok = ok && got == expect;
        ++cases;
    };
    for (std::size_t r1 = 1; r1 <= 4; ++r1) {
        check({r1});
        for (std::size_t r2 = 1; r2 <= 4; ++r2) {
            check({r1, r2});
            for (std::size_t r3 = 1; r3 <= 4; ++r3) check({r1, r2, r3});
        }
    }
    detail = std::to_string(cases) + " rank tuples swept";
    return ok;
}

std::string suite_json(std::uint64_t seed) {
    Json out;
    out["reports"] = Json::array();
    for (const auto& inst : suite_instances()) {
        const auto words = generators(inst.q, inst.alpha, 3, seed);
        Json spans = Json::array();
        for (unsigned deg = 1; deg <= 3; ++deg)
            spans.push_back(spanning_report_to_json(
                check_spanning(inst.q, inst.alpha, deg, 3, words, kDefaultGuardRail, inst.name)));
        const auto inv = invariance_report(words, inst.q, inst.alpha, 10, Rng(seed + 3));
        out["reports"].push_back({{"instance", inst.name},
                                  {"spanning", std::move(spans)},
                                  {"invariance", invariance_report_to_json(inv)}});
    }
    out["local"] = local_model_report_to_json(local_model_report(stable_spec(2, {1, 2})));
    return out.dump();
}

bool criterion_determinism(std::string& detail) {
    const std::string a = suite_json(12345);
    const std::string b = suite_json(12345);
    detail = std::to_string(a.size()) + " bytes, reruns " + (a == b ? "identical" : "DIFFER");
    return a == b;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*run)(std::string&);
    };
    const Criterion criteria[] = {
        {"1 multilinear pairing span equals oracle (9 instances)", criterion_fft},
        {"2 trace words span the invariant ring (7 instances, degree <= 4)", criterion_spanning},
        {"3 invariance fuzzing (>= 1000 samples, both O components)", criterion_invariance},
        {"4 pfaffian: congruence covariance, SO/O gap, pf^2 span", criterion_pfaffian},
        {"5 multiplicity closed forms", criterion_multiplicity},
        {"6 tangent dimension vs Hilbert series", criterion_tangent},
        {"7 fiber cardinality parity sweep", criterion_fiber},
        {"8 byte-identical JSON reruns", criterion_determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.name << " [" << detail << "]\n";
    }
    if (failures) std::cout << failures << " criteria failed\n";
    return failures == 0 ? 0 : 1;
}
