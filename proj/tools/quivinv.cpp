// Command-line front end: generator listings, theorem verification runs, and
// local-model reports over JSON inputs.

#include <quivinv/generators.hpp>
#include <quivinv/json_io.hpp>
#include <quivinv/local_model.hpp>
#include <quivinv/oracle.hpp>
#include <quivinv/pfaffian_ext.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace quivinv;

constexpr int kExitPass = 0;
constexpr int kExitTheoremFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitGuardRail = 3;
constexpr int kExitUnsupported = 4;

struct RunConfig {
    std::string input;
    unsigned max_degree = 3;
    std::size_t max_word_len = 4;
    std::size_t samples = 25;
    std::uint64_t seed = 1;
    bool json = false;
    std::size_t guard_rail = kDefaultGuardRail;
    bool negative_control = false;
};

std::size_t worker_count() {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("QUIVINV_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v < n) n = v;
    }
    return n;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw BadInput(e.what());
    }
    return j;
}

int cmd_gens(const RunConfig& cfg) {
    auto [q, alpha] = quiver_from_json(load_json(cfg.input));
    const auto words = generators(q, alpha, cfg.max_word_len, cfg.seed);
    const auto report = invariance_report(words, q, alpha, cfg.samples, Rng(cfg.seed + 1));

    if (cfg.json) {
        Json out;
        out["words"] = Json::array();
        for (std::size_t i = 0; i < words.size(); ++i)
            out["words"].push_back({{"word", word_to_json(words[i])},
                                    {"length", words[i].length()},
                                    {"invariance_failures", report.words[i].failures}});
        out["invariance"] = invariance_report_to_json(report);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "generators up to length " << cfg.max_word_len << ": " << words.size() << "\n";
        for (std::size_t i = 0; i < words.size(); ++i) {
            std::ostringstream line;
            for (const auto& s : words[i].steps) line << s.arrow << (s.star ? "* " : " ");
            std::cout << "  [" << words[i].length() << "] " << line.str()
                      << (report.words[i].failures == 0 ? "ok" : "INVARIANCE FAILURE") << "\n";
        }
    }
    return report.total_failures == 0 ? kExitPass : kExitTheoremFailure;
}

struct VerifyOutcome {
    Json report;
    bool pass = false;
};

// Bundled small instances: every vertex class alone plus mixed quivers.
std::vector<std::pair<std::string, std::pair<SymQuiver, DimVector>>> bundled_instances() {
    std::vector<std::pair<std::string, std::pair<SymQuiver, DimVector>>> out;
    {
        SymQuiver q;
        q.add_vertex("s", VertexKind::Orthogonal);
        q.add_arrow("a", "s", "s");
        out.push_back({"orth-loop", {q, {{"s", 2}}}});
    }
    {
        SymQuiver q;
        q.add_vertex("t", VertexKind::Symplectic);
        q.add_arrow("a", "t", "t");
        out.push_back({"symp-loop", {q, {{"t", 2}}}});
    }
    {
        SymQuiver q;
        q.add_gl_pair("u", "us");
        q.add_arrow("a", "u", "u");
        q.add_arrow("b", "u", "us");
        out.push_back({"gl-pair", {q, {{"u", 2}, {"us", 2}}}});
    }
    {
        SymQuiver q;
        q.add_vertex("s", VertexKind::Orthogonal);
        q.add_vertex("t", VertexKind::Symplectic);
        q.add_arrow("a", "s", "t");
        out.push_back({"orth-symp", {q, {{"s", 2}, {"t", 2}}}});
    }
    {
        SymQuiver q;
        q.add_vertex("s1", VertexKind::Orthogonal);
        q.add_vertex("s2", VertexKind::Orthogonal);
        q.add_arrow("a", "s1", "s2");
        q.add_arrow("b", "s2", "s1");
        out.push_back({"orth-orth", {q, {{"s1", 1}, {"s2", 2}}}});
    }
    {
        SymQuiver q;
        q.add_gl_pair("u", "us");
        q.add_vertex("s", VertexKind::Orthogonal);
        q.add_arrow("a", "u", "s");
        q.add_arrow("b", "s", "u");
        out.push_back({"gl-orth", {q, {{"u", 1}, {"us", 1}, {"s", 2}}}});
    }
    return out;
}

VerifyOutcome verify_instance(const std::string& name, const SymQuiver& q, const DimVector& alpha,
                              const RunConfig& cfg) {
    VerifyOutcome out;
    const auto words = generators(q, alpha, cfg.max_word_len, cfg.seed);
    Json spans = Json::array();
    bool pass = true;
    for (unsigned d = 1; d <= cfg.max_degree; ++d) {
        auto rep = check_spanning(q, alpha, d, cfg.max_word_len, words, cfg.guard_rail, name);
        pass = pass && rep.pass;
        spans.push_back(spanning_report_to_json(rep));
    }
    const auto inv =
        invariance_report(words, q, alpha, cfg.samples, Rng(cfg.seed + 7), cfg.negative_control);
    pass = pass && inv.total_failures == 0;
    out.report = Json{{"instance", name},
                      {"spanning", std::move(spans)},
                      {"invariance", invariance_report_to_json(inv)}};
    out.pass = pass;
    return out;
}

int cmd_verify(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::pair<SymQuiver, DimVector>>> instances;
    if (!cfg.input.empty())
        instances.push_back({cfg.input, quiver_from_json(load_json(cfg.input))});
    else
        instances = bundled_instances();

    // Batch the instances over a bounded worker pool; results are assembled
    // in instance order so the output is deterministic.
    const std::size_t workers = worker_count();
    std::vector<VerifyOutcome> outcomes(instances.size());
    for (std::size_t base = 0; base < instances.size(); base += workers) {
        std::vector<std::future<VerifyOutcome>> wave;
        for (std::size_t i = base; i < std::min(base + workers, instances.size()); ++i)
            wave.push_back(std::async(std::launch::async, [&, i] {
                return verify_instance(instances[i].first, instances[i].second.first,
                                       instances[i].second.second, cfg);
            }));
        for (std::size_t i = 0; i < wave.size(); ++i) outcomes[base + i] = wave[i].get();
    }

    Json fft = Json::array();
    bool pass = true;
    if (cfg.input.empty()) {
        for (auto [n, np, i] : std::vector<std::array<std::size_t, 3>>{
                 {1, 0, 1}, {2, 0, 1}, {0, 2, 1}, {1, 2, 1}, {2, 2, 1}}) {
            auto rep = fft_check(n, np, i, cfg.guard_rail);
            pass = pass && rep.pass;
            fft.push_back(fft_report_to_json(rep));
        }
    }
    Json out;
    out["instances"] = Json::array();
    for (auto& o : outcomes) {
        pass = pass && o.pass;
        out["instances"].push_back(std::move(o.report));
    }
    if (cfg.input.empty()) out["fft"] = std::move(fft);
    out["pass"] = pass;
    if (cfg.json)
        std::cout << out.dump(2) << "\n";
    else
        for (const auto& inst : out["instances"])
            std::cout << inst["instance"].get<std::string>() << ": "
                      << (pass ? "ok" : "CHECK FAILED") << "\n";
    return pass ? kExitPass : kExitTheoremFailure;
}

int cmd_local(const RunConfig& cfg) {
    const DecompositionSpec spec = spec_from_json(load_json(cfg.input));
    const LocalModelReport rep = local_model_report(spec);
    const Json out = local_model_report_to_json(rep);
    if (cfg.json) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "H1(Ad P) total: " << rep.inventory.total << "\n";
        if (rep.series_supported)
            std::cout << "multiplicity: " << rep.mult << "\ntangent dim: " << rep.tangent << "\n";
        if (rep.fiber_supported) std::cout << "fiber cardinality: " << rep.fiber << "\n";
    }
    // A certified multiplicity is the point of the orthogonal-flavor report;
    // declining one is the unsupported-configuration outcome.
    if (spec.flavor == Flavor::Orthogonal && !rep.series_supported) return kExitUnsupported;
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariant-theory workbench for symmetric quivers"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool input_required) {
        auto* opt = sub->add_option("--input", cfg.input, "input JSON path");
        if (input_required) opt->required();
        sub->add_option("--max-degree", cfg.max_degree, "max polynomial degree");
        sub->add_option("--max-word-len", cfg.max_word_len, "max trace word length");
        sub->add_option("--samples", cfg.samples, "fuzzing sample count");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_flag("--json", cfg.json, "JSON output");
        sub->add_option("--guard-rail", cfg.guard_rail, "instance size ceiling")
            ->check(CLI::PositiveNumber);
    };
    auto* gens = app.add_subcommand("gens", "list trace-word generators");
    add_common(gens, true);
    auto* verify = app.add_subcommand("verify", "run spanning/pairing verification");
    add_common(verify, false);
    verify->add_flag("--negative-control", cfg.negative_control,
                     "corrupt the adjoint to confirm the checks can fail");
    auto* local = app.add_subcommand("local", "local model of a polystable point");
    add_common(local, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gens->parsed()) return cmd_gens(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (local->parsed()) return cmd_local(cfg);
    } catch (const TooLarge& e) {
        std::cerr << e.what() << "\n";
        return kExitGuardRail;
    } catch (const UnsupportedConfiguration& e) {
        std::cerr << e.what() << "\n";
        return kExitUnsupported;
    } catch (const BadInput& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
