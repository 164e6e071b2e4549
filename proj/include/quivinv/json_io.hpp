#ifndef QUIVINV_JSON_IO_HPP
#define QUIVINV_JSON_IO_HPP

#include <quivinv/evaluate.hpp>
#include <quivinv/local_model.hpp>
#include <quivinv/oracle.hpp>
#include <quivinv/quiver.hpp>
#include <quivinv/trace_words.hpp>

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace quivinv {

// Field order is part of the output contract (byte-identical reruns), so
// everything goes through ordered_json.
using Json = nlohmann::ordered_json;

struct BadInput : std::runtime_error {
    explicit BadInput(const std::string& what) : std::runtime_error("BadInput: " + what) {}
};

namespace detail {

inline const Json& require(const Json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key)) throw BadInput("missing field '" + key + "'");
    return j.at(key);
}

}  // namespace detail

// --- Quivers.
// {"vertices": [{"id", "class"}], "pairs": [["u","u*"]],
//  "arrows": [{"id","src","dst"}], "dims": {...}}

inline Json quiver_to_json(const SymQuiver& q, const DimVector& alpha) {
    Json j;
    j["vertices"] = Json::array();
    j["pairs"] = Json::array();
    for (const auto& v : q.vertices()) {
        if (v.kind == VertexKind::GLPair) {
            if (!v.starred) j["pairs"].push_back(Json::array({v.id, v.partner}));
            continue;
        }
        j["vertices"].push_back(
            {{"id", v.id}, {"class", v.kind == VertexKind::Orthogonal ? "orthogonal" : "symplectic"}});
    }
    j["arrows"] = Json::array();
    for (const auto& a : q.arrows()) j["arrows"].push_back({{"id", a.id}, {"src", a.src}, {"dst", a.dst}});
    j["dims"] = Json::object();
    for (const auto& [id, d] : alpha) j["dims"][id] = d;
    return j;
}

inline std::pair<SymQuiver, DimVector> quiver_from_json(const Json& j) {
    SymQuiver q;
    try {
        for (const auto& v : detail::require(j, "vertices")) {
            const std::string cls = detail::require(v, "class").get<std::string>();
            VertexKind kind;
            if (cls == "orthogonal")
                kind = VertexKind::Orthogonal;
            else if (cls == "symplectic")
                kind = VertexKind::Symplectic;
            else
                throw BadInput("unknown vertex class '" + cls + "'");
            q.add_vertex(detail::require(v, "id").get<std::string>(), kind);
        }
        if (j.contains("pairs"))
            for (const auto& p : j.at("pairs")) {
                if (!p.is_array() || p.size() != 2) throw BadInput("pair entries are two-element arrays");
                q.add_gl_pair(p[0].get<std::string>(), p[1].get<std::string>());
            }
        for (const auto& a : detail::require(j, "arrows"))
            q.add_arrow(detail::require(a, "id").get<std::string>(),
                        detail::require(a, "src").get<std::string>(),
                        detail::require(a, "dst").get<std::string>());
        DimVector alpha;
        for (const auto& [id, d] : detail::require(j, "dims").items()) {
            if (!d.is_number_unsigned()) throw BadInput("dims entries are nonnegative integers");
            alpha[id] = d.get<std::size_t>();
        }
        validate_dimension(q, alpha);
        return {q, alpha};
    } catch (const Json::exception& e) {
        throw BadInput(e.what());
    } catch (const MalformedQuiver& e) {
        throw BadInput(e.what());
    }
}

// --- Trace words: arrays of {"arrow": id, "star": bool}.

inline Json word_to_json(const TraceWord& w) {
    Json j = Json::array();
    for (const auto& s : w.steps) j.push_back({{"arrow", s.arrow}, {"star", s.star}});
    return j;
}

inline TraceWord word_from_json(const Json& j) {
    if (!j.is_array()) throw BadInput("word must be an array of steps");
    TraceWord w;
    for (const auto& s : j)
        w.steps.push_back(
            {detail::require(s, "arrow").get<std::string>(), detail::require(s, "star").get<bool>()});
    return w;
}

// --- Representations: arrow-id -> row-major rational entry strings.

inline Json representation_to_json(const Representation& rho) {
    Json j = Json::object();
    for (const auto& [id, m] : rho.maps) {
        Json entry;
        entry["rows"] = m.rows();
        entry["cols"] = m.cols();
        Json data = Json::array();
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) data.push_back(rat_to_string(m(r, c)));
        entry["data"] = std::move(data);
        j[id] = std::move(entry);
    }
    return j;
}

inline Representation representation_from_json(const Json& j) {
    Representation rho;
    try {
        for (const auto& [id, entry] : j.items()) {
            const std::size_t rows = detail::require(entry, "rows").get<std::size_t>();
            const std::size_t cols = detail::require(entry, "cols").get<std::size_t>();
            const auto& data = detail::require(entry, "data");
            if (data.size() != rows * cols) throw BadInput("matrix data size mismatch");
            Mat m(rows, cols);
            std::size_t k = 0;
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c) m(r, c) = rat_from_string(data[k++].get<std::string>());
            rho.maps[id] = std::move(m);
        }
    } catch (const Json::exception& e) {
        throw BadInput(e.what());
    } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
    }
    return rho;
}

// --- Decomposition specs.
// {"genus": g, "flavor": "orthogonal", "summands": [{"kind","rank","mult"}]}

inline Json spec_to_json(const DecompositionSpec& spec) {
    Json j;
    j["genus"] = spec.genus;
    j["flavor"] = spec.flavor == Flavor::Orthogonal ? "orthogonal" : "symplectic";
    j["summands"] = Json::array();
    for (const auto& s : spec.summands) {
        const char* kind = s.kind == SummandKind::OrthogonalStable  ? "orthogonal"
                           : s.kind == SummandKind::SymplecticStable ? "symplectic"
                                                                     : "pair";
        j["summands"].push_back({{"kind", kind}, {"rank", s.rank}, {"mult", s.mult}});
    }
    return j;
}

inline DecompositionSpec spec_from_json(const Json& j) {
    DecompositionSpec spec;
    try {
        spec.genus = detail::require(j, "genus").get<std::size_t>();
        const std::string flavor = detail::require(j, "flavor").get<std::string>();
        if (flavor == "orthogonal")
            spec.flavor = Flavor::Orthogonal;
        else if (flavor == "symplectic")
            spec.flavor = Flavor::Symplectic;
        else
            throw BadInput("unknown flavor '" + flavor + "'");
        for (const auto& s : detail::require(j, "summands")) {
            SummandSpec ss;
            const std::string kind = detail::require(s, "kind").get<std::string>();
            if (kind == "orthogonal")
                ss.kind = SummandKind::OrthogonalStable;
            else if (kind == "symplectic")
                ss.kind = SummandKind::SymplecticStable;
            else if (kind == "pair")
                ss.kind = SummandKind::NonSelfDualPair;
            else
                throw BadInput("unknown summand kind '" + kind + "'");
            ss.rank = detail::require(s, "rank").get<std::size_t>();
            ss.mult = detail::require(s, "mult").get<std::size_t>();
            spec.summands.push_back(ss);
        }
    } catch (const Json::exception& e) {
        throw BadInput(e.what());
    }
    return spec;
}

// --- Reports.

inline Json spanning_report_to_json(const SpanningReport& r) {
    return Json{{"instance", r.instance},
                {"degree", r.degree},
                {"oracle_dim", r.oracle_dim},
                {"span_dim", r.span_dim},
                {"pass", r.pass}};
}

inline Json fft_report_to_json(const FftReport& r) {
    return Json{{"N", r.big_n},
                {"Nprime", r.big_np},
                {"tensor_half", r.tensor_half},
                {"pairing_span_dim", r.pairing_span_dim},
                {"oracle_dim", r.oracle_dim},
                {"pass", r.pass}};
}

inline Json invariance_report_to_json(const InvarianceReport& r) {
    Json words = Json::array();
    for (const auto& wr : r.words)
        words.push_back(
            {{"word", word_to_json(wr.word)}, {"samples", wr.samples}, {"failures", wr.failures}});
    return Json{{"total_samples", r.total_samples},
                {"total_failures", r.total_failures},
                {"words", std::move(words)}};
}

inline Json hilbert_series_to_json(const HilbertSeries& hs) {
    Json num = Json::array();
    for (const auto& c : hs.numerator) num.push_back(rat_to_string(c));
    return Json{{"numerator", std::move(num)},
                {"pow_linear", hs.pow_linear},
                {"pow_quadratic", hs.pow_quadratic}};
}

inline Json local_model_report_to_json(const LocalModelReport& rep) {
    Json j;
    Json verts = Json::array();
    for (const auto& v : rep.vertices)
        verts.push_back({{"label", v.label}, {"rank", v.rank}, {"mult", v.mult}, {"dual", v.dual}});
    j["vertices"] = std::move(verts);
    j["ext"] = rep.ext;
    Json diag = Json::array(), off = Json::array();
    for (const auto& it : rep.inventory.diagonal) diag.push_back({{"label", it.label}, {"dim", it.dim}});
    for (const auto& it : rep.inventory.off_diagonal) off.push_back({{"label", it.label}, {"dim", it.dim}});
    j["h1ad"] = Json{{"diagonal", std::move(diag)},
                     {"off_diagonal", std::move(off)},
                     {"total", rep.inventory.total}};
    j["series_supported"] = rep.series_supported;
    if (rep.series_supported) {
        j["hilbert_series"] = hilbert_series_to_json(rep.series);
        j["tangent_dim"] = rep.tangent;
        j["multiplicity"] = rep.mult;
        j["multiplicity_basis"] = "derived";  // Hilbert-series pipeline, not a quoted value
    }
    j["fiber_supported"] = rep.fiber_supported;
    if (rep.fiber_supported) j["fiber_cardinality"] = rep.fiber;
    return j;
}

}  // namespace quivinv

#endif
