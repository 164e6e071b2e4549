#ifndef QUIVINV_EVALUATE_HPP
#define QUIVINV_EVALUATE_HPP

#include <quivinv/linalg.hpp>
#include <quivinv/matrix.hpp>
#include <quivinv/quiver.hpp>
#include <quivinv/rng.hpp>
#include <quivinv/sampling.hpp>
#include <quivinv/trace_words.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace quivinv {

struct NotInGroup : std::runtime_error {
    explicit NotInGroup(const std::string& what) : std::runtime_error("NotInGroup: " + what) {}
};

// A point of R(Q, alpha): one matrix per arrow, shape alpha_dst x alpha_src.
struct Representation {
    std::map<std::string, Mat> maps;

    const Mat& at(const std::string& arrow_id) const {
        auto it = maps.find(arrow_id);
        if (it == maps.end()) throw MalformedQuiver("representation missing arrow " + arrow_id);
        return it->second;
    }
};

inline void check_shapes(const SymQuiver& q, const DimVector& alpha, const Representation& rho) {
    for (const auto& a : q.arrows()) {
        const Mat& f = rho.at(a.id);
        if (f.rows() != dim_at(alpha, a.dst) || f.cols() != dim_at(alpha, a.src))
            throw ShapeMismatch("arrow " + a.id + " carries " + f.shape_str());
    }
}

inline Representation random_representation(const SymQuiver& q, const DimVector& alpha, Rng& rng,
                                            long bound = 5) {
    Representation rho;
    for (const auto& a : q.arrows()) {
        Mat f(dim_at(alpha, a.dst), dim_at(alpha, a.src));
        for (std::size_t i = 0; i < f.rows(); ++i)
            for (std::size_t j = 0; j < f.cols(); ++j) f(i, j) = rng.next_entry(bound);
        rho.maps[a.id] = std::move(f);
    }
    return rho;
}

inline Representation zero_representation(const SymQuiver& q, const DimVector& alpha) {
    Representation rho;
    for (const auto& a : q.arrows())
        rho.maps[a.id] = Mat::zero(dim_at(alpha, a.dst), dim_at(alpha, a.src));
    return rho;
}

// Blockwise element of Gamma_alpha. The starred block of a GL couple is the
// transpose-inverse of the unstarred one.
struct GroupElement {
    std::map<std::string, Mat> blocks;

    const Mat& at(const std::string& vertex_id) const {
        auto it = blocks.find(vertex_id);
        if (it == blocks.end()) throw MissingVertex(vertex_id);
        return it->second;
    }
};

inline void check_in_group(const SymQuiver& q, const DimVector& alpha, const GroupElement& g) {
    for (const auto& v : q.vertices()) {
        const Mat& b = g.at(v.id);
        const std::size_t d = dim_at(alpha, v.id);
        if (b.rows() != d || b.cols() != d) throw ShapeMismatch("block at " + v.id);
        switch (v.kind) {
            case VertexKind::Orthogonal:
                if (b.transpose() * b != Mat::identity(d)) throw NotInGroup("block at " + v.id + " is not orthogonal");
                break;
            case VertexKind::Symplectic: {
                const Mat j = symplectic_j(d);
                if (b.transpose() * j * b != j) throw NotInGroup("block at " + v.id + " is not symplectic");
                break;
            }
            case VertexKind::GLPair:
                if (v.starred && g.at(v.partner).transpose() * b != Mat::identity(d))
                    throw NotInGroup("starred block at " + v.id + " is not the transpose-inverse of its partner");
                break;
        }
    }
}

inline GroupElement identity_element(const SymQuiver& q, const DimVector& alpha) {
    GroupElement g;
    for (const auto& v : q.vertices()) g.blocks[v.id] = Mat::identity(dim_at(alpha, v.id));
    return g;
}

inline GroupElement random_group_element(const SymQuiver& q, const DimVector& alpha, Rng& rng,
                                         bool allow_reflection = true) {
    GroupElement g;
    for (const auto& v : q.vertices()) {
        const std::size_t d = dim_at(alpha, v.id);
        switch (v.kind) {
            case VertexKind::Orthogonal:
                g.blocks[v.id] = sample_orthogonal(d, rng, allow_reflection);
                break;
            case VertexKind::Symplectic:
                g.blocks[v.id] = sample_symplectic(d, rng);
                break;
            case VertexKind::GLPair:
                if (!v.starred) {
                    Mat p = sample_gl(d, rng);
                    g.blocks[v.partner] = inverse(p).transpose();
                    g.blocks[v.id] = std::move(p);
                }
                break;
        }
    }
    return g;
}

inline GroupElement compose(const SymQuiver& q, const GroupElement& g, const GroupElement& h) {
    GroupElement out;
    for (const auto& v : q.vertices()) out.blocks[v.id] = g.at(v.id) * h.at(v.id);
    return out;
}

// f_a |-> g_{v'} f_a g_v^{-1} for a: v -> v'.
inline Representation act(const SymQuiver& q, const DimVector& alpha, const GroupElement& g,
                          const Representation& rho) {
    check_shapes(q, alpha, rho);
    check_in_group(q, alpha, g);
    Representation out;
    for (const auto& a : q.arrows())
        out.maps[a.id] = g.at(a.dst) * rho.at(a.id) * inverse(g.at(a.src));
    return out;
}

// Adjoint with respect to per-vertex forms: for f: v -> v',
// f^* = D(v) f^T C(v'): sigma(v') -> sigma(v).
inline Mat adjoint(const Mat& f, const FormAssignment& forms, const std::string& src,
                   const std::string& dst) {
    return forms.inverse_pairing(src) * f.transpose() * forms.pairing(dst);
}

// tr(f_{a_p} ... f_{a_1}) along the cycle; starred steps use the adjoint
// with the sign epsilon(a) applied. `corrupt_adjoint` replaces the form
// twist by a plain transpose (negative-control mode; breaks invariance at
// symplectic vertices on purpose).
inline Rat evaluate_word(const TraceWord& w, const Representation& rho, const SymQuiver& q,
                         const DimVector& alpha, const DoubledQuiver& dq, const FormAssignment& forms,
                         bool corrupt_adjoint = false) {
    if (!is_composable(dq, w)) throw NotComposable();
    const auto start = dq.endpoints(w.steps.front().arrow, w.steps.front().star);
    Mat prod = Mat::identity(dim_at(alpha, start.src));
    for (const auto& step : w.steps) {
        const Arrow& a = q.arrow(step.arrow);
        Mat m = rho.at(step.arrow);
        if (step.star) {
            if (corrupt_adjoint) {
                m = m.transpose();
            } else {
                m = adjoint(m, forms, a.src, a.dst);
                if (dq.epsilon(step.arrow) < 0) m = -m;
            }
        }
        prod = m * prod;
    }
    return prod.trace();
}

struct InvarianceWordResult {
    TraceWord word;
    std::size_t samples = 0;
    std::size_t failures = 0;
};

struct InvarianceReport {
    std::vector<InvarianceWordResult> words;
    std::size_t total_samples = 0;
    std::size_t total_failures = 0;
};

// Fuzzes the invariance claim: evaluate each word before and after a random
// group action, exact equality expected. Group samples include both
// components of O at orthogonal vertices.
inline InvarianceReport invariance_report(const std::vector<TraceWord>& words, const SymQuiver& q,
                                          const DimVector& alpha, std::size_t samples, Rng rng,
                                          bool corrupt_adjoint = false) {
    validate_dimension(q, alpha);
    const DoubledQuiver dq = build_doubled(q);
    const FormAssignment forms(q, alpha);
    InvarianceReport report;
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
        InvarianceWordResult res;
        res.word = words[wi];
        res.samples = samples;
        Rng word_rng = rng.fork(wi);
        for (std::size_t s = 0; s < samples; ++s) {
            const Representation rho = random_representation(q, alpha, word_rng);
            const GroupElement g = random_group_element(q, alpha, word_rng);
            const Rat before = evaluate_word(words[wi], rho, q, alpha, dq, forms, corrupt_adjoint);
            const Rat after =
                evaluate_word(words[wi], act(q, alpha, g, rho), q, alpha, dq, forms, corrupt_adjoint);
            if (before != after) ++res.failures;
        }
        report.total_samples += res.samples;
        report.total_failures += res.failures;
        report.words.push_back(std::move(res));
    }
    return report;
}

}  // namespace quivinv

#endif
