#ifndef QUIVINV_QUIVER_HPP
#define QUIVINV_QUIVER_HPP

#include <quivinv/matrix.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quivinv {

enum class VertexKind { Orthogonal, Symplectic, GLPair };

struct MalformedQuiver : std::runtime_error {
    explicit MalformedQuiver(const std::string& what) : std::runtime_error("MalformedQuiver: " + what) {}
};
struct MissingVertex : std::runtime_error {
    explicit MissingVertex(const std::string& id) : std::runtime_error("MissingVertex: " + id) {}
};
struct OddSymplecticDim : std::runtime_error {
    explicit OddSymplecticDim(const std::string& id)
        : std::runtime_error("OddSymplecticDim: odd dimension at symplectic vertex " + id) {}
};
struct UnbalancedPair : std::runtime_error {
    explicit UnbalancedPair(const std::string& id)
        : std::runtime_error("UnbalancedPair: dimensions differ across GL pair at " + id) {}
};

struct Vertex {
    std::string id;
    VertexKind kind = VertexKind::Orthogonal;
    // For GLPair vertices: id of the partner (an involution without fixed
    // points) and whether this is the starred member of the couple.
    std::string partner;
    bool starred = false;
};

struct Arrow {
    std::string id;
    std::string src;
    std::string dst;
};

// A quiver with vertex classes. GL-paired vertices are entered as (u, u*)
// couples; unpaired GL vertices get an explicit starred partner added by the
// user, which also covers the extended-quiver construction.
class SymQuiver {
  public:
    SymQuiver() = default;

    void add_vertex(const std::string& id, VertexKind kind) {
        if (kind == VertexKind::GLPair) throw MalformedQuiver("GL vertices must be added with add_gl_pair");
        insert_vertex({id, kind, "", false});
    }

    void add_gl_pair(const std::string& id, const std::string& starred_id) {
        if (id == starred_id) throw MalformedQuiver("GL pair partner must be a distinct vertex");
        insert_vertex({id, VertexKind::GLPair, starred_id, false});
        insert_vertex({starred_id, VertexKind::GLPair, id, true});
    }

    void add_arrow(const std::string& id, const std::string& src, const std::string& dst) {
        if (!index_.count(src)) throw MissingVertex(src);
        if (!index_.count(dst)) throw MissingVertex(dst);
        if (arrow_index_.count(id)) throw MalformedQuiver("duplicate arrow id " + id);
        arrow_index_[id] = arrows_.size();
        arrows_.push_back({id, src, dst});
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    const Vertex& vertex(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw MissingVertex(id);
        return vertices_[it->second];
    }
    const Arrow& arrow(const std::string& id) const {
        auto it = arrow_index_.find(id);
        if (it == arrow_index_.end()) throw MalformedQuiver("unknown arrow " + id);
        return arrows_[it->second];
    }
    bool has_vertex(const std::string& id) const { return index_.count(id) != 0; }

    // The vertex involution: fixes orthogonal and symplectic vertices, swaps
    // GL partners.
    const std::string& sigma(const std::string& id) const {
        const Vertex& v = vertex(id);
        return v.kind == VertexKind::GLPair ? v.partner : v.id;
    }

    // Canonical vertex order for matrix assembly: orthogonal, then
    // symplectic, then GL couples (u before u*), each in input order.
    std::vector<std::string> canonical_vertex_order() const {
        std::vector<std::string> out;
        for (const auto& v : vertices_)
            if (v.kind == VertexKind::Orthogonal) out.push_back(v.id);
        for (const auto& v : vertices_)
            if (v.kind == VertexKind::Symplectic) out.push_back(v.id);
        for (const auto& v : vertices_)
            if (v.kind == VertexKind::GLPair && !v.starred) {
                out.push_back(v.id);
                out.push_back(v.partner);
            }
        return out;
    }

  private:
    void insert_vertex(Vertex v) {
        if (index_.count(v.id)) throw MalformedQuiver("duplicate vertex id " + v.id);
        index_[v.id] = vertices_.size();
        vertices_.push_back(std::move(v));
    }

    std::vector<Vertex> vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::string, std::size_t> index_;
    std::map<std::string, std::size_t> arrow_index_;
};

using DimVector = std::map<std::string, std::size_t>;

inline std::size_t dim_at(const DimVector& alpha, const std::string& id) {
    auto it = alpha.find(id);
    if (it == alpha.end()) throw MissingVertex(id);
    return it->second;
}

// Admissibility: even at symplectic vertices, balanced across GL couples.
inline const DimVector& validate_dimension(const SymQuiver& q, const DimVector& alpha) {
    for (const auto& v : q.vertices()) {
        const std::size_t d = dim_at(alpha, v.id);
        if (v.kind == VertexKind::Symplectic && d % 2 != 0) throw OddSymplecticDim(v.id);
        if (v.kind == VertexKind::GLPair && d != dim_at(alpha, v.partner)) throw UnbalancedPair(v.id);
    }
    return alpha;
}

// Per-vertex blocks of the block-diagonal bilinear form, plus the adjoint
// twist matrices: for f: v -> v' the adjoint is
//   f^* = D(v) f^T C(v'),   a map from sigma(v') to sigma(v),
// where C(v) is the form block pairing v with sigma(v) and D(v) its
// inverse-side counterpart.
class FormAssignment {
  public:
    FormAssignment(const SymQuiver& q, const DimVector& alpha) {
        validate_dimension(q, alpha);
        for (const auto& v : q.vertices()) {
            const std::size_t d = dim_at(alpha, v.id);
            switch (v.kind) {
                case VertexKind::Orthogonal:
                    c_[v.id] = Mat::identity(d);
                    d_[v.id] = Mat::identity(d);
                    break;
                case VertexKind::Symplectic: {
                    const Mat j = symplectic_j(d);
                    c_[v.id] = j;
                    d_[v.id] = -j;  // J^{-1}
                    break;
                }
                case VertexKind::GLPair:
                    c_[v.id] = Mat::identity(d);
                    d_[v.id] = Mat::identity(d);
                    break;
            }
        }
    }

    // Block of the assembled form with row index v, column index sigma(v).
    const Mat& pairing(const std::string& vertex_id) const { return c_.at(vertex_id); }
    // Block of the inverse form with row index sigma(v), column index v.
    const Mat& inverse_pairing(const std::string& vertex_id) const { return d_.at(vertex_id); }

  private:
    std::map<std::string, Mat> c_, d_;
};

// Assembled Gram matrix in canonical vertex order: identity on orthogonal
// blocks, J on symplectic blocks, hyperbolic [[0, I], [I, 0]] on GL couples.
inline Mat gram_matrix(const SymQuiver& q, const DimVector& alpha) {
    validate_dimension(q, alpha);
    const auto order = q.canonical_vertex_order();
    std::map<std::string, std::size_t> offset;
    std::size_t total = 0;
    for (const auto& id : order) {
        offset[id] = total;
        total += dim_at(alpha, id);
    }
    Mat g(total, total);
    for (const auto& id : order) {
        const Vertex& v = q.vertex(id);
        const std::size_t d = dim_at(alpha, id);
        const std::size_t row = offset[id];
        const std::size_t col = offset[q.sigma(id)];
        Mat block = (v.kind == VertexKind::Symplectic) ? symplectic_j(d) : Mat::identity(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) g(row + i, col + j) = block(i, j);
    }
    return g;
}

struct SignedArrowEndpoints {
    std::string src;
    std::string dst;
};

// The doubled quiver: each base arrow a: v -> v' gains a star arrow
// a*: sigma(v') -> sigma(v), and a sign epsilon(a).
class DoubledQuiver {
  public:
    explicit DoubledQuiver(const SymQuiver& base) : base_(base) {
        for (const auto& a : base.arrows()) {
            const VertexKind sk = base.vertex(a.src).kind;
            const VertexKind dk = base.vertex(a.dst).kind;
            // epsilon = -1 exactly when the arrow leaves an orthogonal or GL
            // vertex and enters a symplectic one.
            eps_[a.id] = (dk == VertexKind::Symplectic && sk != VertexKind::Symplectic) ? -1 : +1;
        }
    }

    const SymQuiver& base() const { return base_; }

    int epsilon(const std::string& arrow_id) const {
        auto it = eps_.find(arrow_id);
        if (it == eps_.end()) throw MalformedQuiver("unknown arrow " + arrow_id);
        return it->second;
    }

    // Endpoints of the step using arrow `id`, starred or not.
    SignedArrowEndpoints endpoints(const std::string& arrow_id, bool star) const {
        const Arrow& a = base_.arrow(arrow_id);
        if (!star) return {a.src, a.dst};
        return {base_.sigma(a.dst), base_.sigma(a.src)};
    }

  private:
    SymQuiver base_;
    std::map<std::string, int> eps_;
};

inline DoubledQuiver build_doubled(const SymQuiver& q) { return DoubledQuiver(q); }

}  // namespace quivinv

#endif
