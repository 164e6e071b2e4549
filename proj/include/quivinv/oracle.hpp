#ifndef QUIVINV_ORACLE_HPP
#define QUIVINV_ORACLE_HPP

#include <quivinv/linalg.hpp>
#include <quivinv/poly.hpp>
#include <quivinv/quiver.hpp>
#include <quivinv/trace_words.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace quivinv {

struct TooLarge : std::runtime_error {
    TooLarge(std::size_t need, std::size_t guard)
        : std::runtime_error("TooLarge: monomial space " + std::to_string(need) +
                             " exceeds guard rail " + std::to_string(guard)) {}
};

constexpr std::size_t kDefaultGuardRail = 20000;

// A linear symmetry acting on a coordinate space: either an infinitesimal
// generator (kernel of the induced derivation) or a finite substitution
// (fixed points of the induced pullback).
struct LinearAction {
    bool derivation = true;
    Mat coord;  // nvars x nvars rate/substitution matrix
};

// Columns span the joint invariants of `ops` inside span(basis). The
// operators must preserve the span (they are degree-preserving here).
inline Mat invariant_space(const std::vector<Monomial>& basis, std::size_t nvars,
                           const std::vector<LinearAction>& ops) {
    const std::size_t n = basis.size();
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[basis[i]] = i;

    Mat space = Mat::identity(n);
    for (const auto& op : ops) {
        if (space.cols() == 0) break;
        Mat op_mat(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            Poly p(nvars);
            p.add_term(basis[i], Rat(1));
            Poly image = op.derivation ? p.apply_derivation(op.coord)
                                       : p.substitute_linear(op.coord) - p;
            for (const auto& [m, c] : image.terms()) {
                auto it = index.find(m);
                if (it == index.end())
                    throw std::logic_error("operator image left the monomial basis");
                op_mat(it->second, i) = c;
            }
        }
        space = space * kernel(op_mat * space);
    }
    return space;
}

// ---------------------------------------------------------------------------
// Coordinates on R(Q, alpha): one variable per entry of every arrow matrix.

class QuiverCoords {
  public:
    QuiverCoords(const SymQuiver& q, const DimVector& alpha) : q_(q), alpha_(alpha) {
        validate_dimension(q, alpha);
        for (const auto& a : q.arrows()) {
            offsets_[a.id] = nvars_;
            nvars_ += dim_at(alpha, a.dst) * dim_at(alpha, a.src);
        }
    }

    std::size_t nvars() const { return nvars_; }

    std::size_t var(const std::string& arrow_id, std::size_t i, std::size_t j) const {
        const Arrow& a = q_.arrow(arrow_id);
        return offsets_.at(arrow_id) + i * dim_at(alpha_, a.src) + j;
    }

    // The arrow matrix with variable entries.
    PolyMat symbolic(const std::string& arrow_id) const {
        const Arrow& a = q_.arrow(arrow_id);
        const std::size_t rows = dim_at(alpha_, a.dst), cols = dim_at(alpha_, a.src);
        PolyMat m(rows, cols, nvars_);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = Poly::variable(nvars_, var(arrow_id, i, j));
        return m;
    }

    // Coordinate matrix of f_a -> X_dst f_a - f_a X_src (infinitesimal action).
    Mat derivation_matrix(const std::map<std::string, Mat>& lie_blocks) const {
        Mat s(nvars_, nvars_);
        for (const auto& a : q_.arrows()) {
            const Mat& xd = lie_blocks.at(a.dst);
            const Mat& xs = lie_blocks.at(a.src);
            const std::size_t rows = xd.rows(), cols = xs.rows();
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    const std::size_t v = var(a.id, i, j);
                    for (std::size_t k = 0; k < rows; ++k) s(v, var(a.id, k, j)) += xd(i, k);
                    for (std::size_t l = 0; l < cols; ++l) s(v, var(a.id, i, l)) -= xs(l, j);
                }
        }
        return s;
    }

    // Coordinate matrix of f_a -> g_dst f_a g_src^{-1} (finite action).
    Mat substitution_matrix(const std::map<std::string, Mat>& blocks,
                            const std::map<std::string, Mat>& inverse_blocks) const {
        Mat s(nvars_, nvars_);
        for (const auto& a : q_.arrows()) {
            const Mat& g = blocks.at(a.dst);
            const Mat& gi = inverse_blocks.at(a.src);
            const std::size_t rows = g.rows(), cols = gi.rows();
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    const std::size_t v = var(a.id, i, j);
                    for (std::size_t k = 0; k < rows; ++k)
                        for (std::size_t l = 0; l < cols; ++l)
                            s(v, var(a.id, k, l)) += g(i, k) * gi(l, j);
                }
        }
        return s;
    }

  private:
    SymQuiver q_;
    DimVector alpha_;
    std::map<std::string, std::size_t> offsets_;
    std::size_t nvars_ = 0;
};

namespace detail {

inline std::vector<Mat> so_basis(std::size_t n) {
    std::vector<Mat> out;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            Mat x(n, n);
            x(a, b) = 1;
            x(b, a) = -1;
            out.push_back(std::move(x));
        }
    return out;
}

// Basis of sp_{2m}: blocks [[A, B], [C, -A^T]] with B, C symmetric.
inline std::vector<Mat> sp_basis(std::size_t n) {
    const std::size_t m = n / 2;
    std::vector<Mat> out;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            Mat x(n, n);
            x(a, b) = 1;
            x(m + b, m + a) = -1;
            out.push_back(std::move(x));
        }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            Mat x(n, n);
            x(a, m + b) = 1;
            x(b, m + a) = 1;
            out.push_back(std::move(x));
            Mat y(n, n);
            y(m + a, b) = 1;
            y(m + b, a) = 1;
            out.push_back(std::move(y));
        }
    return out;
}

inline std::vector<Mat> gl_basis(std::size_t n) {
    std::vector<Mat> out;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Mat x(n, n);
            x(a, b) = 1;
            out.push_back(std::move(x));
        }
    return out;
}

inline Mat reflection(std::size_t n) {
    Mat r = Mat::identity(n);
    r(0, 0) = -1;
    return r;
}

// The derivations and reflections cutting out the Gamma_alpha-invariants.
inline std::vector<LinearAction> gamma_actions(const SymQuiver& q, const DimVector& alpha,
                                               const QuiverCoords& coords) {
    std::vector<LinearAction> ops;
    auto zero_blocks = [&] {
        std::map<std::string, Mat> b;
        for (const auto& v : q.vertices()) {
            const std::size_t d = dim_at(alpha, v.id);
            b[v.id] = Mat::zero(d, d);
        }
        return b;
    };
    auto identity_blocks = [&] {
        std::map<std::string, Mat> b;
        for (const auto& v : q.vertices()) b[v.id] = Mat::identity(dim_at(alpha, v.id));
        return b;
    };
    for (const auto& v : q.vertices()) {
        const std::size_t d = dim_at(alpha, v.id);
        switch (v.kind) {
            case VertexKind::Orthogonal: {
                for (const auto& x : so_basis(d)) {
                    auto blocks = zero_blocks();
                    blocks[v.id] = x;
                    ops.push_back({true, coords.derivation_matrix(blocks)});
                }
                // One reflection passes from SO to the full O at this vertex.
                auto blocks = identity_blocks();
                blocks[v.id] = reflection(d);
                ops.push_back({false, coords.substitution_matrix(blocks, blocks)});
                break;
            }
            case VertexKind::Symplectic:
                for (const auto& x : sp_basis(d)) {
                    auto blocks = zero_blocks();
                    blocks[v.id] = x;
                    ops.push_back({true, coords.derivation_matrix(blocks)});
                }
                break;
            case VertexKind::GLPair:
                if (!v.starred)
                    for (const auto& x : gl_basis(d)) {
                        auto blocks = zero_blocks();
                        blocks[v.id] = x;
                        blocks[v.partner] = -x.transpose();
                        ops.push_back({true, coords.derivation_matrix(blocks)});
                    }
                break;
        }
    }
    return ops;
}

}  // namespace detail

// Dimension of degree-d polynomials on R(Q, alpha) invariant under
// Gamma_alpha, by the Lie-kernel + reflection method.
inline std::size_t lie_invariant_dim(const SymQuiver& q, const DimVector& alpha, unsigned d,
                                     std::size_t guard_rail = kDefaultGuardRail) {
    const QuiverCoords coords(q, alpha);
    const auto basis = monomials_of_degree(coords.nvars(), d);
    if (basis.size() > guard_rail) throw TooLarge(basis.size(), guard_rail);
    const auto ops = detail::gamma_actions(q, alpha, coords);
    return invariant_space(basis, coords.nvars(), ops).cols();
}

// Trace-word polynomial: symbolic evaluation of a word on variable matrices.
inline Poly word_polynomial(const TraceWord& w, const SymQuiver& q, const DimVector& alpha,
                            const DoubledQuiver& dq, const FormAssignment& forms,
                            const QuiverCoords& coords) {
    if (!is_composable(dq, w)) throw NotComposable();
    const auto start = dq.endpoints(w.steps.front().arrow, w.steps.front().star);
    PolyMat prod = PolyMat::identity(dim_at(alpha, start.src), coords.nvars());
    for (const auto& step : w.steps) {
        const Arrow& a = q.arrow(step.arrow);
        PolyMat m = coords.symbolic(step.arrow);
        if (step.star) {
            m = forms.inverse_pairing(a.src) * m.transpose() * forms.pairing(a.dst);
            if (dq.epsilon(step.arrow) < 0) m = m.scaled(Rat(-1));
        }
        prod = m * prod;
    }
    return prod.trace();
}

// Dimension of the span, inside degree-d polynomials, of all products of
// word traces with total degree d.
inline std::size_t span_dim(const std::vector<TraceWord>& words, const SymQuiver& q,
                            const DimVector& alpha, unsigned d,
                            std::size_t guard_rail = kDefaultGuardRail) {
    const QuiverCoords coords(q, alpha);
    const auto basis = monomials_of_degree(coords.nvars(), d);
    if (basis.size() > guard_rail) throw TooLarge(basis.size(), guard_rail);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;

    const DoubledQuiver dq = build_doubled(q);
    const FormAssignment forms(q, alpha);
    std::vector<Poly> word_polys;
    std::vector<std::size_t> word_deg;
    for (const auto& w : words) {
        if (w.length() > d) continue;
        word_polys.push_back(word_polynomial(w, q, alpha, dq, forms, coords));
        word_deg.push_back(w.length());
    }

    std::vector<Poly> products;
    // Multisets of words with total degree exactly d.
    struct Rec {
        const std::vector<Poly>& polys;
        const std::vector<std::size_t>& degs;
        std::vector<Poly>& out;
        std::size_t nvars;
        void go(std::size_t from, unsigned rem, const Poly& acc) {
            if (rem == 0) {
                out.push_back(acc);
                return;
            }
            for (std::size_t i = from; i < polys.size(); ++i)
                if (degs[i] <= rem) go(i, rem - static_cast<unsigned>(degs[i]), acc * polys[i]);
        }
    } rec{word_polys, word_deg, products, coords.nvars()};
    rec.go(0, d, Poly::constant(coords.nvars(), 1));

    Mat coeffs(products.size(), basis.size());
    for (std::size_t r = 0; r < products.size(); ++r)
        for (const auto& [m, c] : products[r].terms()) coeffs(r, index.at(m)) = c;
    return rank(coeffs);
}

struct SpanningReport {
    std::string instance;
    unsigned degree = 0;
    std::size_t oracle_dim = 0;
    std::size_t span_dim = 0;
    bool pass = false;
};

inline SpanningReport check_spanning(const SymQuiver& q, const DimVector& alpha, unsigned d,
                                     std::size_t max_word_len, const std::vector<TraceWord>& words,
                                     std::size_t guard_rail = kDefaultGuardRail,
                                     const std::string& instance = "") {
    (void)max_word_len;
    SpanningReport rep;
    rep.instance = instance;
    rep.degree = d;
    rep.oracle_dim = lie_invariant_dim(q, alpha, d, guard_rail);
    rep.span_dim = span_dim(words, q, alpha, d, guard_rail);
    rep.pass = rep.oracle_dim == rep.span_dim;
    return rep;
}

// ---------------------------------------------------------------------------
// First fundamental theorem check on multilinear functionals of V^{2i},
// V = k^N (quadratic) orthogonal-sum k^{N'} (symplectic).

struct FftReport {
    std::size_t big_n = 0, big_np = 0, tensor_half = 0;
    std::size_t pairing_span_dim = 0;
    std::size_t oracle_dim = 0;
    bool pass = false;
};

namespace detail {

inline void multilinear_monomials(std::size_t slots, std::size_t n, std::size_t slot,
                                  Monomial& cur, std::vector<Monomial>& out) {
    if (slot == slots) {
        out.push_back(cur);
        return;
    }
    for (std::size_t c = 0; c < n; ++c) {
        ++cur[slot * n + c];
        multilinear_monomials(slots, n, slot + 1, cur, out);
        --cur[slot * n + c];
    }
}

// All ways to split {from..2i-1} into ordered pairs.
inline void ordered_matchings(std::vector<bool>& used, std::vector<std::pair<std::size_t, std::size_t>>& cur,
                              std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& out) {
    std::size_t first = used.size();
    for (std::size_t k = 0; k < used.size(); ++k)
        if (!used[k]) {
            first = k;
            break;
        }
    if (first == used.size()) {
        out.push_back(cur);
        return;
    }
    used[first] = true;
    for (std::size_t other = first + 1; other < used.size(); ++other) {
        if (used[other]) continue;
        used[other] = true;
        cur.push_back({first, other});
        ordered_matchings(used, cur, out);
        cur.back() = {other, first};
        ordered_matchings(used, cur, out);
        cur.pop_back();
        used[other] = false;
    }
    used[first] = false;
}

}  // namespace detail

inline FftReport fft_check(std::size_t N, std::size_t Np, std::size_t i,
                           std::size_t guard_rail = kDefaultGuardRail) {
    if (Np % 2 != 0) throw OddSize();
    const std::size_t n = N + Np;
    const std::size_t slots = 2 * i;
    const std::size_t nvars = slots * n;
    std::size_t basis_size = 1;
    for (std::size_t s = 0; s < slots; ++s) {
        basis_size *= n;
        if (basis_size > guard_rail) throw TooLarge(basis_size, guard_rail);
    }
    std::vector<Monomial> basis;
    Monomial cur(nvars, 0);
    detail::multilinear_monomials(slots, n, 0, cur, basis);

    // Pairing matrix M = I_N (+) J_{N'}.
    Mat pairing(n, n);
    for (std::size_t a = 0; a < N; ++a) pairing(a, a) = 1;
    if (Np > 0) {
        const Mat j = symplectic_j(Np);
        for (std::size_t a = 0; a < Np; ++a)
            for (std::size_t b = 0; b < Np; ++b) pairing(N + a, N + b) = j(a, b);
    }

    auto diag_action = [&](const Mat& block) {
        Mat s(nvars, nvars);
        for (std::size_t slot = 0; slot < slots; ++slot)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) s(slot * n + a, slot * n + b) = block(a, b);
        return s;
    };

    std::vector<LinearAction> ops;
    for (const auto& x : detail::so_basis(N)) {
        Mat block(n, n);
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b) block(a, b) = x(a, b);
        ops.push_back({true, diag_action(block)});
    }
    for (const auto& x : detail::sp_basis(Np)) {
        Mat block(n, n);
        for (std::size_t a = 0; a < Np; ++a)
            for (std::size_t b = 0; b < Np; ++b) block(N + a, N + b) = x(a, b);
        ops.push_back({true, diag_action(block)});
    }
    if (N > 0) {
        Mat block = Mat::identity(n);
        block(0, 0) = -1;
        ops.push_back({false, diag_action(block)});
    }

    FftReport rep;
    rep.big_n = N;
    rep.big_np = Np;
    rep.tensor_half = i;
    rep.oracle_dim = invariant_space(basis, nvars, ops).cols();

    // Span of the pairing functionals phi_sigma over all ordered matchings.
    std::map<Monomial, std::size_t> index;
    for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = k;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> matchings;
    std::vector<bool> used(slots, false);
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    detail::ordered_matchings(used, stack, matchings);

    Mat coeffs(matchings.size(), basis.size());
    for (std::size_t r = 0; r < matchings.size(); ++r) {
        Poly phi = Poly::constant(nvars, 1);
        for (const auto& [p, qslot] : matchings[r]) {
            Poly form(nvars);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    if (is_zero(pairing(a, b))) continue;
                    Monomial m(nvars, 0);
                    ++m[p * n + a];
                    ++m[qslot * n + b];
                    form.add_term(m, pairing(a, b));
                }
            phi = phi * form;
        }
        for (const auto& [m, c] : phi.terms()) coeffs(r, index.at(m)) = c;
    }
    rep.pairing_span_dim = rank(coeffs);
    rep.pass = rep.pairing_span_dim == rep.oracle_dim;
    return rep;
}

}  // namespace quivinv

#endif
