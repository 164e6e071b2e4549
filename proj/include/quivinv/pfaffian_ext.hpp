#ifndef QUIVINV_PFAFFIAN_EXT_HPP
#define QUIVINV_PFAFFIAN_EXT_HPP

#include <quivinv/linalg.hpp>
#include <quivinv/oracle.hpp>
#include <quivinv/poly.hpp>
#include <quivinv/rng.hpp>
#include <quivinv/sampling.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace quivinv {

struct BadWeights : std::runtime_error {
    BadWeights() : std::runtime_error("BadWeights: weights must be nonnegative and sum to dim(W)/2") {}
};

// m copies of the antisymmetric endomorphisms of an even-dimensional
// quadratic space W, with O(W)/SO(W) acting by conjugation.
struct PfaffianContext {
    std::size_t dim_w = 2;  // even, >= 2
    std::size_t slots = 1;  // m

    std::size_t half() const { return dim_w / 2; }
    std::size_t entries_per_slot() const { return dim_w * (dim_w - 1) / 2; }
    std::size_t nvars() const { return slots * entries_per_slot(); }
};

// Coordinates: strictly upper-triangular entries of each slot.
class SoCoords {
  public:
    explicit SoCoords(const PfaffianContext& ctx) : ctx_(ctx) {
        if (ctx.dim_w < 2 || ctx.dim_w % 2 != 0) throw OddSize();
    }

    std::size_t nvars() const { return ctx_.nvars(); }

    std::size_t var(std::size_t slot, std::size_t i, std::size_t j) const {
        // i < j required
        const std::size_t n = ctx_.dim_w;
        const std::size_t within = i * n - i * (i + 1) / 2 + (j - i - 1);
        return slot * ctx_.entries_per_slot() + within;
    }

    PolyMat symbolic(std::size_t slot) const {
        const std::size_t n = ctx_.dim_w;
        PolyMat a(n, n, nvars());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                a(i, j) = Poly::variable(nvars(), var(slot, i, j));
                a(j, i) = -a(i, j);
            }
        return a;
    }

    // Coordinate rate matrix of A_j -> X A_j - A_j X on every slot.
    Mat derivation_matrix(const Mat& x) const {
        const std::size_t n = ctx_.dim_w;
        Mat s(nvars(), nvars());
        auto signed_var = [&](std::size_t slot, std::size_t i, std::size_t j, Rat& sign) {
            if (i < j) {
                sign = 1;
                return var(slot, i, j);
            }
            sign = -1;
            return var(slot, j, i);
        };
        for (std::size_t slot = 0; slot < ctx_.slots; ++slot)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const std::size_t v = var(slot, i, j);
                    for (std::size_t k = 0; k < n; ++k) {
                        Rat sign;
                        if (k != j && !is_zero(x(i, k))) {
                            const std::size_t u = signed_var(slot, k, j, sign);
                            s(v, u) += x(i, k) * sign;
                        }
                        if (k != i && !is_zero(x(k, j))) {
                            const std::size_t u = signed_var(slot, i, k, sign);
                            s(v, u) -= x(k, j) * sign;
                        }
                    }
                }
        return s;
    }

    // Coordinate matrix of A_j -> R A_j R^T for orthogonal R.
    Mat substitution_matrix(const Mat& r) const {
        const std::size_t n = ctx_.dim_w;
        Mat s(nvars(), nvars());
        for (std::size_t slot = 0; slot < ctx_.slots; ++slot)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const std::size_t v = var(slot, i, j);
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t l = 0; l < n; ++l) {
                            if (k == l) continue;
                            const Rat c = r(i, k) * r(j, l);
                            if (is_zero(c)) continue;
                            if (k < l)
                                s(v, var(slot, k, l)) += c;
                            else
                                s(v, var(slot, l, k)) -= c;
                        }
                }
        return s;
    }

  private:
    PfaffianContext ctx_;
};

namespace detail {

// Rate matrix subtlety above: A -> XA - AX has entry (i,j) rate
// sum_k X(i,k)A(k,j) - A(i,k)X(k,j); the second loop term uses -X(k,j)
// against A(i,k), written through signed_var. X antisymmetric is assumed
// nowhere, so the same coords serve derivations by arbitrary X.

inline std::vector<std::vector<std::size_t>> weight_profiles(std::size_t slots, std::size_t total) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(slots, 0);
    struct Rec {
        std::size_t slots;
        std::vector<std::vector<std::size_t>>& out;
        std::vector<std::size_t>& cur;
        void go(std::size_t slot, std::size_t rem) {
            if (slot + 1 == slots) {
                cur[slot] = rem;
                out.push_back(cur);
                cur[slot] = 0;
                return;
            }
            for (std::size_t w = 0; w <= rem; ++w) {
                cur[slot] = w;
                go(slot + 1, rem - w);
            }
            cur[slot] = 0;
        }
    } rec{slots, out, cur};
    if (slots == 0) return out;
    rec.go(0, total);
    return out;
}

}  // namespace detail

// The coefficient of prod_j lambda_j^{weight_j} in pf(sum_j lambda_j A_j):
// a polarized pfaffian, multihomogeneous of degree weight_j in slot j.
// For m = 1, weight (w), this is pf itself.
inline Poly pfaffian_functional(const PfaffianContext& ctx, const std::vector<std::size_t>& weights) {
    if (weights.size() != ctx.slots) throw BadWeights();
    std::size_t total = 0;
    for (auto w : weights) total += w;
    if (total != ctx.half()) throw BadWeights();

    const SoCoords coords(ctx);
    const std::size_t entry_vars = coords.nvars();
    const std::size_t nvars_ext = entry_vars + ctx.slots;  // lambdas appended

    PolyMat pencil(ctx.dim_w, ctx.dim_w, nvars_ext);
    for (std::size_t slot = 0; slot < ctx.slots; ++slot) {
        const Poly lambda = Poly::variable(nvars_ext, entry_vars + slot);
        for (std::size_t i = 0; i < ctx.dim_w; ++i)
            for (std::size_t j = i + 1; j < ctx.dim_w; ++j) {
                const Poly entry = lambda * Poly::variable(nvars_ext, coords.var(slot, i, j));
                pencil(i, j) = pencil(i, j) + entry;
                pencil(j, i) = pencil(j, i) - entry;
            }
    }
    const Poly pf = symbolic_pfaffian(pencil);

    Poly out(entry_vars);
    for (const auto& [m, c] : pf.terms()) {
        bool match = true;
        for (std::size_t slot = 0; slot < ctx.slots && match; ++slot)
            match = m[entry_vars + slot] == weights[slot];
        if (!match) continue;
        Monomial stripped(m.begin(), m.begin() + entry_vars);
        out.add_term(stripped, c);
    }
    return out;
}

struct SoExtensionReport {
    std::size_t samples = 0;
    std::size_t so_invariance_failures = 0;
    std::size_t reflection_sign_failures = 0;
    bool pf_square_in_span = false;
    bool pass() const {
        return so_invariance_failures == 0 && reflection_sign_failures == 0 && pf_square_in_span;
    }
};

namespace detail {

inline std::vector<Rat> random_so_point(const PfaffianContext& ctx, const SoCoords& coords, Rng& rng,
                                        long bound = 5) {
    std::vector<Rat> point(coords.nvars());
    for (std::size_t v = 0; v < point.size(); ++v) point[v] = rng.next_entry(bound);
    return point;
}

// Conjugated coordinate point: entries of g A_j g^T for each slot.
inline std::vector<Rat> conjugate_point(const PfaffianContext& ctx, const SoCoords& coords,
                                        const std::vector<Rat>& point, const Mat& g) {
    const std::size_t n = ctx.dim_w;
    std::vector<Rat> out(point.size());
    for (std::size_t slot = 0; slot < ctx.slots; ++slot) {
        Mat a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                a(i, j) = point[coords.var(slot, i, j)];
                a(j, i) = -a(i, j);
            }
        const Mat c = g * a * g.transpose();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) out[coords.var(slot, i, j)] = c(i, j);
    }
    return out;
}

// Trace monomials tr(A_{j_1} ... A_{j_k}), k <= max_len: the trace-word
// invariants restricted to the antisymmetric subspace.
inline std::vector<Poly> trace_monomials(const PfaffianContext& ctx, const SoCoords& coords,
                                         std::size_t max_len) {
    std::vector<PolyMat> slot_mats;
    for (std::size_t s = 0; s < ctx.slots; ++s) slot_mats.push_back(coords.symbolic(s));
    std::vector<Poly> out;
    std::vector<std::size_t> seq;
    struct Rec {
        const PfaffianContext& ctx;
        const std::vector<PolyMat>& mats;
        std::vector<Poly>& out;
        std::vector<std::size_t>& seq;
        std::size_t max_len;
        void go(const PolyMat& acc, std::size_t len) {
            if (len > 0) out.push_back(acc.trace());
            if (len == max_len) return;
            for (std::size_t s = 0; s < ctx.slots; ++s) go(acc * mats[s], len + 1);
        }
    } rec{ctx, slot_mats, out, seq, max_len};
    rec.go(PolyMat::identity(ctx.dim_w, coords.nvars()), 0);
    return out;
}

// Span basis of products of `factors` with total degree exactly d.
inline std::vector<Poly> degree_products(const std::vector<Poly>& factors,
                                         const std::vector<std::size_t>& degs, unsigned d,
                                         std::size_t nvars) {
    std::vector<Poly> out;
    struct Rec {
        const std::vector<Poly>& factors;
        const std::vector<std::size_t>& degs;
        std::vector<Poly>& out;
        void go(std::size_t from, unsigned rem, const Poly& acc) {
            if (rem == 0) {
                out.push_back(acc);
                return;
            }
            for (std::size_t i = from; i < factors.size(); ++i)
                if (degs[i] > 0 && degs[i] <= rem)
                    go(i, rem - static_cast<unsigned>(degs[i]), acc * factors[i]);
        }
    } rec{factors, degs, out};
    rec.go(0, d, Poly::constant(nvars, 1));
    return out;
}

inline Mat coefficient_matrix(const std::vector<Poly>& polys, const std::vector<Monomial>& basis) {
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    Mat m(polys.size(), basis.size());
    for (std::size_t r = 0; r < polys.size(); ++r)
        for (const auto& [mono, c] : polys[r].terms()) m(r, index.at(mono)) = c;
    return m;
}

}  // namespace detail

// Randomized checks of the degree-2 extension structure: every polarized
// pfaffian is SO-invariant, a det = -1 reflection negates it, and pf^2 lies
// in the span of the restricted trace-word invariants.
inline SoExtensionReport so_extension_check(const PfaffianContext& ctx, std::size_t samples,
                                            std::uint64_t seed) {
    const SoCoords coords(ctx);
    Rng rng(seed);
    SoExtensionReport rep;
    rep.samples = samples;

    std::vector<Poly> polarized;
    for (const auto& profile : detail::weight_profiles(ctx.slots, ctx.half()))
        polarized.push_back(pfaffian_functional(ctx, profile));

    Mat reflection = Mat::identity(ctx.dim_w);
    reflection(0, 0) = -1;

    for (std::size_t s = 0; s < samples; ++s) {
        const auto point = detail::random_so_point(ctx, coords, rng);
        const Mat g = sample_special_orthogonal(ctx.dim_w, rng);
        const auto conj = detail::conjugate_point(ctx, coords, point, g);
        const auto refl = detail::conjugate_point(ctx, coords, point, reflection);
        for (const auto& p : polarized) {
            if (p.evaluate(conj) != p.evaluate(point)) ++rep.so_invariance_failures;
            if (p.evaluate(refl) != -p.evaluate(point)) ++rep.reflection_sign_failures;
        }
    }

    // pf^2 membership at degree 2w = dim W.
    const unsigned d = static_cast<unsigned>(ctx.dim_w);
    const auto traces = detail::trace_monomials(ctx, coords, ctx.dim_w);
    std::vector<std::size_t> degs;
    std::vector<Poly> factors;
    for (const auto& t : traces) {
        if (t.is_zero_poly()) continue;
        factors.push_back(t);
        unsigned deg = 0;
        for (const auto& [m, c] : t.terms()) deg = monomial_degree(m);
        degs.push_back(deg);
    }
    auto products = detail::degree_products(factors, degs, d, coords.nvars());
    const auto basis = monomials_of_degree(coords.nvars(), d);
    const Mat span = detail::coefficient_matrix(products, basis);
    const std::size_t base_rank = rank(span);

    std::vector<std::size_t> first_slot_weights(ctx.slots, 0);
    first_slot_weights[0] = ctx.half();
    const Poly pf = pfaffian_functional(ctx, first_slot_weights);
    std::vector<Poly> with_pf2 = products;
    with_pf2.push_back(pf * pf);
    rep.pf_square_in_span = rank(detail::coefficient_matrix(with_pf2, basis)) == base_rank;
    return rep;
}

struct DegreeRow {
    unsigned degree = 0;
    std::size_t so_dim = 0;
    std::size_t o_dim = 0;
    std::size_t pf_odd_dim = 0;
    bool accounted() const { return so_dim == o_dim + pf_odd_dim; }
};

struct GenericDegreeReport {
    PfaffianContext ctx;
    std::vector<DegreeRow> rows;
    bool all_accounted() const {
        for (const auto& r : rows)
            if (!r.accounted()) return false;
        return true;
    }
};

// Per-degree dimensions of SO(W)- and O(W)-invariants on so(W)^m, plus the
// span of (top-weight polarized pfaffian) x (O-invariant) products that is
// expected to fill the gap.
inline GenericDegreeReport generic_degree_report(const PfaffianContext& ctx, unsigned max_degree,
                                                 std::size_t guard_rail = kDefaultGuardRail) {
    const SoCoords coords(ctx);
    GenericDegreeReport rep;
    rep.ctx = ctx;

    std::vector<LinearAction> lie_ops;
    for (const auto& x : detail::so_basis(ctx.dim_w))
        lie_ops.push_back({true, coords.derivation_matrix(x)});
    Mat reflection = Mat::identity(ctx.dim_w);
    reflection(0, 0) = -1;
    std::vector<LinearAction> o_ops = lie_ops;
    o_ops.push_back({false, coords.substitution_matrix(reflection)});

    std::vector<Poly> polarized;
    for (const auto& profile : detail::weight_profiles(ctx.slots, ctx.half()))
        polarized.push_back(pfaffian_functional(ctx, profile));

    for (unsigned d = 1; d <= max_degree; ++d) {
        const auto basis = monomials_of_degree(coords.nvars(), d);
        if (basis.size() > guard_rail) throw TooLarge(basis.size(), guard_rail);
        DegreeRow row;
        row.degree = d;
        row.so_dim = invariant_space(basis, coords.nvars(), lie_ops).cols();
        row.o_dim = invariant_space(basis, coords.nvars(), o_ops).cols();

        const std::size_t w = ctx.half();
        if (d >= w) {
            std::vector<Poly> odd_products;
            if (d == w) {
                odd_products = polarized;
            } else {
                const auto lower = monomials_of_degree(coords.nvars(), d - static_cast<unsigned>(w));
                const Mat o_inv = invariant_space(lower, coords.nvars(), o_ops);
                for (std::size_t c = 0; c < o_inv.cols(); ++c) {
                    Poly q(coords.nvars());
                    for (std::size_t i = 0; i < lower.size(); ++i)
                        if (!is_zero(o_inv(i, c))) q.add_term(lower[i], o_inv(i, c));
                    for (const auto& p : polarized) odd_products.push_back(p * q);
                }
            }
            if (!odd_products.empty())
                row.pf_odd_dim = rank(detail::coefficient_matrix(odd_products, basis));
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace quivinv

#endif
