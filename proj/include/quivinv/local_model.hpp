#ifndef QUIVINV_LOCAL_MODEL_HPP
#define QUIVINV_LOCAL_MODEL_HPP

#include <quivinv/quiver.hpp>
#include <quivinv/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quivinv {

struct InvalidSpec : std::runtime_error {
    explicit InvalidSpec(const std::string& what) : std::runtime_error("InvalidSpec: " + what) {}
};

struct UnsupportedConfiguration : std::runtime_error {
    explicit UnsupportedConfiguration(const std::string& what)
        : std::runtime_error("UnsupportedConfiguration: " + what) {}
};

// One isotypic block of a polystable orthogonal/symplectic bundle: a stable
// bundle F (self-dual or a non-self-dual F + F^vee pair) tensored with a
// multiplicity space V of dimension `mult`.
enum class SummandKind { OrthogonalStable, SymplecticStable, NonSelfDualPair };

enum class Flavor { Orthogonal, Symplectic };

struct SummandSpec {
    SummandKind kind = SummandKind::OrthogonalStable;
    std::size_t rank = 1;  // rank of F (a pair has total rank 2*rank)
    std::size_t mult = 1;  // dim V
};

struct DecompositionSpec {
    std::size_t genus = 2;
    Flavor flavor = Flavor::Orthogonal;
    std::vector<SummandSpec> summands;
};

// Is the multiplicity space of this summand symplectic under this flavor?
// Self-dual summands pair up with V quadratically or symplectically so that
// the tensor product carries the moduli flavor's form.
inline bool mult_space_symplectic(const SummandSpec& s, Flavor flavor) {
    if (s.kind == SummandKind::NonSelfDualPair) return false;
    const bool same = (s.kind == SummandKind::OrthogonalStable) == (flavor == Flavor::Orthogonal);
    return !same;
}

inline void validate(const DecompositionSpec& spec) {
    if (spec.genus < 2) throw InvalidSpec("genus must be at least 2");
    if (spec.summands.empty()) throw InvalidSpec("at least one summand required");
    for (const auto& s : spec.summands) {
        if (s.rank == 0) throw InvalidSpec("summand rank must be positive");
        if (s.mult == 0) throw InvalidSpec("multiplicity dimension must be positive");
        if (s.kind == SummandKind::SymplecticStable && s.rank % 2 != 0)
            throw InvalidSpec("symplectic stable summand needs even rank");
        if (mult_space_symplectic(s, spec.flavor) && s.mult % 2 != 0)
            throw InvalidSpec("symplectic multiplicity space needs even dimension");
    }
}

// --- Cohomology bookkeeping for degree-0 stable bundles on a genus-g curve.
// Riemann-Roch gives chi(W) = -rank(W)(g-1) for degree-0 W, and stability
// pins the h0 corrections: Hom(F_i, F_j) = delta_ij * k.

inline std::size_t ext1_dim(std::size_t ri, std::size_t rj, std::size_t g, bool same) {
    return ri * rj * (g - 1) + (same ? 1 : 0);
}

// h1 of S^2 F^vee and Lambda^2 F^vee for a single stable factor F. The +1
// lands with the factor containing F's own form: S^2 for an orthogonal F,
// Lambda^2 for a symplectic F, neither for a non-self-dual F.
struct FormSplit {
    std::size_t sym = 0;  // dim H^1(S^2 F^vee)
    std::size_t alt = 0;  // dim H^1(Lambda^2 F^vee)
};

inline FormSplit form_split(SummandKind kind, std::size_t r, std::size_t g) {
    FormSplit fs;
    fs.sym = r * (r + 1) / 2 * (g - 1);
    fs.alt = r * (r - 1) / 2 * (g - 1);
    if (kind == SummandKind::OrthogonalStable) fs.sym += 1;
    if (kind == SummandKind::SymplecticStable) fs.alt += 1;
    return fs;
}

// --- Ext-quiver vertex data: one vertex per self-dual summand, two per pair.

struct ExtVertex {
    std::string label;
    std::size_t summand = 0;  // index into spec.summands
    bool dual = false;        // the F^vee vertex of a pair
    std::size_t rank = 0;
    std::size_t mult = 0;
};

inline std::vector<ExtVertex> ext_vertices(const DecompositionSpec& spec) {
    std::vector<ExtVertex> out;
    for (std::size_t i = 0; i < spec.summands.size(); ++i) {
        const auto& s = spec.summands[i];
        const std::string base = "v" + std::to_string(i);
        out.push_back({base, i, false, s.rank, s.mult});
        if (s.kind == SummandKind::NonSelfDualPair)
            out.push_back({base + "s", i, true, s.rank, s.mult});
    }
    return out;
}

// dim Ext^1 between the stable factors attached to each vertex pair. Distinct
// vertices carry mutually non-isomorphic bundles (F and F^vee included), so
// only the diagonal gets the Hom correction.
inline std::vector<std::vector<std::size_t>> ext_dimensions(const DecompositionSpec& spec) {
    validate(spec);
    const auto verts = ext_vertices(spec);
    std::vector<std::vector<std::size_t>> ext(verts.size(), std::vector<std::size_t>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = 0; j < verts.size(); ++j)
            ext[i][j] = ext1_dim(verts[i].rank, verts[j].rank, spec.genus, i == j);
    return ext;
}

// The local symmetric quiver: multiplicity spaces as vertex dimensions,
// Ext^1 counts as arrow multiplicities. Loops sit at every vertex; a pair's
// two vertices are joined in both directions; distinct summands get one
// arrow bundle (the doubling supplies the reverse maps).
inline std::pair<SymQuiver, DimVector> build_local_quiver(const DecompositionSpec& spec) {
    validate(spec);
    const auto verts = ext_vertices(spec);
    const auto ext = ext_dimensions(spec);

    SymQuiver q;
    DimVector alpha;
    for (const auto& v : verts) {
        if (v.dual) continue;
        const auto& s = spec.summands[v.summand];
        if (s.kind == SummandKind::NonSelfDualPair) {
            q.add_gl_pair(v.label, v.label + "s");
            alpha[v.label] = s.mult;
            alpha[v.label + "s"] = s.mult;
        } else {
            q.add_vertex(v.label, mult_space_symplectic(s, spec.flavor) ? VertexKind::Symplectic
                                                                        : VertexKind::Orthogonal);
            alpha[v.label] = s.mult;
        }
    }
    std::size_t arrow_id = 0;
    auto add_arrows = [&](std::size_t i, std::size_t j, std::size_t count) {
        for (std::size_t k = 0; k < count; ++k)
            q.add_arrow("a" + std::to_string(arrow_id++), verts[i].label, verts[j].label);
    };
    for (std::size_t i = 0; i < verts.size(); ++i) {
        add_arrows(i, i, ext[i][i]);
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            if (verts[i].summand == verts[j].summand) {
                add_arrows(i, j, ext[i][j]);  // F -> F^vee of one pair
                add_arrows(j, i, ext[j][i]);
            } else {
                add_arrows(i, j, ext[i][j]);
            }
        }
    }
    validate_dimension(q, alpha);
    return {q, alpha};
}

// --- H^1(C, Ad P) inventory.

struct LabeledDim {
    std::string label;
    std::size_t dim = 0;
};

struct H1AdInventory {
    std::vector<LabeledDim> diagonal;
    std::vector<LabeledDim> off_diagonal;
    std::size_t total = 0;
};

namespace detail {

inline std::size_t sym2(std::size_t m) { return m * (m + 1) / 2; }
inline std::size_t alt2(std::size_t m) { return m * (m - 1) / 2; }

// Effective rank of the whole summand (a pair counts F and F^vee).
inline std::size_t summand_rank(const SummandSpec& s) {
    return s.kind == SummandKind::NonSelfDualPair ? 2 * s.rank : s.rank;
}

}  // namespace detail

// The diagonal blocks tensor the S^2/Lambda^2 split of H^1(F^vee ⊗ F^vee)
// against the matching split of the multiplicity space; the symplectic
// flavor swaps which F-factor meets which V-factor. Off-diagonal blocks are
// plain Ext^1 spaces between distinct summands, multiplicities included.
inline H1AdInventory h1ad_inventory(const DecompositionSpec& spec) {
    validate(spec);
    H1AdInventory inv;
    const std::size_t g = spec.genus;
    for (std::size_t i = 0; i < spec.summands.size(); ++i) {
        const auto& s = spec.summands[i];
        FormSplit fs = form_split(s.kind, s.rank, g);
        if (spec.flavor == Flavor::Symplectic) std::swap(fs.sym, fs.alt);
        const std::string tag = "#" + std::to_string(i) + " ";
        const std::size_t m = s.mult;
        switch (s.kind) {
            case SummandKind::OrthogonalStable:
                inv.diagonal.push_back({tag + "S2F x so(V)", fs.sym * detail::alt2(m)});
                inv.diagonal.push_back({tag + "L2F x S2V", fs.alt * detail::sym2(m)});
                break;
            case SummandKind::SymplecticStable:
                inv.diagonal.push_back({tag + "L2F x sp(V)", fs.alt * detail::sym2(m)});
                inv.diagonal.push_back({tag + "S2F x L2V", fs.sym * detail::alt2(m)});
                break;
            case SummandKind::NonSelfDualPair:
                inv.diagonal.push_back(
                    {tag + "Ext(F,F) x gl(V)", ext1_dim(s.rank, s.rank, g, true) * m * m});
                inv.diagonal.push_back({tag + "L2Fdual x S2Vdual", fs.alt * detail::sym2(m)});
                inv.diagonal.push_back({tag + "S2Fdual x L2Vdual", fs.sym * detail::alt2(m)});
                inv.diagonal.push_back({tag + "L2F x S2V", fs.alt * detail::sym2(m)});
                inv.diagonal.push_back({tag + "S2F x L2V", fs.sym * detail::alt2(m)});
                break;
        }
    }
    for (std::size_t i = 0; i < spec.summands.size(); ++i)
        for (std::size_t j = i + 1; j < spec.summands.size(); ++j) {
            const std::size_t di = detail::summand_rank(spec.summands[i]) * spec.summands[i].mult;
            const std::size_t dj = detail::summand_rank(spec.summands[j]) * spec.summands[j].mult;
            inv.off_diagonal.push_back({"#" + std::to_string(i) + "#" + std::to_string(j) + " Ext",
                                        di * dj * (spec.genus - 1)});
        }
    for (const auto& item : inv.diagonal) inv.total += item.dim;
    for (const auto& item : inv.off_diagonal) inv.total += item.dim;
    return inv;
}

// --- Exact univariate polynomials over the rationals, for Molien sums.

using UniPoly = std::vector<Rat>;  // coefficient i of t^i

inline UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly out(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline UniPoly uni_pow(const UniPoly& a, std::size_t e) {
    UniPoly out{Rat(1)};
    for (std::size_t k = 0; k < e; ++k) out = uni_mul(out, a);
    return out;
}

inline UniPoly uni_add(const UniPoly& a, const UniPoly& b) {
    UniPoly out(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

inline Rat uni_eval(const UniPoly& a, const Rat& x) {
    Rat out = 0;
    for (std::size_t i = a.size(); i-- > 0;) out = out * x + a[i];
    return out;
}

inline Rat uni_coeff(const UniPoly& a, std::size_t k) { return k < a.size() ? a[k] : Rat(0); }

inline Rat binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    Rat out = 1;
    for (std::size_t i = 0; i < k; ++i) out = out * Rat(static_cast<long>(n - i)) / Rat(static_cast<long>(i + 1));
    return out;
}

// --- Hilbert series of the invariant local model.

// numerator(t) / ((1-t)^pow_linear (1-t^2)^pow_quadratic)
struct HilbertSeries {
    UniPoly numerator{Rat(1)};
    std::size_t pow_linear = 0;
    std::size_t pow_quadratic = 0;
};

namespace detail {

inline bool stable_point_case(const DecompositionSpec& spec) {
    if (spec.flavor != Flavor::Orthogonal) return false;
    for (const auto& s : spec.summands)
        if (s.kind != SummandKind::OrthogonalStable || s.mult != 1) return false;
    return true;
}

inline bool segre_case(const DecompositionSpec& spec) {
    return spec.flavor == Flavor::Orthogonal && spec.summands.size() == 1 &&
           spec.summands[0].kind == SummandKind::NonSelfDualPair && spec.summands[0].mult == 1;
}

// Molien numerator for the diagonal (Z/2)^n isotropy of a stable point:
// average over sign vectors of prod_{i<j} (1 - eps_i eps_j t)^{-d_ij}, with
// the denominator (1-t^2)^{sum d_ij} cleared. Each sign vector contributes
// prod (1 -+ t)^{d_ij} with the sign opposite to eps_i eps_j.
inline UniPoly stable_molien_numerator(const std::vector<std::size_t>& ranks, std::size_t g) {
    const std::size_t n = ranks.size();
    UniPoly total;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        UniPoly term{Rat(1)};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const bool flip = ((mask >> i) ^ (mask >> j)) & 1u;
                const UniPoly factor = flip ? UniPoly{Rat(1), Rat(-1)} : UniPoly{Rat(1), Rat(1)};
                term = uni_mul(term, uni_pow(factor, ranks[i] * ranks[j] * (g - 1)));
            }
        total = uni_add(total, term);
    }
    const Rat scale = Rat(1) / Rat(static_cast<long>(std::size_t{1} << n));
    for (auto& c : total) c *= scale;
    return total;
}

// Degree-2 invariant blocks of the single-pair torus case: the weights -2
// and +2 pieces whose products generate the Segre factor.
inline std::pair<std::size_t, std::size_t> segre_block_dims(const DecompositionSpec& spec) {
    const auto& s = spec.summands[0];
    FormSplit fs = form_split(s.kind, s.rank, spec.genus);
    if (spec.flavor == Flavor::Symplectic) std::swap(fs.sym, fs.alt);
    return {fs.alt, fs.alt};  // H^1(L2 F^vee) and H^1(L2 F): equal dimensions at degree 0
}

}  // namespace detail

inline HilbertSeries hilbert_series(const DecompositionSpec& spec) {
    validate(spec);
    HilbertSeries hs;
    if (detail::stable_point_case(spec)) {
        std::vector<std::size_t> ranks;
        std::size_t off_total = 0;
        for (const auto& s : spec.summands) {
            ranks.push_back(s.rank);
            hs.pow_linear += form_split(s.kind, s.rank, spec.genus).alt;  // invariant diagonal part
        }
        for (std::size_t i = 0; i < ranks.size(); ++i)
            for (std::size_t j = i + 1; j < ranks.size(); ++j)
                off_total += ranks[i] * ranks[j] * (spec.genus - 1);
        hs.numerator = detail::stable_molien_numerator(ranks, spec.genus);
        hs.pow_quadratic = off_total;
        return hs;
    }
    if (detail::segre_case(spec)) {
        const auto& s = spec.summands[0];
        const auto [a, b] = detail::segre_block_dims(spec);
        hs.pow_linear = ext1_dim(s.rank, s.rank, spec.genus, true);  // torus-invariant gl block
        if (a == 0 || b == 0) return hs;  // one factor empty: the Segre part is trivial
        hs.numerator.assign(2 * std::min(a - 1, b - 1) + 1, Rat(0));
        for (std::size_t k = 0; k <= std::min(a - 1, b - 1); ++k)
            hs.numerator[2 * k] = binomial(a - 1, k) * binomial(b - 1, k);
        hs.pow_quadratic = a + b - 1;
        return hs;
    }
    throw UnsupportedConfiguration("Hilbert series computed only for stable points and single pairs");
}

// Hilbert-Samuel multiplicity of the local model: the numerator of the
// even-generated factor evaluated at t = 1 (smooth linear factors
// contribute 1). Degree-2 generators are regraded to degree 1, which is
// exactly the cleared (1-t^2) power.
inline std::size_t multiplicity(const DecompositionSpec& spec) {
    const HilbertSeries hs = hilbert_series(spec);
    const Rat m = uni_eval(hs.numerator, Rat(1));
    if (m.get_den() != 1 || m < 1)
        throw UnsupportedConfiguration("Molien numerator did not evaluate to a positive integer");
    return static_cast<std::size_t>(m.get_num().get_ui());
}

// Coefficient of t after regrading the even-generated factor: the dimension
// of the tangent space of the local model.
inline std::size_t tangent_dim(const DecompositionSpec& spec) {
    const HilbertSeries hs = hilbert_series(spec);
    const Rat c = uni_coeff(hs.numerator, 2) +
                  Rat(static_cast<long>(hs.pow_quadratic)) * uni_coeff(hs.numerator, 0);
    return hs.pow_linear + static_cast<std::size_t>(Rat(c).get_num().get_ui());
}

// Number of SO-orbits over one O-orbit point: 2 exactly when the bundle has
// even total rank and every orthogonal stable factor has even rank.
inline std::size_t fiber_cardinality(const DecompositionSpec& spec) {
    validate(spec);
    if (spec.flavor != Flavor::Orthogonal)
        throw InvalidSpec("fiber cardinality applies to the orthogonal flavor");
    std::size_t total = 0;
    bool all_orth_even = true;
    for (const auto& s : spec.summands) {
        total += detail::summand_rank(s) * s.mult;
        if (s.kind == SummandKind::OrthogonalStable && s.rank % 2 != 0) all_orth_even = false;
    }
    if (total % 2 != 0) return 1;
    return all_orth_even ? 2 : 1;
}

struct LocalModelReport {
    std::vector<ExtVertex> vertices;
    std::vector<std::vector<std::size_t>> ext;
    H1AdInventory inventory;
    bool series_supported = false;
    HilbertSeries series;
    std::size_t tangent = 0;
    std::size_t mult = 0;
    bool fiber_supported = false;
    std::size_t fiber = 1;
};

inline LocalModelReport local_model_report(const DecompositionSpec& spec) {
    validate(spec);
    LocalModelReport rep;
    rep.vertices = ext_vertices(spec);
    rep.ext = ext_dimensions(spec);
    rep.inventory = h1ad_inventory(spec);
    try {
        rep.series = hilbert_series(spec);
        rep.tangent = tangent_dim(spec);
        rep.mult = multiplicity(spec);
        rep.series_supported = true;
    } catch (const UnsupportedConfiguration&) {
        rep.series_supported = false;
    }
    if (spec.flavor == Flavor::Orthogonal) {
        rep.fiber = fiber_cardinality(spec);
        rep.fiber_supported = true;
    }
    return rep;
}

}  // namespace quivinv

#endif
