#ifndef QUIVINV_TRACE_WORDS_HPP
#define QUIVINV_TRACE_WORDS_HPP

#include <quivinv/quiver.hpp>

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace quivinv {

struct NotComposable : std::runtime_error {
    NotComposable() : std::runtime_error("NotComposable: trace word steps do not chain") {}
};

// One step of a trace word: the arrow's map, or its adjoint (the star arrow
// of the doubled quiver).
struct SignedArrow {
    std::string arrow;
    bool star = false;

    auto operator<=>(const SignedArrow&) const = default;
};

// Cyclic composable sequence of signed arrows; one invariant generator.
struct TraceWord {
    std::vector<SignedArrow> steps;

    auto operator<=>(const TraceWord&) const = default;
    std::size_t length() const { return steps.size(); }
};

inline bool is_composable(const DoubledQuiver& dq, const TraceWord& w) {
    if (w.steps.empty()) return false;
    const std::size_t n = w.steps.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto cur = dq.endpoints(w.steps[i].arrow, w.steps[i].star);
        const auto nxt = dq.endpoints(w.steps[(i + 1) % n].arrow, w.steps[(i + 1) % n].star);
        if (cur.dst != nxt.src) return false;
    }
    return true;
}

// Lexicographically minimal representative over cyclic rotations and the
// adjoint-reversal (reverse the order, toggle every star flag). Both leave
// the trace function unchanged up to the global sign carried by evaluation.
inline TraceWord canonicalize(const DoubledQuiver& dq, const TraceWord& w) {
    if (!is_composable(dq, w)) throw NotComposable();
    const std::size_t n = w.steps.size();
    TraceWord reversed;
    reversed.steps.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        reversed.steps[i] = w.steps[n - 1 - i];
        reversed.steps[i].star = !reversed.steps[i].star;
    }
    TraceWord best;
    const TraceWord* candidates[] = {&w, &reversed};
    for (const TraceWord* cand : candidates) {
        for (std::size_t r = 0; r < n; ++r) {
            TraceWord rot;
            rot.steps.reserve(n);
            for (std::size_t i = 0; i < n; ++i) rot.steps.push_back(cand->steps[(r + i) % n]);
            if (best.steps.empty() || rot < best) best = rot;
        }
    }
    return best;
}

namespace detail {

inline void cycle_dfs(const DoubledQuiver& dq, const std::vector<SignedArrow>& alphabet,
                      const std::string& start, const std::string& at, std::size_t max_len,
                      std::vector<SignedArrow>& path, std::set<TraceWord>& out) {
    if (!path.empty() && at == start) out.insert(canonicalize(dq, TraceWord{path}));
    if (path.size() == max_len) return;
    for (const auto& step : alphabet) {
        const auto ep = dq.endpoints(step.arrow, step.star);
        if (ep.src != at) continue;
        path.push_back(step);
        cycle_dfs(dq, alphabet, start, ep.dst, max_len, path, out);
        path.pop_back();
    }
}

}  // namespace detail

// All composable cyclic words of length <= max_len, one representative per
// canonical class, in canonical (deterministic) order.
inline std::vector<TraceWord> enumerate_cycles(const DoubledQuiver& dq, std::size_t max_len) {
    std::vector<SignedArrow> alphabet;
    for (const auto& a : dq.base().arrows()) {
        alphabet.push_back({a.id, false});
        alphabet.push_back({a.id, true});
    }
    std::sort(alphabet.begin(), alphabet.end());
    std::set<TraceWord> classes;
    for (const auto& v : dq.base().vertices()) {
        std::vector<SignedArrow> path;
        detail::cycle_dfs(dq, alphabet, v.id, v.id, max_len, path, classes);
    }
    std::vector<TraceWord> out(classes.begin(), classes.end());
    std::stable_sort(out.begin(), out.end(), [](const TraceWord& a, const TraceWord& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a < b;
    });
    return out;
}

}  // namespace quivinv

#endif
