#include "kwsel/selector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "greedy_engine.hpp"

namespace kwsel {

namespace {

void check_subset(const Distribution& p, std::span<const std::size_t> s) {
    if (s.empty()) throw InputError("empty subset");
    std::unordered_set<std::size_t> seen;
    for (const std::size_t j : s) {
        if (j >= p.probs.size()) throw InputError("subset index out of range");
        if (!seen.insert(j).second) throw InputError("duplicate index in subset");
    }
}

void check_k(std::size_t k, std::size_t n) {
    if (k < 1 || k > n)
        throw InputError("k out of range: need 1 <= k <= " + std::to_string(n));
}

// Incremental gain state for phi: keeps the running coarsened vector so one
// gain evaluation touches only the candidate's sparse column.
struct ObjectiveState {
    const Distribution& p;
    const TranslationMatrix& t;
    std::vector<double> ptilde;

    ObjectiveState(const Distribution& p_, const TranslationMatrix& t_)
        : p(p_), t(t_), ptilde(p_.probs.size(), 0.0) {}

    double phi_uncovered() const {
        double phi = 0.0;
        for (const double pi : p.probs)
            if (pi > 0.0) phi += pi * std::log(pi / kObjectiveFloor);
        return phi;
    }

    double gain(std::size_t cand) const {
        const double pc = p.probs[cand];
        double g = 0.0;
        for (const TranslationMatrix::Entry& e : t.column(cand)) {
            const double pi = p.probs[e.index];
            if (pi <= 0.0) continue;
            const double cur = std::max(ptilde[e.index], kObjectiveFloor);
            const double next = std::max(ptilde[e.index] + e.p * pc, kObjectiveFloor);
            g += pi * (std::log(next) - std::log(cur));
        }
        return std::max(0.0, g); // phi is monotone; negatives are rounding noise
    }

    void commit(std::size_t cand) {
        const double pc = p.probs[cand];
        for (const TranslationMatrix::Entry& e : t.column(cand))
            ptilde[e.index] += e.p * pc;
    }
};

SelectionResult from_run(detail::GreedyRun&& run, double phi_start, SelectionMethod method) {
    SelectionResult result;
    result.method = method;
    result.selected = std::move(run.order);
    result.gain_evaluations = run.evaluations;
    result.objective_trace.reserve(run.gains.size());
    double phi = phi_start;
    for (const double g : run.gains) {
        phi -= g;
        result.objective_trace.push_back(phi);
    }
    return result;
}

double binomial_guarded(std::size_t n, std::size_t k, double limit) {
    double c = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
        if (c > limit) return limit + 1.0;
    }
    return c;
}

} // namespace

const char* to_string(SelectionMethod method) {
    switch (method) {
        case SelectionMethod::greedy: return "greedy";
        case SelectionMethod::lazy_greedy: return "lazy_greedy";
        case SelectionMethod::brute_force: return "brute_force";
        case SelectionMethod::top_k: return "top_k";
        case SelectionMethod::rf: return "rf";
        case SelectionMethod::log_odds: return "log_odds";
        case SelectionMethod::pagerank: return "pagerank";
        case SelectionMethod::facility_location: return "facility_location";
    }
    return "unknown";
}

CoarsenedDistribution coarsen(const Distribution& p, const TranslationMatrix& t,
                              std::span<const std::size_t> s) {
    check_subset(p, s);
    CoarsenedDistribution out;
    out.probs.assign(p.probs.size(), 0.0);
    for (const std::size_t j : s) {
        const double pj = p.probs[j];
        for (const TranslationMatrix::Entry& e : t.column(j)) out.probs[e.index] += e.p * pj;
    }
    return out;
}

double objective(const Distribution& p, const TranslationMatrix& t,
                 std::span<const std::size_t> s) {
    const CoarsenedDistribution coarse = coarsen(p, t, s);
    double phi = 0.0;
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
        const double pi = p.probs[i];
        if (pi <= 0.0) continue;
        phi += pi * std::log(pi / std::max(coarse.probs[i], kObjectiveFloor));
    }
    return phi;
}

SelectionResult greedy_select(const Distribution& p, const TranslationMatrix& t,
                              std::size_t k, unsigned threads) {
    check_k(k, p.probs.size());
    ObjectiveState state(p, t);
    const double phi_start = state.phi_uncovered();
    auto run = detail::naive_greedy(
        p.probs.size(), k, [&state](std::size_t c) { return state.gain(c); },
        [&state](std::size_t c) { state.commit(c); }, threads);
    return from_run(std::move(run), phi_start, SelectionMethod::greedy);
}

SelectionResult lazy_greedy_select(const Distribution& p, const TranslationMatrix& t,
                                   std::size_t k, unsigned threads) {
    check_k(k, p.probs.size());
    ObjectiveState state(p, t);
    const double phi_start = state.phi_uncovered();
    auto run = detail::lazy_greedy(
        p.probs.size(), k, [&state](std::size_t c) { return state.gain(c); },
        [&state](std::size_t c) { state.commit(c); }, threads);
    return from_run(std::move(run), phi_start, SelectionMethod::lazy_greedy);
}

SelectionResult brute_force_select(const Distribution& p, const TranslationMatrix& t,
                                   std::size_t k) {
    const std::size_t n = p.probs.size();
    check_k(k, n);
    if (binomial_guarded(n, k, 1e6) > 1e6)
        throw InputError("instance too large for exhaustive search");

    std::vector<std::size_t> current(k);
    std::iota(current.begin(), current.end(), 0);
    std::vector<std::size_t> best;
    double best_phi = 0.0;

    // Lexicographic enumeration + strict improvement keeps the smallest
    // optimal index set.
    while (true) {
        const double phi = objective(p, t, current);
        if (best.empty() || phi < best_phi) {
            best = current;
            best_phi = phi;
        }
        std::size_t pos = k;
        while (pos > 0 && current[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) break; // exhausted
        ++current[pos - 1];
        for (std::size_t q = pos; q < k; ++q) current[q] = current[q - 1] + 1;
    }

    SelectionResult result;
    result.method = SelectionMethod::brute_force;
    result.selected = best;
    result.gain_evaluations = static_cast<std::int64_t>(binomial_guarded(n, k, 1e6));
    result.objective_trace.reserve(k);
    for (std::size_t len = 1; len <= k; ++len)
        result.objective_trace.push_back(
            objective(p, t, std::span<const std::size_t>(best.data(), len)));
    return result;
}

SelectionResult top_k_select(const Distribution& dist, std::size_t k) {
    check_k(k, dist.probs.size());
    std::vector<std::size_t> order(dist.probs.size());
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&dist](std::size_t a, std::size_t b) {
                          if (dist.probs[a] != dist.probs[b]) return dist.probs[a] > dist.probs[b];
                          return a < b;
                      });
    SelectionResult result;
    result.method = SelectionMethod::top_k;
    result.selected.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    result.objective_trace.reserve(k);
    for (const std::size_t i : result.selected) result.objective_trace.push_back(dist.probs[i]);
    return result;
}

} // namespace kwsel
