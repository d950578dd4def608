#include "kwsel/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kwsel/translation.hpp"
#include "greedy_engine.hpp"
#include "parallel.hpp"

namespace kwsel {

namespace {

void check_k(std::size_t k, std::size_t n) {
    if (k < 1 || k > n)
        throw InputError("k out of range: need 1 <= k <= " + std::to_string(n));
}

SelectionResult rank_by_scores(const std::vector<double>& scores, std::size_t k,
                               SelectionMethod method) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&scores](std::size_t a, std::size_t b) {
                          if (scores[a] != scores[b]) return scores[a] > scores[b];
                          return a < b;
                      });
    SelectionResult result;
    result.method = method;
    result.selected.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    for (const std::size_t i : result.selected) result.objective_trace.push_back(scores[i]);
    return result;
}

} // namespace

KeywordGraph keyword_graph(const CorpusStats& stats, unsigned threads) {
    const std::size_t n = stats.vocab ? stats.vocab->size() : stats.term_freq.size();
    KeywordGraph graph;
    graph.adjacency.resize(n);
    graph.degree.assign(n, 0.0);

    const auto pairs = stats.sorted_pairs();
    std::vector<double> weights(pairs.size(), 0.0);
    detail::parallel_chunks(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t e = begin; e < end; ++e)
            weights[e] = mutual_information(stats, std::get<0>(pairs[e]), std::get<1>(pairs[e]));
    });
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        if (weights[e] <= 0.0) continue;
        const auto [i, j, count] = pairs[e];
        (void)count;
        graph.adjacency[i].emplace_back(j, weights[e]);
        graph.adjacency[j].emplace_back(i, weights[e]);
        graph.degree[i] += weights[e];
        graph.degree[j] += weights[e];
        graph.edge_count += 1;
    }
    for (auto& list : graph.adjacency) std::sort(list.begin(), list.end());
    return graph;
}

std::vector<double> pagerank_scores(const KeywordGraph& graph, double damping,
                                    double tol, int max_iters) {
    if (!(damping > 0.0 && damping < 1.0)) throw InputError("damping must be in (0, 1)");
    const std::size_t n = graph.adjacency.size();
    if (n == 0) return {};

    std::vector<double> rank(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    for (int iter = 0; iter < max_iters; ++iter) {
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (graph.degree[i] <= 0.0) dangling += rank[i];

        const double teleport = (1.0 - damping) / static_cast<double>(n);
        const double dangling_share = damping * dangling / static_cast<double>(n);
        std::fill(next.begin(), next.end(), teleport + dangling_share);
        for (std::size_t i = 0; i < n; ++i) {
            if (graph.degree[i] <= 0.0) continue;
            const double share = damping * rank[i] / graph.degree[i];
            for (const auto& [j, w] : graph.adjacency[i]) next[j] += share * w;
        }

        double l1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) l1 += std::abs(next[i] - rank[i]);
        rank.swap(next);
        if (l1 < tol) break;
    }
    return rank;
}

SelectionResult select_rf(const CorpusStats& target_stats, std::size_t k) {
    SelectionResult result = top_k_select(relative_frequency(target_stats), k);
    result.method = SelectionMethod::rf;
    return result;
}

SelectionResult select_log_odds(const CorpusStats& target_stats,
                                const CorpusStats& context_stats, std::size_t k,
                                double alpha) {
    const std::size_t n = target_stats.term_freq.size();
    if (context_stats.term_freq.size() != n)
        throw InputError("target and context stats use different vocabularies");
    check_k(k, n);
    if (!(alpha > 0.0)) throw InputError("alpha must be > 0");

    const double nt = static_cast<double>(target_stats.total_term_freq());
    const double nc = static_cast<double>(context_stats.total_term_freq());
    const double prior_total = static_cast<double>(n) * alpha;

    std::vector<double> z(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double yt = static_cast<double>(target_stats.term_freq[i]);
        const double yc = static_cast<double>(context_stats.term_freq[i]);
        const double rest_t = nt + prior_total - yt - alpha;
        const double rest_c = nc + prior_total - yc - alpha;
        if (rest_t <= 0.0 || rest_c <= 0.0) continue; // single-keyword degenerate
        const double delta =
            std::log((yt + alpha) / rest_t) - std::log((yc + alpha) / rest_c);
        const double variance = 1.0 / (yt + alpha) + 1.0 / (yc + alpha);
        z[i] = delta / std::sqrt(variance);
    }
    return rank_by_scores(z, k, SelectionMethod::log_odds);
}

SelectionResult select_pagerank(const CorpusStats& target_stats, std::size_t k,
                                double damping, double pr_tol) {
    check_k(k, target_stats.term_freq.size());
    const KeywordGraph graph = keyword_graph(target_stats);
    if (graph.edge_count == 0) {
        SelectionResult result = top_k_select(relative_frequency(target_stats), k);
        result.method = SelectionMethod::pagerank;
        result.diagnostics.push_back(
            "keyword graph has no positive-MI edges; fell back to relative frequency");
        return result;
    }
    return rank_by_scores(pagerank_scores(graph, damping, pr_tol), k,
                          SelectionMethod::pagerank);
}

SelectionResult select_facility_location(const CorpusStats& target_stats, std::size_t k,
                                         unsigned threads, bool use_lazy) {
    const std::size_t n = target_stats.term_freq.size();
    check_k(k, n);

    // rel columns: rel(i, j) for fixed candidate j, sparse over co-occurring
    // pairs plus the self pair.
    std::vector<std::vector<std::pair<std::size_t, double>>> rel_col(n);
    for (const auto& [i, j, count] : target_stats.sorted_pairs()) {
        (void)count;
        const double mi = mutual_information(target_stats, i, j);
        if (mi <= 0.0) continue;
        rel_col[j].emplace_back(i, mi);
        rel_col[i].emplace_back(j, mi);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double self = mutual_information(target_stats, i, i);
        if (self > 0.0) rel_col[i].emplace_back(i, self);
        std::sort(rel_col[i].begin(), rel_col[i].end());
    }

    std::vector<double> best_rel(n, 0.0); // max_{j in S} rel(i, j), 0 for empty S
    auto gain = [&](std::size_t cand) {
        double g = 0.0;
        for (const auto& [i, rel] : rel_col[cand])
            if (rel > best_rel[i]) g += rel - best_rel[i];
        return g;
    };
    auto commit = [&](std::size_t cand) {
        for (const auto& [i, rel] : rel_col[cand])
            if (rel > best_rel[i]) best_rel[i] = rel;
    };

    auto run = use_lazy ? detail::lazy_greedy(n, k, gain, commit, threads)
                        : detail::naive_greedy(n, k, gain, commit, threads);

    SelectionResult result;
    result.method = SelectionMethod::facility_location;
    result.selected = std::move(run.order);
    result.gain_evaluations = run.evaluations;
    double f = 0.0;
    for (const double g : run.gains) {
        f += g;
        result.objective_trace.push_back(f);
    }
    return result;
}

} // namespace kwsel
