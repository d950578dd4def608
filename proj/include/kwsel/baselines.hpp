#ifndef KWSEL_BASELINES_HPP_
#define KWSEL_BASELINES_HPP_

#include <cstddef>
#include <vector>

#include "kwsel/corpus.hpp"
#include "kwsel/selector.hpp"

namespace kwsel {

/// Undirected keyword relatedness graph with MI edge weights. No self-loops.
struct KeywordGraph {
    // adjacency[i] = sorted (neighbor, weight); every edge stored both ways
    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
    std::vector<double> degree; // weighted degree
    std::size_t edge_count = 0;
};

KeywordGraph keyword_graph(const CorpusStats& stats, unsigned threads = 1);

/// Weighted PageRank by power iteration with uniform teleportation; dangling
/// nodes spread their mass uniformly. Scores sum to 1.
std::vector<double> pagerank_scores(const KeywordGraph& graph, double damping,
                                    double tol, int max_iters = 200);

/// Top-k keywords by relative frequency in the target corpus.
SelectionResult select_rf(const CorpusStats& target_stats, std::size_t k);

/// Log-odds-ratio with a symmetric Dirichlet prior between target and
/// context counts, z-scored; top-k by z. objective_trace holds z values.
SelectionResult select_log_odds(const CorpusStats& target_stats,
                                const CorpusStats& context_stats, std::size_t k,
                                double alpha = 0.01);

/// Top-k keywords by PageRank score over the MI keyword graph. An edgeless
/// graph falls back to relative-frequency ranking with a diagnostic.
SelectionResult select_pagerank(const CorpusStats& target_stats, std::size_t k,
                                double damping = 0.85, double pr_tol = 1e-10);

/// Greedy maximization of the facility location function
/// f(S) = sum_i max_{j in S} rel(t_i, t_j) with rel = MI. objective_trace
/// holds f(S) after each insertion.
SelectionResult select_facility_location(const CorpusStats& target_stats, std::size_t k,
                                         unsigned threads = 1, bool use_lazy = true);

} // namespace kwsel

#endif // KWSEL_BASELINES_HPP_
