#ifndef KWSEL_SELECTOR_HPP_
#define KWSEL_SELECTOR_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kwsel/corpus.hpp"
#include "kwsel/translation.hpp"

namespace kwsel {

/// Floor applied to coarsened probabilities inside the objective's log, so
/// subsets that leave keywords uncovered still compare on finite values.
constexpr double kObjectiveFloor = 1e-12;

/// Candidate distribution reconstructed from a subset through translation
/// probabilities. Not a probability distribution: entries need not sum to 1.
struct CoarsenedDistribution {
    std::vector<double> probs;
    bool normalized = false;
};

enum class SelectionMethod {
    greedy,
    lazy_greedy,
    brute_force,
    top_k,
    rf,
    log_odds,
    pagerank,
    facility_location,
};

const char* to_string(SelectionMethod method);

struct SelectionResult {
    std::vector<std::size_t> selected;  // insertion order
    std::vector<double> objective_trace; // per insertion; see method docs
    SelectionMethod method = SelectionMethod::greedy;
    std::int64_t gain_evaluations = 0;
    std::vector<std::string> diagnostics;
};

/// p~(t_i) = sum_{j in s} p_MI(t_i | t_j) p(t_j), Eq-style coarsening.
CoarsenedDistribution coarsen(const Distribution& p, const TranslationMatrix& t,
                              std::span<const std::size_t> s);

/// KL-divergence objective phi(S) = sum_i p(t_i) ln(p(t_i) / max(p~(t_i), floor)).
/// Lower is better; terms with p(t_i) = 0 contribute 0.
double objective(const Distribution& p, const TranslationMatrix& t,
                 std::span<const std::size_t> s);

/// Naive greedy: each step adds the candidate with the largest objective
/// drop. Ties break by ascending index. objective_trace holds phi(S) after
/// each insertion.
SelectionResult greedy_select(const Distribution& p, const TranslationMatrix& t,
                              std::size_t k, unsigned threads = 1);

/// Lazy greedy over a priority queue of stale gains. Selects the same set as
/// greedy_select, with at most as many gain evaluations.
SelectionResult lazy_greedy_select(const Distribution& p, const TranslationMatrix& t,
                                   std::size_t k, unsigned threads = 1);

/// Exhaustive minimizer of phi over all size-k subsets; guarded to
/// C(|V|, k) <= 1e6. Ties break to the lexicographically smallest index set.
SelectionResult brute_force_select(const Distribution& p, const TranslationMatrix& t,
                                   std::size_t k);

/// k highest-probability keywords, ties by ascending index. objective_trace
/// holds the probability of each inserted keyword.
SelectionResult top_k_select(const Distribution& dist, std::size_t k);

} // namespace kwsel

#endif // KWSEL_SELECTOR_HPP_
