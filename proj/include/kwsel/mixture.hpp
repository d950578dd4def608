#ifndef KWSEL_MIXTURE_HPP_
#define KWSEL_MIXTURE_HPP_

#include <cstdint>
#include <vector>

#include "kwsel/corpus.hpp"

namespace kwsel {

struct EmConfig {
    double lambda = 0.9;   // background mixing weight, in [0, 1)
    int max_iters = 1000;
    double tol = 1e-9;     // stop when the LLV improvement and the largest
                           // per-entry update both drop below this
    int restarts = 5;      // restart 0 is uniform, the rest Dirichlet(1)
    std::uint64_t seed = 42;
    unsigned threads = 1;  // restarts run independently; 0 = all cores
};

struct EmResult {
    Distribution theta_d;
    double final_llv = 0.0;
    std::vector<double> llv_trace;  // winning restart, one entry per iteration
    int restart_index = 0;
    int iterations_used = 0;
    std::vector<double> restart_final_llvs; // diagnostic, one per restart
};

/// Keyword distribution of the context corpus with add-one smoothing over V,
/// so every entry is strictly positive.
Distribution background_model(const CorpusStats& context_stats);

/// Log-likelihood of generating the target corpus from the two-component
/// mixture: sum_i c(t_i) * ln((1-lambda) p(t_i|theta_d) + lambda p(t_i|theta_b)).
/// Natural log; zero-count keywords contribute nothing.
double log_likelihood(const CorpusStats& target_stats, const Distribution& theta_d,
                      const Distribution& theta_b, double lambda);

/// One E+M update of theta_d. Exposed so convergence can be probed directly.
Distribution em_update(const CorpusStats& target_stats, const Distribution& theta_d,
                       const Distribution& theta_b, double lambda);

/// Estimate the target model by EM with random restarts; the restart with
/// the highest final LLV wins (ties go to the lower restart index).
EmResult em_estimate(const CorpusStats& target_stats, const Distribution& theta_b,
                     const EmConfig& config);

} // namespace kwsel

#endif // KWSEL_MIXTURE_HPP_
