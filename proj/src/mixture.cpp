#include "kwsel/mixture.hpp"

#include <cmath>
#include <random>

#include "parallel.hpp"

namespace kwsel {

namespace {

void check_config(const EmConfig& config) {
    if (!(config.lambda >= 0.0 && config.lambda < 1.0))
        throw InputError("lambda must be in [0, 1); lambda = 1 leaves the target model undetermined");
    if (config.max_iters < 1) throw InputError("max_iters must be >= 1");
    if (!(config.tol > 0.0)) throw InputError("tol must be > 0");
    if (config.restarts < 1) throw InputError("restarts must be >= 1");
}

std::vector<double> initial_theta(std::size_t n, int restart, std::uint64_t seed) {
    std::vector<double> theta(n);
    if (restart == 0) {
        std::fill(theta.begin(), theta.end(), 1.0 / static_cast<double>(n));
        return theta;
    }
    // Symmetric Dirichlet(1) via normalized exponentials, seeded per restart.
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(restart)));
    std::exponential_distribution<double> exp1(1.0);
    double sum = 0.0;
    for (double& x : theta) {
        x = exp1(rng);
        while (x <= 0.0) x = exp1(rng);
        sum += x;
    }
    for (double& x : theta) x /= sum;
    return theta;
}

struct RestartOutcome {
    std::vector<double> theta;
    std::vector<double> trace;
    int iterations = 0;
};

RestartOutcome run_restart(const CorpusStats& stats, const Distribution& theta_b,
                           const EmConfig& config, int restart) {
    RestartOutcome out;
    out.theta = initial_theta(theta_b.probs.size(), restart, config.seed);

    Distribution current{theta_b.vocab, out.theta};
    double llv = log_likelihood(stats, current, theta_b, config.lambda);
    out.trace.push_back(llv);

    for (int it = 0; it < config.max_iters; ++it) {
        const Distribution next = em_update(stats, current, theta_b, config.lambda);
        double movement = 0.0;
        for (std::size_t i = 0; i < next.probs.size(); ++i)
            movement = std::max(movement, std::abs(next.probs[i] - current.probs[i]));
        current = next;
        const double next_llv = log_likelihood(stats, current, theta_b, config.lambda);
        out.trace.push_back(next_llv);
        out.iterations = it + 1;
        // Converged once both the LLV improvement and the update itself are
        // below tol; the update bound keeps the returned point a fixed point.
        if (next_llv - llv < config.tol && movement < config.tol) {
            llv = next_llv;
            break;
        }
        llv = next_llv;
    }
    out.theta = current.probs;
    return out;
}

} // namespace

Distribution background_model(const CorpusStats& context_stats) {
    const std::int64_t total = context_stats.total_term_freq();
    if (context_stats.term_freq.empty() || total <= 0)
        throw InputError("context corpus contains no candidate occurrence");
    Distribution dist;
    dist.vocab = context_stats.vocab;
    const double denom = static_cast<double>(total) + static_cast<double>(context_stats.term_freq.size());
    dist.probs.resize(context_stats.term_freq.size());
    for (std::size_t i = 0; i < dist.probs.size(); ++i)
        dist.probs[i] = (static_cast<double>(context_stats.term_freq[i]) + 1.0) / denom;
    return dist;
}

double log_likelihood(const CorpusStats& target_stats, const Distribution& theta_d,
                      const Distribution& theta_b, double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0)) throw InputError("lambda must be in [0, 1)");
    if (theta_d.probs.size() != target_stats.term_freq.size() ||
        theta_b.probs.size() != target_stats.term_freq.size())
        throw InputError("distribution size does not match vocabulary");
    double sum = 0.0;
    for (std::size_t i = 0; i < target_stats.term_freq.size(); ++i) {
        const std::int64_t count = target_stats.term_freq[i];
        if (count == 0) continue;
        const double mix = (1.0 - lambda) * theta_d.probs[i] + lambda * theta_b.probs[i];
        if (mix <= 0.0)
            throw Error("zero-probability observed keyword: " +
                        target_stats.vocab->keyword(i));
        sum += static_cast<double>(count) * std::log(mix);
    }
    return sum;
}

Distribution em_update(const CorpusStats& target_stats, const Distribution& theta_d,
                       const Distribution& theta_b, double lambda) {
    const std::size_t n = theta_d.probs.size();
    std::vector<double> weighted(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double numer = (1.0 - lambda) * theta_d.probs[i];
        const double denom = numer + lambda * theta_b.probs[i];
        const double posterior = denom > 0.0 ? numer / denom : 0.0;
        weighted[i] = static_cast<double>(target_stats.term_freq[i]) * posterior;
        total += weighted[i];
    }
    if (total <= 0.0) throw Error("EM update degenerated: no keyword mass assigned to the target model");
    Distribution next;
    next.vocab = theta_d.vocab;
    next.probs.resize(n);
    for (std::size_t i = 0; i < n; ++i) next.probs[i] = weighted[i] / total;
    return next;
}

EmResult em_estimate(const CorpusStats& target_stats, const Distribution& theta_b,
                     const EmConfig& config) {
    check_config(config);
    if (theta_b.probs.size() != target_stats.term_freq.size())
        throw InputError("background model size does not match vocabulary");
    if (target_stats.total_term_freq() <= 0)
        throw InputError("no candidate occurs in target corpus");

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
    detail::parallel_chunks(outcomes.size(), config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r)
            outcomes[r] = run_restart(target_stats, theta_b, config, static_cast<int>(r));
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < outcomes.size(); ++r) {
        if (outcomes[r].trace.back() > outcomes[best].trace.back()) best = r;
    }

    EmResult result;
    result.restart_final_llvs.reserve(outcomes.size());
    for (const RestartOutcome& o : outcomes) result.restart_final_llvs.push_back(o.trace.back());
    result.theta_d.vocab = target_stats.vocab;
    result.theta_d.probs = std::move(outcomes[best].theta);
    result.llv_trace = std::move(outcomes[best].trace);
    result.final_llv = result.llv_trace.back();
    result.restart_index = static_cast<int>(best);
    result.iterations_used = outcomes[best].iterations;
    return result;
}

} // namespace kwsel
