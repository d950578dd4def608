#ifndef KWSEL_SRC_GREEDY_ENGINE_HPP_
#define KWSEL_SRC_GREEDY_ENGINE_HPP_

#include <cstdint>
#include <queue>
#include <vector>

#include "parallel.hpp"

namespace kwsel::detail {

struct GreedyRun {
    std::vector<std::size_t> order;
    std::vector<double> gains; // committed gain per step
    std::int64_t evaluations = 0;
};

// Shared greedy machinery. GainFn(candidate) must be a pure read of the
// committed state; CommitFn(candidate) advances it. Both variants break
// ties by ascending candidate index, so they pick identical sequences
// whenever the gains are submodular.

template <class GainFn, class CommitFn>
GreedyRun naive_greedy(std::size_t n, std::size_t k, GainFn&& gain, CommitFn&& commit,
                       unsigned threads = 1) {
    GreedyRun run;
    std::vector<char> selected(n, 0);
    std::vector<double> gains(n, 0.0);
    for (std::size_t step = 0; step < k; ++step) {
        parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i)
                if (!selected[i]) gains[i] = gain(i);
        });
        run.evaluations += static_cast<std::int64_t>(n - step);
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (selected[i]) continue;
            if (best == n || gains[i] > gains[best]) best = i;
        }
        selected[best] = 1;
        commit(best);
        run.order.push_back(best);
        run.gains.push_back(gains[best]);
    }
    return run;
}

template <class GainFn, class CommitFn>
GreedyRun lazy_greedy(std::size_t n, std::size_t k, GainFn&& gain, CommitFn&& commit,
                      unsigned threads = 1) {
    struct Item {
        double gain;
        std::size_t index;
        std::size_t computed_at; // |S| when the gain was evaluated
    };
    struct Less {
        bool operator()(const Item& a, const Item& b) const {
            if (a.gain != b.gain) return a.gain < b.gain;
            return a.index > b.index; // top of the queue = smallest index on ties
        }
    };

    GreedyRun run;
    std::vector<double> init(n, 0.0);
    parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) init[i] = gain(i);
    });
    run.evaluations += static_cast<std::int64_t>(n);

    std::priority_queue<Item, std::vector<Item>, Less> queue;
    for (std::size_t i = 0; i < n; ++i) queue.push({init[i], i, 0});

    while (run.order.size() < k && !queue.empty()) {
        Item top = queue.top();
        queue.pop();
        if (top.computed_at == run.order.size()) {
            commit(top.index);
            run.order.push_back(top.index);
            run.gains.push_back(top.gain);
        } else {
            top.gain = gain(top.index);
            top.computed_at = run.order.size();
            run.evaluations += 1;
            queue.push(top);
        }
    }
    return run;
}

} // namespace kwsel::detail

#endif // KWSEL_SRC_GREEDY_ENGINE_HPP_
