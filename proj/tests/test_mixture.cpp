#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kwsel/mixture.hpp"
#include "helpers.hpp"

using namespace kwsel;

namespace {

EmConfig quick_config(double lambda, int restarts = 3) {
    EmConfig config;
    config.lambda = lambda;
    config.restarts = restarts;
    config.max_iters = 500;
    return config;
}

Distribution random_background(kwtest::RNG& rng, std::size_t n) {
    std::uniform_real_distribution<double> mass(0.1, 1.0);
    std::vector<double> probs(n);
    double total = 0.0;
    for (double& x : probs) {
        x = mass(rng);
        total += x;
    }
    for (double& x : probs) x /= total;
    return kwtest::make_distribution(kwtest::make_vocab(n), std::move(probs));
}

} // namespace

TEST_CASE("background_model applies add-one smoothing") {
    const auto vocab = kwtest::make_vocab(2);
    const auto b1 = background_model(kwtest::stats_from_counts(vocab, {3, 1}));
    CHECK(b1.probs[0] == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
    CHECK(b1.probs[1] == doctest::Approx(2.0 / 6.0).epsilon(1e-12));

    const auto b2 = background_model(kwtest::stats_from_counts(vocab, {0, 4}));
    CHECK(b2.probs[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(b2.probs[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(b2.probs[0] > 0.0);

    const auto b3 = background_model(kwtest::stats_from_counts(vocab, {2, 2}));
    CHECK(b3.probs[0] == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(background_model(kwtest::stats_from_counts(vocab, {0, 0})), InputError);
}

TEST_CASE("log_likelihood matches the direct formula") {
    const auto vocab = kwtest::make_vocab(2);
    const auto stats = kwtest::stats_from_counts(vocab, {3, 1});
    const auto theta_d = kwtest::make_distribution(vocab, {0.75, 0.25});
    const auto theta_b = kwtest::make_distribution(vocab, {0.8, 0.2});

    const double expected = 3.0 * std::log(0.75) + 1.0 * std::log(0.25);
    CHECK(log_likelihood(stats, theta_d, theta_b, 0.0) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(-2.2493).epsilon(1e-4));

    // Identical components: the mixture collapses to theta_d at any lambda.
    CHECK(log_likelihood(stats, theta_d, theta_d, 0.5) ==
          doctest::Approx(log_likelihood(stats, theta_d, theta_d, 0.0)).epsilon(1e-12));

    CHECK(log_likelihood(kwtest::stats_from_counts(vocab, {0, 0}), theta_d, theta_b, 0.5) == 0.0);

    SUBCASE("zero mixture probability for an observed keyword") {
        const auto zero_d = kwtest::make_distribution(vocab, {0.0, 1.0});
        CHECK_THROWS_WITH_AS(log_likelihood(stats, zero_d, theta_b, 0.0),
                             doctest::Contains("zero-probability observed keyword"), Error);
    }
}

TEST_CASE("em_estimate with lambda 0 is the plain MLE") {
    const auto vocab = kwtest::make_vocab(2);
    const auto stats = kwtest::stats_from_counts(vocab, {3, 1});
    const auto theta_b = kwtest::make_distribution(vocab, {0.8, 0.2});
    const auto result = em_estimate(stats, theta_b, quick_config(0.0));
    CHECK(result.theta_d.probs[0] == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(result.theta_d.probs[1] == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("em_estimate two-keyword stationary point") {
    // d/dp of the mixture LLV vanishes at p = 0.7 for counts (3,1),
    // theta_b = (0.8, 0.2), lambda = 0.5: 1.5(0.6 - 0.5p) = 0.5(0.5p + 0.4).
    const auto vocab = kwtest::make_vocab(2);
    const auto stats = kwtest::stats_from_counts(vocab, {3, 1});
    const auto theta_b = kwtest::make_distribution(vocab, {0.8, 0.2});
    const auto result = em_estimate(stats, theta_b, quick_config(0.5, 5));
    CHECK(result.theta_d.probs[0] == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(result.theta_d.probs[1] == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(result.restart_final_llvs.size() == 5);
    const double winner = *std::max_element(result.restart_final_llvs.begin(),
                                            result.restart_final_llvs.end());
    CHECK(result.final_llv == winner);
}

TEST_CASE("single keyword vocabulary pins theta_d to 1") {
    const auto vocab = kwtest::make_vocab(1);
    const auto stats = kwtest::stats_from_counts(vocab, {7});
    const auto theta_b = kwtest::make_distribution(vocab, {1.0});
    for (const double lambda : {0.0, 0.5, 0.99}) {
        const auto result = em_estimate(stats, theta_b, quick_config(lambda));
        CHECK(result.theta_d.probs == std::vector<double>{1.0});
    }
}

TEST_CASE("em config validation") {
    const auto vocab = kwtest::make_vocab(2);
    const auto stats = kwtest::stats_from_counts(vocab, {3, 1});
    const auto theta_b = kwtest::make_distribution(vocab, {0.8, 0.2});

    EmConfig bad = quick_config(1.0);
    CHECK_THROWS_AS(em_estimate(stats, theta_b, bad), InputError);
    bad = quick_config(0.5);
    bad.tol = 0.0;
    CHECK_THROWS_AS(em_estimate(stats, theta_b, bad), InputError);
    bad = quick_config(0.5);
    bad.restarts = 0;
    CHECK_THROWS_AS(em_estimate(stats, theta_b, bad), InputError);
    CHECK_THROWS_AS(em_estimate(kwtest::stats_from_counts(vocab, {0, 0}), theta_b,
                                quick_config(0.5)),
                    InputError);
}

TEST_CASE("em ascent, normalization, and fixed point on random instances") {
    kwtest::RNG rng(101);
    std::uniform_int_distribution<std::size_t> size(1, 20);
    std::uniform_int_distribution<std::int64_t> count(0, 30);
    std::uniform_real_distribution<double> lam(0.0, 0.99);

    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = size(rng);
        std::vector<std::int64_t> counts(n);
        bool any = false;
        for (auto& c : counts) {
            c = count(rng);
            any = any || c > 0;
        }
        if (!any) counts[0] = 1;

        const auto vocab = kwtest::make_vocab(n);
        const auto stats = kwtest::stats_from_counts(vocab, counts);
        const auto theta_b = random_background(rng, n);
        EmConfig config = quick_config(lam(rng), 2);
        config.seed = 1000 + static_cast<std::uint64_t>(trial);
        const auto result = em_estimate(stats, theta_b, config);

        for (std::size_t it = 1; it < result.llv_trace.size(); ++it)
            CHECK(result.llv_trace[it] >= result.llv_trace[it - 1] - 1e-10);

        double sum = 0.0;
        for (const double p : result.theta_d.probs) {
            CHECK(p >= 0.0);
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

        // Converged runs move less than 10 * tol per entry on one more step.
        if (result.iterations_used < config.max_iters) {
            const auto next = em_update(stats, result.theta_d, theta_b, config.lambda);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(next.probs[i] - result.theta_d.probs[i]) < 10.0 * config.tol);
        }
    }
}

TEST_CASE("theta_d stays normalized through every EM iteration") {
    const auto vocab = kwtest::make_vocab(6);
    const auto stats = kwtest::stats_from_counts(vocab, {9, 3, 0, 5, 1, 2});
    kwtest::RNG rng(55);
    const auto theta_b = random_background(rng, 6);

    Distribution theta = kwtest::make_distribution(vocab, std::vector<double>(6, 1.0 / 6.0));
    for (int it = 0; it < 50; ++it) {
        theta = em_update(stats, theta, theta_b, 0.9);
        double sum = 0.0;
        for (const double p : theta.probs) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("contrast: balanced keywords sink below overrepresented ones as lambda grows") {
    // kw0 is overrepresented in the target; kw1 has equal relative frequency
    // in target and context; fillers keep the corpus realistic.
    const auto vocab = kwtest::make_vocab(4);
    const auto target = kwtest::stats_from_counts(vocab, {30, 50, 15, 5});
    const auto context = kwtest::stats_from_counts(vocab, {5, 50, 30, 15});
    const auto theta_b = background_model(context);

    for (const double lambda : {0.5, 0.9, 0.99}) {
        const auto result = em_estimate(target, theta_b, quick_config(lambda, 3));
        CHECK(result.theta_d.probs[0] > result.theta_d.probs[1]);
    }

    // Sanity: raw frequency ranks them the other way.
    const auto rf = relative_frequency(target);
    CHECK(rf.probs[1] > rf.probs[0]);
}
