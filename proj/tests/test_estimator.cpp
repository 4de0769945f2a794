#include "doctest.h"

#include <cmath>
#include <optional>
#include <set>

#include "mimosim/channel.hpp"
#include "mimosim/estimator.hpp"
#include "mimosim/kernels.hpp"

using namespace mimosim;

namespace {

CxMatrix random_channel(std::size_t m, std::size_t k, double beta, std::uint64_t key) {
    SeededRng rng(key);
    auto h = sample_fast_fading(m, k, rng);
    return compose_channel(h, LargeScale{std::vector<double>(k, beta)}).entries;
}

// Brute-force Eq-4 sum, independent of the kernel-backed implementation.
CxMatrix naive_pilot_block(const std::vector<CellPilotLoad>& cells, const PilotBook& book,
                           double pu) {
    const std::size_t m = cells.front().channel->rows();
    const std::size_t tau = static_cast<std::size_t>(book.tau());
    CxMatrix y(m, tau);
    const double amp = std::sqrt(tau * pu);
    for (const auto& cell : cells) {
        for (std::size_t k = 0; k < cell.channel->cols(); ++k) {
            if (!cell.mask->bits[k]) continue;
            const cxd* seq = book.sequence((*cell.pilot_ids)[k]);
            for (std::size_t t = 0; t < tau; ++t) {
                for (std::size_t r = 0; r < m; ++r) {
                    y(r, t) += amp * (*cell.channel)(r, k) * seq[t];
                }
            }
        }
    }
    return y;
}

double max_rel_err(const CxVector& got, const CxVector& want) {
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        worst = std::max(worst, std::abs(got[i] - want[i]) / (1e-300 + std::abs(want[i])));
    }
    return worst;
}

}  // namespace

TEST_CASE("pilot book is orthonormal") {
    const PilotBook book(30, 30);
    for (int p = 0; p < 30; ++p) {
        for (int q = 0; q < 30; ++q) {
            const cxd ip = kernels::dotc(book.sequence(p), book.sequence(q), 30);
            CHECK(std::abs(ip - (p == q ? cxd{1, 0} : cxd{0, 0})) < 1e-12);
        }
    }
    CHECK_THROWS_AS(PilotBook(8, 9), EstimatorError);
    CHECK_THROWS_AS(book.sequence(30), EstimatorError);
}

TEST_CASE("receive_pilots: nothing transmitted, single source, contaminated sum") {
    const std::size_t m = 24;
    const PilotBook book(8, 8);
    const double pu = 1.7;

    auto g1 = random_channel(m, 2, 1.0, 101);
    auto g2 = random_channel(m, 2, 0.3, 202);
    SparsityMask zero{{0, 0}}, all{{1, 1}}, first{{1, 0}};
    std::vector<int> pilots{3, 5};

    // all masks zero, no noise: zero block
    std::vector<CellPilotLoad> silent{{&g1, &zero, &pilots}};
    const auto yz = receive_pilots(silent, book, pu, nullptr);
    for (std::size_t i = 0; i < yz.samples.size(); ++i) {
        CHECK(yz.samples.data()[i] == cxd{0, 0});
    }

    // one user: rank-1 block sqrt(tau*Pu) g x^T
    std::vector<CellPilotLoad> one{{&g1, &first, &pilots}};
    const auto y1 = receive_pilots(one, book, pu, nullptr);
    const double amp = std::sqrt(8.0 * pu);
    const cxd* seq = book.sequence(3);
    for (std::size_t t = 0; t < 8; ++t) {
        for (std::size_t r = 0; r < m; ++r) {
            CHECK(std::abs(y1.samples(r, t) - amp * g1(r, 0) * seq[t]) < 1e-12);
        }
    }

    // two cells on the same pilots: matches the brute-force double sum
    std::vector<CellPilotLoad> both{{&g1, &all, &pilots}, {&g2, &all, &pilots}};
    const auto y2 = receive_pilots(both, book, pu, nullptr);
    const auto want = naive_pilot_block(both, book, pu);
    for (std::size_t i = 0; i < y2.samples.size(); ++i) {
        CHECK(std::abs(y2.samples.data()[i] - want.data()[i]) < 1e-10);
    }
}

TEST_CASE("receive_pilots is linear in each channel") {
    const std::size_t m = 16;
    const PilotBook book(4, 4);
    auto g = random_channel(m, 1, 1.0, 7);
    auto g2 = g;
    for (std::size_t i = 0; i < g2.size(); ++i) g2.data()[i] *= 2.0;
    SparsityMask on{{1}};
    std::vector<int> pilots{0};

    std::vector<CellPilotLoad> a{{&g, &on, &pilots}};
    std::vector<CellPilotLoad> b{{&g2, &on, &pilots}};
    const auto ya = receive_pilots(a, book, 1.0, nullptr);
    const auto yb = receive_pilots(b, book, 1.0, nullptr);
    for (std::size_t i = 0; i < ya.samples.size(); ++i) {
        CHECK(std::abs(yb.samples.data()[i] - 2.0 * ya.samples.data()[i]) < 1e-12);
    }
}

TEST_CASE("ls_estimate recovers channels exactly without noise") {
    const std::size_t m = 64;
    const int tau = 12;
    const double pu = 0.8;
    const PilotBook book(tau, tau);
    auto g1 = random_channel(m, 1, 1.0, 11);
    auto g2 = random_channel(m, 1, 0.3, 22);
    SparsityMask on{{1}};
    std::vector<int> pilots{4};
    const double amp = std::sqrt(tau * pu);

    // single cell
    std::vector<CellPilotLoad> one{{&g1, &on, &pilots}};
    auto est = ls_estimate(receive_pilots(one, book, pu, nullptr), book, {4});
    CxVector want(m);
    for (std::size_t r = 0; r < m; ++r) want[r] = amp * g1(r, 0);
    CHECK(max_rel_err(est[0], want) < 1e-9);

    // two cells sharing the pilot: estimate is the channel sum
    std::vector<CellPilotLoad> two{{&g1, &on, &pilots}, {&g2, &on, &pilots}};
    est = ls_estimate(receive_pilots(two, book, pu, nullptr), book, {4});
    for (std::size_t r = 0; r < m; ++r) want[r] = amp * (g1(r, 0) + g2(r, 0));
    CHECK(max_rel_err(est[0], want) < 1e-9);

    CHECK_THROWS_AS(ls_estimate(receive_pilots(one, book, pu, nullptr), book, {tau}),
                    EstimatorError);
}

TEST_CASE("projected noise keeps unit variance") {
    const std::size_t m = 10000;
    const PilotBook book(16, 16);
    CxMatrix empty(m, 1);
    SparsityMask off{{0}};
    std::vector<int> pilots{0};
    std::vector<CellPilotLoad> cells{{&empty, &off, &pilots}};
    SeededRng noise(909);
    const auto block = receive_pilots(cells, book, 1.0, &noise);
    const auto est = ls_estimate(block, book, {2});
    const double var = kernels::norm_sq(est[0].data(), m) / static_cast<double>(m);
    CHECK(var > 0.9);
    CHECK(var < 1.1);
}

TEST_CASE("cache refresh and aging") {
    CsiCache cache(3);
    std::vector<std::optional<CxVector>> fresh(3);
    fresh[0] = CxVector{{1, 0}};
    fresh[1] = CxVector{{2, 0}};
    fresh[2] = CxVector{{3, 0}};
    update_cache(cache, fresh, SparsityMask{{1, 1, 1}});
    for (const auto& u : cache.users) {
        CHECK(u.age == 0);
        CHECK(u.valid);
    }

    std::vector<std::optional<CxVector>> none(3);
    update_cache(cache, none, SparsityMask{{0, 0, 0}});
    for (const auto& u : cache.users) CHECK(u.age == 1);

    // estimate for a silent user is a consistency error
    std::vector<std::optional<CxVector>> bad(3);
    bad[1] = CxVector{{9, 0}};
    CHECK_THROWS_AS(update_cache(cache, bad, SparsityMask{{0, 0, 0}}), EstimatorError);
    // missing estimate for an uploading user too
    CHECK_THROWS_AS(update_cache(cache, none, SparsityMask{{1, 0, 0}}), EstimatorError);
}

TEST_CASE("ages cycle through the class period and never reach class_n") {
    SystemConfig cfg;
    cfg.num_cells = 1;
    cfg.num_users = 3;
    const auto plan = make_plan(cfg, {3, 3, 3});
    CsiCache cache(3);
    for (std::uint64_t t = 0; t < 9; ++t) {
        const auto mask = sparsity_mask(plan, 0, t);
        std::vector<std::optional<CxVector>> fresh(3);
        for (std::size_t k = 0; k < 3; ++k) {
            if (mask.bits[k]) fresh[k] = CxVector{{static_cast<double>(k), 0}};
        }
        update_cache(cache, fresh, mask);
        if (t >= 2) {
            std::set<int> ages;
            for (const auto& u : cache.users) {
                CHECK(u.age < 3);
                ages.insert(u.age);
            }
            CHECK(ages == std::set<int>{0, 1, 2});
        }
    }
}

TEST_CASE("precoder is the conjugate cache, fresh plus stale complements") {
    CsiCache cache(2);
    std::vector<std::optional<CxVector>> fresh(2);
    fresh[0] = CxVector{{1, 0}, {2, 0}};
    fresh[1] = CxVector{{0, 1}, {0, -3}};
    update_cache(cache, fresh, SparsityMask{{1, 1}});

    auto p = precode_mrt(cache);
    CHECK(p(0, 0) == cxd{1, 0});   // real cache passes through
    CHECK(p(1, 0) == cxd{2, 0});
    CHECK(p(0, 1) == cxd{0, -1});  // i g -> -i g
    CHECK(p(1, 1) == cxd{0, 3});

    // stale refresh for user 0 only; user 1 keeps the old estimate
    std::vector<std::optional<CxVector>> partial(2);
    partial[0] = CxVector{{5, 5}, {6, -6}};
    update_cache(cache, partial, SparsityMask{{1, 0}});
    p = precode_mrt(cache);

    // oracle: build fresh-only and stale-only complements separately and add
    CxMatrix fresh_part(2, 2), stale_part(2, 2);
    fresh_part(0, 0) = std::conj(cxd{5, 5});
    fresh_part(1, 0) = std::conj(cxd{6, -6});
    stale_part(0, 1) = std::conj(cxd{0, 1});
    stale_part(1, 1) = std::conj(cxd{0, -3});
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            CHECK(p(r, c) == fresh_part(r, c) + stale_part(r, c));
        }
    }

    CsiCache cold(1);
    CHECK_THROWS_AS(precode_mrt(cold), EstimatorError);
}

TEST_CASE("downlink zero symbols yield pure noise") {
    const std::size_t m = 8;
    auto g = random_channel(m, 2, 1.0, 33);
    CxMatrix p(m, 2);
    std::vector<CxVector> symbols{CxVector(2, cxd{0, 0})};
    std::vector<std::vector<const CxMatrix*>> channels{{&g}};
    std::vector<const CxMatrix*> precoders{&p};

    const auto quiet = downlink_receive(channels, precoders, symbols, 1.0, nullptr);
    for (const auto& s : quiet[0]) CHECK(s == cxd{0, 0});

    SeededRng noise(4);
    const auto noisy = downlink_receive(channels, precoders, symbols, 1.0, &noise);
    SeededRng again(4);
    for (const auto& s : noisy[0]) CHECK(s == again.next_cn01());
}

TEST_CASE("single-cell downlink converges to beta * x at large M") {
    const std::size_t m = 10000;
    const int tau = 8;
    const double pu = 1.0, pd = 1.0, beta = 0.7;
    const PilotBook book(tau, tau);
    SparsityMask on{{1}};
    std::vector<int> pilots{0};
    const cxd x{0.6, -0.8};

    double rel_acc = 0.0;
    const int trials = 100;
    cxd mean_sample{0, 0};
    for (int trial = 0; trial < trials; ++trial) {
        auto g = random_channel(m, 1, beta, 1000 + trial);
        std::vector<CellPilotLoad> cells{{&g, &on, &pilots}};
        auto est = ls_estimate(receive_pilots(cells, book, pu, nullptr), book, {0});
        CsiCache cache(1);
        std::vector<std::optional<CxVector>> fresh(1);
        fresh[0] = std::move(est[0]);
        update_cache(cache, fresh, on);
        const auto p = precode_mrt(cache);

        std::vector<std::vector<const CxMatrix*>> channels{{&g}};
        std::vector<const CxMatrix*> precoders{&p};
        std::vector<CxVector> symbols{CxVector{x}};
        const auto y = downlink_receive(channels, precoders, symbols, pd, nullptr);
        const cxd normalized = y[0][0] / (static_cast<double>(m) * std::sqrt(tau * pu * pd));
        mean_sample += normalized / static_cast<double>(trials);
        rel_acc += std::abs(normalized - beta * x) / std::abs(beta * x) / trials;
    }
    CHECK(std::abs(mean_sample - beta * x) / std::abs(beta * x) < 0.05);
    CHECK(rel_acc < 0.1);  // per-trial fluctuation is O(1/sqrt(M))
}

TEST_CASE("stale CSI under a static channel is bit-identical to fresh CSI") {
    const std::size_t m = 32;
    const int tau = 4;
    const PilotBook book(tau, tau);
    auto g = random_channel(m, 3, 1.0, 55);
    std::vector<int> pilots{0, 1, 2};

    // fresh path: everyone estimated this slot
    SparsityMask all{{1, 1, 1}};
    std::vector<CellPilotLoad> cells{{&g, &all, &pilots}};
    auto est = ls_estimate(receive_pilots(cells, book, 1.0, nullptr), book, pilots);
    CsiCache fresh_cache(3);
    std::vector<std::optional<CxVector>> fresh(3);
    for (int k = 0; k < 3; ++k) fresh[k] = est[k];
    update_cache(fresh_cache, fresh, all);

    // stale path: user 1 and 2 estimated earlier, then aged twice
    CsiCache stale_cache(3);
    update_cache(stale_cache, fresh, all);
    std::vector<std::optional<CxVector>> only0(3);
    only0[0] = est[0];
    update_cache(stale_cache, only0, SparsityMask{{1, 0, 0}});
    update_cache(stale_cache, only0, SparsityMask{{1, 0, 0}});
    CHECK(stale_cache.users[1].age == 2);

    const auto pf = precode_mrt(fresh_cache);
    const auto ps = precode_mrt(stale_cache);
    std::vector<std::vector<const CxMatrix*>> channels{{&g}};
    std::vector<CxVector> symbols{CxVector{{1, 0}, {0, 1}, {-1, 0}}};

    SeededRng n1(123), n2(123);
    std::vector<const CxMatrix*> v1{&pf}, v2{&ps};
    const auto y_fresh = downlink_receive(channels, v1, symbols, 2.0, &n1);
    const auto y_stale = downlink_receive(channels, v2, symbols, 2.0, &n2);
    for (std::size_t k = 0; k < 3; ++k) CHECK(y_fresh[0][k] == y_stale[0][k]);
}
