#include "doctest.h"

#include <cmath>
#include <algorithm>
#include <random>

#include "orchestra/grpo.hpp"

using namespace orchestra;

namespace {

Trajectory answered(std::string answer = "x")
{
    Trajectory t;
    Turn turn;
    turn.final_answer = std::move(answer);
    t.turns.push_back(turn);
    return t;
}

Trajectory violating()
{
    Trajectory t;
    Turn turn;
    turn.format_violation = "junk";
    t.turns.push_back(turn);
    return t;
}

}  // namespace

TEST_CASE("group_advantages hand example")
{
    std::vector<double> r{1, 0, 0, 1};
    auto g = group_advantages(r);
    CHECK(g.mean == 0.5);
    CHECK(g.std == 0.5);
    CHECK(g.advantages == std::vector<double>{1, -1, -1, 1});
    CHECK_FALSE(g.degenerate);
}

TEST_CASE("group_advantages degenerate and undersized")
{
    std::vector<double> same{0.3, 0.3, 0.3};
    auto g = group_advantages(same);
    CHECK(g.degenerate);
    CHECK(g.advantages == std::vector<double>{0, 0, 0});
    std::vector<double> one{1};
    CHECK_THROWS_AS(group_advantages(one), PreconditionError);
}

TEST_CASE("advantages are centred, unit-scale and invariant to affine maps")
{
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 500; ++rep) {
        std::size_t n = 2 + uniform_index(rng, 15);
        std::vector<double> r(n);
        for (auto& x : r)
            x = 3 * unit_uniform(rng);
        auto g = group_advantages(r);
        if (g.degenerate)
            continue;
        double sum = 0, sq = 0;
        for (double a : g.advantages) {
            sum += a;
            sq += a * a;
        }
        CHECK(std::abs(sum) < 1e-9 * static_cast<double>(n));
        CHECK(std::sqrt(sq / static_cast<double>(n)) == doctest::Approx(1.0).epsilon(1e-9));
        double c = 0.01 + 5 * unit_uniform(rng), b = unit_uniform(rng) - 0.5;
        auto moved = r;
        for (auto& x : moved)
            x = c * x + b;
        auto h = group_advantages(moved);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(h.advantages[i] == doctest::Approx(g.advantages[i]).epsilon(1e-9));
    }
}

TEST_CASE("homogeneity filter")
{
    std::vector<Trajectory> four(4, answered());
    std::vector<double> flat{0.5, 0.5, 0.5, 0.55};
    auto d = apply_filters(four, flat);
    CHECK(d.surviving_std == doctest::Approx(0.0216506).epsilon(1e-5));
    CHECK(d.group_dropped);
    for (auto r : d.reasons)
        CHECK(r == FilterReason::homogeneity);

    std::vector<Trajectory> two(2, answered());
    std::vector<double> spread{0, 1};
    auto keep = apply_filters(two, spread);
    CHECK_FALSE(keep.group_dropped);
    CHECK(keep.kept == std::vector<bool>{true, true});
}

TEST_CASE("identical trajectories are always filtered")
{
    std::vector<Trajectory> group(8, answered());
    std::vector<double> r(8, 0.7);
    CHECK(apply_filters(group, r).group_dropped);
}

TEST_CASE("per-trajectory filters run before the group statistics")
{
    std::vector<Trajectory> group{answered(), violating(), answered(), Trajectory{}};
    std::vector<double> r{0, 5, 1, 9};
    auto d = apply_filters(group, r);
    CHECK_FALSE(d.group_dropped);
    CHECK(d.kept == std::vector<bool>{true, false, true, false});
    CHECK(d.reasons[1] == FilterReason::format);
    CHECK(d.reasons[3] == FilterReason::invalid);
    CHECK(d.surviving_std == 0.5);

    // one survivor is no spread at all
    std::vector<Trajectory> lone{answered(), violating()};
    std::vector<double> r2{0, 1};
    CHECK(apply_filters(lone, r2).group_dropped);
}

TEST_CASE("clipped objective examples")
{
    std::vector<double> lp{-1.0, -2.0, -0.5};
    std::vector<double> adv{0.5, -1.0, 2.0};
    auto same = clipped_objective(lp, lp, adv);
    CHECK(same.value == doctest::Approx((0.5 - 1.0 + 2.0) / 3));
    CHECK(same.clip_fraction == 0.0);

    std::vector<double> old{0.0}, doubled{std::log(2.0)}, pos{1.5}, neg{-1.5};
    auto c = clipped_objective(old, doubled, pos, 0.2);
    CHECK(c.value == doctest::Approx(1.2 * 1.5));
    CHECK(c.clipped[0]);
    // negative advantage takes the unclipped (more pessimistic) branch
    auto n = clipped_objective(old, doubled, neg, 0.2);
    CHECK(n.value == doctest::Approx(-3.0));
    CHECK_FALSE(n.clipped[0]);

    std::vector<double> zeros(3, 0.0);
    CHECK(clipped_objective(lp, zeros, zeros).value == 0.0);

    std::vector<double> bad{std::nan("")};
    CHECK_THROWS_AS(clipped_objective(bad, old, pos), PreconditionError);
    CHECK_THROWS_AS(clipped_objective(old, old, pos, 0.0), PreconditionError);
}

TEST_CASE("every clipped term is bounded by (1+eps)|A|")
{
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 300; ++rep) {
        std::size_t n = 1 + uniform_index(rng, 10);
        std::vector<double> o(n), nw(n), a(n);
        for (std::size_t i = 0; i < n; ++i) {
            o[i] = -5 * unit_uniform(rng);
            nw[i] = -5 * unit_uniform(rng);
            a[i] = 4 * unit_uniform(rng) - 2;
        }
        double eps = 0.05 + 0.4 * unit_uniform(rng);
        auto out = clipped_objective(o, nw, a, eps);
        for (std::size_t i = 0; i < n; ++i) {
            // an upper bound only: with A < 0 and a large ratio the term is r*A, unbounded below
            CHECK(out.terms[i] <= (1 + eps) * std::abs(a[i]) + 1e-12);
            CHECK(out.terms[i] == std::min(out.ratios[i] * a[i], std::clamp(out.ratios[i], 1 - eps, 1 + eps) * a[i]));
        }
        CHECK(out.clip_fraction >= 0.0);
        CHECK(out.clip_fraction <= 1.0);
    }
}
