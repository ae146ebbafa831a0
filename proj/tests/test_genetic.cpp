#include "ghacpp/genetic.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"

using namespace ghacpp;

namespace {

std::set<LatticePoint> to_set(const std::vector<LatticePoint>& v) {
    return {v.begin(), v.end()};
}

/// Common unused 8-neighbours of two points, enumerated the dumb way.
std::set<LatticePoint> common_free_neighbours(const Chromosome& c, const LatticePoint& a,
                                              const LatticePoint& b) {
    std::set<LatticePoint> out;
    for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            LatticePoint q{a.i + di, a.j + dj};
            if (!adjacent8(q, b)) continue;
            if (std::find(c.begin(), c.end(), q) != c.end()) continue;
            out.insert(q);
        }
    }
    return out;
}

/// Grows a random valid chromosome by walking unused neighbours.
Chromosome random_chromosome(Rng& rng, int max_points) {
    Chromosome c{{static_cast<int>(rng.uniform_index(21)) - 10,
                  static_cast<int>(rng.uniform_index(21)) - 10}};
    int target = 1 + static_cast<int>(rng.uniform_index(static_cast<size_t>(max_points)));
    while (static_cast<int>(c.size()) < target) {
        std::vector<LatticePoint> cands;
        for (int d = 0; d < 8; ++d) {
            LatticePoint q{c.back().i + kDir8DX[d], c.back().j + kDir8DY[d]};
            if (std::find(c.begin(), c.end(), q) == c.end()) cands.push_back(q);
        }
        if (cands.empty()) break;
        c.push_back(cands[rng.uniform_index(cands.size())]);
    }
    return c;
}

} // namespace

TEST_CASE("chromosome validity rules") {
    CHECK(chromosome_valid({{0, 0}}, 5));
    CHECK(chromosome_valid({{0, 0}, {1, 1}, {1, 2}}, 5));
    CHECK(!chromosome_valid({}, 5));
    CHECK(!chromosome_valid({{0, 0}, {2, 0}}, 5));             // gap
    CHECK(!chromosome_valid({{0, 0}, {1, 0}, {0, 0}}, 5));     // repeat
    CHECK(!chromosome_valid({{0, 0}, {0, 1}, {0, 2}}, 2));     // too long
    CHECK(!chromosome_valid({{0, 0}, {0, 0}}, 5));             // repeat and not adjacent
}

TEST_CASE("insertion candidates match brute force for every ordered neighbour pair") {
    // All 16 ordered (first, second) pairs of 8-adjacent points, both as a
    // middle insertion and after the tail.
    for (int d = 0; d < 8; ++d) {
        LatticePoint a{0, 0};
        LatticePoint b{kDir8DX[d], kDir8DY[d]};
        for (const Chromosome& c : {Chromosome{a, b}, Chromosome{b, a}}) {
            std::set<LatticePoint> mid = to_set(add_point_candidates(c, 1));
            CHECK(mid == common_free_neighbours(c, c[0], c[1]));

            std::set<LatticePoint> tail = to_set(add_point_candidates(c, 2));
            std::set<LatticePoint> expect;
            for (int e = 0; e < 8; ++e) {
                LatticePoint q{c[1].i + kDir8DX[e], c[1].j + kDir8DY[e]};
                if (std::find(c.begin(), c.end(), q) == c.end()) expect.insert(q);
            }
            CHECK(tail == expect);
        }
    }
}

TEST_CASE("cardinal and diagonal pairs have the expected candidate counts") {
    // Two points one cardinal step apart share 4 common neighbours; one
    // diagonal step apart they share 2.
    Chromosome cardinal{{0, 0}, {1, 0}};
    CHECK(add_point_candidates(cardinal, 1).size() == 4);
    Chromosome diagonal{{0, 0}, {1, 1}};
    CHECK(add_point_candidates(diagonal, 1).size() == 2);
}

TEST_CASE("mutations preserve chromosome invariants") {
    Rng rng(11);
    const int max_points = 6;
    for (int iter = 0; iter < 20000; ++iter) {
        Chromosome c = random_chromosome(rng, max_points);
        REQUIRE(chromosome_valid(c, max_points));

        Chromosome s = random_sample_mutation(c, 4, rng);
        CHECK(chromosome_valid(s, 5));
        CHECK(s.front() == c.front());
        CHECK(s.size() <= 5);

        Chromosome a = add_point_mutation(c, max_points, rng);
        CHECK(chromosome_valid(a, max_points));
        CHECK(a.front() == c.front());
        CHECK(a.size() >= c.size());
        CHECK(a.size() <= c.size() + 1);

        Chromosome r = remove_point_mutation(c, rng);
        CHECK(chromosome_valid(r, max_points));
        CHECK(r.front() == c.front());
        CHECK(r.size() + 1 >= c.size());
        CHECK(!r.empty());
    }
}

TEST_CASE("the add mutation never grows past max_points") {
    Rng rng(3);
    Chromosome c{{0, 0}, {1, 0}, {2, 0}};
    for (int k = 0; k < 100; ++k) {
        c = add_point_mutation(c, 3, rng);
        CHECK(c.size() == 3);
    }
}

TEST_CASE("interior removal requires the neighbours to close ranks") {
    Rng rng(5);
    // (0,0) and (2,0) are two apart: removing (1,0) would break the chain, so
    // any draw that picks it must return the input unchanged.
    Chromosome brittle{{0, 0}, {1, 0}, {2, 0}};
    for (int k = 0; k < 50; ++k) {
        Chromosome r = remove_point_mutation(brittle, rng);
        CHECK((r == brittle || r == Chromosome{{0, 0}, {1, 0}}));
    }
    // Here the flanks touch diagonally, so the middle point may go.
    Chromosome closable{{0, 0}, {1, 0}, {1, 1}};
    bool removed_middle = false;
    for (int k = 0; k < 50; ++k) {
        Chromosome r = remove_point_mutation(closable, rng);
        if (r == Chromosome{{0, 0}, {1, 1}}) removed_middle = true;
    }
    CHECK(removed_middle);
}

TEST_CASE("single points and pairs survive removal") {
    Rng rng(9);
    Chromosome single{{3, 3}};
    CHECK(remove_point_mutation(single, rng) == single);
    Chromosome pair{{3, 3}, {4, 4}};
    CHECK(remove_point_mutation(pair, rng) == Chromosome{{3, 3}});
}

TEST_CASE("the sample mutation regrows from the anchor point") {
    Rng rng(17);
    Chromosome c{{0, 0}, {1, 0}, {2, 0}, {2, 1}};
    for (int k = 0; k < 1000; ++k) {
        Chromosome s = random_sample_mutation(c, 3, rng);
        REQUIRE(s.front() == LatticePoint{0, 0});
        REQUIRE(s.size() == 4); // open lattice: the walk never stalls early
        CHECK(chromosome_valid(s, 4));
    }
}

TEST_CASE("identical seeds evolve identical results") {
    GaParams params;
    params.n = 10;
    params.m = 40;
    params.t = 5;
    CostFn fn = [](const Chromosome& c) {
        double v = 0.0;
        for (const LatticePoint& p : c) v += 0.01 * p.i - 0.02 * p.j;
        return v;
    };
    Rng r1(123), r2(123), r3(124);
    EvolveResult a = evolve_mini_trajectory({0, 0}, params, r1, fn);
    EvolveResult b = evolve_mini_trajectory({0, 0}, params, r2, fn);
    CHECK(a.best == b.best);
    CHECK(a.best_cost == b.best_cost);
    CHECK(a.best_cost_history == b.best_cost_history);
    EvolveResult c = evolve_mini_trajectory({0, 0}, params, r3, fn);
    CHECK(chromosome_valid(c.best, params.max_points));
}

TEST_CASE("evolution tracks the cost gradient") {
    GaParams params;
    params.n = 20;
    params.m = 60;
    params.t = 10;
    params.max_points = 5;
    Rng rng(7);
    // Rewarding length drives the best chromosome to max_points.
    CostFn longer = [](const Chromosome& c) { return -static_cast<double>(c.size()); };
    EvolveResult grow = evolve_mini_trajectory({0, 0}, params, rng, longer);
    CHECK(grow.best.size() == 5);
    CHECK(grow.best_cost == -5.0);

    // Penalizing length shrinks it back to the bare anchor.
    CostFn shorter = [](const Chromosome& c) { return static_cast<double>(c.size()); };
    EvolveResult shrink = evolve_mini_trajectory({0, 0}, params, rng, shorter);
    CHECK(shrink.best == Chromosome{{0, 0}});
    CHECK(shrink.best_cost == 1.0);
}

TEST_CASE("best cost never worsens between generations") {
    GaParams params;
    params.n = 15;
    params.m = 50;
    params.t = 50; // no early exit
    Rng rng(31);
    CostFn fn = [](const Chromosome& c) {
        double v = 0.0;
        for (const LatticePoint& p : c) v += std::abs(p.i - 2) + std::abs(p.j + 1);
        return v / static_cast<double>(c.size());
    };
    EvolveResult r = evolve_mini_trajectory({0, 0}, params, rng, fn);
    for (size_t g = 1; g < r.best_cost_history.size(); ++g) {
        CHECK(r.best_cost_history[g] <= r.best_cost_history[g - 1]);
    }
}

TEST_CASE("stable best sequences stop the search early") {
    GaParams params;
    params.n = 8;
    params.m = 500;
    params.t = 4;
    Rng rng(2);
    CostFn fn = [](const Chromosome& c) { return static_cast<double>(c.size()); };
    EvolveResult r = evolve_mini_trajectory({0, 0}, params, rng, fn);
    CHECK(r.generations < 500);
    CHECK(r.best == Chromosome{{0, 0}});
}
