#include "ghacpp/cost.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ghacpp/rng.hpp"

using namespace ghacpp;

namespace {

/// A compact world-state fixture with direct control over every grid.
struct StateFixture {
    KnownMaps maps;

    explicit StateFixture(int w = 30, int h = 30) {
        maps.known = Grid<Known>(w, h, 0.05, Known::Free);
        maps.disinfected = Grid<uint8_t>(w, h, 0.05, 0);
        maps.inflation_radius = 0.1;
        maps.lattice.origin = {w * 0.05 / 2.0, h * 0.05 / 2.0};
        maps.lattice.spacing = 0.15;
        refresh();
    }

    void refresh() { maps.cspace = inflate(maps.known, maps.inflation_radius); }
};

StateFixture random_state(Rng& rng) {
    StateFixture fx;
    int w = fx.maps.known.width(), h = fx.maps.known.height();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double u = rng.uniform_real();
            if (u < 0.03) fx.maps.known.at(x, y) = Known::Occupied;
            else if (u < 0.10) fx.maps.known.at(x, y) = Known::Unknown;
            else if (u < 0.45) fx.maps.disinfected.at(x, y) = 1;
        }
    }
    int n_visited = static_cast<int>(rng.uniform_index(12));
    for (int k = 0; k < n_visited; ++k) {
        fx.maps.visited.insert({static_cast<int>(rng.uniform_index(9)) - 4,
                                static_cast<int>(rng.uniform_index(9)) - 4});
    }
    if (rng.bernoulli(0.5)) {
        SensedHuman sh;
        sh.seen = true;
        sh.sigma = 0.5 + rng.uniform_real();
        int n_pts = 1 + static_cast<int>(rng.uniform_index(4));
        for (int k = 0; k < n_pts; ++k) {
            sh.points.push_back({1.5 * rng.uniform_real(), 1.5 * rng.uniform_real()});
        }
        fx.maps.humans.push_back(sh);
    }
    fx.refresh();
    return fx;
}

Chromosome random_chromosome(Rng& rng) {
    Chromosome c{{static_cast<int>(rng.uniform_index(7)) - 3,
                  static_cast<int>(rng.uniform_index(7)) - 3}};
    int target = 1 + static_cast<int>(rng.uniform_index(5));
    while (static_cast<int>(c.size()) < target) {
        std::vector<LatticePoint> cands;
        for (int d = 0; d < 8; ++d) {
            LatticePoint q{c.back().i + kDir8DX[d], c.back().j + kDir8DY[d]};
            if (std::find(c.begin(), c.end(), q) == c.end()) cands.push_back(q);
        }
        c.push_back(cands[rng.uniform_index(cands.size())]);
    }
    return c;
}

CostParams default_params() {
    return CostParams{};
}

} // namespace

TEST_CASE("interpolation spaces poses along each segment without duplicates") {
    LatticeFrame frame{{0.0, 0.0}, 0.5};
    std::vector<Pose> one = interpolate({{0, 0}}, frame, 0.05);
    REQUIRE(one.size() == 1);
    CHECK(one[0].heading == 0.0);

    // One axis segment of 0.5 m at 0.05 m steps: start plus 10 samples.
    std::vector<Pose> axis = interpolate({{0, 0}, {1, 0}}, frame, 0.05);
    REQUIRE(axis.size() == 11);
    CHECK(axis.front().x == 0.0);
    CHECK(axis.back().x == doctest::Approx(0.5).epsilon(1e-12));
    for (const Pose& p : axis) CHECK(p.heading == 0.0);

    // A diagonal leg is longer, so it gets more samples.
    std::vector<Pose> two = interpolate({{0, 0}, {1, 0}, {2, 1}}, frame, 0.05);
    REQUIRE(two.size() == 11 + 15);
    CHECK(two[0].heading == 0.0);
    CHECK(two[10].heading == 0.0);                  // arrival heading of leg one
    CHECK(two[11].heading == doctest::Approx(kPi / 4.0)); // leg two
    CHECK(two.back().x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(two.back().y == doctest::Approx(0.5).epsilon(1e-12));

    // Consecutive samples never exceed the step by more than rounding.
    for (size_t k = 1; k < two.size(); ++k) {
        double d = std::hypot(two[k].x - two[k - 1].x, two[k].y - two[k - 1].y);
        CHECK(d <= 0.05 + 1e-9);
    }
}

TEST_CASE("collision penalty is an indicator over interpolated poses") {
    StateFixture fx;
    LatticeFrame frame = fx.maps.lattice;
    std::vector<Pose> clear = interpolate({{0, 0}, {1, 0}}, frame, 0.05);
    CHECK(collision_penalty(clear, fx.maps.cspace) == 0.0);

    // Block the corridor between the two lattice points.
    StateFixture blocked;
    CellIndex mid = blocked.maps.known.cell_of(frame.to_world({1, 0}).x - 0.07,
                                               frame.to_world({1, 0}).y);
    blocked.maps.known.at(mid) = Known::Occupied;
    blocked.refresh();
    std::vector<Pose> hit = interpolate({{0, 0}, {1, 0}}, frame, 0.05);
    CHECK(collision_penalty(hit, blocked.maps.cspace) == 1.0);

    // Leaving the grid counts as collision too.
    std::vector<Pose> out = interpolate({{0, 0}, {8, 0}}, frame, 0.05);
    CHECK(collision_penalty(out, fx.maps.cspace) == 1.0);
}

TEST_CASE("human closeness takes the worst Gaussian over all waypoints and samples") {
    StateFixture fx;
    SensedHuman sh;
    sh.seen = true;
    sh.sigma = 1.0;
    Vec2 w0 = fx.maps.lattice.to_world({0, 0});
    sh.points.push_back({w0.x + 0.3, w0.y});
    sh.points.push_back({w0.x + 2.0, w0.y});
    fx.maps.humans.push_back(sh);

    double v = human_closeness_penalty({{0, 0}}, fx.maps.lattice, fx.maps.humans);
    CHECK(v == doctest::Approx(std::exp(-0.09 / 2.0)).epsilon(1e-12));

    // An unseen human contributes nothing.
    fx.maps.humans[0].seen = false;
    CHECK(human_closeness_penalty({{0, 0}}, fx.maps.lattice, fx.maps.humans) == 0.0);

    // Sitting on a sample point maxes the penalty out at one.
    fx.maps.humans[0].seen = true;
    fx.maps.humans[0].points = {w0};
    CHECK(human_closeness_penalty({{0, 0}}, fx.maps.lattice, fx.maps.humans) == 1.0);
}

TEST_CASE("visited penalty counts revisited tail points") {
    std::set<LatticePoint> visited{{1, 0}, {5, 5}};
    CHECK(visited_penalty({{0, 0}}, visited) == 0.0);
    CHECK(visited_penalty({{0, 0}, {1, 0}, {2, 0}}, visited) == 0.5);
    CHECK(visited_penalty({{1, 0}, {2, 0}}, visited) == 0.0); // anchor is exempt
    CHECK(visited_penalty({{0, 0}, {1, 0}}, visited) == 1.0);
}

TEST_CASE("neighbourhood penalty counts points isolated from visited ground") {
    std::set<LatticePoint> nothing;
    CHECK(unvisited_neighbourhood_penalty({{0, 0}, {1, 0}}, nothing) == 0.0);

    std::set<LatticePoint> visited{{1, 0}};
    double v = unvisited_neighbourhood_penalty({{0, 0}, {1, 0}, {2, 0}}, visited);
    // (0,0) and (2,0) touch the visited cell; (1,0) itself does not.
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    std::set<LatticePoint> far{{40, 40}};
    CHECK(unvisited_neighbourhood_penalty({{0, 0}, {1, 0}}, far) == 1.0);
}

TEST_CASE("turn penalty brackets by heading change") {
    CHECK(turn_penalty({{0, 0}, {1, 0}}, false) == 0.0);
    CHECK(turn_penalty({{0, 0}, {1, 0}, {2, 0}}, false) == 0.0);

    Chromosome eighth{{0, 0}, {1, 0}, {2, 1}};     // 45 degrees
    Chromosome quarter{{0, 0}, {1, 0}, {1, 1}};    // 90 degrees
    Chromosome three_eighths{{0, 0}, {1, 0}, {0, 1}}; // 135 degrees
    CHECK(turn_penalty(eighth, false) == 1.0);
    CHECK(turn_penalty(quarter, false) == 0.5);
    CHECK(turn_penalty(three_eighths, false) == 1.0);

    CHECK(turn_penalty(eighth, true) == 0.5);
    CHECK(turn_penalty(quarter, true) == 1.0);
    CHECK(turn_penalty(three_eighths, true) == 1.0);

    // A full reversal (not reachable through valid mutations, but the
    // function is total) lands in the top bracket for both profiles.
    Chromosome reversal{{0, 0}, {1, 0}, {0, 0}};
    CHECK(turn_penalty(reversal, false) == 1.0);
    CHECK(turn_penalty(reversal, true) == 1.0);

    // Normalization over interior waypoints.
    Chromosome wiggle{{0, 0}, {1, 0}, {2, 1}, {3, 1}};
    CHECK(turn_penalty(wiggle, false) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("repeat penalty is the mean disinfected fraction under the footprint") {
    StateFixture fresh;
    FootprintMasks masks(FootprintParams{}, 0.05);
    LatticeFrame frame = fresh.maps.lattice;
    std::vector<Pose> poses = interpolate({{0, 0}, {1, 0}}, frame, 0.05);
    CHECK(repeat_disinfection_penalty(poses, fresh.maps, masks) == 0.0);

    StateFixture done;
    for (uint8_t& d : done.maps.disinfected.raw()) d = 1;
    // Every mask cell inside the grid is disinfected, but cells hanging over
    // the edge count as clean, so the mean stays below one.
    double v = repeat_disinfection_penalty(poses, done.maps, masks);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
}

TEST_CASE("evaluator members match the standalone penalty functions exactly") {
    Rng rng(101);
    CostParams params = default_params();
    FootprintMasks masks(FootprintParams{}, 0.05);
    for (int iter = 0; iter < 300; ++iter) {
        StateFixture fx = random_state(rng);
        CostEvaluator ev(fx.maps, params, masks);
        for (int k = 0; k < 10; ++k) {
            Chromosome c = random_chromosome(rng);
            CostBreakdown b = ev.evaluate(c);
            std::vector<Pose> poses = interpolate(c, fx.maps.lattice, params.step_m);
            CHECK(b.collision == collision_penalty(poses, fx.maps.cspace));
            CHECK(b.human == human_closeness_penalty(c, fx.maps.lattice, fx.maps.humans));
            CHECK(b.visited == visited_penalty(c, fx.maps.visited));
            CHECK(b.neighbour == unvisited_neighbourhood_penalty(c, fx.maps.visited));
            CHECK(b.turn == turn_penalty(c, params.turn_penalty_monotone));
            CHECK(b.repeat == repeat_disinfection_penalty(poses, fx.maps, masks));
        }
    }
}

TEST_CASE("every penalty is bounded and the total is the exact weighted sum") {
    Rng rng(202);
    CostParams params = default_params();
    FootprintMasks masks(FootprintParams{}, 0.05);
    for (int iter = 0; iter < 200; ++iter) {
        StateFixture fx = random_state(rng);
        CostEvaluator ev(fx.maps, params, masks);
        for (int k = 0; k < 25; ++k) {
            Chromosome c = random_chromosome(rng);
            CostBreakdown b = ev.evaluate(c);
            for (double p : {b.collision, b.human, b.visited, b.neighbour, b.turn, b.repeat}) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
            }
            const CostWeights& w = params.weights;
            double expected = w.w_collision * b.collision + w.w_human * b.human +
                              w.w_visited * b.visited + w.w_neighbour * b.neighbour +
                              w.w_turn * b.turn + w.w_repeat * b.repeat;
            CHECK(b.total == expected);
        }
    }
}

TEST_CASE("scaling all weights preserves the population argmin") {
    Rng rng(303);
    StateFixture fx = random_state(rng);
    FootprintMasks masks(FootprintParams{}, 0.05);

    CostParams base = default_params();
    CostParams scaled = base;
    scaled.weights.w_collision *= 10.0;
    scaled.weights.w_human *= 10.0;
    scaled.weights.w_visited *= 10.0;
    scaled.weights.w_neighbour *= 10.0;
    scaled.weights.w_turn *= 10.0;
    scaled.weights.w_repeat *= 10.0;

    CostEvaluator ev1(fx.maps, base, masks);
    CostEvaluator ev2(fx.maps, scaled, masks);

    std::vector<Chromosome> population;
    for (int k = 0; k < 60; ++k) population.push_back(random_chromosome(rng));

    auto argmin = [&](const CostEvaluator& ev) {
        size_t best = 0;
        double best_cost = ev.total_cost(population[0]);
        for (size_t k = 1; k < population.size(); ++k) {
            double v = ev.total_cost(population[k]);
            if (v < best_cost) {
                best_cost = v;
                best = k;
            }
        }
        return best;
    };
    CHECK(argmin(ev1) == argmin(ev2));
}

TEST_CASE("coverage gain queries match a direct mask walk") {
    Rng rng(404);
    CostParams params = default_params();
    FootprintMasks masks(FootprintParams{}, 0.05);
    for (int iter = 0; iter < 40; ++iter) {
        StateFixture fx = random_state(rng);
        CostEvaluator ev(fx.maps, params, masks);
        for (int k = 0; k < 20; ++k) {
            CellIndex base{static_cast<int>(rng.uniform_index(40)) - 5,
                           static_cast<int>(rng.uniform_index(40)) - 5};
            double heading = dir8_heading(static_cast<int>(rng.uniform_index(8)));
            const HeadingMask& m = masks.mask_for(heading);
            int dis = 0, fresh = 0;
            for (const CellIndex& off : m.offsets) {
                CellIndex c{base.cx + off.cx, base.cy + off.cy};
                if (!fx.maps.known.in_bounds(c)) continue;
                if (fx.maps.disinfected.at(c)) ++dis;
                if (fx.maps.known.at(c) == Known::Free && !fx.maps.disinfected.at(c)) ++fresh;
            }
            CHECK(ev.disinfected_under(base, heading) == dis);
            CHECK(ev.fresh_gain(base, heading) == fresh);
        }
    }
}

TEST_CASE("the best-gain probe prefers the first of tied headings") {
    Rng rng(505);
    CostParams params = default_params();
    FootprintMasks masks(FootprintParams{}, 0.05);
    for (int iter = 0; iter < 60; ++iter) {
        StateFixture fx = random_state(rng);
        CostEvaluator ev(fx.maps, params, masks);
        LatticePoint p{static_cast<int>(rng.uniform_index(7)) - 3,
                       static_cast<int>(rng.uniform_index(7)) - 3};

        Vec2 w = fx.maps.lattice.to_world(p);
        CellIndex base = fx.maps.known.cell_of(w.x, w.y);
        int want_cells = 0;
        double want_heading = 0.0;
        for (int d = 0; d < 8; ++d) {
            int cells = ev.fresh_gain(base, dir8_heading(d));
            if (cells > want_cells) {
                want_cells = cells;
                want_heading = dir8_heading(d);
            }
        }
        CostEvaluator::GainProbe probe = ev.best_gain(p);
        CHECK(probe.cells == want_cells);
        CHECK(probe.heading == want_heading);
        CHECK(ev.lattice_point_has_gain(p) == (want_cells > 0));
        CHECK(ev.best_gain_heading(p) == want_heading);
    }
}

TEST_CASE("fully treated ground leaves no gain anywhere") {
    StateFixture fx;
    for (uint8_t& d : fx.maps.disinfected.raw()) d = 1;
    CostParams params = default_params();
    FootprintMasks masks(FootprintParams{}, 0.05);
    CostEvaluator ev(fx.maps, params, masks);
    for (int i = -2; i <= 2; ++i) {
        for (int j = -2; j <= 2; ++j) {
            CHECK(!ev.lattice_point_has_gain({i, j}));
            CHECK(ev.best_gain({i, j}).cells == 0);
        }
    }
}
