#include "ghacpp/genetic.hpp"

#include <algorithm>

namespace ghacpp {

namespace {

bool contains(const Chromosome& c, const LatticePoint& p) {
    return std::find(c.begin(), c.end(), p) != c.end();
}

std::vector<LatticePoint> unused_neighbours(const Chromosome& c, const LatticePoint& p) {
    std::vector<LatticePoint> out;
    out.reserve(8);
    for (int d = 0; d < 8; ++d) {
        LatticePoint q{p.i + kDir8DX[d], p.j + kDir8DY[d]};
        if (!contains(c, q)) out.push_back(q);
    }
    return out;
}

} // namespace

bool chromosome_valid(const Chromosome& c, int max_points) {
    if (c.empty() || c.size() > static_cast<size_t>(max_points)) return false;
    for (size_t k = 1; k < c.size(); ++k) {
        if (!adjacent8(c[k - 1], c[k])) return false;
    }
    for (size_t a = 0; a < c.size(); ++a) {
        for (size_t b = a + 1; b < c.size(); ++b) {
            if (c[a] == c[b]) return false;
        }
    }
    return true;
}

Chromosome random_sample_mutation(const Chromosome& c, int sample_len, Rng& rng) {
    Chromosome out{c.front()};
    for (int k = 0; k < sample_len; ++k) {
        std::vector<LatticePoint> candidates = unused_neighbours(out, out.back());
        if (candidates.empty()) break;
        out.push_back(candidates[rng.uniform_index(candidates.size())]);
    }
    return out;
}

std::vector<LatticePoint> add_point_candidates(const Chromosome& c, size_t index) {
    if (index == c.size()) return unused_neighbours(c, c.back());
    std::vector<LatticePoint> out;
    const LatticePoint& a = c[index - 1];
    const LatticePoint& b = c[index];
    for (int d = 0; d < 8; ++d) {
        LatticePoint q{a.i + kDir8DX[d], a.j + kDir8DY[d]};
        if (adjacent8(q, b) && !contains(c, q)) out.push_back(q);
    }
    return out;
}

Chromosome add_point_mutation(const Chromosome& c, int max_points, Rng& rng) {
    if (c.size() >= static_cast<size_t>(max_points)) return c;
    size_t index = 1 + rng.uniform_index(c.size());
    std::vector<LatticePoint> candidates = add_point_candidates(c, index);
    if (candidates.empty()) return c;
    LatticePoint pick = candidates[rng.uniform_index(candidates.size())];
    Chromosome out = c;
    out.insert(out.begin() + static_cast<long>(index), pick);
    return out;
}

Chromosome remove_point_mutation(const Chromosome& c, Rng& rng) {
    if (c.size() <= 1) return c;
    size_t index = 1 + rng.uniform_index(c.size() - 1);
    if (index + 1 < c.size() && !adjacent8(c[index - 1], c[index + 1])) return c;
    Chromosome out = c;
    out.erase(out.begin() + static_cast<long>(index));
    return out;
}

namespace {

struct Individual {
    Chromosome points;
    double cost = 0.0;
};

void sort_and_truncate(std::vector<Individual>& pop, size_t n) {
    std::stable_sort(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.points.size() < b.points.size();
    });
    if (pop.size() > n) pop.resize(n);
}

} // namespace

EvolveResult evolve_mini_trajectory(const LatticePoint& start, const GaParams& params, Rng& rng,
                                    const CostFn& cost_fn) {
    const size_t n = static_cast<size_t>(params.n);
    const Chromosome seed{start};

    std::vector<Individual> pop;
    pop.reserve(2 * n);
    for (size_t i = 0; i < n; ++i) {
        Individual ind;
        ind.points = random_sample_mutation(seed, params.l, rng);
        ind.cost = cost_fn(ind.points);
        pop.push_back(std::move(ind));
    }

    EvolveResult result;
    Chromosome prev_best;
    int repeats = 0;

    for (int gen = 1; gen <= params.m; ++gen) {
        std::vector<Individual> mutated = pop;
        std::vector<bool> dirty(mutated.size(), false);
        for (size_t i = 0; i < mutated.size(); ++i) {
            if (rng.bernoulli(params.p_random_sample)) {
                Chromosome next = random_sample_mutation(mutated[i].points, params.l, rng);
                if (next != mutated[i].points) dirty[i] = true;
                mutated[i].points = std::move(next);
            }
        }
        for (size_t i = 0; i < mutated.size(); ++i) {
            if (rng.bernoulli(params.p_add)) {
                Chromosome next = add_point_mutation(mutated[i].points, params.max_points, rng);
                if (next != mutated[i].points) dirty[i] = true;
                mutated[i].points = std::move(next);
            }
        }
        for (size_t i = 0; i < mutated.size(); ++i) {
            if (rng.bernoulli(params.p_remove)) {
                Chromosome next = remove_point_mutation(mutated[i].points, rng);
                if (next != mutated[i].points) dirty[i] = true;
                mutated[i].points = std::move(next);
            }
        }
        for (size_t i = 0; i < mutated.size(); ++i) {
            if (dirty[i]) mutated[i].cost = cost_fn(mutated[i].points);
        }

        std::vector<Individual> merged = pop;
        merged.insert(merged.end(), mutated.begin(), mutated.end());
        sort_and_truncate(merged, n);
        pop = std::move(merged);

        result.generations = gen;
        result.best_cost_history.push_back(pop.front().cost);
        if (gen > 1 && pop.front().points == prev_best) {
            ++repeats;
        } else {
            repeats = 0;
        }
        prev_best = pop.front().points;
        if (repeats >= params.t) break;
    }

    result.best = pop.front().points;
    result.best_cost = pop.front().cost;
    return result;
}

} // namespace ghacpp
