#include "folio/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "folio/errors.hpp"
#include "folio/rng.hpp"

namespace folio {

namespace {

struct Individual {
    Diversification x;
    ObjectivePoint obj;
    int rank = 0;
    double crowding = 0.0;
};

Individual evaluate(const Objective& objective, Diversification x) {
    Individual ind;
    ind.x = std::move(x);
    const auto [ret, var] = objective(ind.x);
    if (!std::isfinite(ret) || !std::isfinite(var)) {
        throw NumericError("nsga2: objective returned a non-finite value");
    }
    ind.obj = {ret, var};
    return ind;
}

// Rank ascending, then crowding descending.
bool wins_tournament(const Individual& a, const Individual& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.crowding > b.crowding;
}

void sbx_crossover(const Diversification& p1, const Diversification& p2, double eta, Rng& rng,
                   Diversification& c1, Diversification& c2) {
    c1 = p1;
    c2 = p2;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (rng.uniform() > 0.5) continue;
        if (std::abs(p1[i] - p2[i]) < 1e-14) continue;
        const double u = rng.uniform();
        const double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                     : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
        c1[i] = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]);
        c2[i] = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]);
    }
}

void polynomial_mutation(Diversification& x, double eta, double prob, Rng& rng) {
    for (auto& xi : x) {
        if (rng.uniform() >= prob) continue;
        const double u = rng.uniform();
        const double delta = u < 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0
                                     : 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
        xi += delta;  // weights live on [0, 1]; repair clips the rest
    }
}

void assign_ranks_and_crowding(std::vector<Individual>& pop) {
    std::vector<ObjectivePoint> pts;
    pts.reserve(pop.size());
    for (const auto& ind : pop) pts.push_back(ind.obj);
    const auto fronts = fast_non_dominated_sort(pts);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        const auto dist = crowding_distance(pts, fronts[f]);
        for (std::size_t k = 0; k < fronts[f].size(); ++k) {
            pop[static_cast<std::size_t>(fronts[f][k])].rank = static_cast<int>(f);
            pop[static_cast<std::size_t>(fronts[f][k])].crowding = dist[k];
        }
    }
}

} // namespace

ParetoSet nsga2_optimize(const Objective& objective, int assets, const Nsga2Params& params,
                         std::uint64_t seed) {
    if (assets < 2) throw ConfigError("nsga2: need at least 2 assets");
    if (params.population < 4 || params.population % 2 != 0) {
        throw ConfigError("nsga2: population must be even and at least 4");
    }
    if (params.generations < 1) throw ConfigError("nsga2: generations must be positive");
    const double mut_prob =
        params.mutation_prob < 0.0 ? 1.0 / static_cast<double>(assets) : params.mutation_prob;

    Rng rng = derive_rng(seed, {0x4e534741ull});  // "NSGA"

    // Seed the population with the uniform point and the vertices so both
    // frontier ends are reachable from generation zero.
    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(params.population));
    pop.push_back(
        evaluate(objective, Diversification(static_cast<std::size_t>(assets),
                                            1.0 / static_cast<double>(assets))));
    for (int a = 0; a < assets && static_cast<int>(pop.size()) < params.population; ++a) {
        Diversification vertex(static_cast<std::size_t>(assets), 0.0);
        vertex[static_cast<std::size_t>(a)] = 1.0;
        pop.push_back(evaluate(objective, std::move(vertex)));
    }
    while (static_cast<int>(pop.size()) < params.population) {
        pop.push_back(evaluate(objective, rng.simplex(assets)));
    }
    assign_ranks_and_crowding(pop);

    for (int gen = 0; gen < params.generations; ++gen) {
        std::vector<Individual> offspring;
        offspring.reserve(static_cast<std::size_t>(params.population));
        while (static_cast<int>(offspring.size()) < params.population) {
            const auto pick = [&]() -> const Individual& {
                const Individual& a = pop[static_cast<std::size_t>(rng.uniform_int(params.population))];
                const Individual& b = pop[static_cast<std::size_t>(rng.uniform_int(params.population))];
                return wins_tournament(a, b) ? a : b;
            };
            const Individual& p1 = pick();
            const Individual& p2 = pick();

            Diversification c1, c2;
            if (rng.uniform() < params.crossover_prob) {
                sbx_crossover(p1.x, p2.x, params.sbx_eta, rng, c1, c2);
            } else {
                c1 = p1.x;
                c2 = p2.x;
            }
            for (Diversification* c : {&c1, &c2}) {
                *c = repair_simplex(std::move(*c));
                polynomial_mutation(*c, params.mutation_eta, mut_prob, rng);
                *c = repair_simplex(std::move(*c));
                offspring.push_back(evaluate(objective, std::move(*c)));
                if (static_cast<int>(offspring.size()) == params.population) break;
            }
        }

        // Environmental selection over the combined 2N population.
        std::vector<Individual> combined = std::move(pop);
        combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                        std::make_move_iterator(offspring.end()));
        assign_ranks_and_crowding(combined);

        std::vector<std::size_t> order(combined.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return wins_tournament(combined[a], combined[b]);
        });
        pop.clear();
        for (int i = 0; i < params.population; ++i) {
            pop.push_back(std::move(combined[order[static_cast<std::size_t>(i)]]));
        }
        assign_ranks_and_crowding(pop);
    }

    ParetoSet front;
    for (const auto& ind : pop) {
        if (ind.rank == 0) front.push_back({ind.x, ind.obj.ret, ind.obj.var});
    }
    return front;
}

} // namespace folio
