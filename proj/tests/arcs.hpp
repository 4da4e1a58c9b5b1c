#pragma once

#include <algorithm>
#include <random>

#include "pleat/topology.hpp"

namespace testing_arcs {

using namespace pleat;

// Leaves met when walking outward through the fan of plaques around end k of pants j,
// starting from the base plaque.
inline std::vector<int> fan_leaves(const PantsDecomposition& pd, const OrientationAssignment& o, int j, int k,
                                   int count) {
    int step = end_prefers_attracting(pd, o, j, k) ? -1 : 1;
    std::vector<int> out;
    int n = 0;
    for (int i = 0; i < count; ++i) {
        int m = step > 0 ? n : n - 1;
        int parity = ((m % 2) + 2) % 2;
        out.push_back(3 * j + (parity == 0 ? k : (k + 2) % 3));
        n += step;
    }
    return out;
}

// Arcs made of fan walks on both sides of cuff crossings, with stray leaf crossings between.
inline TransverseArc random_fan_arc(const PantsDecomposition& pd, const OrientationAssignment& o,
                                    std::mt19937_64& rng) {
    std::uniform_int_distribution<int> cuffs(0, pd.cuff_count() - 1), depth(0, 5), pieces(1, 3), coin(0, 1),
        leaves(0, 3 * pd.pants_count() - 1);
    TransverseArc arc;
    auto leaf = [](int id) { return Crossing{Crossing::Kind::Leaf, id, true}; };
    int n = pieces(rng);
    for (int p = 0; p < n; ++p) {
        if (p > 0 && coin(rng)) arc.crossings.push_back(leaf(leaves(rng)));
        int c = cuffs(rng);
        bool forward = coin(rng);
        auto ends = pd.cuff_ends(c);
        auto start = forward ? ends[0] : ends[1];
        auto finish = forward ? ends[1] : ends[0];
        auto before = fan_leaves(pd, o, start.first, start.second, depth(rng));
        auto after = fan_leaves(pd, o, finish.first, finish.second, depth(rng));
        for (auto it = before.rbegin(); it != before.rend(); ++it) arc.crossings.push_back(leaf(*it));
        arc.crossings.push_back(Crossing{Crossing::Kind::Cuff, c, forward});
        for (int id : after) arc.crossings.push_back(leaf(id));
    }
    return arc;
}

// Cuts the arc at up to three random positions.
inline std::vector<TransverseArc> random_subdivision(const TransverseArc& arc, std::mt19937_64& rng) {
    std::vector<std::size_t> cuts;
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_int_distribution<std::size_t> pos(1, arc.crossings.size() > 1 ? arc.crossings.size() - 1 : 1);
    int k = count(rng);
    for (int i = 0; i < k && arc.crossings.size() > 1; ++i) cuts.push_back(pos(rng));
    cuts.push_back(0);
    cuts.push_back(arc.crossings.size());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<TransverseArc> parts;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        TransverseArc a;
        a.crossings.assign(arc.crossings.begin() + cuts[i], arc.crossings.begin() + cuts[i + 1]);
        parts.push_back(a);
    }
    return parts;
}

} // namespace testing_arcs
