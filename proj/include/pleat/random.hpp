#pragma once

#include <random>
#include <vector>

#include "pleat/representation.hpp"

namespace pleat {

using Rng = std::mt19937_64;

inline cplx random_complex(Rng& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    double re = u(rng);
    return {re, u(rng)};
}

// Entries uniform in the square of half-width `scale`, rejected when nearly singular.
inline Moebius random_moebius(Rng& rng, double scale = 1.0) {
    for (;;) {
        cplx a = random_complex(rng, scale), b = random_complex(rng, scale), c = random_complex(rng, scale),
             d = random_complex(rng, scale);
        if (std::abs(a * d - b * c) > 0.1 * scale * scale) return Moebius::normalized(a, b, c, d);
    }
}

// Random generator images for the given letters, redrawn until irreducible.
inline Representation random_representation(Rng& rng, const std::vector<char>& letters, double scale = 1.0) {
    for (;;) {
        Representation rho;
        for (char c : letters) rho.gens[c] = random_moebius(rng, scale);
        if (letters.size() < 2 || is_irreducible(rho, 1e-3)) return rho;
    }
}

} // namespace pleat
