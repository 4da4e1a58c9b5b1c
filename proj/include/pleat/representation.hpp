#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pleat/moebius.hpp"
#include "pleat/topology.hpp"

namespace pleat {

inline constexpr double kEpsRel = 1e-8;
inline constexpr double kEpsRank = 1e-6;
inline constexpr double kJacobianStep = 1e-5;

struct Representation {
    std::map<char, Moebius> gens;

    Moebius operator()(const std::string& word) const;
    // Max over relators of the distance of the evaluated relator from the identity.
    double relator_residual(const Presentation& p) const;
    Representation conjugated(const Moebius& g) const;
};

Moebius evaluate_word(const Representation& rho, const std::string& word);

// Throws RelatorViolated when the residual exceeds eps.
void check_relators(const Representation& rho, const Presentation& p, double eps = kEpsRel);

struct CharacterFingerprint {
    std::vector<std::string> words;
    std::vector<cplx> tau;  // tr^2 of each word
};

CharacterFingerprint fingerprint(const Representation& rho, const std::vector<std::string>& words);
CharacterFingerprint peripheral_fingerprint(const Representation& rho, const BoundaryInclusion& inc);
double fingerprint_distance(const CharacterFingerprint& a, const CharacterFingerprint& b);

// Irreducible when some pair of generator images has tr[A,B] != 2.
bool is_irreducible(const Representation& rho, double eps = 1e-8);

struct RankReport {
    int rank = 0;
    std::vector<double> singular_values;
    // sigma_rank / sigma_{rank+1}; infinity when no further singular value exists.
    double gap = 0.0;
};

// Central differences in right-translation sl2 coordinates of every generator, with the
// conjugation directions projected out.
RankReport jacobian_rank(const Representation& rho, const std::vector<std::string>& words,
                         double h = kJacobianStep, double eps_rank = kEpsRank);
RankReport jacobian_rank(const Representation& rho, const BoundaryInclusion& inc,
                         double h = kJacobianStep, double eps_rank = kEpsRank);

// Best least-squares conjugator residual: min over G of sum ||G A_i G^-1 - B_i|| found by
// local search. Small values indicate conjugate representations.
double conjugacy_residual(const Representation& a, const Representation& b);

// Standard pants group with boundary complex lengths lambda[0..2]: M0 M1 M2 = 1 and,
// for real positive lengths, a Fuchsian pair of pants.
struct PantsGroup {
    std::array<Moebius, 3> boundary;
    // Fixed point carrying eigenvalue exp(+lambda/2) (up to sign) and the other one.
    std::array<ProjectivePoint, 3> plus, minus;
};

PantsGroup standard_pants(const std::array<cplx, 3>& lambda);

// Glues standard pants along the cuffs of a decomposition built by glued_decomposition,
// inserting diag(e^{w/2}, e^{-w/2}) at each cuff for the complex twist w = tau + i theta.
Representation fenchel_nielsen_rep(const PantsDecomposition& pd, const std::vector<cplx>& lengths,
                                   const std::vector<cplx>& twists);

struct RepresentationPath {
    enum class Recipe { Direct, QuakeBend, Interpolated };

    Recipe recipe = Recipe::Direct;
    std::vector<double> t;
    std::vector<Representation> samples;
    // Representation at any parameter in [0, 1]; set for generated families.
    std::function<Representation(double)> family;

    Representation at(double s) const;
    bool is_loop(double eps = kEpsRel) const;
};

const char* recipe_name(RepresentationPath::Recipe r);

// Samples a family at n + 1 equally spaced parameters.
RepresentationPath sample_family(std::function<Representation(double)> family, int n,
                                 RepresentationPath::Recipe recipe);

// Piecewise-linear interpolation of matrix entries between samples, renormalized to det 1.
RepresentationPath interpolated_path(std::vector<double> t, std::vector<Representation> samples);

// Max over consecutive samples and generators of the projective distance.
double continuity_certificate(const RepresentationPath& path);

} // namespace pleat
