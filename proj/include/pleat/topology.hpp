#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pleat/errors.hpp"

namespace pleat {

// Words are strings of generator letters; lowercase is a generator, uppercase its inverse.
std::string invert_word(const std::string& w);
std::string reduce_word(const std::string& w);

struct Presentation {
    std::vector<char> generators;
    std::vector<std::string> relators;

    bool has_generator(char c) const;
    // Throws UnknownLetter if a word uses a letter outside the generators.
    void check_word(const std::string& w) const;
};

// One boundary end of a pair of pants. The boundary element, oriented with the pants on
// its left, is  conjugator * cuff_word^(inverted ? -1 : 1) * conjugator^-1.
struct CuffEnd {
    int cuff = 0;
    std::string conjugator;
    bool inverted = false;
};

struct Cuff {
    std::string id;
    std::string word;
};

struct Pants {
    std::array<CuffEnd, 3> ends;
};

struct PantsDecomposition {
    int genus = 0;
    Presentation surface;
    std::vector<Cuff> cuffs;
    std::vector<Pants> pants;

    int cuff_count() const { return static_cast<int>(cuffs.size()); }
    int pants_count() const { return static_cast<int>(pants.size()); }
    int cuff_index(const std::string& id) const;
    // Word of the boundary element of end k of pants j.
    std::string end_word(int j, int k) const;
    // Both ends of a cuff as (pants, end index); the non-inverted end first.
    std::array<std::pair<int, int>, 2> cuff_ends(int cuff) const;
};

// Checks 3g-3 cuffs, 2g-2 pants, two ends per cuff (one inverted), connected gluing graph,
// and that all words use known letters. Throws InvalidDecomposition.
void validate(const PantsDecomposition& pd);

// Decomposition glued from 2g-2 pants with the given cuff at each end. Generators are two
// letters per pants plus one letter per cuff outside a spanning tree; this is the
// presentation used by the Fenchel-Nielsen construction.
PantsDecomposition glued_decomposition(int genus, const std::vector<std::array<int, 3>>& pants_cuffs,
                                       const std::vector<std::string>& cuff_ids = {});

// Two pants glued along three cuffs.
PantsDecomposition theta_decomposition();

struct GluingEdge {
    int cuff = 0;
    std::pair<int, int> first, second;  // (pants, end)
    bool tree = false;
    char stable = 0;
};

struct GluingPlan {
    std::vector<GluingEdge> edges;       // indexed by cuff
    std::vector<int> pants_order;        // breadth-first order from pants 0
    std::vector<int> parent_edge;        // cuff used to reach each pants, -1 for the root
};

GluingPlan gluing_plan(int genus, const std::vector<std::array<int, 3>>& pants_cuffs);

struct OrientationAssignment {
    std::vector<bool> forward;

    static OrientationAssignment from_bits(std::uint64_t bits, int cuffs);
    std::uint64_t bits() const;
    OrientationAssignment flipped(int cuff) const;
};

std::vector<OrientationAssignment> all_orientations(int cuffs);

// A spiral leaf runs between ends k and k+1 (mod 3) of its pants.
struct LeafEnd {
    int cuff = 0;
    int pants = 0;
    int end = 0;
    // Whether the leaf accumulates at the attracting endpoint of the end's boundary element.
    bool to_attracting = true;
};

struct SpiralLeaf {
    int pants = 0;
    int k = 0;
    std::array<LeafEnd, 2> ends;
};

struct LaminationTriangle {
    int pants = 0;
    int index = 0;  // 0 or 1
    std::array<int, 3> leaves;
};

struct Lamination {
    OrientationAssignment orientation;
    std::vector<int> cuff_leaves;
    std::vector<SpiralLeaf> spiral_leaves;  // id = 3 * pants + k
    std::vector<LaminationTriangle> triangles;

    static int leaf_id(int pants, int k) { return 3 * pants + k; }
};

Lamination build_lamination(const PantsDecomposition& pd, const OrientationAssignment& o);

// Whether the preferred endpoint of end k of pants j is attracting for its boundary element.
bool end_prefers_attracting(const PantsDecomposition& pd, const OrientationAssignment& o, int j, int k);

struct Crossing {
    enum class Kind { Leaf, Cuff } kind = Kind::Leaf;
    int id = 0;
    // For cuff crossings: from the non-inverted end's side to the inverted end's side.
    bool forward = true;

    bool operator==(const Crossing&) const = default;
};

struct TransverseArc {
    std::vector<Crossing> crossings;

    int cuff_crossings() const;
};

// Splits an arc so that each piece crosses at most one cuff; a new piece starts at every
// cuff crossing after the first. Concatenating the pieces gives the input back.
std::vector<TransverseArc> subdivide_arc(const TransverseArc& arc);

// Parses "L3,C1+,L4" style descriptions: Lk is spiral leaf k, Ci+ / Ci- a cuff crossing.
TransverseArc parse_arc(const std::string& text);
std::string format_arc(const TransverseArc& arc);

struct BoundaryComponent {
    int genus = 0;
    // Images in pi_1(M) of the standard generators a1, b1, ..., written as letters a, b, c, ...
    std::vector<std::string> generator_words;
    // Words in the standard generators.
    std::vector<std::string> peripheral_words;

    Presentation surface() const;
};

struct BoundaryInclusion {
    Presentation manifold;
    std::vector<BoundaryComponent> components;

    // Image in pi_1(M) of a word in the standard generators of component i.
    std::string pushforward(int component, const std::string& word) const;
    // All peripheral words of all components, pushed forward, in order.
    std::vector<std::string> peripheral_words() const;
};

void validate(const BoundaryInclusion& inc);

} // namespace pleat
