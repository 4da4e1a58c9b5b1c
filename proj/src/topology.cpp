#include "pleat/topology.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <sstream>

namespace pleat {

namespace {

char inverse_letter(char c) {
    return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                       : static_cast<char>(std::tolower(c));
}

[[noreturn]] void bad_pd(const std::string& msg) { throw Error(ErrorKind::InvalidDecomposition, msg); }

} // namespace

std::string invert_word(const std::string& w) {
    std::string r(w.rbegin(), w.rend());
    for (char& c : r) c = inverse_letter(c);
    return r;
}

std::string reduce_word(const std::string& w) {
    std::string out;
    for (char c : w) {
        if (!out.empty() && out.back() == inverse_letter(c))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

bool Presentation::has_generator(char c) const {
    char g = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return std::find(generators.begin(), generators.end(), g) != generators.end();
}

void Presentation::check_word(const std::string& w) const {
    for (char c : w)
        if (!std::isalpha(static_cast<unsigned char>(c)) || !has_generator(c))
            throw Error(ErrorKind::UnknownLetter, std::string("letter '") + c + "' in word \"" + w + "\"");
}

int PantsDecomposition::cuff_index(const std::string& id) const {
    for (int i = 0; i < cuff_count(); ++i)
        if (cuffs[i].id == id) return i;
    bad_pd("unknown cuff id " + id);
}

std::string PantsDecomposition::end_word(int j, int k) const {
    const CuffEnd& e = pants.at(j).ends.at(k);
    const std::string& w = cuffs.at(e.cuff).word;
    return e.conjugator + (e.inverted ? invert_word(w) : w) + invert_word(e.conjugator);
}

std::array<std::pair<int, int>, 2> PantsDecomposition::cuff_ends(int cuff) const {
    std::vector<std::pair<int, int>> found;
    for (int j = 0; j < pants_count(); ++j)
        for (int k = 0; k < 3; ++k)
            if (pants[j].ends[k].cuff == cuff) found.emplace_back(j, k);
    if (found.size() != 2) bad_pd("cuff " + std::to_string(cuff) + " does not have exactly two ends");
    if (pants[found[0].first].ends[found[0].second].inverted) std::swap(found[0], found[1]);
    return {found[0], found[1]};
}

void validate(const PantsDecomposition& pd) {
    int g = pd.genus;
    if (g < 2) bad_pd("genus must be at least 2");
    if (pd.cuff_count() != 3 * g - 3)
        bad_pd("expected " + std::to_string(3 * g - 3) + " cuffs, got " + std::to_string(pd.cuff_count()));
    if (pd.pants_count() != 2 * g - 2)
        bad_pd("expected " + std::to_string(2 * g - 2) + " pants, got " + std::to_string(pd.pants_count()));
    std::vector<int> count(pd.cuff_count(), 0), inverted(pd.cuff_count(), 0);
    for (const auto& p : pd.pants)
        for (const auto& e : p.ends) {
            if (e.cuff < 0 || e.cuff >= pd.cuff_count()) bad_pd("cuff end refers to unknown cuff");
            ++count[e.cuff];
            if (e.inverted) ++inverted[e.cuff];
        }
    for (int i = 0; i < pd.cuff_count(); ++i) {
        if (count[i] != 2)
            bad_pd("cuff " + pd.cuffs[i].id + " appears in " + std::to_string(count[i]) + " pants ends");
        if (inverted[i] != 1) bad_pd("cuff " + pd.cuffs[i].id + " needs exactly one inverted end");
    }
    // Connectivity of the gluing graph.
    std::vector<bool> seen(pd.pants_count(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
        int j = q.front();
        q.pop();
        for (const auto& e : pd.pants[j].ends)
            for (int j2 = 0; j2 < pd.pants_count(); ++j2)
                if (!seen[j2])
                    for (const auto& e2 : pd.pants[j2].ends)
                        if (e2.cuff == e.cuff && !seen[j2]) {
                            seen[j2] = true;
                            q.push(j2);
                        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) bad_pd("gluing graph is disconnected");
    for (const auto& c : pd.cuffs) {
        if (c.word.empty()) bad_pd("cuff " + c.id + " has an empty word");
        pd.surface.check_word(c.word);
    }
    for (const auto& p : pd.pants)
        for (const auto& e : p.ends) pd.surface.check_word(e.conjugator);
}

GluingPlan gluing_plan(int genus, const std::vector<std::array<int, 3>>& pants_cuffs) {
    int ncuffs = 3 * genus - 3;
    int npants = static_cast<int>(pants_cuffs.size());
    if (genus < 2 || npants != 2 * genus - 2) bad_pd("pants count does not match genus");
    GluingPlan plan;
    plan.edges.resize(ncuffs);
    std::vector<int> seen_count(ncuffs, 0);
    for (int j = 0; j < npants; ++j)
        for (int k = 0; k < 3; ++k) {
            int c = pants_cuffs[j][k];
            if (c < 0 || c >= ncuffs) bad_pd("cuff index out of range");
            GluingEdge& e = plan.edges[c];
            e.cuff = c;
            if (seen_count[c] == 0) e.first = {j, k};
            else if (seen_count[c] == 1) e.second = {j, k};
            else bad_pd("cuff glued more than twice");
            ++seen_count[c];
        }
    for (int c = 0; c < ncuffs; ++c)
        if (seen_count[c] != 2) bad_pd("cuff " + std::to_string(c) + " is not glued twice");

    std::vector<bool> visited(npants, false);
    plan.parent_edge.assign(npants, -1);
    std::queue<int> q;
    q.push(0);
    visited[0] = true;
    while (!q.empty()) {
        int j = q.front();
        q.pop();
        plan.pants_order.push_back(j);
        for (int k = 0; k < 3; ++k) {
            GluingEdge& e = plan.edges[pants_cuffs[j][k]];
            int other = (e.first == std::make_pair(j, k)) ? e.second.first : e.first.first;
            if (!visited[other]) {
                visited[other] = true;
                e.tree = true;
                plan.parent_edge[other] = e.cuff;
                q.push(other);
            }
        }
    }
    if (static_cast<int>(plan.pants_order.size()) != npants) bad_pd("gluing graph is disconnected");
    char next = static_cast<char>('a' + 2 * npants);
    for (auto& e : plan.edges)
        if (!e.tree) e.stable = next++;
    if (next > 'z' + 1) bad_pd("too many generators for single-letter names");
    return plan;
}

PantsDecomposition glued_decomposition(int genus, const std::vector<std::array<int, 3>>& pants_cuffs,
                                       const std::vector<std::string>& cuff_ids) {
    GluingPlan plan = gluing_plan(genus, pants_cuffs);
    int npants = static_cast<int>(pants_cuffs.size());
    int ncuffs = 3 * genus - 3;
    PantsDecomposition pd;
    pd.genus = genus;
    for (int i = 0; i < 2 * npants; ++i) pd.surface.generators.push_back(static_cast<char>('a' + i));
    for (const auto& e : plan.edges)
        if (!e.tree) pd.surface.generators.push_back(e.stable);

    auto local_word = [](int j, int k) {
        std::string g0(1, static_cast<char>('a' + 2 * j)), g1(1, static_cast<char>('a' + 2 * j + 1));
        if (k == 0) return g0;
        if (k == 1) return g1;
        return invert_word(g0 + g1);
    };

    pd.cuffs.resize(ncuffs);
    pd.pants.resize(npants);
    for (const auto& e : plan.edges) {
        Cuff& c = pd.cuffs[e.cuff];
        c.id = e.cuff < static_cast<int>(cuff_ids.size()) ? cuff_ids[e.cuff] : "g" + std::to_string(e.cuff + 1);
        std::string w = local_word(e.first.first, e.first.second);
        std::string w2 = local_word(e.second.first, e.second.second);
        c.word = w;
        pd.pants[e.first.first].ends[e.first.second] = CuffEnd{e.cuff, "", false};
        if (e.tree) {
            pd.pants[e.second.first].ends[e.second.second] = CuffEnd{e.cuff, "", true};
            pd.surface.relators.push_back(w + w2);
        } else {
            std::string t(1, e.stable);
            pd.pants[e.second.first].ends[e.second.second] = CuffEnd{e.cuff, invert_word(t), true};
            pd.surface.relators.push_back(t + w2 + invert_word(t) + w);
        }
    }
    validate(pd);
    return pd;
}

PantsDecomposition theta_decomposition() {
    return glued_decomposition(2, {{{0, 1, 2}}, {{0, 1, 2}}});
}

OrientationAssignment OrientationAssignment::from_bits(std::uint64_t bits, int cuffs) {
    OrientationAssignment o;
    o.forward.resize(cuffs);
    for (int i = 0; i < cuffs; ++i) o.forward[i] = ((bits >> i) & 1u) == 0;
    return o;
}

std::uint64_t OrientationAssignment::bits() const {
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < forward.size(); ++i)
        if (!forward[i]) b |= (std::uint64_t{1} << i);
    return b;
}

OrientationAssignment OrientationAssignment::flipped(int cuff) const {
    OrientationAssignment o = *this;
    o.forward.at(cuff) = !o.forward.at(cuff);
    return o;
}

std::vector<OrientationAssignment> all_orientations(int cuffs) {
    std::vector<OrientationAssignment> out;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << cuffs); ++b)
        out.push_back(OrientationAssignment::from_bits(b, cuffs));
    return out;
}

bool end_prefers_attracting(const PantsDecomposition& pd, const OrientationAssignment& o, int j, int k) {
    const CuffEnd& e = pd.pants.at(j).ends.at(k);
    return o.forward.at(e.cuff) != e.inverted;
}

Lamination build_lamination(const PantsDecomposition& pd, const OrientationAssignment& o) {
    if (static_cast<int>(o.forward.size()) != pd.cuff_count())
        throw Error(ErrorKind::InvalidInput, "orientation size does not match cuff count");
    Lamination lam;
    lam.orientation = o;
    for (int i = 0; i < pd.cuff_count(); ++i) lam.cuff_leaves.push_back(i);
    for (int j = 0; j < pd.pants_count(); ++j) {
        for (int k = 0; k < 3; ++k) {
            SpiralLeaf leaf;
            leaf.pants = j;
            leaf.k = k;
            for (int s = 0; s < 2; ++s) {
                int end = (k + s) % 3;
                leaf.ends[s] = LeafEnd{pd.pants[j].ends[end].cuff, j, end, end_prefers_attracting(pd, o, j, end)};
            }
            lam.spiral_leaves.push_back(leaf);
        }
        for (int t = 0; t < 2; ++t)
            lam.triangles.push_back({j, t, {Lamination::leaf_id(j, 0), Lamination::leaf_id(j, 1), Lamination::leaf_id(j, 2)}});
    }
    return lam;
}

int TransverseArc::cuff_crossings() const {
    return static_cast<int>(std::count_if(crossings.begin(), crossings.end(),
                                          [](const Crossing& c) { return c.kind == Crossing::Kind::Cuff; }));
}

std::vector<TransverseArc> subdivide_arc(const TransverseArc& arc) {
    std::vector<TransverseArc> pieces(1);
    bool has_cuff = false;
    for (const auto& c : arc.crossings) {
        if (c.kind == Crossing::Kind::Cuff) {
            if (has_cuff) pieces.emplace_back();
            has_cuff = true;
        }
        pieces.back().crossings.push_back(c);
    }
    return pieces;
}

TransverseArc parse_arc(const std::string& text) {
    TransverseArc arc;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char ch) { return std::isspace(ch); }), tok.end());
        if (tok.empty()) continue;
        Crossing c;
        char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
        if (kind != 'L' && kind != 'C') throw Error(ErrorKind::InvalidArc, "bad crossing token " + tok);
        c.kind = kind == 'L' ? Crossing::Kind::Leaf : Crossing::Kind::Cuff;
        std::string num = tok.substr(1);
        if (!num.empty() && (num.back() == '+' || num.back() == '-')) {
            c.forward = num.back() == '+';
            num.pop_back();
        }
        if (num.empty() || !std::all_of(num.begin(), num.end(), [](unsigned char ch) { return std::isdigit(ch); }))
            throw Error(ErrorKind::InvalidArc, "bad crossing token " + tok);
        c.id = std::stoi(num);
        arc.crossings.push_back(c);
    }
    return arc;
}

std::string format_arc(const TransverseArc& arc) {
    std::string out;
    for (const auto& c : arc.crossings) {
        if (!out.empty()) out += ",";
        if (c.kind == Crossing::Kind::Leaf) out += "L" + std::to_string(c.id);
        else out += "C" + std::to_string(c.id) + (c.forward ? "+" : "-");
    }
    return out;
}

Presentation BoundaryComponent::surface() const {
    Presentation p;
    std::string rel;
    for (int i = 0; i < 2 * genus; ++i) p.generators.push_back(static_cast<char>('a' + i));
    for (int i = 0; i < genus; ++i) {
        std::string a(1, static_cast<char>('a' + 2 * i)), b(1, static_cast<char>('a' + 2 * i + 1));
        rel += a + b + invert_word(a) + invert_word(b);
    }
    p.relators.push_back(rel);
    return p;
}

std::string BoundaryInclusion::pushforward(int component, const std::string& word) const {
    const BoundaryComponent& bc = components.at(component);
    std::string out;
    for (char c : word) {
        int idx = std::tolower(static_cast<unsigned char>(c)) - 'a';
        if (!std::isalpha(static_cast<unsigned char>(c)) || idx < 0 || idx >= static_cast<int>(bc.generator_words.size()))
            throw Error(ErrorKind::UnknownLetter, std::string("boundary letter '") + c + "'");
        const std::string& img = bc.generator_words[idx];
        out += std::islower(static_cast<unsigned char>(c)) ? img : invert_word(img);
    }
    return reduce_word(out);
}

std::vector<std::string> BoundaryInclusion::peripheral_words() const {
    std::vector<std::string> out;
    for (int i = 0; i < static_cast<int>(components.size()); ++i)
        for (const auto& w : components[i].peripheral_words) out.push_back(pushforward(i, w));
    return out;
}

void validate(const BoundaryInclusion& inc) {
    if (inc.components.empty()) throw Error(ErrorKind::InvalidInput, "no boundary components");
    for (const auto& r : inc.manifold.relators) inc.manifold.check_word(r);
    for (int i = 0; i < static_cast<int>(inc.components.size()); ++i) {
        const auto& bc = inc.components[i];
        if (bc.genus < 1 || static_cast<int>(bc.generator_words.size()) != 2 * bc.genus)
            throw Error(ErrorKind::InvalidInput, "boundary component needs 2g generator words");
        for (const auto& w : bc.generator_words) inc.manifold.check_word(w);
        Presentation s = bc.surface();
        for (const auto& w : bc.peripheral_words) s.check_word(w);
    }
}

} // namespace pleat
