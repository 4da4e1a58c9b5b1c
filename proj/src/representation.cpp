#include "pleat/representation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace pleat {

Moebius evaluate_word(const Representation& rho, const std::string& word) {
    Moebius m = Moebius::identity();
    for (char c : word) {
        auto it = rho.gens.find(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (!std::isalpha(static_cast<unsigned char>(c)) || it == rho.gens.end())
            throw Error(ErrorKind::UnknownLetter, std::string("letter '") + c + "' in word \"" + word + "\"");
        m = m * (std::islower(static_cast<unsigned char>(c)) ? it->second : it->second.inverse());
    }
    return m;
}

Moebius Representation::operator()(const std::string& word) const { return evaluate_word(*this, word); }

double Representation::relator_residual(const Presentation& p) const {
    double r = 0.0;
    for (const auto& rel : p.relators) r = std::max(r, projective_distance(evaluate_word(*this, rel), Moebius::identity()));
    return r;
}

Representation Representation::conjugated(const Moebius& g) const {
    Representation out;
    Moebius gi = g.inverse();
    for (const auto& [k, m] : gens) out.gens[k] = g * m * gi;
    return out;
}

void check_relators(const Representation& rho, const Presentation& p, double eps) {
    for (const auto& rel : p.relators) {
        double r = projective_distance(evaluate_word(rho, rel), Moebius::identity());
        if (r > eps)
            throw Error(ErrorKind::RelatorViolated, "relator " + rel + " has residual " + std::to_string(r));
    }
}

CharacterFingerprint fingerprint(const Representation& rho, const std::vector<std::string>& words) {
    CharacterFingerprint f;
    f.words = words;
    for (const auto& w : words) f.tau.push_back(evaluate_word(rho, w).tr2());
    return f;
}

CharacterFingerprint peripheral_fingerprint(const Representation& rho, const BoundaryInclusion& inc) {
    return fingerprint(rho, inc.peripheral_words());
}

double fingerprint_distance(const CharacterFingerprint& a, const CharacterFingerprint& b) {
    if (a.tau.size() != b.tau.size()) throw Error(ErrorKind::InvalidInput, "fingerprints of different length");
    double d = 0.0;
    for (std::size_t i = 0; i < a.tau.size(); ++i) d = std::max(d, std::abs(a.tau[i] - b.tau[i]));
    return d;
}

bool is_irreducible(const Representation& rho, double eps) {
    for (auto i = rho.gens.begin(); i != rho.gens.end(); ++i)
        for (auto j = std::next(i); j != rho.gens.end(); ++j) {
            Moebius c = commutator(i->second, j->second);
            if (std::abs(c.tr() - 2.0) > eps) return true;
        }
    return false;
}

namespace {

using CMat = Eigen::MatrixXcd;

// Right translation of m along basis element k of sl2 by step h (exact exponential).
Moebius nudge(const Moebius& m, int k, double h) {
    Moebius e;
    if (k == 0) e = Moebius{std::exp(h), 0.0, 0.0, std::exp(-h)};
    else if (k == 1) e = Moebius{1.0, h, 0.0, 1.0};
    else e = Moebius{1.0, 0.0, h, 1.0};
    return m * e;
}

} // namespace

RankReport jacobian_rank(const Representation& rho, const std::vector<std::string>& words, double h,
                         double eps_rank) {
    if (!is_irreducible(rho))
        throw Error(ErrorKind::ReducibleRepresentation, "all generator pairs share a fixed point");
    std::vector<char> keys;
    for (const auto& [k, m] : rho.gens) keys.push_back(k);
    int n = static_cast<int>(keys.size()) * 3;
    int rows = static_cast<int>(words.size());
    CMat J(rows, n);
    for (int g = 0; g < static_cast<int>(keys.size()); ++g)
        for (int k = 0; k < 3; ++k) {
            Representation plus = rho, minus = rho;
            plus.gens[keys[g]] = nudge(rho.gens.at(keys[g]), k, h);
            minus.gens[keys[g]] = nudge(rho.gens.at(keys[g]), k, -h);
            auto fp = fingerprint(plus, words), fm = fingerprint(minus, words);
            for (int r = 0; r < rows; ++r) J(r, 3 * g + k) = (fp.tau[r] - fm.tau[r]) / (2.0 * h);
        }
    // Conjugation by exp(sX) moves generator m along Ad(m^-1) X - X in right-translation coordinates.
    CMat C(n, 3);
    const Moebius basis[3] = {{1.0, 0.0, 0.0, -1.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}};
    for (int g = 0; g < static_cast<int>(keys.size()); ++g) {
        const Moebius& m = rho.gens.at(keys[g]);
        for (int x = 0; x < 3; ++x) {
            Moebius y = m.inverse() * basis[x] * m;
            C(3 * g + 0, x) = y.a - basis[x].a;
            C(3 * g + 1, x) = y.b - basis[x].b;
            C(3 * g + 2, x) = y.c - basis[x].c;
        }
    }
    Eigen::HouseholderQR<CMat> qr(C);
    CMat Q = qr.householderQ() * CMat::Identity(n, 3);
    CMat P = CMat::Identity(n, n) - Q * Q.adjoint();
    Eigen::JacobiSVD<CMat> svd(J * P);
    RankReport rep;
    for (int i = 0; i < svd.singularValues().size(); ++i) rep.singular_values.push_back(svd.singularValues()(i));
    double top = rep.singular_values.empty() ? 0.0 : rep.singular_values.front();
    for (double s : rep.singular_values)
        if (s > eps_rank * top) ++rep.rank;
    if (rep.rank < static_cast<int>(rep.singular_values.size()) && rep.rank > 0)
        rep.gap = rep.singular_values[rep.rank - 1] / std::max(rep.singular_values[rep.rank], std::numeric_limits<double>::min());
    else
        rep.gap = std::numeric_limits<double>::infinity();
    return rep;
}

RankReport jacobian_rank(const Representation& rho, const BoundaryInclusion& inc, double h, double eps_rank) {
    return jacobian_rank(rho, inc.peripheral_words(), h, eps_rank);
}

double conjugacy_residual(const Representation& a, const Representation& b) {
    // Solve G A_i = +/- B_i G in the least-squares sense for a 2x2 G: the smallest singular
    // vector of the stacked linear system, tried over all sign patterns of the first two
    // generators (signs of further generators follow by choosing the better one).
    if (a.gens.size() != b.gens.size()) return std::numeric_limits<double>::infinity();
    std::vector<std::pair<Moebius, Moebius>> pairs;
    for (const auto& [k, m] : a.gens) {
        auto it = b.gens.find(k);
        if (it == b.gens.end()) return std::numeric_limits<double>::infinity();
        pairs.emplace_back(m, it->second);
    }
    double best = std::numeric_limits<double>::infinity();
    int combos = 1 << std::min<int>(static_cast<int>(pairs.size()), 10);
    for (int mask = 0; mask < combos; ++mask) {
        CMat L(4 * static_cast<int>(pairs.size()), 4);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const Moebius& A = pairs[i].first;
            Moebius B = ((mask >> i) & 1) ? -pairs[i].second : pairs[i].second;
            // Unknown g = (g11, g12, g21, g22); rows of G A - B G.
            int r = 4 * static_cast<int>(i);
            L.row(r + 0) << A.a - B.a, A.c, -B.b, 0.0;
            L.row(r + 1) << A.b, A.d - B.a, 0.0, -B.b;
            L.row(r + 2) << -B.c, 0.0, A.a - B.d, A.c;
            L.row(r + 3) << 0.0, -B.c, A.b, A.d - B.d;
        }
        Eigen::JacobiSVD<CMat> svd(L, Eigen::ComputeFullV);
        Eigen::VectorXcd g = svd.matrixV().col(3);
        std::complex<double> det = g(0) * g(3) - g(1) * g(2);
        if (std::abs(det) < 1e-8) continue;
        best = std::min(best, svd.singularValues()(3) / std::sqrt(std::abs(det)));
    }
    return best;
}

PantsGroup standard_pants(const std::array<cplx, 3>& lambda) {
    for (const auto& l : lambda)
        if (std::abs(std::sinh(l / 2.0)) < 1e-12)
            throw Error(ErrorKind::NonHyperbolicParameters, "cuff length in 2 pi i Z");
    cplx m = std::exp(lambda[0] / 2.0);
    cplx y = 2.0 * std::cosh(lambda[1] / 2.0);
    cplx z = -2.0 * std::cosh(lambda[2] / 2.0);
    cplx a = (z - y / m) / (m - 1.0 / m);
    cplx d = y - a;
    PantsGroup p;
    p.boundary[0] = Moebius{m, 0.0, 0.0, 1.0 / m};
    p.boundary[1] = Moebius{a, 1.0, a * d - 1.0, d};
    p.boundary[2] = (p.boundary[0] * p.boundary[1]).inverse();
    const cplx mu[3] = {m, std::exp(lambda[1] / 2.0), -std::exp(lambda[2] / 2.0)};
    for (int k = 0; k < 3; ++k) {
        const Moebius& b = p.boundary[k];
        auto eig = [&](cplx ev) {
            ProjectivePoint v1{b.b, ev - b.a}, v2{ev - b.d, b.c};
            double n1 = std::norm(v1.z1) + std::norm(v1.z2), n2 = std::norm(v2.z1) + std::norm(v2.z2);
            return (n1 >= n2 ? v1 : v2).normalized();
        };
        p.plus[k] = eig(mu[k]);
        p.minus[k] = eig(1.0 / mu[k]);
    }
    return p;
}

namespace {

// Sends the minus point of end k to 0, its plus point to infinity and the plus point of
// end k+1 to 1.
Moebius cuff_frame(const PantsGroup& p, int k) {
    return map_to_standard(p.minus[k], p.plus[k], p.plus[(k + 1) % 3]);
}

} // namespace

Representation fenchel_nielsen_rep(const PantsDecomposition& pd, const std::vector<cplx>& lengths,
                                   const std::vector<cplx>& twists) {
    int nc = pd.cuff_count();
    if (static_cast<int>(lengths.size()) != nc || static_cast<int>(twists.size()) != nc)
        throw Error(ErrorKind::InvalidInput, "need one length and one twist per cuff");
    std::vector<std::array<int, 3>> pants_cuffs;
    for (const auto& p : pd.pants) pants_cuffs.push_back({p.ends[0].cuff, p.ends[1].cuff, p.ends[2].cuff});
    PantsDecomposition ref = glued_decomposition(pd.genus, pants_cuffs);
    for (int c = 0; c < nc; ++c)
        if (ref.cuffs[c].word != pd.cuffs[c].word)
            throw Error(ErrorKind::InvalidInput, "decomposition is not in the glued normal form");
    GluingPlan plan = gluing_plan(pd.genus, pants_cuffs);

    int np = pd.pants_count();
    std::vector<PantsGroup> groups;
    for (int j = 0; j < np; ++j)
        groups.push_back(standard_pants({lengths[pants_cuffs[j][0]], lengths[pants_cuffs[j][1]], lengths[pants_cuffs[j][2]]}));

    const Moebius J{0.0, 1.0, -1.0, 0.0};
    auto glue = [&](int c) {
        // Maps pants `second` coordinates to pants `first` coordinates.
        const GluingEdge& e = plan.edges[c];
        cplx w = twists[c];
        Moebius D{std::exp(w / 2.0), 0.0, 0.0, std::exp(-w / 2.0)};
        return cuff_frame(groups[e.first.first], e.first.second).inverse() * D * J *
               cuff_frame(groups[e.second.first], e.second.second);
    };

    std::vector<Moebius> place(np, Moebius::identity());
    for (int j : plan.pants_order) {
        int c = plan.parent_edge[j];
        if (c < 0) continue;
        const GluingEdge& e = plan.edges[c];
        if (e.second.first == j) {
            place[j] = place[e.first.first] * glue(c);
        } else {
            // Symmetric gluing: the same formula with the roles exchanged.
            Moebius D{std::exp(twists[c] / 2.0), 0.0, 0.0, std::exp(-twists[c] / 2.0)};
            place[j] = place[e.second.first] * cuff_frame(groups[e.second.first], e.second.second).inverse() * D * J *
                       cuff_frame(groups[e.first.first], e.first.second);
        }
    }

    Representation rho;
    for (int j = 0; j < np; ++j) {
        Moebius pi = place[j].inverse();
        rho.gens[static_cast<char>('a' + 2 * j)] = place[j] * groups[j].boundary[0] * pi;
        rho.gens[static_cast<char>('a' + 2 * j + 1)] = place[j] * groups[j].boundary[1] * pi;
    }
    for (const auto& e : plan.edges)
        if (!e.tree) rho.gens[e.stable] = place[e.first.first] * glue(e.cuff) * place[e.second.first].inverse();
    return rho;
}

const char* recipe_name(RepresentationPath::Recipe r) {
    switch (r) {
    case RepresentationPath::Recipe::Direct: return "direct";
    case RepresentationPath::Recipe::QuakeBend: return "quake-bend";
    case RepresentationPath::Recipe::Interpolated: return "interpolated";
    }
    return "?";
}

Representation RepresentationPath::at(double s) const {
    if (family) return family(s);
    if (samples.empty()) throw Error(ErrorKind::InvalidInput, "empty path");
    for (std::size_t i = 0; i < t.size(); ++i)
        if (std::abs(t[i] - s) < 1e-14) return samples[i];
    throw Error(ErrorKind::InvalidInput, "path has no sample at requested parameter");
}

bool RepresentationPath::is_loop(double eps) const {
    Representation a = at(0.0), b = at(1.0);
    for (const auto& [k, m] : a.gens)
        if (!projectively_equal(m, b.gens.at(k), eps)) return false;
    return true;
}

RepresentationPath sample_family(std::function<Representation(double)> family, int n,
                                 RepresentationPath::Recipe recipe) {
    RepresentationPath p;
    p.recipe = recipe;
    p.family = std::move(family);
    for (int i = 0; i <= n; ++i) {
        double s = static_cast<double>(i) / n;
        p.t.push_back(s);
        p.samples.push_back(p.family(s));
    }
    return p;
}

RepresentationPath interpolated_path(std::vector<double> t, std::vector<Representation> samples) {
    if (t.size() != samples.size() || t.size() < 2) throw Error(ErrorKind::InvalidInput, "path needs at least two samples");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw Error(ErrorKind::InvalidInput, "path parameters must increase");
    // Align signs so that consecutive lifts are close before interpolating.
    for (std::size_t i = 1; i < samples.size(); ++i)
        for (auto& [k, m] : samples[i].gens) {
            const Moebius& prev = samples[i - 1].gens.at(k);
            Moebius neg = -m;
            auto d = [](const Moebius& x, const Moebius& y) {
                return std::norm(x.a - y.a) + std::norm(x.b - y.b) + std::norm(x.c - y.c) + std::norm(x.d - y.d);
            };
            if (d(neg, prev) < d(m, prev)) m = neg;
        }
    RepresentationPath p;
    p.recipe = RepresentationPath::Recipe::Interpolated;
    p.t = t;
    p.samples = samples;
    p.family = [t, samples](double s) {
        std::size_t i = 0;
        while (i + 2 < t.size() && s > t[i + 1]) ++i;
        double u = (s - t[i]) / (t[i + 1] - t[i]);
        Representation r;
        for (const auto& [k, m] : samples[i].gens) {
            const Moebius& n = samples[i + 1].gens.at(k);
            r.gens[k] = Moebius::normalized((1 - u) * m.a + u * n.a, (1 - u) * m.b + u * n.b,
                                            (1 - u) * m.c + u * n.c, (1 - u) * m.d + u * n.d);
        }
        return r;
    };
    return p;
}

double continuity_certificate(const RepresentationPath& path) {
    double c = 0.0;
    for (std::size_t i = 1; i < path.samples.size(); ++i)
        for (const auto& [k, m] : path.samples[i].gens)
            c = std::max(c, projective_distance(m, path.samples[i - 1].gens.at(k)));
    return c;
}

} // namespace pleat
