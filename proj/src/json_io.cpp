#include "pleat/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace pleat {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
    throw Error(ErrorKind::ParseError, "field '" + field + "': " + msg);
}

const json& member(const json& j, const std::string& key, const std::string& field) {
    if (!j.is_object()) bad(field, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(field.empty() ? key : field + "." + key, "missing");
    return *it;
}

std::string sub(const std::string& field, const std::string& key) { return field.empty() ? key : field + "." + key; }
std::string sub(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

std::string as_string(const json& j, const std::string& field) {
    if (!j.is_string()) bad(field, "expected a string");
    return j.get<std::string>();
}

double as_number(const json& j, const std::string& field) {
    if (!j.is_number()) bad(field, "expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) bad(field, "expected an integer");
    return j.get<int>();
}

const json& as_array(const json& j, const std::string& field) {
    if (!j.is_array()) bad(field, "expected an array");
    return j;
}

char as_letter(const json& j, const std::string& field) {
    std::string s = as_string(j, field);
    if (s.size() != 1 || s[0] < 'a' || s[0] > 'z') bad(field, "expected a single lowercase letter");
    return s[0];
}

Presentation presentation_from_json(const json& j, const std::string& field) {
    Presentation p;
    const json& g = as_array(member(j, "generators", field), sub(field, "generators"));
    for (std::size_t i = 0; i < g.size(); ++i) p.generators.push_back(as_letter(g[i], sub(sub(field, "generators"), i)));
    if (j.contains("relators")) {
        const json& r = as_array(j["relators"], sub(field, "relators"));
        for (std::size_t i = 0; i < r.size(); ++i) p.relators.push_back(as_string(r[i], sub(sub(field, "relators"), i)));
    }
    return p;
}

json to_json(const Presentation& p) {
    json g = json::array();
    for (char c : p.generators) g.push_back(std::string(1, c));
    return {{"generators", g}, {"relators", p.relators}};
}

std::vector<cplx> complex_list(const json& j, const std::string& field) {
    std::vector<cplx> out;
    as_array(j, field);
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_from_json(j[i], sub(field, i)));
    return out;
}

} // namespace

json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        int line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorKind::ParseError,
                    source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

cplx complex_from_json(const json& j, const std::string& field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {as_number(j[0], sub(field, 0)), as_number(j[1], sub(field, 1))};
    bad(field, "expected a number or [re, im]");
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

Moebius moebius_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 4) bad(field, "expected four entries a, b, c, d");
    cplx e[4];
    for (int i = 0; i < 4; ++i) e[i] = complex_from_json(j[i], sub(field, i));
    try {
        return Moebius::normalized(e[0], e[1], e[2], e[3]);
    } catch (const Error&) {
        bad(field, "matrix is singular");
    }
}

json to_json(const Moebius& m) { return json::array({to_json(m.a), to_json(m.b), to_json(m.c), to_json(m.d)}); }

json to_json(const ProjectivePoint& p) {
    if (p.is_infinity()) return "inf";
    return to_json(p.value());
}

PantsDecomposition decomposition_from_json(const json& j) {
    int genus = as_int(member(j, "genus", ""), "genus");
    if (genus < 2) bad("genus", "must be at least 2");
    PantsDecomposition pd;
    if (j.contains("gluing")) {
        const json& gl = as_array(j["gluing"], "gluing");
        std::vector<std::array<int, 3>> pc;
        for (std::size_t i = 0; i < gl.size(); ++i) {
            if (!gl[i].is_array() || gl[i].size() != 3) bad(sub("gluing", i), "expected three cuff indices");
            pc.push_back({as_int(gl[i][0], sub(sub("gluing", i), 0)), as_int(gl[i][1], sub(sub("gluing", i), 1)),
                          as_int(gl[i][2], sub(sub("gluing", i), 2))});
        }
        std::vector<std::string> ids;
        if (j.contains("cuff_ids"))
            for (std::size_t i = 0; i < j["cuff_ids"].size(); ++i)
                ids.push_back(as_string(j["cuff_ids"][i], sub("cuff_ids", i)));
        pd = glued_decomposition(genus, pc, ids);
    } else {
        pd.genus = genus;
        const json& cuffs = as_array(member(j, "cuffs", ""), "cuffs");
        for (std::size_t i = 0; i < cuffs.size(); ++i) {
            std::string f = sub("cuffs", i);
            pd.cuffs.push_back({as_string(member(cuffs[i], "id", f), sub(f, "id")),
                                as_string(member(cuffs[i], "word", f), sub(f, "word"))});
        }
        const json& pants = as_array(member(j, "pants", ""), "pants");
        std::vector<int> marked(pd.cuffs.size(), 0), seen(pd.cuffs.size(), 0);
        for (std::size_t i = 0; i < pants.size(); ++i) {
            std::string f = sub("pants", i);
            const json& ends = as_array(member(pants[i], "cuff_ends", f), sub(f, "cuff_ends"));
            if (ends.size() != 3) bad(sub(f, "cuff_ends"), "expected three ends");
            Pants p;
            for (std::size_t k = 0; k < 3; ++k) {
                std::string fe = sub(sub(f, "cuff_ends"), k);
                std::string id;
                if (ends[k].is_string()) {
                    id = ends[k].get<std::string>();
                } else {
                    id = as_string(member(ends[k], "cuff", fe), sub(fe, "cuff"));
                    if (ends[k].contains("conjugator"))
                        p.ends[k].conjugator = as_string(ends[k]["conjugator"], sub(fe, "conjugator"));
                    if (ends[k].contains("inverse")) {
                        if (!ends[k]["inverse"].is_boolean()) bad(sub(fe, "inverse"), "expected a boolean");
                        p.ends[k].inverted = ends[k]["inverse"].get<bool>();
                    }
                }
                int c = -1;
                for (std::size_t q = 0; q < pd.cuffs.size(); ++q)
                    if (pd.cuffs[q].id == id) c = static_cast<int>(q);
                if (c < 0) bad(fe, "unknown cuff '" + id + "'");
                p.ends[k].cuff = c;
                marked[c] += p.ends[k].inverted;
            }
            pd.pants.push_back(p);
        }
        for (auto& p : pd.pants)
            for (auto& e : p.ends)
                if (!marked[e.cuff] && seen[e.cuff]++ == 1) e.inverted = true;
        if (j.contains("surface")) {
            pd.surface = presentation_from_json(j["surface"], "surface");
        } else {
            std::set<char> letters;
            auto collect = [&](const std::string& w) {
                for (char ch : w) letters.insert(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
            };
            for (const auto& c : pd.cuffs) collect(c.word);
            for (const auto& p : pd.pants)
                for (const auto& e : p.ends) collect(e.conjugator);
            pd.surface.generators.assign(letters.begin(), letters.end());
        }
    }
    validate(pd);
    return pd;
}

json to_json(const PantsDecomposition& pd) {
    json cuffs = json::array(), pants = json::array();
    for (const auto& c : pd.cuffs) cuffs.push_back({{"id", c.id}, {"word", c.word}});
    for (const auto& p : pd.pants) {
        json ends = json::array();
        for (const auto& e : p.ends)
            ends.push_back({{"cuff", pd.cuffs[e.cuff].id}, {"conjugator", e.conjugator}, {"inverse", e.inverted}});
        pants.push_back({{"cuff_ends", ends}});
    }
    return {{"genus", pd.genus}, {"surface", to_json(pd.surface)}, {"cuffs", cuffs}, {"pants", pants}};
}

Representation representation_from_json(const json& j) {
    const json& m = member(j, "matrices", "");
    if (!m.is_object() || m.empty()) bad("matrices", "expected a non-empty object");
    Representation rho;
    for (auto it = m.begin(); it != m.end(); ++it) {
        std::string f = sub("matrices", it.key());
        if (it.key().size() != 1 || it.key()[0] < 'a' || it.key()[0] > 'z') bad(f, "generator names are single lowercase letters");
        rho.gens[it.key()[0]] = moebius_from_json(it.value(), f);
    }
    return rho;
}

json to_json(const Representation& rho) {
    json m = json::object();
    for (const auto& [c, g] : rho.gens) m[std::string(1, c)] = to_json(g);
    return {{"matrices", m}};
}

BoundaryInclusion inclusion_from_json(const json& j) {
    BoundaryInclusion inc;
    inc.manifold = presentation_from_json(member(j, "manifold", ""), "manifold");
    const json& b = as_array(member(j, "boundary", ""), "boundary");
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::string f = sub("boundary", i);
        BoundaryComponent comp;
        const json& gw = as_array(member(b[i], "generator_words", f), sub(f, "generator_words"));
        for (std::size_t k = 0; k < gw.size(); ++k)
            comp.generator_words.push_back(as_string(gw[k], sub(sub(f, "generator_words"), k)));
        comp.genus = b[i].contains("genus") ? as_int(b[i]["genus"], sub(f, "genus"))
                                            : static_cast<int>(comp.generator_words.size() / 2);
        const json& pw = as_array(member(b[i], "peripheral_words", f), sub(f, "peripheral_words"));
        for (std::size_t k = 0; k < pw.size(); ++k)
            comp.peripheral_words.push_back(as_string(pw[k], sub(sub(f, "peripheral_words"), k)));
        inc.components.push_back(comp);
    }
    validate(inc);
    return inc;
}

namespace {

struct Deform {
    enum class Kind { Length, Twist, Bend, TwistCircle, ConjugateCircle } kind;
    int cuff = 0;
    cplx amount{0.0};
    bool retrace = false;
    Moebius axis;
};

double profile(const Deform& d, double t) {
    if (!d.retrace) return t;
    double s = std::sin(M_PI * t);
    return s * s;
}

Deform deform_from_json(const json& j, const std::string& f, int cuffs) {
    Deform d;
    std::string kind = as_string(member(j, "kind", f), sub(f, "kind"));
    if (kind == "length") d.kind = Deform::Kind::Length;
    else if (kind == "twist") d.kind = Deform::Kind::Twist;
    else if (kind == "bend") d.kind = Deform::Kind::Bend;
    else if (kind == "twist-circle") d.kind = Deform::Kind::TwistCircle;
    else if (kind == "conjugate-circle") d.kind = Deform::Kind::ConjugateCircle;
    else bad(sub(f, "kind"), "unknown deformation '" + kind + "'");
    if (d.kind == Deform::Kind::ConjugateCircle) {
        d.axis = j.contains("axis") ? moebius_from_json(j["axis"], sub(f, "axis"))
                                    : Moebius::normalized(1.0, cplx(0.3, 0.1), cplx(-0.2, 0.4), 1.0);
    } else {
        d.cuff = as_int(member(j, "cuff", f), sub(f, "cuff"));
        if (d.cuff < 0 || d.cuff >= cuffs) bad(sub(f, "cuff"), "cuff index out of range");
        d.amount = complex_from_json(member(j, "amount", f), sub(f, "amount"));
    }
    if (j.contains("profile")) {
        std::string p = as_string(j["profile"], sub(f, "profile"));
        if (p == "retrace") d.retrace = true;
        else if (p != "linear") bad(sub(f, "profile"), "expected linear or retrace");
    }
    return d;
}

} // namespace

PathSpec path_from_json(const json& j, const PantsDecomposition* pd_hint) {
    PathSpec spec;
    if (j.contains("name")) spec.name = as_string(j["name"], "name");
    std::string recipe = j.contains("recipe") ? as_string(j["recipe"], "recipe") : "samples";
    if (j.contains("decomposition")) spec.pd = decomposition_from_json(j["decomposition"]);
    else if (pd_hint) spec.pd = *pd_hint;

    if (recipe == "samples") {
        const json& s = as_array(member(j, "samples", ""), "samples");
        std::vector<double> t;
        std::vector<Representation> reps;
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::string f = sub("samples", i);
            t.push_back(as_number(member(s[i], "t", f), sub(f, "t")));
            reps.push_back(representation_from_json(s[i]));
        }
        spec.path = interpolated_path(std::move(t), std::move(reps));
        return spec;
    }
    if (recipe != "fenchel-nielsen") bad("recipe", "expected samples or fenchel-nielsen");
    if (!spec.pd) spec.pd = theta_decomposition();
    PantsDecomposition pd = *spec.pd;
    std::vector<cplx> lengths = complex_list(member(j, "lengths", ""), "lengths");
    std::vector<cplx> twists = j.contains("twists") ? complex_list(j["twists"], "twists")
                                                    : std::vector<cplx>(pd.cuff_count(), 0.0);
    if (static_cast<int>(lengths.size()) != pd.cuff_count()) bad("lengths", "expected one entry per cuff");
    if (static_cast<int>(twists.size()) != pd.cuff_count()) bad("twists", "expected one entry per cuff");
    std::vector<Deform> deforms;
    if (j.contains("deform")) {
        const json& d = as_array(j["deform"], "deform");
        for (std::size_t i = 0; i < d.size(); ++i) deforms.push_back(deform_from_json(d[i], sub("deform", i), pd.cuff_count()));
    }
    int samples = j.contains("samples") ? as_int(j["samples"], "samples") : 64;
    if (samples < 1) bad("samples", "must be positive");
    fenchel_nielsen_rep(pd, lengths, twists);  // fail early on a bad decomposition
    auto family = [pd, lengths, twists, deforms](double t) {
        std::vector<cplx> l = lengths, w = twists;
        Moebius g;
        for (const auto& d : deforms) {
            switch (d.kind) {
            case Deform::Kind::Length: l[d.cuff] += d.amount * profile(d, t); break;
            case Deform::Kind::Twist: w[d.cuff] += d.amount * profile(d, t); break;
            case Deform::Kind::Bend: w[d.cuff] += cplx(0.0, 1.0) * d.amount * profile(d, t); break;
            case Deform::Kind::TwistCircle:
                w[d.cuff] += d.amount * (std::exp(cplx(0.0, 2.0 * M_PI * t)) - 1.0);
                break;
            case Deform::Kind::ConjugateCircle:
                g = d.axis * Moebius::diagonal(std::exp(cplx(0.0, M_PI * t))) * d.axis.inverse() * g;
                break;
            }
        }
        return fenchel_nielsen_rep(pd, l, w).conjugated(g);
    };
    spec.path = sample_family(family, samples, RepresentationPath::Recipe::QuakeBend);
    return spec;
}

json to_json(const PleatedRealization& r, const BendingData& bd) {
    json leaves = json::array(), cuffs = json::array(), tris = json::array();
    for (std::size_t e = 0; e < bd.leaf_angle.size(); ++e) {
        auto [p, q] = r.leaf_endpoints(static_cast<int>(e));
        leaves.push_back({{"id", e},
                          {"endpoints", json::array({to_json(p), to_json(q)})},
                          {"angle", bd.leaf_angle[e]},
                          {"truncated_length", bd.leaf_length[e]}});
    }
    for (std::size_t j = 0; j < r.pants.size(); ++j)
        for (const Triangle* t : {&r.pants[j].t1, &r.pants[j].t2})
            tris.push_back({{"pants", j}, {"vertices", json::array({to_json((*t)[0]), to_json((*t)[1]), to_json((*t)[2])})}});
    for (int i = 0; i < r.pd.cuff_count(); ++i)
        cuffs.push_back({{"id", r.pd.cuffs[i].id},
                         {"class", map_class_name(bd.cuff_class[i])},
                         {"complex_length", to_json(complex_length(r.rho(r.pd.cuffs[i].word)))},
                         {"endpoint", to_json(r.zeta[i])},
                         {"angle", bd.cuff_angle[i]}});
    return {{"leaves", leaves}, {"triangles", tris}, {"cuffs", cuffs}};
}

json to_json(const AdaptednessReport& rep, const PantsDecomposition& pd) {
    json cls = json::array(), pairs = json::array();
    for (std::size_t i = 0; i < rep.cuff_class.size(); ++i)
        cls.push_back({{"id", pd.cuffs[i].id}, {"class", map_class_name(rep.cuff_class[i])}});
    for (const auto& p : rep.pairs)
        pairs.push_back({{"pants", p.pants},
                         {"ends", json::array({p.end_a, p.end_b})},
                         {"tr2_commutator", to_json(p.test.tr2_commutator)},
                         {"shared_endpoint", p.test.flagged}});
    return {{"adapted", rep.adapted}, {"cuffs", cls}, {"pairs", pairs}, {"reasons", rep.reasons}};
}

} // namespace pleat
