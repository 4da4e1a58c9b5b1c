#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pleat/json_io.hpp"
#include "pleat/random.hpp"
#include "pleat/volume.hpp"

namespace pleat {

namespace {

struct ExperimentConfig {
    std::vector<std::string> inputs;
    std::string pd_file, inclusion_file;
    std::optional<double> tolerance;
    int steps = 64;
    double horoball = 1.0;
    std::uint64_t seed = 1;
    std::string format;
    bool rank = false;
    std::uint64_t orientation = 0;
    std::string arc;
    std::vector<std::string> words;
    std::string quantity = "volume";
    int leaf = 0;
};

std::string num(double x) {
    std::ostringstream s;
    s << std::setprecision(15) << x;
    return s.str();
}

std::string num(cplx z) {
    std::ostringstream s;
    s << std::setprecision(15) << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+")
      << std::abs(z.imag()) << "i";
    return s.str();
}

std::string num(const ProjectivePoint& p) { return p.is_infinity() ? "inf" : num(p.value()); }

void round15(json& j) {
    if (j.is_number_float()) {
        j = std::stod(num(j.get<double>()));
    } else if (j.is_structured()) {
        for (auto& v : j) round15(v);
    }
}

void emit_json(std::ostream& out, json j) {
    round15(j);
    out << j.dump(2) << "\n";
}

std::string data_file(const std::string& name) { return std::string(PLEAT_DATA_DIR) + "/" + name; }

std::string single_input(const ExperimentConfig& c) {
    if (c.inputs.size() != 1) throw Error(ErrorKind::InvalidInput, "exactly one --input file is required");
    return c.inputs[0];
}

PantsDecomposition load_pd(const ExperimentConfig& c) {
    return decomposition_from_json(load_json_file(c.pd_file.empty() ? data_file("genus2_theta.json") : c.pd_file));
}

BoundaryInclusion load_inclusion(const ExperimentConfig& c) {
    return inclusion_from_json(
        load_json_file(c.inclusion_file.empty() ? data_file("handlebody_f2.json") : c.inclusion_file));
}

PathSpec load_path(const ExperimentConfig& c) {
    json j = load_json_file(single_input(c));
    if (!c.pd_file.empty()) {
        PantsDecomposition pd = load_pd(c);
        return path_from_json(j, &pd);
    }
    PathSpec spec = path_from_json(j);
    if (!spec.pd) spec.pd = theta_decomposition();
    return spec;
}

OrientationAssignment orientation(const ExperimentConfig& c, const PantsDecomposition& pd) {
    if (pd.cuff_count() < 64 && (c.orientation >> pd.cuff_count()) != 0)
        throw Error(ErrorKind::InvalidInput, "orientation bits exceed the number of cuffs");
    return OrientationAssignment::from_bits(c.orientation, pd.cuff_count());
}

std::string svg_plot(const std::vector<double>& x, const std::vector<double>& y, const std::string& title,
                     const std::string& ylabel) {
    const double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
    double ymin = *std::min_element(y.begin(), y.end()), ymax = *std::max_element(y.begin(), y.end());
    if (ymax - ymin < 1e-12) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    double xmin = x.front(), xmax = x.back();
    if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
    auto px = [&](double v) { return L + (v - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double v) { return H - B - (v - ymin) / (ymax - ymin) * (H - T - B); };
    std::ostringstream s;
    s << std::setprecision(6);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">t</text>\n";
    s << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 16 " << (T + H - B) / 2
      << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
    for (double v : {ymin, ymax})
        s << "<text x=\"" << L - 6 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << num(v)
          << "</text>\n";
    for (double v : {xmin, xmax})
        s << "<text x=\"" << px(v) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
          << num(v) << "</text>\n";
    s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) s << (i ? " " : "") << px(x[i]) << "," << py(y[i]);
    s << "\"/>\n</svg>\n";
    return s.str();
}

int cmd_classify(const ExperimentConfig& c, std::ostream& out) {
    Representation rho = representation_from_json(load_json_file(single_input(c)));
    std::vector<std::string> words = c.words;
    if (words.empty()) {
        for (const auto& [k, m] : rho.gens) words.emplace_back(1, k);
        if (rho.gens.size() >= 2) words.push_back(words[0] + words[1]);
    }
    for (const auto& w : words) rho(w);
    double eps = c.tolerance.value_or(kEpsClass);
    json rows = json::array();
    std::string fmt = c.format.empty() ? "csv" : c.format;
    if (fmt == "csv") out << "word,class,tr2,complex_length,fixed_point_1,fixed_point_2\n";
    for (const auto& w : words) {
        Moebius m = rho(w);
        MapClass cls = classify(m, eps);
        std::optional<FixedPoints> fp;
        if (cls != MapClass::Identity) fp = fixed_points(m, eps);
        cplx len = cls == MapClass::Identity ? cplx(0.0) : complex_length(m, eps);
        std::string p1 = fp ? num(fp->first) : "", p2 = fp && fp->second ? num(*fp->second) : "";
        if (fmt == "csv") {
            out << w << "," << map_class_name(cls) << "," << num(m.tr2()) << "," << num(len) << "," << p1 << "," << p2
                << "\n";
        } else {
            json r = {{"word", w}, {"class", map_class_name(cls)}, {"tr2", to_json(m.tr2())}, {"complex_length", to_json(len)}};
            json pts = json::array();
            if (fp) pts.push_back(to_json(fp->first));
            if (fp && fp->second) pts.push_back(to_json(*fp->second));
            r["fixed_points"] = pts;
            rows.push_back(r);
        }
    }
    if (fmt == "json") emit_json(out, rows);
    else if (fmt != "csv") throw Error(ErrorKind::InvalidInput, "classify supports json and csv output");
    return 0;
}

PleatedRealization checked_realization(const ExperimentConfig& c, const Representation& rho, const PantsDecomposition& pd) {
    check_relators(rho, pd.surface);
    AdaptednessReport rep = check_adapted(rho, pd, c.tolerance.value_or(kEpsClass));
    if (!rep.adapted) {
        std::string why;
        for (const auto& r : rep.reasons) why += (why.empty() ? "" : "; ") + r;
        throw Error(ErrorKind::NotAdapted, why);
    }
    OrientationAssignment o = orientation(c, pd);
    return realize(rho, pd, build_lamination(pd, o), EndpointChoice::from_orientation(o));
}

int cmd_pleat(const ExperimentConfig& c, std::ostream& out) {
    Representation rho = representation_from_json(load_json_file(single_input(c)));
    PantsDecomposition pd = load_pd(c);
    PleatedRealization r = checked_realization(c, rho, pd);
    BendingData bd = bending_data(r, TruncationConvention::uniform(pd.cuff_count(), c.horoball));
    std::string fmt = c.format.empty() ? "json" : c.format;
    if (fmt == "json") {
        json j = to_json(r, bd);
        j["orientation"] = c.orientation;
        emit_json(out, j);
    } else if (fmt == "csv") {
        out << "kind,id,angle,length\n";
        for (std::size_t e = 0; e < bd.leaf_angle.size(); ++e)
            out << "leaf," << e << "," << num(bd.leaf_angle[e]) << "," << num(bd.leaf_length[e]) << "\n";
        for (int i = 0; i < pd.cuff_count(); ++i)
            out << "cuff," << pd.cuffs[i].id << "," << num(bd.cuff_angle[i]) << "," << num(bd.cuff_length[i]) << "\n";
    } else {
        throw Error(ErrorKind::InvalidInput, "pleat supports json and csv output");
    }
    return 0;
}

int cmd_bend(const ExperimentConfig& c, std::ostream& out) {
    if (c.arc.empty()) throw Error(ErrorKind::InvalidInput, "--arc is required");
    Representation rho = representation_from_json(load_json_file(single_input(c)));
    PantsDecomposition pd = load_pd(c);
    PleatedRealization r = checked_realization(c, rho, pd);
    TransverseArc arc = parse_arc(c.arc);
    double whole = arc_bending(r, arc);
    std::vector<TransverseArc> pieces = subdivide_arc(arc);
    if (c.format == "json") {
        json p = json::array();
        for (const auto& a : pieces) p.push_back({{"arc", format_arc(a)}, {"angle", arc_bending(r, a)}});
        emit_json(out, {{"arc", format_arc(arc)}, {"angle", whole}, {"pieces", p}});
    } else {
        out << "arc,angle\n" << format_arc(arc) << "," << num(whole) << "\n";
        for (const auto& a : pieces) out << format_arc(a) << "," << num(arc_bending(r, a)) << "\n";
    }
    return 0;
}

VolumeChange path_volume(const ExperimentConfig& c, const PathSpec& spec) {
    TrackedPath tp(spec.path, *spec.pd, orientation(c, *spec.pd), std::max(256, 4 * c.steps));
    TruncationConvention conv = TruncationConvention::uniform(spec.pd->cuff_count(), c.horoball);
    return integrate_volume_change(tp, c.steps, &conv);
}

int cmd_volume_path(const ExperimentConfig& c, std::ostream& out) {
    PathSpec spec = load_path(c);
    VolumeChange v = path_volume(c, spec);
    std::string fmt = c.format.empty() ? "csv" : c.format;
    bool loop = spec.path.is_loop();
    double tol = c.tolerance.value_or(1e-6);
    if (fmt == "csv") {
        out << "t,dV_dt,cumulative\n";
        for (std::size_t k = 0; k < v.t.size(); ++k)
            out << num(v.t[k]) << "," << num(v.derivative[k]) << "," << num(v.cumulative[k]) << "\n";
        out << "# delta_V " << num(v.delta) << " error_estimate " << num(v.error_estimate) << "\n";
        if (loop) out << "# loop defect " << (std::abs(v.delta) < tol ? "PASS" : "FAIL") << "\n";
    } else if (fmt == "json") {
        json j = {{"orientation", c.orientation}, {"steps", c.steps},       {"delta_V", v.delta},
                  {"error_estimate", v.error_estimate}, {"t", v.t},          {"dV_dt", v.derivative},
                  {"cumulative", v.cumulative}};
        if (loop) j["loop_defect"] = std::abs(v.delta) < tol ? "PASS" : "FAIL";
        emit_json(out, j);
    } else if (fmt == "svg") {
        out << svg_plot(v.t, v.cumulative, "volume change along path", "delta V");
    } else {
        throw Error(ErrorKind::InvalidInput, "unknown format " + fmt);
    }
    return 0;
}

void emit_gamma(const ExperimentConfig& c, std::ostream& out, const GammaVolumeChange& g, const PantsDecomposition& pd,
                const char* verdict) {
    if (c.format == "json") {
        json per = json::array();
        for (std::size_t i = 0; i < g.per_orientation.size(); ++i)
            per.push_back({{"orientation", i}, {"delta_V", g.per_orientation[i]}});
        json j = {{"cuffs", pd.cuff_count()},
                  {"delta_V", g.delta},
                  {"error_estimate", g.error_estimate},
                  {"per_orientation", per}};
        if (verdict) j["loop_defect"] = verdict;
        emit_json(out, j);
        return;
    }
    out << "orientation,delta_V\n";
    for (std::size_t i = 0; i < g.per_orientation.size(); ++i) out << i << "," << num(g.per_orientation[i]) << "\n";
    out << "total," << num(g.delta) << "\n";
    out << "# error_estimate " << num(g.error_estimate) << "\n";
    if (verdict) out << "loop defect " << verdict << "\n";
}

int cmd_vol_gamma(const ExperimentConfig& c, std::ostream& out) {
    PathSpec spec = load_path(c);
    emit_gamma(c, out, vol_gamma_change(spec.path, *spec.pd, c.steps, c.horoball), *spec.pd, nullptr);
    return 0;
}

int cmd_loop_defect(const ExperimentConfig& c, std::ostream& out) {
    PathSpec spec = load_path(c);
    GammaVolumeChange g = loop_defect(spec.path, *spec.pd, c.steps, c.horoball);
    bool pass = std::abs(g.delta) < c.tolerance.value_or(1e-6);
    emit_gamma(c, out, g, *spec.pd, pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
}

int expected_dimension(const Presentation& p) {
    return 3 * static_cast<int>(p.generators.size()) - 3 * static_cast<int>(p.relators.size()) - 3;
}

Representation seeded_rep(const ExperimentConfig& c, const BoundaryInclusion& inc) {
    Rng rng(c.seed);
    return random_representation(rng, inc.manifold.generators);
}

int cmd_peripheral(const ExperimentConfig& c, std::ostream& out) {
    BoundaryInclusion inc = load_inclusion(c);
    std::vector<Representation> reps;
    for (const auto& f : c.inputs) reps.push_back(representation_from_json(load_json_file(f)));
    if (reps.empty()) reps.push_back(seeded_rep(c, inc));
    std::vector<CharacterFingerprint> fps;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        check_relators(reps[i], inc.manifold);
        if (!is_irreducible(reps[i]))
            throw Error(ErrorKind::ReducibleRepresentation, "representation " + std::to_string(i) + " is reducible");
        fps.push_back(peripheral_fingerprint(reps[i], inc));
    }
    double tol = c.tolerance.value_or(1e-6);
    json j = {{"fingerprints", json::array()}, {"pairs", json::array()}};
    bool csv = c.format != "json";
    if (csv) out << "rep,word,tr2\n";
    for (std::size_t i = 0; i < fps.size(); ++i) {
        json f = json::array();
        for (std::size_t k = 0; k < fps[i].words.size(); ++k) {
            if (csv) out << i << "," << fps[i].words[k] << "," << num(fps[i].tau[k]) << "\n";
            f.push_back({{"word", fps[i].words[k]}, {"tr2", to_json(fps[i].tau[k])}});
        }
        j["fingerprints"].push_back(f);
    }
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = a + 1; b < reps.size(); ++b) {
            double d = fingerprint_distance(fps[a], fps[b]);
            double res = conjugacy_residual(reps[a], reps[b]);
            const char* verdict = res < tol ? "conjugate" : "not conjugate";
            if (csv)
                out << "# pair " << a << " " << b << " distance " << num(d) << " conjugacy_residual " << num(res) << " "
                    << verdict << "\n";
            j["pairs"].push_back({{"a", a}, {"b", b}, {"distance", d}, {"conjugacy_residual", res}, {"verdict", verdict}});
        }
    if (c.rank) {
        int expected = expected_dimension(inc.manifold);
        for (std::size_t i = 0; i < reps.size(); ++i) {
            RankReport r = jacobian_rank(reps[i], inc);
            if (csv) out << "# rep " << i << " rank " << r.rank << " of " << expected << " expected gap " << num(r.gap) << "\n";
            j["fingerprints"][i].push_back({{"rank", r.rank}, {"expected", expected}, {"gap", r.gap}});
        }
    }
    if (!csv) emit_json(out, j);
    return 0;
}

int cmd_rank(const ExperimentConfig& c, std::ostream& out) {
    BoundaryInclusion inc = load_inclusion(c);
    Representation rho = c.inputs.empty() ? seeded_rep(c, inc) : representation_from_json(load_json_file(single_input(c)));
    check_relators(rho, inc.manifold);
    RankReport r = jacobian_rank(rho, inc);
    int expected = expected_dimension(inc.manifold);
    if (c.format == "json") {
        emit_json(out, {{"rank", r.rank},
                        {"expected", expected},
                        {"gap", std::isfinite(r.gap) ? json(r.gap) : json("inf")},
                        {"singular_values", r.singular_values}});
    } else {
        out << "rank " << r.rank << " of " << expected << " expected\n";
        out << "gap " << num(r.gap) << "\n";
        out << "singular_values";
        for (double s : r.singular_values) out << " " << num(s);
        out << "\n";
    }
    return 0;
}

int cmd_plot(const ExperimentConfig& c, std::ostream& out) {
    PathSpec spec = load_path(c);
    if (c.quantity == "volume") {
        VolumeChange v = path_volume(c, spec);
        out << svg_plot(v.t, v.cumulative, "volume change along path", "delta V");
        return 0;
    }
    if (c.quantity != "angle") throw Error(ErrorKind::InvalidInput, "--quantity must be volume or angle");
    TrackedPath tp(spec.path, *spec.pd, orientation(c, *spec.pd), std::max(256, 4 * c.steps));
    if (c.leaf < 0 || c.leaf >= 3 * spec.pd->pants_count()) throw Error(ErrorKind::InvalidInput, "leaf id out of range");
    std::vector<double> t, y;
    for (int k = 0; k <= c.steps; ++k) {
        t.push_back(static_cast<double>(k) / c.steps);
        y.push_back(leaf_bending(tp.realization(t.back()), c.leaf));
    }
    out << svg_plot(t, y, "bending angle of leaf " + std::to_string(c.leaf), "angle");
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pleated surfaces, bending and volume along representation paths"};
    app.require_subcommand(1);
    ExperimentConfig c;
    auto common = [&](CLI::App* s) {
        s->add_option("--input", c.inputs, "input file (representation or path)")->allow_extra_args(false);
        s->add_option("--pd", c.pd_file, "pants decomposition file");
        s->add_option("--tolerance", c.tolerance, "classification or pass/fail tolerance");
        s->add_option("--steps", c.steps, "quadrature steps (multiple of 4)");
        s->add_option("--horoball", c.horoball, "horoball scale")->check(CLI::PositiveNumber);
        s->add_option("--seed", c.seed, "random seed");
        s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "svg"}));
        s->add_option("--orientation", c.orientation, "cuff orientation bits, bit i set = cuff i backward");
        s->add_option("--inclusion", c.inclusion_file, "boundary inclusion file");
    };
    auto* classify_cmd = app.add_subcommand("classify", "isometry class, trace and fixed points of words");
    common(classify_cmd);
    classify_cmd->add_option("words", c.words, "words to classify");
    auto* pleat_cmd = app.add_subcommand("pleat", "realize the pleated surface and its bending data");
    common(pleat_cmd);
    auto* bend_cmd = app.add_subcommand("bend", "bending along a transverse arc");
    common(bend_cmd);
    bend_cmd->add_option("--arc", c.arc, "arc such as L0,C1+,L4");
    auto* vp_cmd = app.add_subcommand("volume-path", "volume change along a path for one orientation");
    common(vp_cmd);
    auto* vg_cmd = app.add_subcommand("vol-gamma", "volume change summed over all orientations");
    common(vg_cmd);
    auto* ld_cmd = app.add_subcommand("loop-defect", "volume change around a closed loop");
    common(ld_cmd);
    auto* per_cmd = app.add_subcommand("peripheral", "peripheral fingerprints and conjugacy probe");
    common(per_cmd);
    per_cmd->add_flag("--rank", c.rank, "also report the Jacobian rank");
    auto* rank_cmd = app.add_subcommand("rank", "rank of the peripheral map");
    common(rank_cmd);
    auto* plot_cmd = app.add_subcommand("plot", "SVG plot of volume or a bending angle along a path");
    common(plot_cmd);
    plot_cmd->add_option("--quantity", c.quantity, "volume or angle");
    plot_cmd->add_option("--leaf", c.leaf, "leaf id for angle plots");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }

    try {
        if (*classify_cmd) return cmd_classify(c, out);
        if (*pleat_cmd) return cmd_pleat(c, out);
        if (*bend_cmd) return cmd_bend(c, out);
        if (*vp_cmd) return cmd_volume_path(c, out);
        if (*vg_cmd) return cmd_vol_gamma(c, out);
        if (*ld_cmd) return cmd_loop_defect(c, out);
        if (*per_cmd) return cmd_peripheral(c, out);
        if (*rank_cmd) return cmd_rank(c, out);
        if (*plot_cmd) return cmd_plot(c, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::ParseError ? 3 : 2;
    }
    return 0;
}

} // namespace pleat
