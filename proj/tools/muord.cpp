// Batch front end: load module/display JSON, run the invariants, write
// machine-readable reports.  Exit codes: 0 ok, 2 precision exhausted,
// 3 invalid module, 4 schema/parameter error.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "muord/fixtures.hpp"
#include "muord/io.hpp"
#include "muord/version.hpp"

namespace fs = std::filesystem;
using namespace muord;

namespace {

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parameter_error("cannot open input file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw parameter_error(std::string("input is not valid JSON: ") + e.what());
    }
    return j;
}

void write_atomic(const std::string& path, const std::string& contents) {
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw parameter_error("cannot open output file: " + path);
        out << contents;
    }
    fs::rename(tmp, target);
}

void emit(const std::string& out_path, Json report) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_atomic(out_path, text);
}

Json report_header(const std::string& command, const ODieudonneModule* m, long long seed) {
    Json j;
    j["library_version"] = kVersion;
    j["command"] = command;
    j["seed"] = seed;
    if (m) {
        Json params;
        params["p"] = m->ring()->p();
        params["m"] = m->ring()->m();
        params["f"] = m->f();
        params["r"] = m->r();
        params["h"] = m->h();
        j["parameters"] = params;
    }
    return j;
}

ODieudonneModule load_module(const std::string& path, int precision) {
    ODieudonneModule m = module_from_json(read_json(path));
    m.validate();
    if (precision > 0 && precision < m.r()) m = truncate(m, precision);
    return m;
}

// shrink a display to a smaller Witt length / truncation degree
Display shrink_display(const Display& d, int r_w, int deg) {
    int new_rw = r_w > 0 ? r_w : d.base()->r_w();
    int new_deg = deg > 0 ? deg : d.base()->base()->deg();
    if (new_rw > d.base()->r_w() || new_deg > d.base()->base()->deg())
        throw parameter_error("cannot extend a display; --witt-length/--deg may only shrink");
    if (new_rw == d.base()->r_w() && new_deg == d.base()->base()->deg()) return d;
    auto ring = WittSeriesRing::get(d.base()->p(), d.base()->m(), new_rw,
                                    d.base()->base()->vars(), new_deg);
    std::vector<Mat<WittSeries>> hw;
    std::vector<std::pair<int, int>> sizes;
    for (int t = 0; t < d.f(); ++t) {
        sizes.emplace_back(d.p_tau(t), d.q_tau(t));
        Mat<WittSeries> b(d.h(), d.h(), ring->zero());
        for (int i = 0; i < d.h(); ++i)
            for (int j = 0; j < d.h(); ++j) {
                std::vector<TruncPoly> comps;
                for (int k = 0; k < new_rw; ++k) {
                    const TruncPoly& c = d.HW(t)(i, j).comps()[k];
                    std::map<std::vector<int>, FqElem> terms;
                    for (const auto& [mono, coeff] : c.terms()) {
                        int total = 0;
                        for (int e : mono) total += e;
                        if (total <= new_deg) terms[mono] = coeff;
                    }
                    comps.emplace_back(ring->base(), std::move(terms));
                }
                b(i, j) = ring->make(std::move(comps));
            }
        hw.push_back(std::move(b));
    }
    return Display(ring, d.f(), d.h(), std::move(sizes), std::move(hw));
}

int run(int argc, char** argv) {
    CLI::App app{"Exact invariants of O-module p-divisible groups: Newton/Hodge polygons, "
                 "partial Hasse invariants, mu-ordinarity, Hodge-Newton splits, duality, and "
                 "universal-deformation Hasse series"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string input, output, svg_path;
    int precision = 0, witt_length = 0, deg = 0, tau = -1;
    long long seed = 0;
    app.add_option("--input", input, "input JSON file");
    app.add_option("--output", output, "output report path (stdout if omitted)");
    app.add_option("--precision", precision, "truncate the module to precision r");
    app.add_option("--witt-length", witt_length, "Witt length for displays");
    app.add_option("--deg", deg, "total-degree truncation for series bases");
    app.add_option("--seed", seed, "seed recorded in reports");
    app.add_option("--tau", tau, "restrict to one embedding index");
    app.add_option("--svg", svg_path, "also write an SVG polygon plot (polygons command)");

    auto* cmd_polygons = app.add_subcommand("polygons", "Newton and Hodge polygons + contacts");
    auto* cmd_hasse = app.add_subcommand("hasse", "partial Hasse invariant reports");
    auto* cmd_muord = app.add_subcommand("mu-ord", "mu-ordinarity certificate");
    auto* cmd_hn = app.add_subcommand("hn-split", "Hodge-Newton split signatures");
    auto* cmd_dual = app.add_subcommand("dual", "duality identities and zero-locus check");
    auto* cmd_deform = app.add_subcommand("deform", "universal deformation + Hasse series");
    auto* cmd_examples = app.add_subcommand("examples", "emit built-in fixtures");
    std::string which = "sect7";
    cmd_examples->add_option("which", which, "sect7 or sect10");

    CLI11_PARSE(app, argc, argv);

    if (cmd_polygons->parsed()) {
        ODieudonneModule m = load_module(input, precision);
        Json rep = report_header("polygons", &m, seed);
        RatPolygon newt = newton_polygon(m);
        RatPolygon hdg = o_hodge_polygon(m);
        rep["signature"] = signature_to_json(signature(m));
        rep["newton"] = polygon_to_json(newt);
        rep["hodge"] = polygon_to_json(hdg);
        Json contacts = Json::array();
        for (int x : contact_points(newt, hdg)) contacts.push_back(x);
        rep["contacts"] = contacts;
        Compare c = compare(newt, hdg);
        rep["newton_vs_hodge"] = c == Compare::Equal  ? "equal"
                                 : c == Compare::Above ? "above"
                                 : c == Compare::Below ? "below"
                                                       : "crossing";
        if (!svg_path.empty()) write_atomic(svg_path, polygons_to_svg(newt, hdg));
        emit(output, rep);
        return 0;
    }
    if (cmd_hasse->parsed()) {
        ODieudonneModule m = load_module(input, precision);
        Json rep = report_header("hasse", &m, seed);
        rep["signature"] = signature_to_json(signature(m));
        Json reports = Json::array();
        for (int t = 0; t < m.f(); ++t) {
            if (tau >= 0 && t != m.mod_f(tau)) continue;
            reports.push_back(hasse_report_to_json(partial_hasse(m, t)));
        }
        rep["hasse"] = reports;
        emit(output, rep);
        return 0;
    }
    if (cmd_muord->parsed()) {
        ODieudonneModule m = load_module(input, precision);
        Json rep = report_header("mu-ord", &m, seed);
        MuOrdCertificate cert = mu_ordinary(m);
        rep["mu_ordinary"] = cert.mu_ordinary;
        rep["newton"] = polygon_to_json(cert.newton);
        rep["hodge"] = polygon_to_json(cert.hodge);
        Json reports = Json::array();
        for (const auto& h : cert.hasse) reports.push_back(hasse_report_to_json(h));
        rep["hasse"] = reports;
        emit(output, rep);
        return 0;
    }
    if (cmd_hn->parsed()) {
        ODieudonneModule m = load_module(input, precision);
        Json rep = report_header("hn-split", &m, seed);
        RatPolygon newt = newton_polygon(m);
        RatPolygon hdg = o_hodge_polygon(m);
        Json splits = Json::array();
        for (int x : newt.break_abscissas()) {
            if (newt.value_at(x) != hdg.value_at(x)) continue;
            auto [a, b] = hodge_newton_split(m, x);
            Json s;
            s["x"] = x;
            s["first"] = signature_to_json(a);
            s["second"] = signature_to_json(b);
            splits.push_back(s);
        }
        rep["splits"] = splits;
        emit(output, rep);
        return 0;
    }
    if (cmd_dual->parsed()) {
        ODieudonneModule m = load_module(input, precision);
        if (!m.has_F()) throw parameter_error("dual: the input must carry F matrices");
        ODieudonneModule md = dualize(m);
        Json rep = report_header("dual", &m, seed);
        Signature s = signature(m), sd = signature(md);
        rep["signature"] = signature_to_json(s);
        rep["dual_signature"] = signature_to_json(sd);
        Json per_tau = Json::array();
        bool all_ok = true;
        for (int t = 0; t < m.f(); ++t) {
            Json e;
            e["tau"] = t;
            int lhs = k_tau(s, t) - k_tau(sd, t);
            int rhs = s.d() - s.f * s.p_tau(t);
            e["k_identity_holds"] = (lhs == rhs);
            HasseReport hm = partial_hasse(m, t), hd = partial_hasse(md, t);
            e["invertible"] = hm.invertible;
            e["dual_invertible"] = hd.invertible;
            e["zero_locus_match"] = (hm.invertible == hd.invertible);
            if (lhs != rhs || hm.invertible != hd.invertible) all_ok = false;
            per_tau.push_back(e);
        }
        rep["per_tau"] = per_tau;
        rep["all_identities_hold"] = all_ok;
        emit(output, rep);
        return 0;
    }
    if (cmd_deform->parsed()) {
        Display d = display_from_json(read_json(input));
        d.check_axioms();
        d = shrink_display(d, witt_length, deg);
        Json rep;
        rep["library_version"] = kVersion;
        rep["command"] = "deform";
        rep["seed"] = seed;
        Json params;
        params["p"] = d.base()->p();
        params["m"] = d.base()->m();
        params["f"] = d.f();
        params["r_w"] = d.base()->r_w();
        params["deg"] = d.base()->base()->deg();
        rep["parameters"] = params;
        Display def = d.base()->base()->nvars() == 0 ? universal_deformation(d) : d;
        rep["display"] = display_to_json(def);
        Json series = Json::array();
        for (int t = 0; t < def.f(); ++t) {
            if (tau >= 0 && t != def.mod_f(tau)) continue;
            series.push_back(hasse_series_to_json(hasse_series(def, t)));
        }
        rep["hasse_series"] = series;
        emit(output, rep);
        return 0;
    }
    if (cmd_examples->parsed()) {
        int r = precision > 0 ? precision : 6;
        int rw = witt_length > 0 ? witt_length : 2;
        int dg = deg > 0 ? deg : 8;
        fs::path dir = output.empty() ? fs::path("examples_out") : fs::path(output);
        fs::create_directories(dir);
        if (which == "sect7") {
            ODieudonneModule g1 = fixtures::g1(2, r);
            ODieudonneModule g2 = fixtures::g2(2, r);
            write_atomic((dir / "g1.json").string(), module_to_json(g1).dump(2) + "\n");
            write_atomic((dir / "g2.json").string(), module_to_json(g2).dump(2) + "\n");
            write_atomic((dir / "g1xg2.json").string(),
                         module_to_json(product(g1, g2)).dump(2) + "\n");
            std::cout << "wrote g1.json g2.json g1xg2.json under " << dir << "\n";
        } else if (which == "sect10") {
            Display strata = fixtures::strata_display(2, 1, {0}, 0, rw, dg);
            Display worked = fixtures::worked_display(2, rw, dg);
            write_atomic((dir / "strata_display.json").string(),
                         display_to_json(strata).dump(2) + "\n");
            write_atomic((dir / "worked_display.json").string(),
                         display_to_json(worked).dump(2) + "\n");
            std::cout << "wrote strata_display.json worked_display.json under " << dir << "\n";
        } else {
            throw parameter_error("examples: unknown set \"" + which + "\" (want sect7|sect10)");
        }
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const precision_error& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 2;
    } catch (const invalid_module_error& e) {
        std::cerr << "invalid module: " << e.what() << "\n";
        return 3;
    } catch (const parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const capability_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
