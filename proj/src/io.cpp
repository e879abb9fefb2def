#include "muord/io.hpp"

#include <sstream>

namespace muord {

namespace {

long long require_int(const Json& j, const char* what) {
    if (!j.is_number_integer())
        throw parameter_error(std::string("schema: expected integer for ") + what);
    return j.get<long long>();
}

FqElem parse_fq(const Json& j, const FqCtxPtr& fq, const char* where) {
    if (j.is_number_integer()) return fq->from_int(j.get<long long>());
    if (!j.is_array() || (int)j.size() != fq->m())
        throw parameter_error(std::string("schema: bad residue coordinates at ") + where);
    std::vector<long long> c;
    for (const auto& x : j) c.push_back(require_int(x, where));
    return fq->make(std::move(c));
}

WittScalar parse_entry(const Json& j, const WittRingPtr& ring, const char* where) {
    if (j.is_number_integer()) return ring->from_int(j.get<long long>());
    if (!j.is_array() || (int)j.size() != ring->r())
        throw parameter_error(std::string("schema: matrix entry must be an integer or an array "
                                          "of r coordinate arrays at ") +
                              where);
    std::vector<FqElem> coords;
    for (const auto& x : j) coords.push_back(parse_fq(x, ring->residue_field(), where));
    return ring->from_witt_coordinates(coords);
}

Mat<WittScalar> parse_matrix(const Json& j, const WittRingPtr& ring, int h, const char* where) {
    if (!j.is_array() || (int)j.size() != h)
        throw parameter_error(std::string("schema: expected an h x h matrix at ") + where);
    Mat<WittScalar> m(h, h, ring->zero());
    for (int i = 0; i < h; ++i) {
        if (!j[i].is_array() || (int)j[i].size() != h)
            throw parameter_error(std::string("schema: expected an h x h matrix at ") + where);
        for (int c = 0; c < h; ++c) m(i, c) = parse_entry(j[i][c], ring, where);
    }
    return m;
}

Json fq_to_json(const FqElem& x) {
    Json a = Json::array();
    for (long long c : x.coeffs()) a.push_back(c);
    return a;
}

Json entry_to_json(const WittScalar& x) {
    Json a = Json::array();
    for (const FqElem& c : x.ring()->witt_coordinates(x)) a.push_back(fq_to_json(c));
    return a;
}

TruncPoly parse_poly(const Json& j, const SeriesRingPtr& ring, const char* where) {
    if (!j.is_array()) throw parameter_error(std::string("schema: bad polynomial at ") + where);
    std::map<std::vector<int>, FqElem> terms;
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 2)
            throw parameter_error(std::string("schema: polynomial term must be [coeff, exps] at ") +
                                  where);
        FqElem c = parse_fq(term[0], ring->field(), where);
        if (!term[1].is_array() || (int)term[1].size() != ring->nvars())
            throw parameter_error(std::string("schema: exponent vector length mismatch at ") +
                                  where);
        std::vector<int> exps;
        int deg = 0;
        for (const auto& e : term[1]) {
            int v = (int)require_int(e, where);
            if (v < 0) throw parameter_error(std::string("schema: negative exponent at ") + where);
            exps.push_back(v);
            deg += v;
        }
        if (!c.is_zero() && deg <= ring->deg()) terms[exps] = c;
    }
    return TruncPoly(ring, std::move(terms));
}

WittSeries parse_series_entry(const Json& j, const WittSeriesRingPtr& ring, const char* where) {
    if (j.is_number_integer()) return ring->from_int(j.get<long long>());
    if (!j.is_array() || (int)j.size() != ring->r_w())
        throw parameter_error(std::string("schema: HW entry must be an integer or an array of "
                                          "r_w polynomials at ") +
                              where);
    std::vector<TruncPoly> comps;
    for (const auto& x : j) comps.push_back(parse_poly(x, ring->base(), where));
    return ring->make(std::move(comps));
}

Json poly_to_json(const TruncPoly& f) {
    Json a = Json::array();
    for (const auto& [mono, c] : f.terms()) {
        Json exps = Json::array();
        for (int e : mono) exps.push_back(e);
        a.push_back(Json::array({fq_to_json(c), exps}));
    }
    return a;
}

Json series_entry_to_json(const WittSeries& x) {
    Json a = Json::array();
    for (const auto& c : x.comps()) a.push_back(poly_to_json(c));
    return a;
}

} // namespace

ODieudonneModule module_from_json(const Json& j) {
    for (const char* key : {"p", "m", "f", "r", "h", "V"})
        if (!j.contains(key))
            throw parameter_error(std::string("schema: module is missing \"") + key + "\"");
    long long p = require_int(j["p"], "p");
    int m = (int)require_int(j["m"], "m");
    int f = (int)require_int(j["f"], "f");
    int r = (int)require_int(j["r"], "r");
    int h = (int)require_int(j["h"], "h");
    if (f < 1 || m % f != 0) throw parameter_error("schema: need f | m");
    auto ring = WittRing::get(p, m, r);
    if (!j["V"].is_array() || (int)j["V"].size() != f)
        throw parameter_error("schema: \"V\" must hold f matrices");
    std::vector<Mat<WittScalar>> vm;
    for (int t = 0; t < f; ++t) vm.push_back(parse_matrix(j["V"][t], ring, h, "V"));
    std::optional<std::vector<Mat<WittScalar>>> fm;
    if (j.contains("F") && !j["F"].is_null()) {
        if (!j["F"].is_array() || (int)j["F"].size() != f)
            throw parameter_error("schema: \"F\" must hold f matrices");
        fm.emplace();
        for (int t = 0; t < f; ++t) fm->push_back(parse_matrix(j["F"][t], ring, h, "F"));
    }
    return ODieudonneModule(ring, f, h, std::move(vm), std::move(fm));
}

Json module_to_json(const ODieudonneModule& m) {
    Json j;
    j["p"] = m.ring()->p();
    j["m"] = m.ring()->m();
    j["f"] = m.f();
    j["r"] = m.r();
    j["h"] = m.h();
    Json vs = Json::array();
    for (int t = 0; t < m.f(); ++t) {
        Json rows = Json::array();
        for (int i = 0; i < m.h(); ++i) {
            Json row = Json::array();
            for (int c = 0; c < m.h(); ++c) row.push_back(entry_to_json(m.V(t)(i, c)));
            rows.push_back(row);
        }
        vs.push_back(rows);
    }
    j["V"] = vs;
    if (m.has_F()) {
        Json fs = Json::array();
        for (int t = 0; t < m.f(); ++t) {
            Json rows = Json::array();
            for (int i = 0; i < m.h(); ++i) {
                Json row = Json::array();
                for (int c = 0; c < m.h(); ++c) row.push_back(entry_to_json(m.F(t)(i, c)));
                rows.push_back(row);
            }
            fs.push_back(rows);
        }
        j["F"] = fs;
    }
    return j;
}

Display display_from_json(const Json& j) {
    for (const char* key : {"p", "m", "f", "r_w", "deg", "vars", "blocks"})
        if (!j.contains(key))
            throw parameter_error(std::string("schema: display is missing \"") + key + "\"");
    long long p = require_int(j["p"], "p");
    int m = (int)require_int(j["m"], "m");
    int f = (int)require_int(j["f"], "f");
    int rw = (int)require_int(j["r_w"], "r_w");
    int deg = (int)require_int(j["deg"], "deg");
    std::vector<std::string> vars;
    for (const auto& v : j["vars"]) {
        if (!v.is_string()) throw parameter_error("schema: variable names must be strings");
        vars.push_back(v.get<std::string>());
    }
    auto ring = WittSeriesRing::get(p, m, rw, vars, deg);
    if (!j["blocks"].is_array() || (int)j["blocks"].size() != f)
        throw parameter_error("schema: \"blocks\" must hold f entries");
    std::vector<std::pair<int, int>> sizes;
    std::vector<Mat<WittSeries>> hw;
    int h = -1;
    for (const auto& blk : j["blocks"]) {
        if (!blk.contains("p_tau") || !blk.contains("q_tau") || !blk.contains("HW"))
            throw parameter_error("schema: block needs p_tau, q_tau, HW");
        int pt = (int)require_int(blk["p_tau"], "p_tau");
        int qt = (int)require_int(blk["q_tau"], "q_tau");
        if (h < 0) h = pt + qt;
        sizes.emplace_back(pt, qt);
        const Json& mat = blk["HW"];
        if (!mat.is_array() || (int)mat.size() != h)
            throw parameter_error("schema: HW must be an h x h matrix");
        Mat<WittSeries> b(h, h, ring->zero());
        for (int i = 0; i < h; ++i) {
            if (!mat[i].is_array() || (int)mat[i].size() != h)
                throw parameter_error("schema: HW must be an h x h matrix");
            for (int c = 0; c < h; ++c) b(i, c) = parse_series_entry(mat[i][c], ring, "HW");
        }
        hw.push_back(std::move(b));
    }
    return Display(ring, f, h, std::move(sizes), std::move(hw));
}

Json display_to_json(const Display& d) {
    Json j;
    j["p"] = d.base()->p();
    j["m"] = d.base()->m();
    j["f"] = d.f();
    j["r_w"] = d.base()->r_w();
    j["deg"] = d.base()->base()->deg();
    Json vars = Json::array();
    for (const auto& v : d.base()->base()->vars()) vars.push_back(v);
    j["vars"] = vars;
    Json blocks = Json::array();
    for (int t = 0; t < d.f(); ++t) {
        Json blk;
        blk["p_tau"] = d.p_tau(t);
        blk["q_tau"] = d.q_tau(t);
        Json rows = Json::array();
        for (int i = 0; i < d.h(); ++i) {
            Json row = Json::array();
            for (int c = 0; c < d.h(); ++c) row.push_back(series_entry_to_json(d.HW(t)(i, c)));
            rows.push_back(row);
        }
        blk["HW"] = rows;
        blocks.push_back(blk);
    }
    j["blocks"] = blocks;
    return j;
}

Json polygon_to_json(const RatPolygon& p) {
    Json j;
    j["width"] = p.width();
    Json slopes = Json::array();
    for (const auto& s : p.slopes()) slopes.push_back(s.str());
    j["slopes"] = slopes;
    Json breaks = Json::array();
    for (int x : p.break_abscissas())
        breaks.push_back(Json::array({x, p.value_at(x).str()}));
    j["breaks"] = breaks;
    return j;
}

Json hasse_report_to_json(const HasseReport& r) {
    Json j;
    j["tau"] = r.tau;
    j["k_tau"] = r.k_tau;
    j["invertible"] = r.invertible;
    j["scalar"] = fq_to_json(r.scalar);
    if (r.lattice_val)
        j["lattice_val"] = r.lattice_val->str();
    else
        j["lattice_val"] = nullptr;
    return j;
}

Json signature_to_json(const Signature& s) {
    Json j;
    j["f"] = s.f;
    j["h"] = s.h;
    Json q = Json::array(), p = Json::array();
    for (int t = 0; t < s.f; ++t) {
        q.push_back(s.q_tau(t));
        p.push_back(s.p_tau(t));
    }
    j["q"] = q;
    j["p"] = p;
    return j;
}

Json hasse_series_to_json(const HasseSeries& s) {
    Json j;
    j["tau"] = s.tau;
    j["k_tau"] = s.k_tau;
    j["series"] = s.series.str();
    j["vanishing_order"] = s.vanishing_order();
    j["invertible_at_zero"] = s.invertible_at_zero();
    return j;
}

std::string polygons_to_svg(const RatPolygon& newton, const RatPolygon& hodge) {
    const int W = 480, H = 320, pad = 40;
    int h = newton.width();
    double ymax = 0.0;
    auto val = [](const RatPolygon& p, int i) {
        return (double)p.value_at(i).num() / (double)p.value_at(i).den();
    };
    for (int i = 0; i <= h; ++i) ymax = std::max({ymax, val(newton, i), val(hodge, i)});
    if (ymax <= 0) ymax = 1.0;
    auto xc = [&](double x) { return pad + x / h * (W - 2 * pad); };
    auto yc = [&](double y) { return H - pad - y / ymax * (H - 2 * pad); };
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n";
    svg << "<line x1=\"" << xc(0) << "\" y1=\"" << yc(0) << "\" x2=\"" << xc(h) << "\" y2=\""
        << yc(0) << "\" stroke=\"black\"/>\n";
    auto path = [&](const RatPolygon& p, const char* color) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (int i = 0; i <= h; ++i) svg << xc(i) << "," << yc(val(p, i)) << " ";
        svg << "\"/>\n";
    };
    path(hodge, "red");
    path(newton, "blue");
    svg << "<text x=\"" << pad << "\" y=\"20\" fill=\"blue\">Newton</text>\n";
    svg << "<text x=\"" << pad + 80 << "\" y=\"20\" fill=\"red\">Hodge</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

} // namespace muord
