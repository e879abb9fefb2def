#pragma once

#include <string>

#include <json.hpp>

#include "muord/display.hpp"
#include "muord/omod.hpp"

namespace muord {

using Json = nlohmann::ordered_json;

// Module schema: {"p","m","f","r","h","V":[f h x h matrices],"F":[optional]}.
// Matrix entries are integers (canonical image of Z in W_r) or Witt
// coordinate arrays: r coordinates, each an array of m residues mod p (a
// single integer is accepted as shorthand when m == 1).
ODieudonneModule module_from_json(const Json& j);
Json module_to_json(const ODieudonneModule& m);

// Display schema: {"p","m","f","r_w","deg","vars":[names],
//   "blocks":[{"p_tau","q_tau","HW": h x h matrix}]}.
// An HW entry is an integer or an array of r_w polynomials; a polynomial is
// a list of [coeff, exps] pairs with coeff a residue array (or integer) and
// exps one exponent per variable.
Display display_from_json(const Json& j);
Json display_to_json(const Display& d);

Json polygon_to_json(const RatPolygon& p);
Json hasse_report_to_json(const HasseReport& r);
Json signature_to_json(const Signature& s);
Json hasse_series_to_json(const HasseSeries& s);

// simple standalone SVG rendering of polygons (Newton over Hodge)
std::string polygons_to_svg(const RatPolygon& newton, const RatPolygon& hodge);

} // namespace muord
