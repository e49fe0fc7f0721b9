#pragma once

#include <string>

#include <json.hpp>

#include "chdecomp/atlas.hpp"
#include "chdecomp/decomposer.hpp"

namespace chd {

nlohmann::json classify_report(const Mat3& m);

nlohmann::json atlas_report(const Atlas& at);

// CSV of wall segments: seg_id,line_label,x1_num,x1_den,y1_num,y1_den,x2_num,x2_den,y2_num,y2_den
std::string atlas_walls_csv(const Atlas& at);

// deterministic SVG of T with walls and gray/white chambers
std::string atlas_svg(const Atlas& at);

nlohmann::json decomposition_report(const Mat3& F, const LengthResult& lr);

// parse {"re": [[..]], "im": [[..]]} into a matrix
Mat3 matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Mat3& m);

// parse "p/q" (units of pi) into a rational
Rat parse_pi_fraction(const std::string& s);

} // namespace chd
