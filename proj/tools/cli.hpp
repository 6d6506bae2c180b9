#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "univrank/number_field.hpp"
#include "univrank/poly.hpp"

namespace univrank::cli {

/// Runs one subcommand; `args` excludes the program name. Machine output is
/// JSON on `out`, errors are JSON on `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "quadratic:D", "cubic:a", "poly:c0,c1,...", "rationals", inline JSON
/// descriptor or a path to one.
FieldPtr resolve_field(const std::string& spec);
/// "c0,c1,...,cn" (lowest degree first) or a JSON list.
ZPoly parse_poly(const std::string& text);
/// A JSON list of coordinate vectors, inline or from a file.
std::vector<Coords> parse_coords_list(const std::string& text);
nlohmann::json read_json_arg(const std::string& text);

}  // namespace univrank::cli
