#pragma once

// JSON views of results and plain-text input parsing. Big integers are written
// as decimal strings.

#include <istream>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "apfree/apcheck.hpp"
#include "apfree/constructions.hpp"
#include "apfree/density.hpp"

namespace apfree {

nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const BlockDescriptor& b);
nlohmann::json to_json(const ValueCover& cover);
nlohmann::json to_json(const ConstructionParams& params);
/// Origin, length, blocks and cover; the terms themselves are left out.
nlohmann::json window_header(const Window& w);
nlohmann::json to_json(const DensityPoint& p);
nlohmann::json to_json(const PartitionReport& r);

/// One integer per line; blank lines and lines starting with '#' are skipped.
/// Throws Error(BadParams) on anything else.
std::vector<BigInt> read_integers(std::istream& in);

/// "12345", "3^12", "6^8/3" (integer division).
/// Throws Error(BadParams) on malformed text.
BigInt parse_boundary(std::string_view text);

}  // namespace apfree
