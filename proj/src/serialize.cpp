#include "apfree/serialize.hpp"

#include <charconv>
#include <string>

#include <json.hpp>

namespace apfree {

using nlohmann::json;

json to_json(const Witness& w) {
  json j;
  j["kind"] = w.kind == WitnessKind::monotone ? "monotone" : "modular";
  j["k"] = w.k();
  json vals = json::array();
  for (const auto& v : w.values) vals.push_back(to_decimal(v));
  j["values"] = std::move(vals);
  j["positions"] = w.positions;
  j["difference"] = to_decimal(w.difference);
  if (w.modulus) j["modulus"] = *w.modulus;
  return j;
}

json to_json(const BlockDescriptor& b) {
  json j;
  j["construction"] = std::string(to_string(b.construction));
  j["index"] = b.block_index;
  j["label"] = b.label;
  json ivs = json::array();
  for (const auto& iv : b.intervals) ivs.push_back({to_decimal(iv.lo), to_decimal(iv.hi)});
  j["intervals"] = std::move(ivs);
  if (b.residue) j["residue"] = {{"label", b.residue->label}, {"modulus", b.residue->modulus}};
  j["ordering"] = std::string(to_string(b.ordering.tag));
  if (b.ordering.scale != 1 || b.ordering.offset != 0)
    j["affine"] = {{"scale", to_decimal(b.ordering.scale)}, {"offset", to_decimal(b.ordering.offset)}};
  if (b.ordering.reversed) j["reversed"] = true;
  j["count"] = to_decimal(b.count());
  return j;
}

json to_json(const ValueCover& cover) {
  json pieces = json::array();
  for (const auto& p : cover.pieces())
    pieces.push_back({{"lo", to_decimal(p.lo)},
                      {"hi", to_decimal(p.hi)},
                      {"modulus", p.modulus},
                      {"residue", p.residue}});
  return pieces;
}

json to_json(const ConstructionParams& params) {
  return {{"n", params.n},         {"a", params.a},
          {"k", params.k},         {"i_max", params.i_max},
          {"count", params.count}, {"groups", params.groups},
          {"block_ordering", std::string(to_string(params.block_ordering))}};
}

json window_header(const Window& w) {
  json blocks = json::array();
  for (const auto& b : w.block_span) blocks.push_back(to_json(b));
  return {{"origin", w.origin},
          {"length", w.terms.size()},
          {"blocks", std::move(blocks)},
          {"value_cover", to_json(w.value_cover)}};
}

json to_json(const DensityPoint& p) {
  return {{"N", to_decimal(p.N)},
          {"count", to_decimal(p.count)},
          {"ratio", to_string(p.ratio)},
          {"ratio_approx", to_double(p.ratio)}};
}

json to_json(const PartitionReport& r) {
  json v = json::array();
  for (const auto& c : r.violations)
    v.push_back({{"lo", to_decimal(c.lo)}, {"hi", to_decimal(c.hi)}, {"multiplicity", c.multiplicity}});
  return {{"exact", r.exact}, {"W", to_decimal(r.W)}, {"violations", std::move(v)}};
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_integer(std::string_view s) {
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (!is_integer(s)) throw Error(ErrorKind::BadParams, "not an integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::BadParams, "bad exponent or divisor: '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::vector<BigInt> read_integers(std::istream& in) {
  std::vector<BigInt> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!is_integer(t))
      throw Error(ErrorKind::BadParams, "line " + std::to_string(lineno) + ": not an integer");
    out.push_back(parse_integer(t));
  }
  return out;
}

BigInt parse_boundary(std::string_view text) {
  auto s = trim(text);
  BigInt divisor = 1;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    divisor = parse_u64(trim(s.substr(slash + 1)));
    if (divisor == 0) throw Error(ErrorKind::BadParams, "division by zero");
    s = trim(s.substr(0, slash));
  }
  BigInt value;
  if (const auto caret = s.find('^'); caret != std::string_view::npos) {
    value = pow(parse_integer(trim(s.substr(0, caret))), parse_u64(trim(s.substr(caret + 1))));
  } else {
    value = parse_integer(s);
  }
  return value / divisor;
}

}  // namespace apfree
