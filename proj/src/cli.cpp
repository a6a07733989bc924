#include "apfree/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "apfree/acceptance.hpp"
#include "apfree/apcheck.hpp"
#include "apfree/blocks.hpp"
#include "apfree/constructions.hpp"
#include "apfree/density.hpp"
#include "apfree/modperm.hpp"
#include "apfree/serialize.hpp"

namespace apfree::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Common {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

struct ConstructionArgs {
  std::string construction;
  ConstructionParams params;
  std::string ordering = "parity_recursion";

  void add_to(CLI::App* app, bool required) {
    auto* opt = app->add_option("--construction", construction,
                                "P, T, doubled-P, R, R-prime, signed-parity, K, K-prime, K-double-prime");
    if (required) opt->required();
    app->add_option("--i-max,--through-block", params.i_max, "block horizon")->capture_default_str();
    app->add_option("--count", params.count, "prefix length (overrides the block horizon)");
    app->add_option("--n", params.n, "modulus of R and R-prime")->capture_default_str();
    app->add_option("--a", params.a, "base of R, R-prime and signed-parity")->capture_default_str();
    app->add_option("--groups", params.groups, "block groups of R and R-prime")->capture_default_str();
    app->add_option("--ordering", ordering, "parity_recursion, parity_recursion_odd_first or bit_reversal")
        ->capture_default_str();
  }

  ConstructionId id() const {
    const auto parsed = parse_construction(construction);
    if (!parsed) throw Error(ErrorKind::BadParams, "unknown construction '" + construction + "'");
    return *parsed;
  }

  ConstructionParams resolved() const {
    ConstructionParams p = params;
    const auto tag = parse_ordering(ordering);
    if (!tag) throw Error(ErrorKind::BadParams, "unknown ordering '" + ordering + "'");
    p.block_ordering = *tag;
    return p;
  }
};

std::vector<BigInt> read_file(const std::string& path) {
  if (path == "-") return read_integers(std::cin);
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadParams, "cannot open '" + path + "'");
  return read_integers(in);
}

std::string join(std::span<const BigInt> vals) {
  std::string s;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) s += ' ';
    s += to_decimal(vals[i]);
  }
  return s;
}

std::string describe(const Witness& w) {
  std::string s = "witness: values " + join(w.values) + "; positions";
  for (auto p : w.positions) s += ' ' + std::to_string(p);
  s += "; difference " + to_decimal(w.difference);
  if (w.modulus) s += " (mod " + std::to_string(*w.modulus) + ")";
  return s;
}

// Witnesses are re-checked against the raw input before they are reported.
void revalidate(const std::vector<Witness>& ws, const FinitePermutation& seq) {
  for (const auto& w : ws)
    if (!witness_is_valid(w, seq)) throw std::logic_error("checker produced an invalid witness");
}

int report_check(const Common& common, std::ostream& out, const json& command, json params,
                 const std::vector<Witness>& ws, const json& timings, const json& window) {
  if (common.json()) {
    json j;
    j["command"] = command;
    j["params"] = std::move(params);
    j["outcome"] = ws.empty() ? "verified" : "witness_found";
    json arr = json::array();
    for (const auto& w : ws) arr.push_back(to_json(w));
    j["witnesses"] = std::move(arr);
    j["timings"] = timings;
    if (!window.is_null()) j["window"] = window;
    out << j.dump() << '\n';
  } else {
    if (ws.empty()) out << "verified: no progression found\n";
    for (const auto& w : ws) out << describe(w) << '\n';
  }
  return ws.empty() ? kOk : kFound;
}

// --- subcommands -----------------------------------------------------------

struct GenerateCmd {
  ConstructionArgs c;
  std::string output;
  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("generate", "write a construction window, one term per line");
    c.add_to(sub, true);
    sub->add_option("--output,-o", output, "output file (default stdout)");
  }
  int run(const Common& common, std::ostream& out) const {
    const Window w = generate(c.id(), c.resolved());
    std::ofstream file;
    if (!output.empty()) {
      file.open(output);
      if (!file) throw Error(ErrorKind::BadParams, "cannot write '" + output + "'");
    }
    std::ostream& os = output.empty() ? out : file;
    if (common.json()) {
      json header = window_header(w);
      header["construction"] = std::string(to_string(c.id()));
      header["params"] = to_json(c.resolved());
      os << header.dump() << '\n';
      for (std::size_t p = 0; p < w.terms.size(); ++p)
        os << json{{"index", w.origin + static_cast<std::int64_t>(p)}, {"value", to_decimal(w.terms[p])}}.dump()
           << '\n';
    } else {
      for (const auto& v : w.terms.values()) os << v << '\n';
    }
    return kOk;
  }
};

struct CheckCmd {
  ConstructionArgs c;
  std::string file;
  int k = 3;
  std::optional<std::uint64_t> div, notdiv;
  std::size_t limit = 1;
  bool all = false;
  std::string kernel = "automatic";
  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("check", "scan a window or a file of integers for monotone k-APs");
    c.add_to(sub, false);
    auto* f = sub->add_option("--file", file, "one integer per line ('-' for stdin)");
    sub->get_option("--construction")->excludes(f);
    sub->add_option("--k", k, "progression length")->capture_default_str();
    auto* d = sub->add_option("--diff-divisible-by", div, "only differences divisible by m");
    auto* nd = sub->add_option("--diff-not-divisible-by", notdiv, "only differences not divisible by m");
    d->excludes(nd);
    sub->add_option("--limit", limit, "witnesses to report")->capture_default_str();
    sub->add_flag("--all", all, "report every witness");
    sub->add_option("--kernel", kernel, "automatic, pair_serial, pair_parallel, middle_sweep, bigint")
        ->capture_default_str();
  }
  int run(const Common& common, std::ostream& out, const json& command) const {
    if (c.construction.empty() == file.empty())
      throw Error(ErrorKind::BadParams, "give exactly one of --construction and --file");
    DiffFilter filter;
    json params;
    if (div) filter = DiffFilter::divisible_by(*div);
    if (notdiv) filter = DiffFilter::not_divisible_by(*notdiv);
    static const std::map<std::string, CheckKernel> kernels = {
        {"automatic", CheckKernel::automatic},       {"pair_serial", CheckKernel::pair_serial},
        {"pair_parallel", CheckKernel::pair_parallel}, {"middle_sweep", CheckKernel::middle_sweep},
        {"bigint", CheckKernel::bigint}};
    const auto kit = kernels.find(kernel);
    if (kit == kernels.end()) throw Error(ErrorKind::BadParams, "unknown kernel '" + kernel + "'");

    const auto t0 = Clock::now();
    FinitePermutation seq;
    json window;
    if (!file.empty()) {
      seq = FinitePermutation::from_values(read_file(file));
      params["file"] = file;
    } else {
      const Window w = generate(c.id(), c.resolved());
      seq = w.terms;
      window = window_header(w);
      params["construction"] = std::string(to_string(c.id()));
      params["construction_params"] = to_json(c.resolved());
    }
    const double t_input = seconds_since(t0);
    params["k"] = k;
    params["length"] = seq.size();
    if (div) params["diff_divisible_by"] = *div;
    if (notdiv) params["diff_not_divisible_by"] = *notdiv;

    const auto t1 = Clock::now();
    const auto ws = find_monotone_aps(seq, k, filter, all ? std::nullopt : std::optional(limit), kit->second);
    const double t_check = seconds_since(t1);
    revalidate(ws, seq);
    return report_check(common, out, command, std::move(params), ws, {{"input", t_input}, {"check", t_check}},
                        window);
  }
};

struct CheckModCmd {
  std::string file;
  std::optional<std::uint64_t> n;
  int k = 3;
  bool all = false;
  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("check-mod", "scan a permutation of [1, n] for k-APs mod n");
    sub->add_option("--file", file, "one integer per line ('-' for stdin)")->required();
    sub->add_option("--n", n, "modulus (default: the length)");
    sub->add_option("--k", k, "progression length")->capture_default_str();
    sub->add_flag("--all", all, "report every witness");
  }
  int run(const Common& common, std::ostream& out, const json& command) const {
    const auto t0 = Clock::now();
    const auto seq = FinitePermutation::from_values(read_file(file));
    const std::uint64_t modulus = n.value_or(seq.size());
    const auto ws = find_modular_aps(seq, k, modulus, all ? std::nullopt : std::optional<std::size_t>(1));
    revalidate(ws, seq);
    return report_check(common, out, command, {{"file", file}, {"n", modulus}, {"k", k}}, ws,
                        {{"check", seconds_since(t0)}}, json());
  }
};

void print_perm(const Common& common, std::ostream& out, const FinitePermutation& p) {
  if (common.json()) {
    json arr = json::array();
    for (const auto& v : p.values()) arr.push_back(v.convert_to<std::int64_t>());
    out << arr.dump() << '\n';
  } else {
    out << join(p.values()) << '\n';
  }
}

struct SearchCmd {
  std::uint64_t n = 0;
  int k = 4;
  std::uint64_t budget = 100'000'000;
  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("search", "look for a permutation of [1, n] with no k-AP mod n");
    sub->add_option("--n", n)->required();
    sub->add_option("--k", k)->capture_default_str();
    sub->add_option("--budget", budget, "node budget")->capture_default_str();
  }
  int run(const Common& common, std::ostream& out) const {
    const auto r = search_mod_free(n, k, budget);
    if (r.witness && !find_modular_aps(*r.witness, k, n).empty())
      throw std::logic_error("search produced an invalid witness");
    const char* outcome = r.witness ? "found" : (r.exhausted ? "exhausted" : "budget_exceeded");
    if (common.json()) {
      json j{{"n", n}, {"k", k}, {"outcome", outcome}, {"nodes", r.nodes}};
      if (r.witness) {
        json arr = json::array();
        for (const auto& v : r.witness->values()) arr.push_back(v.convert_to<std::int64_t>());
        j["witness"] = std::move(arr);
      }
      out << j.dump() << '\n';
    } else {
      out << outcome << " after " << r.nodes << " nodes\n";
      if (r.witness) print_perm(common, out, *r.witness);
    }
    return r.witness ? kOk : (r.exhausted ? kFound : kInconclusive);
  }
};

struct CountCmd {
  std::optional<int> n;
  int k = 3;
  std::optional<int> structured_k;
  int cap = 10;
  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("count", "count k-AP-free permutations mod n, or the structured family");
    auto* on = sub->add_option("--n", n, "brute-force count for [1, n]");
    sub->add_option("--k", k)->capture_default_str();
    auto* os = sub->add_option("--structured-k", structured_k, "size of the structured family of [1, 2^k]");
    on->excludes(os);
    sub->add_option("--cap", cap, "largest n allowed for brute force")->capture_default_str();
  }
  int run(const Common& common, std::ostream& out) const {
    if (n.has_value() == structured_k.has_value())
      throw Error(ErrorKind::BadParams, "give exactly one of --n and --structured-k");
    if (n) {
      const auto c = brute_count_mod_free(*n, k, cap);
      if (common.json())
        out << json{{"n", *n}, {"k", k}, {"count", c}}.dump() << '\n';
      else
        out << c << '\n';
      return kOk;
    }
    const int sk = *structured_k;
    const BigInt closed = structured_count_closed(sk);
    const BigInt rec = structured_count_recurrence(sk);
    std::optional<std::uint64_t> enumerated;
    if (sk <= StructuredFamily::kMaxK) enumerated = StructuredFamily(sk).size();
    if (common.json()) {
      json j{{"k", sk}, {"closed_form", to_decimal(closed)}, {"recurrence", to_decimal(rec)}};
      if (enumerated) j["enumerated"] = *enumerated;
      out << j.dump() << '\n';
    } else {
      out << "closed form " << closed << "\nrecurrence  " << rec << '\n';
      if (enumerated) out << "enumerated  " << *enumerated << '\n';
    }
    return closed == rec && (!enumerated || BigInt(*enumerated) == closed) ? kOk : kFound;
  }
};

struct EnumerateCmd {
  int structured_k = 0;
  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("enumerate", "list the structured 3-AP-mod-2^k-free permutations");
    sub->add_option("--structured-k", structured_k)->required();
  }
  int run(const Common& common, std::ostream& out) const {
    const StructuredFamily fam(structured_k);
    for (std::uint64_t i = 0; i < fam.size(); ++i) print_perm(common, out, fam.at(i));
    return kOk;
  }
};

struct PermissibleCmd {
  std::uint64_t n = 0;
  int k = 4;
  std::uint64_t budget = 10'000'000;
  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("permissible", "decide whether some permutation of [1, n] avoids k-APs mod n");
    sub->add_option("--n", n)->required();
    sub->add_option("--k", k)->capture_default_str();
    sub->add_option("--budget", budget, "node budget per prime factor searched")->capture_default_str();
  }
  int run(const Common& common, std::ostream& out) const {
    const auto r = permissible(n, k, budget);
    if (r.witness && !find_modular_aps(*r.witness, k, n).empty())
      throw std::logic_error("constructed witness has a progression");
    if (common.json()) {
      json j{{"n", n}, {"k", k}, {"permissible", r.permissible}};
      if (r.witness) {
        json arr = json::array();
        for (const auto& v : r.witness->values()) arr.push_back(v.convert_to<std::int64_t>());
        j["witness"] = std::move(arr);
      }
      out << j.dump() << '\n';
    } else {
      out << (r.permissible ? "permissible" : "not permissible") << '\n';
      if (r.witness) print_perm(common, out, *r.witness);
    }
    return r.permissible ? kOk : kFound;
  }
};

struct DensityCmd {
  ConstructionArgs c;
  std::vector<std::string> boundaries;
  std::string side;
  std::string family;
  int last = 12;
  int points = 6;
  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("density", "exact element counts and ratios in [-N, N] or [1, N]");
    c.add_to(sub, true);
    auto* b = sub->add_option("--boundaries", boundaries, "values of N, e.g. 729 3^12 6^8/3");
    auto* f = sub->add_option("--family", family, "liminf or limsup boundary family");
    b->excludes(f);
    sub->add_option("--last", last, "largest exponent of the family")->capture_default_str();
    sub->add_option("--points", points, "number of family boundaries")->capture_default_str();
    sub->add_option("--side", side, "symmetric or positive_half (default: natural side)");
  }
  int run(const Common& common, std::ostream& out) const {
    DensityTarget t;
    t.construction = c.id();
    t.params = c.resolved();
    if (side.empty()) t.side = natural_side(t.construction);
    else if (side == "symmetric") t.side = Side::symmetric;
    else if (side == "positive_half") t.side = Side::positive_half;
    else throw Error(ErrorKind::BadParams, "unknown side '" + side + "'");
    if (!family.empty()) {
      if (family != "liminf" && family != "limsup") throw Error(ErrorKind::BadParams, "unknown family");
      t.boundaries = boundary_family(t.construction, t.params,
                                     family == "liminf" ? LimitKind::liminf : LimitKind::limsup, last, points);
    } else {
      if (boundaries.empty()) throw Error(ErrorKind::BadParams, "give --boundaries or --family");
      for (const auto& s : boundaries) t.boundaries.push_back(parse_boundary(s));
    }
    const auto series = density_series(t);
    if (common.json()) {
      json arr = json::array();
      for (const auto& p : series) arr.push_back(to_json(p));
      out << json{{"construction", std::string(to_string(t.construction))},
                  {"side", std::string(to_string(t.side))},
                  {"points", std::move(arr)}}
                 .dump()
          << '\n';
    } else {
      for (const auto& p : series)
        out << p.N << '\t' << p.count << '\t' << std::setprecision(10) << to_double(p.ratio) << '\n';
    }
    return kOk;
  }
};

struct PartitionCmd {
  std::int64_t i_max = 12;
  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("partition-check", "check that K, K-prime and K-double-prime tile [-W, W]");
    sub->add_option("--i-max", i_max)->capture_default_str();
  }
  int run(const Common& common, std::ostream& out) const {
    const auto r = partition_check(i_max);
    if (common.json()) {
      out << to_json(r).dump() << '\n';
    } else {
      out << (r.exact ? "exact" : "not exact") << " cover of [-" << r.W << ", " << r.W << "]\n";
      for (const auto& v : r.violations)
        out << "  [" << v.lo << ", " << v.hi << "] covered " << v.multiplicity << " times\n";
    }
    return r.exact ? kOk : kFound;
  }
};

struct VerifyAllCmd {
  bool stretch = false;
  std::vector<int> only;
  std::uint64_t seed = AcceptanceOptions{}.seed;
  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("verify-all", "run the full acceptance suite");
    sub->add_flag("--stretch", stretch, "also run the non-gating large P window");
    sub->add_option("--only", only, "criterion ids to run");
    sub->add_option("--seed", seed, "seed of the randomized criteria")->capture_default_str();
  }
  int run(const Common& common, std::ostream& out) const {
    AcceptanceOptions o;
    o.stretch = stretch;
    o.only = only;
    o.seed = seed;
    bool ok = true;
    json arr = json::array();
    for (const auto& r : run_acceptance(o)) {
      if (r.gating && !r.passed) ok = false;
      if (common.json())
        arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"gating", r.gating},
                       {"detail", r.detail}, {"seconds", r.seconds}});
      else
        out << format_result(r) << std::endl;
    }
    if (common.json()) out << json{{"passed", ok}, {"criteria", std::move(arr)}}.dump() << '\n';
    else out << (ok ? "all criteria passed" : "some criteria FAILED") << '\n';
    return ok ? kOk : kFound;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic-progression-free permutations: constructions, checkers and searches", "apfree"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  GenerateCmd generate_cmd;
  CheckCmd check_cmd;
  CheckModCmd check_mod_cmd;
  SearchCmd search_cmd;
  CountCmd count_cmd;
  EnumerateCmd enumerate_cmd;
  PermissibleCmd permissible_cmd;
  DensityCmd density_cmd;
  PartitionCmd partition_cmd;
  VerifyAllCmd verify_cmd;
  generate_cmd.add(app);
  check_cmd.add(app);
  check_mod_cmd.add(app);
  search_cmd.add(app);
  count_cmd.add(app);
  enumerate_cmd.add(app);
  permissible_cmd.add(app);
  density_cmd.add(app);
  partition_cmd.add(app);
  verify_cmd.add(app);
  // --format is accepted after the subcommand too
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  json command = json::array();
  for (const auto& a : args) command.push_back(a);

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "generate") return generate_cmd.run(common, out);
    if (name == "check") return check_cmd.run(common, out, command);
    if (name == "check-mod") return check_mod_cmd.run(common, out, command);
    if (name == "search") return search_cmd.run(common, out);
    if (name == "count") return count_cmd.run(common, out);
    if (name == "enumerate") return enumerate_cmd.run(common, out);
    if (name == "permissible") return permissible_cmd.run(common, out);
    if (name == "density") return density_cmd.run(common, out);
    if (name == "partition-check") return partition_cmd.run(common, out);
    if (name == "verify-all") return verify_cmd.run(common, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    if (common.json())
      out << json{{"command", command}, {"outcome", e.kind() == ErrorKind::BudgetExceeded ||
                                                            e.kind() == ErrorKind::Undecidable
                                                        ? "inconclusive"
                                                        : "error"},
                  {"error", std::string(to_string(e.kind()))}, {"message", e.what()}}
                 .dump()
          << '\n';
    return e.kind() == ErrorKind::BudgetExceeded || e.kind() == ErrorKind::Undecidable ? kInconclusive : kUsage;
  }
  return kUsage;
}

}  // namespace apfree::cli
