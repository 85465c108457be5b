#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "frobkit/frobkit.hpp"

namespace frobkit::cli {
namespace {

enum class Format { Text, Json, Csv };
enum class Method { Closed, Oracle, Both };

const std::map<std::string, Format> kFormats{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
const std::map<std::string, Method> kMethods{{"closed", Method::Closed}, {"oracle", Method::Oracle}, {"both", Method::Both}};
const std::map<std::string, Quantity> kQuantities{{"frobenius", Quantity::Frobenius},
                                                  {"sylvester", Quantity::Sylvester}};

Limits limits_from_env() {
  Limits limits;
  if (const char* cap = std::getenv("FROBKIT_TABLE_CAP"); cap != nullptr && *cap != '\0') {
    const BigInt value = parse_bigint(cap);
    if (value < 1) {
      throw Error(ErrorKind::InvalidInput, "FROBKIT_TABLE_CAP must be positive");
    }
    limits.table_cap = to_index(value, "FROBKIT_TABLE_CAP");
  }
  return limits;
}

std::vector<BigInt> parse_list(const std::string& text) {
  std::vector<BigInt> values;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    values.push_back(parse_bigint(item));
  }
  return values;
}

IntRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const BigInt v = parse_bigint(text);
    return {v, v};
  }
  return {parse_bigint(text.substr(0, dots)), parse_bigint(text.substr(dots + 2))};
}

std::string join(std::span<const BigInt> values, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += sep;
    out += values[i].str();
  }
  return out;
}

Json string_array(std::span<const BigInt> values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

Json optional_string(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

/// Generator source shared by the subcommands: either a shifted family
/// (--a --b --c --n [--vars]) or a plain list (--gens).
struct FamilyOptions {
  std::string a, b, c, n, gens;
  std::size_t vars = 3;

  void attach(CLI::App& app, bool allow_list) {
    app.add_option("--a", a, "multiplier a >= 1");
    app.add_option("--b", b, "base b >= 2");
    app.add_option("--c", c, "shift c != 0");
    app.add_option("--n", n, "first exponent n >= 1");
    app.add_option("--vars", vars, "number of generators in the family")->check(CLI::IsMember({3, 4}));
    if (allow_list) {
      app.add_option("--gens", gens, "comma-separated generator list (instead of a/b/c/n)");
    }
  }

  bool uses_list() const { return !gens.empty(); }

  FamilyParams family() const {
    if (a.empty() || b.empty() || c.empty() || n.empty()) {
      throw Error(ErrorKind::InvalidInput, "--a, --b, --c and --n are required");
    }
    const BigInt nn = parse_bigint(n);
    if (nn < 1) throw Error(ErrorKind::InvalidParameters, "n must be at least 1");
    const auto exponent = checked_narrow<std::uint32_t>(nn, "n");
    if (vars == 4) return make_quad(parse_bigint(a), parse_bigint(b), parse_bigint(c), exponent);
    return make_triple(parse_bigint(a), parse_bigint(b), parse_bigint(c), exponent);
  }

  std::optional<FamilyParams> maybe_family() const {
    if (uses_list()) return std::nullopt;
    return family();
  }

  GeneratorTuple generators() const {
    if (uses_list()) return GeneratorTuple(parse_list(gens));
    return std::visit([](const auto& f) { return f.generators(); }, family());
  }
};

Json decomposition_json(const FamilyParams& family) {
  if (const auto* t = std::get_if<ShiftedGeometricTriple>(&family)) {
    const auto [q, r] = decompose_qr(*t);
    return Json{{"q", q.str()}, {"r", r.str()}};
  }
  const auto [alpha, beta, gamma] = decompose_abg(std::get<ShiftedGeometricQuad>(family));
  return Json{{"alpha", alpha.str()}, {"beta", beta.str()}, {"gamma", gamma.str()}};
}

std::string decomposition_text(const FamilyParams& family) {
  if (const auto* t = std::get_if<ShiftedGeometricTriple>(&family)) {
    const auto [q, r] = decompose_qr(*t);
    return "q=" + q.str() + " r=" + r.str();
  }
  const auto [alpha, beta, gamma] = decompose_abg(std::get<ShiftedGeometricQuad>(family));
  return "alpha=" + alpha.str() + " beta=" + beta.str() + " gamma=" + gamma.str();
}

std::optional<std::string> case_of(const FamilyParams& family) {
  if (const auto* t = std::get_if<ShiftedGeometricTriple>(&family); t && t->c() < 0) {
    return to_string(classify_negative_shift(*t).id);
  }
  return std::nullopt;
}

const GeneratorTuple& generators_of(const FamilyParams& family) {
  return std::visit([](const auto& f) -> const GeneratorTuple& { return f.generators(); }, family);
}

// ---------------------------------------------------------------------------
// compute

struct ComputeOptions {
  FamilyOptions family;
  std::uint64_t p = 0;
  Quantity quantity = Quantity::Frobenius;
  Method method = Method::Both;
  Format format = Format::Text;
};

int cmd_compute(const ComputeOptions& opt, const Limits& limits, std::ostream& out) {
  const FamilyParams family = opt.family.family();
  const GeneratorTuple& gens = generators_of(family);
  const char* quantity = opt.quantity == Quantity::Frobenius ? "frobenius" : "sylvester";

  std::optional<BigInt> closed;
  std::optional<std::string> closed_error;
  std::optional<std::string> closed_detail;
  if (opt.method != Method::Oracle) {
    try {
      closed = closed_form(family, opt.p, opt.quantity);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OutOfValidityRange && e.kind() != ErrorKind::NoClosedFormCase &&
          e.kind() != ErrorKind::Unsupported) {
        throw;
      }
      closed_error = std::string(to_string(e.kind()));
      closed_detail = e.what();
    }
  }

  std::optional<BigInt> oracle;
  std::optional<std::string> oracle_label;
  const bool fallback = opt.method == Method::Closed && !closed;
  if (opt.method != Method::Closed || fallback) {
    const ScanResult scan = scan_counts(gens, opt.p, limits);
    oracle = opt.quantity == Quantity::Frobenius ? scan.frobenius : scan.sylvester;
    oracle_label = fallback ? "oracle-fallback" : "oracle";
  }

  std::optional<bool> agreement;
  if (closed && oracle && opt.method == Method::Both) agreement = *closed == *oracle;
  const auto case_id = case_of(family);

  switch (opt.format) {
    case Format::Json: {
      Json j{{"generators", string_array(gens.values())},
             {"decomposition", decomposition_json(family)},
             {"case", optional_string(case_id)},
             {"p", std::to_string(opt.p)},
             {"quantity", quantity},
             {"closed", closed ? Json(closed->str()) : Json(nullptr)},
             {"closed_error", optional_string(closed_error)},
             {"oracle", oracle ? Json(oracle->str()) : Json(nullptr)},
             {"oracle_label", optional_string(oracle_label)},
             {"agreement", agreement ? Json(*agreement) : Json(nullptr)}};
      out << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      out << "generators,decomposition,case,p,quantity,closed,closed_error,oracle,oracle_label,agreement\n";
      out << join(gens.values(), " ") << ',' << decomposition_text(family) << ',' << case_id.value_or("") << ','
          << opt.p << ',' << quantity << ',' << (closed ? closed->str() : "") << ',' << closed_error.value_or("")
          << ',' << (oracle ? oracle->str() : "") << ',' << oracle_label.value_or("") << ','
          << (agreement ? (*agreement ? "true" : "false") : "") << '\n';
      break;
    case Format::Text:
      out << "generators: " << join(gens.values()) << '\n';
      out << "decomposition: " << decomposition_text(family) << '\n';
      if (case_id) out << "case: " << *case_id << '\n';
      out << "p: " << opt.p << '\n';
      out << "quantity: " << quantity << '\n';
      if (closed) out << "closed: " << *closed << '\n';
      if (closed_error) out << "closed: " << *closed_error << " (" << *closed_detail << ")\n";
      if (oracle) out << *oracle_label << ": " << *oracle << '\n';
      if (agreement) out << "agreement: " << (*agreement ? "yes" : "NO") << '\n';
      break;
  }
  return agreement && !*agreement ? kMismatch : kOk;
}

// ---------------------------------------------------------------------------
// apery

struct AperyOptions {
  FamilyOptions family;
  std::uint64_t p = 0;
  bool grid = false;
  Format format = Format::Text;
};

int cmd_apery(const AperyOptions& opt, const Limits& limits, std::ostream& out) {
  const GeneratorTuple gens = opt.family.generators();
  const AperyTable apery = apery_set(gens, opt.p, limits);

  std::optional<AperyGrid> grid;
  bool grid_matches = true;
  if (opt.grid) {
    const auto family = opt.family.maybe_family();
    const auto* triple = family ? std::get_if<ShiftedGeometricTriple>(&*family) : nullptr;
    if (triple == nullptr) {
      throw Error(ErrorKind::InvalidInput, "--grid needs a three-generator family given by --a --b --c --n");
    }
    grid = apery_grid(*triple, opt.p, limits);
    std::vector<BigInt> sorted_grid = grid->values;
    std::vector<BigInt> sorted_apery(apery.entries().begin(), apery.entries().end());
    std::sort(sorted_grid.begin(), sorted_grid.end());
    std::sort(sorted_apery.begin(), sorted_apery.end());
    grid_matches = sorted_grid == sorted_apery;
  }

  const BigInt frobenius = p_frobenius_via_apery(apery);
  const BigInt sylvester = p_sylvester_via_apery(apery);
  const BigInt& a1 = gens.min();

  switch (opt.format) {
    case Format::Json: {
      Json j{{"generators", string_array(gens.values())},
             {"p", std::to_string(opt.p)},
             {"entries", string_array(apery.entries())},
             {"max", apery.max_entry().str()},
             {"frobenius", frobenius.str()},
             {"sylvester", sylvester.str()}};
      if (grid) {
        Json positions = Json::array();
        for (const auto& pos : grid->positions) {
          positions.push_back(Json::array({std::to_string(pos.x2), std::to_string(pos.x3)}));
        }
        j["grid"] = Json{{"residue_unit", grid->residue_unit.str()},
                         {"positions", std::move(positions)},
                         {"values", string_array(grid->values)},
                         {"matches", grid_matches}};
      }
      out << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      out << "residue,entry\n";
      for (std::size_t j = 0; j < apery.size(); ++j) out << j << ',' << apery[j] << '\n';
      break;
    case Format::Text:
      out << "generators: " << join(gens.values()) << '\n';
      out << "p: " << opt.p << '\n';
      out << "residue  entry\n";
      for (std::size_t j = 0; j < apery.size(); ++j) {
        out << std::setw(7) << j << "  " << apery[j] << '\n';
      }
      out << "max entry: " << apery.max_entry() << '\n';
      out << "p-frobenius (max - " << a1 << "): " << frobenius << '\n';
      out << "p-sylvester: " << sylvester << '\n';
      if (grid) {
        out << "grid positions (" << grid->positions.size() << "), residue unit " << grid->residue_unit << '\n';
        out << "     x2      x3  value\n";
        for (std::size_t i = 0; i < grid->positions.size(); ++i) {
          out << std::setw(7) << grid->positions[i].x2 << ' ' << std::setw(7) << grid->positions[i].x3 << "  "
              << grid->values[i] << '\n';
        }
        out << "grid matches apery set: " << (grid_matches ? "yes" : "NO") << '\n';
      }
      break;
  }
  return grid_matches ? kOk : kMismatch;
}

// ---------------------------------------------------------------------------
// table

struct TableOptions {
  FamilyOptions family;
  std::uint64_t p_max = 0;
  Format format = Format::Text;
};

int cmd_table(const TableOptions& opt, const Limits& limits, std::ostream& out) {
  const GeneratorTuple gens = opt.family.generators();
  const auto family = opt.family.maybe_family();
  const DenumerantTable table = detail::grow_table_until(
      gens, limits, "table", [&](const DenumerantTable& t) { return scan_table(t, opt.p_max).has_value(); });

  struct Row {
    std::uint64_t p;
    BigInt g, n;
    const char* g_method;
    const char* n_method;
  };
  std::vector<Row> rows;
  for (std::uint64_t p = 0; p <= opt.p_max; ++p) {
    const ScanResult scan = *scan_table(table, p);
    Row row{p, scan.frobenius, scan.sylvester, "oracle", "oracle"};
    auto try_closed = [](auto&& fn, BigInt& slot, const char*& label) {
      try {
        slot = fn();
        label = "closed";
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::OutOfValidityRange && e.kind() != ErrorKind::NoClosedFormCase &&
            e.kind() != ErrorKind::Unsupported) {
          throw;
        }
      }
    };
    if (family) {
      try_closed([&] { return closed_form(*family, p, Quantity::Frobenius); }, row.g, row.g_method);
      try_closed([&] { return closed_form(*family, p, Quantity::Sylvester); }, row.n, row.n_method);
    } else if (gens.size() == 2) {
      row.g = p_frobenius_two_generators(gens[0], gens[1], p);
      row.g_method = "closed";
    }
    rows.push_back(std::move(row));
  }

  switch (opt.format) {
    case Format::Json: {
      Json list = Json::array();
      for (const auto& r : rows) {
        list.push_back(Json{{"p", std::to_string(r.p)},
                            {"g_p", r.g.str()},
                            {"n_p", r.n.str()},
                            {"g_method", r.g_method},
                            {"n_method", r.n_method}});
      }
      out << Json{{"generators", string_array(gens.values())}, {"rows", std::move(list)}}.dump() << '\n';
      break;
    }
    case Format::Csv:
      out << "p,g_p,n_p,g_method,n_method\n";
      for (const auto& r : rows) {
        out << r.p << ',' << r.g << ',' << r.n << ',' << r.g_method << ',' << r.n_method << '\n';
      }
      break;
    case Format::Text:
      out << "generators: " << join(gens.values()) << '\n';
      out << std::setw(6) << "p" << std::setw(14) << "g_p" << std::setw(14) << "n_p" << "  method\n";
      for (const auto& r : rows) {
        out << std::setw(6) << r.p << std::setw(14) << r.g << std::setw(14) << r.n << "  g:" << r.g_method
            << " n:" << r.n_method << '\n';
      }
      break;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::size_t vars = 3;
  std::string a_range = "1..3", b_range = "2..3", c_range = "1..10", n_range = "1..2";
  std::string p_policy = "theorem";
  std::uint64_t p_max = 0;
  Quantity quantity = Quantity::Frobenius;
  std::uint64_t seed = 0;
  std::size_t limit = 0;
  std::string cost_threshold = "20000";
  unsigned threads = 0;
  Format format = Format::Text;
};

int cmd_verify(const VerifyOptions& opt, const Limits& limits, std::ostream& out) {
  SweepSpec spec;
  spec.vars = opt.vars;
  spec.a = parse_range(opt.a_range);
  spec.b = parse_range(opt.b_range);
  spec.c = parse_range(opt.c_range);
  spec.n = parse_range(opt.n_range);
  spec.p_policy = opt.p_policy == "theorem" ? PPolicy::TheoremRange : PPolicy::FixedMax;
  spec.p_max = opt.p_max;
  spec.quantity = opt.quantity;
  spec.sample_seed = opt.seed;
  spec.sample_limit = opt.limit;
  spec.cost_threshold = parse_bigint(opt.cost_threshold);
  spec.limits = limits;
  spec.threads = opt.threads;

  const VerificationReport report = verify_grid(spec);
  switch (opt.format) {
    case Format::Json:
      write_json(out, report);
      break;
    case Format::Csv:
      write_csv(out, report);
      break;
    case Format::Text:
      write_summary_text(out, report.summary);
      for (const auto& p : report.points) {
        if (p.status != PointStatus::Mismatched) continue;
        out << "mismatch: a=" << p.params.a << " b=" << p.params.b << " c=" << p.params.c << " n=" << p.params.n
            << " p=" << p.p << " closed=" << *p.closed << " oracle=" << p.oracle;
        if (p.case_id) out << " case=" << *p.case_id;
        out << '\n';
      }
      out << (report.passed() ? "PASS" : "FAIL") << '\n';
      break;
  }
  return report.passed() ? kOk : kMismatch;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ResourceLimit: return kResourceLimit;
    case ErrorKind::AssertionFailure: return kMismatch;
    default: return kInvalidInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-Frobenius numbers, p-Sylvester numbers and p-Apery sets of numerical semigroups", "frobkit"};
  app.require_subcommand(1);

  ComputeOptions compute;
  auto* compute_cmd = app.add_subcommand("compute", "closed form and/or oracle value for one family member");
  compute.family.attach(*compute_cmd, false);
  compute_cmd->add_option("--p", compute.p, "number of representations allowed")->required();
  compute_cmd->add_option("--quantity", compute.quantity)->transform(CLI::CheckedTransformer(kQuantities));
  compute_cmd->add_option("--method", compute.method)->transform(CLI::CheckedTransformer(kMethods));
  compute_cmd->add_option("--format", compute.format)->transform(CLI::CheckedTransformer(kFormats));

  AperyOptions apery;
  auto* apery_cmd = app.add_subcommand("apery", "p-Apery set, optionally with the (x2, x3) grid");
  apery.family.attach(*apery_cmd, true);
  apery_cmd->add_option("--p", apery.p)->required();
  apery_cmd->add_flag("--grid", apery.grid, "also print grid positions (c > 0 triples)");
  apery_cmd->add_option("--format", apery.format)->transform(CLI::CheckedTransformer(kFormats));

  TableOptions table;
  auto* table_cmd = app.add_subcommand("table", "g_p and n_p for p = 0..p-max");
  table.family.attach(*table_cmd, true);
  table_cmd->add_option("--p-max", table.p_max)->required();
  table_cmd->add_option("--format", table.format)->transform(CLI::CheckedTransformer(kFormats));

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "closed forms vs oracle over a parameter grid");
  verify_cmd->add_option("--vars", verify.vars)->check(CLI::IsMember({3, 4}));
  verify_cmd->add_option("--a-range", verify.a_range, "LO..HI");
  verify_cmd->add_option("--b-range", verify.b_range, "LO..HI");
  verify_cmd->add_option("--c-range", verify.c_range, "LO..HI (0 is skipped)");
  verify_cmd->add_option("--n-range", verify.n_range, "LO..HI");
  verify_cmd->add_option("--p-policy", verify.p_policy)->check(CLI::IsMember({"theorem", "max"}));
  verify_cmd->add_option("--p-max", verify.p_max, "largest p for --p-policy max");
  verify_cmd->add_option("--quantity", verify.quantity)->transform(CLI::CheckedTransformer(kQuantities));
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--limit", verify.limit, "sample at most this many parameter tuples (0 = all)");
  verify_cmd->add_option("--cost-threshold", verify.cost_threshold, "skip tuples whose smallest generator exceeds this");
  verify_cmd->add_option("--threads", verify.threads);
  verify_cmd->add_option("--format", verify.format)->transform(CLI::CheckedTransformer(kFormats));

  std::vector<const char*> argv{"frobkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    const Limits limits = limits_from_env();
    if (*compute_cmd) return cmd_compute(compute, limits, out);
    if (*apery_cmd) return cmd_apery(apery, limits, out);
    if (*table_cmd) return cmd_table(table, limits, out);
    return cmd_verify(verify, limits, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

}  // namespace frobkit::cli
