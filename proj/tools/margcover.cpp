// margcover: build, check and simulate covering designs for data-cube
// marginals.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "margcover/json_io.hpp"
#include "margcover/margcover.hpp"

namespace mc = margcover;
using mc::Json;

namespace {

struct Range {
  int lo = 0;
  int hi = 0;
};

Range parse_range(const std::string& text) {
  Range r;
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(text);
    } else {
      r.lo = std::stoi(text.substr(0, dots));
      r.hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw mc::ValidationError("bad range '" + text + "', expected N or LO..HI");
  }
  if (r.lo > r.hi) throw mc::ValidationError("empty range '" + text + "'");
  return r;
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !is.eof()) throw mc::ValidationError("bad list element '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw mc::ValidationError("empty list '" + text + "'");
  return out;
}

std::string big_str(const mc::BigInt& v) { return v.str(); }

void print_json(const Json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << '\n'; }

std::string design_text(const mc::CoverDesign& d) { return mc::design_to_json(d).dump() + "\n"; }

mc::CoverDesign load_design(const std::string& path) { return mc::design_from_json(mc::read_json_file(path)); }

// ---- cover ----------------------------------------------------------------

struct CoverArgs {
  int n = 0, m = 0, k = 0;
  std::string method = "auto";
  std::uint64_t seed = mc::kDefaultSeed;
  std::string out;
  bool pretty = false;
};

int run_cover(const CoverArgs& a) {
  const auto method = mc::method_from_string(a.method);
  auto built = mc::construct(method, a.n, a.m, a.k, a.seed);
  if (!mc::verify_cover(built.design).valid) throw mc::CoverageError("construction produced an invalid cover");
  Json meta = mc::design_meta(built.design, mc::to_string(built.method));
  if (!a.out.empty()) {
    mc::write_text_file(a.out, design_text(built.design));
    mc::write_text_file(a.out + ".meta.json", meta.dump(2) + "\n");
  }
  if (a.pretty) {
    std::cout << "method        " << meta["method"].get<std::string>() << '\n'
              << "handle_count  " << built.design.handle_count() << '\n'
              << "lower_bound   " << meta["lower_bound"].dump() << '\n';
    for (const auto& h : built.design.handles()) std::cout << "  " << h.str() << '\n';
    return 0;
  }
  if (a.out.empty()) meta["design"] = mc::design_to_json(built.design);
  print_json(meta, false);
  return 0;
}

// ---- verify ---------------------------------------------------------------

int run_verify(const std::string& path, bool pretty) {
  const auto design = load_design(path);
  const auto report = mc::verify_cover(design);
  Json j = mc::report_to_json(report);
  j["lower_bound"] =
      design.m() ? mc::big_to_json(mc::covering_lower_bound(design.n(), *design.m(), design.k())) : Json(nullptr);
  print_json(j, pretty);
  if (!report.valid) {
    throw mc::CoverageError(std::to_string(report.uncovered.size()) + " marginal dimension sets are uncovered");
  }
  return 0;
}

// ---- bounds ---------------------------------------------------------------

struct BoundsArgs {
  int n = 0, k = 0;
  std::uint64_t d = 2;
  std::optional<std::uint64_t> q;
  std::optional<int> m;
  std::string format = "json";
  bool pretty = false;
};

int run_bounds(const BoundsArgs& a) {
  std::uint64_t q = 0;
  if (a.q) {
    q = *a.q;
  } else if (a.m) {
    q = static_cast<std::uint64_t>(mc::int_pow(static_cast<double>(a.d), *a.m));
  } else {
    throw mc::ValidationError("bounds needs --q or --m");
  }
  const auto r = mc::bounds_report(a.n, a.d, a.k, q);
  const std::string format = a.pretty && a.format == "json" ? "table" : a.format;
  if (format == "json") {
    print_json(mc::bounds_to_json(r), false);
  } else if (format == "csv") {
    std::cout << "n,d,k,q,f_bound,r_lower,c_lower,naive_r\n";
    std::cout << std::setprecision(12) << r.n << ',' << r.d << ',' << r.k << ',' << r.q << ',' << r.f_bound << ','
              << r.r_lower << ',' << (r.c_lower ? big_str(*r.c_lower) : "") << ',' << big_str(r.naive_r) << '\n';
  } else if (format == "table") {
    const std::vector<std::pair<std::string, std::string>> rows = {
        {"n", std::to_string(r.n)},
        {"d", std::to_string(r.d)},
        {"k", std::to_string(r.k)},
        {"q", std::to_string(r.q)},
        {"f_bound", (std::ostringstream() << std::setprecision(10) << r.f_bound).str()},
        {"r_lower", (std::ostringstream() << std::setprecision(10) << r.r_lower).str()},
        {"c_lower", r.c_lower ? big_str(*r.c_lower) : "-"},
        {"naive_r", big_str(r.naive_r)},
    };
    for (const auto& [key, value] : rows) std::cout << std::left << std::setw(10) << key << std::right << std::setw(16) << value << '\n';
  } else {
    throw mc::ValidationError("unknown format '" + a.format + "' (json, table, csv)");
  }
  return 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string cover;
  std::optional<std::uint32_t> d;
  std::string extents;
  std::string in;
  std::optional<std::uint64_t> q;
  std::uint64_t seed = mc::kDefaultSeed;
  std::string ownership = "first_handle";
  bool rollup = false;
  std::string table_out;
  bool pretty = false;
};

int run_simulate(const SimulateArgs& a) {
  const auto design = load_design(a.cover);
  std::optional<mc::CubeSpec> spec;
  if (!a.extents.empty()) {
    mc::CubeSpec s;
    for (auto e : parse_list<std::int64_t>(a.extents)) {
      if (e < 1 || e > UINT32_MAX) throw mc::ValidationError("extent out of range");
      s.extents.push_back(static_cast<std::uint32_t>(e));
    }
    spec = s;
  } else if (a.d) {
    spec = mc::CubeSpec::uniform(design.n(), *a.d);
  }
  std::optional<mc::DataCube> cube;
  if (!a.in.empty()) {
    std::ifstream in(a.in);
    if (!in) throw mc::IoError("cannot open " + a.in);
    cube = mc::read_cube_ndjson(in, spec);
  } else {
    if (!spec) throw mc::ValidationError("simulate needs --d, --extents or --in");
    cube = mc::build_cube(*spec, a.seed);
  }

  mc::RoundOptions opt;
  if (a.ownership == "first_handle") {
    opt.ownership = mc::Ownership::first_handle;
  } else if (a.ownership == "all_handles") {
    opt.ownership = mc::Ownership::all_handles;
  } else {
    throw mc::ValidationError("unknown ownership '" + a.ownership + "' (first_handle, all_handles)");
  }
  opt.rollup = a.rollup;

  const auto schema = mc::schema_from_cover(design, cube->spec(), a.q);
  const auto [table, metrics] = mc::run_round(*cube, schema, opt);
  const auto check = mc::check_round(table, *cube);
  if (!a.table_out.empty()) {
    std::ofstream out(a.table_out);
    if (!out) throw mc::IoError("cannot write " + a.table_out);
    mc::write_marginals_ndjson(out, table);
  }
  Json j;
  j["metrics"] = mc::metrics_to_json(metrics);
  j["check"] = mc::check_to_json(check);
  j["pass"] = check.ok();
  print_json(j, a.pretty);
  return check.ok() ? 0 : 1;
}

// ---- weighted -------------------------------------------------------------

struct WeightedArgs {
  std::string weights;
  std::string in;
  std::optional<double> log_q;
  int k = 2;
  std::string method = "greedy";
  std::string out;
  bool pretty = false;
};

int run_weighted(const WeightedArgs& a) {
  mc::WeightedSpec spec;
  if (!a.in.empty()) {
    spec = mc::weighted_from_json(mc::read_json_file(a.in));
  } else {
    if (a.weights.empty() || !a.log_q) throw mc::ValidationError("weighted needs --weights and --log-q, or --in");
    spec.weights = parse_list<double>(a.weights);
  }
  if (a.log_q) spec.log_q = *a.log_q;
  spec.validate();

  std::optional<mc::CoverDesign> design;
  if (a.method == "greedy") {
    design = mc::greedy_weighted_cover(spec, a.k);
  } else if (a.method == "grouped") {
    if (a.k != 2) throw mc::DomainError("grouped: only k = 2 is supported");
    design = mc::grouped_cover_k2(spec);
  } else {
    throw mc::ValidationError("unknown weighted method '" + a.method + "' (greedy, grouped)");
  }
  bool feasible = true;
  for (const auto& h : design->handles()) feasible = feasible && mc::handle_feasible(h, spec);
  const auto report = mc::verify_cover(*design);
  if (!a.out.empty()) mc::write_text_file(a.out, design_text(*design));
  Json j;
  j["method"] = a.method;
  j["handle_count"] = design->handle_count();
  j["valid"] = report.valid;
  j["feasible"] = feasible;
  if (a.out.empty()) j["design"] = mc::design_to_json(*design);
  print_json(j, a.pretty);
  return report.valid && feasible ? 0 : 1;
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
  std::string n = "7..9";
  std::string m = "3..4";
  int k = 2;
  std::uint64_t d = 2;
  std::string out;
};

int run_sweep(const SweepArgs& a) {
  const auto nr = parse_range(a.n);
  const auto mr = parse_range(a.m);
  std::ostringstream csv;
  csv << "n,m,k,q,lower_bound,best_count,method,naive_r\n";
  for (int n = nr.lo; n <= nr.hi; ++n) {
    for (int m = mr.lo; m <= mr.hi; ++m) {
      if (!(1 <= a.k && a.k < m && m <= n && n <= mc::kMaxDims)) continue;
      csv << n << ',' << m << ',' << a.k << ',';
      const double q = mc::int_pow(static_cast<double>(a.d), m);
      if (q <= 18446744073709551615.0) csv << static_cast<std::uint64_t>(q);
      csv << ',' << big_str(mc::covering_lower_bound(n, m, a.k)) << ',';
      try {
        const auto best = mc::best_cover(n, m, a.k);
        csv << best.design.handle_count() << ',' << mc::to_string(best.method);
      } catch (const mc::Error&) {
        csv << ',';
      }
      csv << ',' << big_str(mc::binom_exact(n, a.k)) << '\n';
    }
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    mc::write_text_file(a.out, csv.str());
  }
  return 0;
}

void emit_error(std::string_view kind, const std::string& message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covering designs for computing data-cube marginals in one MapReduce round"};
  app.require_subcommand(1);

  CoverArgs cover;
  auto* c = app.add_subcommand("cover", "Build a covering design");
  c->add_option("--n", cover.n, "number of dimensions")->required();
  c->add_option("--m", cover.m, "handle size")->required();
  c->add_option("--k", cover.k, "marginal order")->required();
  c->add_option("--method", cover.method, "construction (auto, naive, first_order, triple32, slow32, hybrid32, "
                                          "block2m, doubling2m, general, quad43, greedy, random, exact)");
  c->add_option("--seed", cover.seed, "seed for the random method");
  c->add_option("--out", cover.out, "write the design here, metadata to <out>.meta.json");
  c->add_flag("--pretty", cover.pretty, "human-readable output");

  std::string verify_path;
  bool verify_pretty = false;
  auto* v = app.add_subcommand("verify", "Check that a design covers every k-subset");
  v->add_option("--cover,--in", verify_path, "design JSON")->required();
  v->add_flag("--pretty", verify_pretty, "indent JSON");

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "Replication-rate lower bounds");
  b->add_option("--n", bounds.n)->required();
  b->add_option("--k", bounds.k)->required();
  b->add_option("--d", bounds.d, "extent of every dimension");
  b->add_option("--q", bounds.q, "reducer size");
  b->add_option("--m", bounds.m, "use q = d^m");
  b->add_option("--format", bounds.format, "json, table or csv");
  b->add_flag("--pretty", bounds.pretty, "same as --format table");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Run one map-reduce round over a cube and check every marginal");
  s->add_option("--cover", sim.cover, "design JSON")->required();
  s->add_option("--d", sim.d, "uniform extent");
  s->add_option("--extents", sim.extents, "comma-separated extents");
  s->add_option("--in", sim.in, "cube NDJSON instead of a generated cube");
  s->add_option("--q", sim.q, "reducer size limit");
  s->add_option("--seed", sim.seed, "seed for the generated cube");
  s->add_option("--ownership", sim.ownership, "first_handle or all_handles");
  s->add_flag("--rollup", sim.rollup, "derive marginals from lower-order ones");
  s->add_option("--table-out", sim.table_out, "write marginals as NDJSON");
  s->add_flag("--pretty", sim.pretty, "indent JSON");

  WeightedArgs weighted;
  auto* w = app.add_subcommand("weighted", "Covers for dimensions with unequal extents");
  w->add_option("--weights", weighted.weights, "comma-separated weights (log2 of extents)");
  w->add_option("--log-q", weighted.log_q, "log2 of the reducer size");
  w->add_option("--in", weighted.in, "weighted spec JSON");
  w->add_option("--k", weighted.k, "marginal order");
  w->add_option("--method", weighted.method, "greedy or grouped");
  w->add_option("--out", weighted.out, "write the design here");
  w->add_flag("--pretty", weighted.pretty, "indent JSON");

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "CSV table of lower bounds and best constructions");
  sw->add_option("--n", sweep.n, "range LO..HI");
  sw->add_option("--m", sweep.m, "range LO..HI");
  sw->add_option("--k", sweep.k);
  sw->add_option("--d", sweep.d);
  sw->add_option("--out", sweep.out, "write CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return 2;
  }

  try {
    if (*c) return run_cover(cover);
    if (*v) return run_verify(verify_path, verify_pretty);
    if (*b) return run_bounds(bounds);
    if (*s) return run_simulate(sim);
    if (*w) return run_weighted(weighted);
    if (*sw) return run_sweep(sweep);
  } catch (const mc::Error& e) {
    emit_error(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
  return 0;
}
