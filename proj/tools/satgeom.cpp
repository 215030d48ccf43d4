// Command-line front end for the saturating-set library.
//
// Exit codes: 0 success, 1 a verification came out false, 2 usage or
// precondition error, 3 enumeration budget or retry budget exhausted.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "satgeom/bounds.hpp"
#include "satgeom/codes.hpp"
#include "satgeom/error.hpp"
#include "satgeom/geometry.hpp"
#include "satgeom/gf.hpp"
#include "satgeom/oracle.hpp"
#include "satgeom/point_set.hpp"
#include "satgeom/randomized.hpp"
#include "satgeom/saturation.hpp"

using json = nlohmann::ordered_json;
using namespace satgeom;

namespace {

constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Options {
  std::uint32_t q = 0, p = 0, m = 0;
  long double c = 1, d = 1.2L;
  std::optional<long double> D;
  int mu = 1;
  std::uint32_t N = 2;
  std::optional<std::int64_t> w, k;
  std::uint32_t A = 0;
  std::uint64_t trials = 100;
  std::optional<std::uint64_t> seed;
  int retries = 50;
  std::uint32_t qmin = 2, qmax = 0;
  unsigned jobs = 1;
  bool enforce_range = false;
  bool direct = false;
  bool skip_prev_verify = false;
  std::string plane_file, set_file, matrix_file, out, format = "table";
  std::string method = "syndrome";
  std::vector<int> mu_list;
  std::vector<std::uint32_t> n_list;
};

std::string fmt(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

double num(long double v) { return static_cast<double>(v); }

void emit(const Options& o, const json& doc) {
  std::ostringstream ss;
  if (o.format == "json") {
    ss << doc.dump() << '\n';
  } else {
    for (const auto& [key, value] : doc.items()) {
      if (key == "schema") continue;
      ss << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
         << '\n';
    }
  }
  if (o.out.empty()) {
    std::cout << ss.str();
  } else {
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + o.out);
    f << ss.str();
  }
}

json document(const std::string& command) {
  json doc;
  doc["schema"] = 1;
  doc["command"] = command;
  return doc;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  return in;
}

std::shared_ptr<const gf::Field> field_of(const Options& o) {
  if (o.p != 0 || o.m != 0) {
    if (o.p == 0 || o.m == 0) {
      throw Error(ErrorKind::InvalidArgument, "--p and --m go together");
    }
    return gf::Field::make(o.p, o.m);
  }
  if (o.q == 0) throw Error(ErrorKind::InvalidArgument, "need --q or --p/--m");
  return gf::Field::of_order(o.q);
}

geom::IncidencePlane plane_of(const Options& o) {
  if (!o.plane_file.empty()) {
    auto in = open_input(o.plane_file);
    return geom::load_plane(in);
  }
  return geom::build_pg2(field_of(o));
}

PointSet set_of(const Options& o) {
  if (o.set_file.empty()) throw Error(ErrorKind::InvalidArgument, "need --set-file");
  auto in = open_input(o.set_file);
  return read_point_set(in);
}

std::uint64_t seed_of(const Options& o) {
  if (o.seed) return *o.seed;
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

json points_json(const PointSet& s) {
  return json(std::vector<std::uint64_t>(s.points().begin(), s.points().end()));
}

json verdict_json(const sat::Verdict& v) {
  json j;
  j["ok"] = v.ok;
  if (v.witness) {
    j["witness"] = *v.witness;
    j["witness_multiplicity"] = v.witness_multiplicity;
    j["deficit"] = v.deficit;
  }
  return j;
}

// --- commands -------------------------------------------------------------

int cmd_plane_gen(const Options& o) {
  const auto plane = geom::build_pg2(field_of(o));
  std::ostringstream ss;
  geom::write_plane(ss, plane);
  if (o.out.empty()) {
    std::cout << ss.str();
  } else {
    std::ofstream(o.out) << ss.str();
  }
  return 0;
}

int cmd_plane_check(const Options& o) {
  auto doc = document("plane check");
  try {
    const auto plane = plane_of(o);
    doc["ok"] = true;
    doc["q"] = plane.order();
    doc["points"] = plane.num_points();
    doc["lines"] = plane.num_lines();
    doc["id"] = plane.id();
    emit(o, doc);
    return 0;
  } catch (const AxiomViolation& e) {
    doc["ok"] = false;
    doc["axiom"] = to_string(e.which());
    doc["witness_points"] = e.witness_points();
    doc["witness_lines"] = e.witness_lines();
    doc["message"] = e.what();
    emit(o, doc);
    return kExitFalse;
  }
}

json construction_json(const std::string& cmd, std::uint64_t seed,
                       const rnd::ConstructionResult& r, int mu) {
  auto doc = document(cmd);
  doc["seed"] = seed;
  doc["mu"] = mu;
  doc["size"] = r.set.size();
  doc["w"] = r.w;
  doc["scale"] = num(r.scale);
  doc["trials_used"] = r.trials_used;
  doc["bound"] = num(r.size_bound);
  doc["verified"] = r.verified;
  doc["theorem_range_ok"] = r.theorem_range_ok;
  if (r.d_sequence.size() > 1) {
    json ds = json::array();
    for (auto x : r.d_sequence) ds.push_back(num(x));
    doc["d_sequence"] = ds;
  }
  doc["geometry"] = r.set.geometry();
  doc["points"] = points_json(r.set);
  return doc;
}

int cmd_construct(const Options& o, const std::string& set_out) {
  const auto plane = plane_of(o);
  rnd::ConstructorParams params;
  params.c = o.c;
  params.mu = o.mu;
  params.seed = seed_of(o);
  params.max_retries = o.retries;
  params.enforce_range = o.enforce_range;
  params.verify_prev = !o.skip_prev_verify;
  std::cerr << "seed " << params.seed << '\n';
  rnd::ConstructionResult r;
  if (o.mu == 1 && !o.direct) {
    r = rnd::construct_saturating(plane, params);
  } else if (o.direct) {
    r = rnd::construct_mu_direct(plane, o.mu, params);
  } else {
    r = rnd::construct_mu_iterative(plane, o.mu, params);
  }
  if (!set_out.empty()) {
    std::ofstream f(set_out);
    write_point_set(f, r.set);
  }
  emit(o, construction_json("construct", params.seed, r, o.mu));
  return 0;
}

int cmd_verify(const Options& o) {
  const auto set = set_of(o);
  auto doc = document("verify");
  doc["mu"] = o.mu;
  doc["size"] = set.size();
  sat::Verdict v;
  if (o.N > 2) {
    const geom::ProjectiveSpace space(field_of(o), o.N);
    doc["geometry"] = space.id();
    v = sat::is_saturating_space(space, set, static_cast<std::uint64_t>(o.mu));
  } else {
    const auto plane = plane_of(o);
    doc["geometry"] = plane.id();
    const auto prof = sat::coverage_profile(plane, set);
    if (auto m = sat::min_external_multiplicity(prof)) doc["min_multiplicity"] = *m;
    v = sat::is_mu_saturating(plane, set, static_cast<std::uint64_t>(o.mu));
  }
  doc["saturating"] = v.ok;
  if (v.witness) {
    doc["witness"] = *v.witness;
    doc["witness_multiplicity"] = v.witness_multiplicity;
    doc["deficit"] = v.deficit;
  }
  emit(o, doc);
  return v.ok ? 0 : kExitFalse;
}

int cmd_mc(const Options& o) {
  const auto plane = plane_of(o);
  rnd::ConstructorParams params;
  params.seed = seed_of(o);
  params.jobs = o.jobs;
  std::cerr << "seed " << params.seed << '\n';
  const auto r = rnd::monte_carlo(plane, o.c, o.trials, params);
  auto doc = document("mc");
  doc["seed"] = params.seed;
  doc["q"] = plane.order();
  doc["c"] = num(o.c);
  doc["w"] = r.w;
  doc["trials"] = r.trials;
  doc["successes"] = r.successes;
  doc["empirical_rate"] = r.empirical_rate;
  doc["theorem2_bound"] = num(r.theorem2_bound);
  emit(o, doc);
  return 0;
}

int cmd_bounds_eval(const Options& o, const CLI::App& sub) {
  if (o.q < 2) throw Error(ErrorKind::InvalidArgument, "need --q >= 2");
  bounds::BoundParams p;
  p.q = o.q;
  p.w = o.w;
  p.k = o.k;
  p.D = o.D;
  if (sub.count("--c")) p.c = o.c;
  if (sub.count("--d")) p.d = o.d;
  if (sub.count("--mu")) p.mu = o.mu;
  if (sub.count("--N")) p.N = o.N;
  const auto values = bounds::evaluate(p);
  auto doc = document("bounds eval");
  doc["q"] = o.q;
  if (o.format == "csv") {
    std::ostringstream ss;
    ss << "name,approx,exact,valid,note\n";
    for (const auto& [name, v] : values) {
      ss << name << ',' << fmt(v.approx) << ',' << (v.exact ? v.exact->str() : "")
         << ',' << (v.valid ? "true" : "false") << ',' << v.note << '\n';
    }
    std::cout << ss.str();
    return 0;
  }
  json vals = json::object();
  for (const auto& [name, v] : values) {
    json e;
    e["approx"] = fmt(v.approx);
    if (v.exact) e["exact"] = v.exact->str();
    e["valid"] = v.valid;
    if (!v.note.empty()) e["note"] = v.note;
    vals[name] = e;
  }
  if (o.format == "json") {
    doc["values"] = vals;
    emit(o, doc);
  } else {
    for (const auto& [name, e] : vals.items()) {
      std::cout << name << ": " << e["approx"].get<std::string>();
      if (e.contains("exact")) std::cout << " (= " << e["exact"].get<std::string>() << ")";
      if (!e["valid"].get<bool>()) std::cout << " [outside range]";
      if (e.contains("note")) std::cout << " " << e["note"].get<std::string>();
      std::cout << '\n';
    }
  }
  return 0;
}

int cmd_bounds_table(const Options& o) {
  if (o.qmax < o.qmin) throw Error(ErrorKind::InvalidArgument, "need --qmin <= --qmax");
  const auto qs = gf::prime_powers(o.qmin, o.qmax);
  const auto mus = o.mu_list.empty() ? std::vector<int>{1} : o.mu_list;
  const auto ns = o.n_list.empty() ? std::vector<std::uint32_t>{2} : o.n_list;
  const auto rows = codes::length_function_table(qs, mus, ns);
  if (o.format == "json") {
    auto doc = document("bounds table");
    json arr = json::array();
    for (const auto& r : rows) {
      json e;
      e["q"] = r.q;
      e["mu"] = r.mu;
      e["N"] = r.N;
      e["bound"] = fmt(r.bound);
      e["valid"] = r.valid;
      if (r.prior_bound) e["prior_bound"] = fmt(*r.prior_bound);
      if (r.improves) e["improves"] = *r.improves;
      e["note"] = r.note;
      arr.push_back(e);
    }
    doc["rows"] = arr;
    emit(o, doc);
    return 0;
  }
  std::ostringstream ss;
  codes::write_table_csv(ss, rows);
  if (o.out.empty()) {
    std::cout << ss.str();
  } else {
    std::ofstream(o.out) << ss.str();
  }
  return 0;
}

int cmd_threshold(const Options& o) {
  const std::uint32_t qmax = o.qmax ? o.qmax : 1024;
  const auto rep = bounds::threshold_scan(o.mu, o.d, qmax, o.jobs);
  auto doc = document("threshold");
  doc["mu"] = rep.mu;
  doc["d"] = num(rep.d);
  doc["q_max"] = rep.q_max;
  doc["q_star"] = rep.q_star;
  doc["last_failing"] = rep.last_failing;
  doc["integer_star"] = rep.integer_star;
  doc["real_crossing"] = fmt(rep.real_crossing);
  doc["prime_powers_checked"] = rep.prime_powers_checked;
  doc["high_precision_checks"] = rep.high_precision_checks;
  emit(o, doc);
  return 0;
}

int cmd_oracle_pi(const Options& o) {
  if (!o.w) throw Error(ErrorKind::InvalidArgument, "need --w");
  const auto plane = plane_of(o);
  const auto v = oracle::brute_pi(plane, o.A, *o.w, oracle::EnumerationBudget::from_env());
  auto doc = document("oracle pi");
  doc["q"] = plane.order();
  doc["A"] = o.A;
  doc["w"] = *o.w;
  doc["pi"] = v.str();
  if (plane.has_coordinates()) doc["formula"] = bounds::pi_exact(plane.order(), *o.w).str();
  emit(o, doc);
  return 0;
}

int cmd_oracle_t(const Options& o) {
  if (!o.w) throw Error(ErrorKind::InvalidArgument, "need --w");
  const auto plane = plane_of(o);
  const auto hist = oracle::brute_T(plane, o.A, *o.w, oracle::EnumerationBudget::from_env());
  auto doc = document("oracle t");
  doc["q"] = plane.order();
  doc["A"] = o.A;
  doc["w"] = *o.w;
  json h = json::object();
  for (const auto& [m, count] : hist) h[std::to_string(m)] = count;
  doc["histogram"] = h;
  json t = json::array();
  for (int i = 0; i <= 3; ++i) t.push_back(bounds::t_count(plane.order(), *o.w, i).str());
  doc["formula"] = t;
  emit(o, doc);
  return 0;
}

int cmd_oracle_min_sat(const Options& o) {
  const auto plane = plane_of(o);
  const auto r = oracle::brute_min_saturating(plane, static_cast<std::uint64_t>(o.mu),
                                              oracle::EnumerationBudget::from_env());
  auto doc = document("oracle min-sat");
  doc["q"] = plane.order();
  doc["mu"] = o.mu;
  doc["size"] = r.size;
  doc["witness"] = points_json(r.witness);
  doc["subsets_examined"] = r.subsets_examined;
  emit(o, doc);
  return 0;
}

codes::ParityCheckMatrix matrix_of(const Options& o) {
  if (!o.matrix_file.empty()) {
    auto in = open_input(o.matrix_file);
    return codes::read_matrix(in);
  }
  const auto set = set_of(o);
  if (o.N > 2) return codes::export_parity_check(geom::ProjectiveSpace(field_of(o), o.N), set);
  return codes::export_parity_check(plane_of(o), set);
}

int cmd_oracle_radius(const Options& o) {
  const auto h = matrix_of(o);
  const int radius = oracle::brute_covering_radius(h, oracle::EnumerationBudget::from_env());
  auto doc = document("oracle radius");
  doc["q"] = h.q();
  doc["r"] = h.rows();
  doc["n"] = h.cols();
  doc["radius"] = radius;
  doc["radius_is_lower_bound"] = radius == 3;
  emit(o, doc);
  return 0;
}

int cmd_code_export(const Options& o) {
  const auto h = matrix_of(o);
  std::ostringstream ss;
  codes::write_matrix(ss, h);
  if (o.out.empty()) {
    std::cout << ss.str();
  } else {
    std::ofstream(o.out) << ss.str();
  }
  return 0;
}

int cmd_code_check(const Options& o) {
  const auto h = matrix_of(o);
  const auto method =
      o.method == "geometric" ? codes::McfMethod::Geometric : codes::McfMethod::Syndrome;
  const auto v = codes::check_mcf(h, static_cast<std::uint64_t>(o.mu), method,
                                  oracle::EnumerationBudget::from_env().max_subsets);
  auto doc = document("code check");
  doc["q"] = h.q();
  doc["r"] = h.rows();
  doc["n"] = h.cols();
  doc["mu"] = o.mu;
  doc["method"] = o.method;
  doc["result"] = verdict_json(v);
  emit(o, doc);
  return v.ok ? 0 : kExitFalse;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BudgetExceeded:
    case ErrorKind::RetriesExhausted:
      return kExitBudget;
    default:
      return kExitUsage;
  }
}

void report(const Error& e) {
  json err;
  err["schema"] = 1;
  err["error"] = to_string(e.kind());
  err["message"] = e.what();
  if (const auto* r = dynamic_cast<const RetriesExhausted*>(&e)) {
    err["stage"] = r->stage();
    err["trials"] = r->trials();
    err["failure_probability_bound"] = r->failure_probability_bound();
  }
  if (const auto* c = dynamic_cast<const ConstraintViolated*>(&e)) err["which"] = c->which();
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) err["line"] = p->line();
  std::cerr << err.dump() << '\n';
}

// Flag groups shared by several subcommands.
void add_field(CLI::App* s, Options& o) {
  s->add_option("--q", o.q, "Field order (prime power)");
  s->add_option("--p", o.p, "Field characteristic");
  s->add_option("--m", o.m, "Field degree");
}
void add_plane(CLI::App* s, Options& o) {
  add_field(s, o);
  s->add_option("--plane-file", o.plane_file, "Plane file instead of PG(2,q)");
}
void add_output(CLI::App* s, Options& o) {
  s->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  s->add_option("--out", o.out, "Write output to a file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturating sets in projective planes and spaces"};
  app.require_subcommand(1);
  Options o;
  std::string set_out;

  auto* plane = app.add_subcommand("plane", "Generate or validate planes");
  plane->require_subcommand(1);
  auto* plane_gen = plane->add_subcommand("gen", "Write PG(2,q) in the plane format");
  add_field(plane_gen, o);
  plane_gen->add_option("--out", o.out, "Output file");
  auto* plane_check = plane->add_subcommand("check", "Validate the plane axioms");
  add_plane(plane_check, o);
  add_output(plane_check, o);

  auto* construct = app.add_subcommand("construct", "Random (1,mu)-saturating set");
  add_plane(construct, o);
  add_output(construct, o);
  construct->add_option("--c", o.c, "Scale of w for mu = 1");
  construct->add_option("--mu", o.mu, "Target multiplicity")->check(CLI::PositiveNumber);
  construct->add_flag("--direct", o.direct, "One-shot construction (mu = 2, 3, 4)");
  construct->add_option("--seed", o.seed, "Master seed");
  construct->add_option("--retries", o.retries, "Draws per stage")->check(CLI::PositiveNumber);
  construct->add_flag("--enforce-range", o.enforce_range, "Fail outside the estimate range");
  construct->add_flag("--skip-prev-verify", o.skip_prev_verify,
                      "Do not re-verify intermediate stages");
  construct->add_option("--set-out", set_out, "Also write the set in point-set format");

  auto* verify = app.add_subcommand("verify", "Check a point set");
  add_plane(verify, o);
  add_output(verify, o);
  verify->add_option("--set-file", o.set_file, "Point-set file")->required();
  verify->add_option("--mu", o.mu, "Target multiplicity")->check(CLI::PositiveNumber);
  verify->add_option("--N", o.N, "Dimension of the ambient space");

  auto* mc = app.add_subcommand("mc", "Monte Carlo success rate of one random draw");
  add_plane(mc, o);
  add_output(mc, o);
  mc->add_option("--c", o.c, "Scale of w");
  mc->add_option("--trials", o.trials, "Number of draws");
  mc->add_option("--seed", o.seed, "Master seed");
  mc->add_option("--jobs", o.jobs, "Worker threads");

  auto* bnd = app.add_subcommand("bounds", "Evaluate bounds");
  bnd->require_subcommand(1);
  auto* beval = bnd->add_subcommand("eval", "Every bound the given parameters allow");
  add_output(beval, o);
  beval->add_option("--q", o.q, "Plane order")->required();
  beval->add_option("--w", o.w, "Sample size minus one");
  beval->add_option("--k", o.k, "Size of the set being extended");
  beval->add_option("--c", o.c, "Scale c");
  beval->add_option("--d", o.d, "Scale d");
  beval->add_option("--D", o.D, "Size coefficient of the set being extended");
  beval->add_option("--mu", o.mu, "Multiplicity");
  beval->add_option("--N", o.N, "Dimension");
  auto* btable = bnd->add_subcommand("table", "Length-function bounds as CSV");
  add_output(btable, o);
  btable->add_option("--qmin", o.qmin, "Smallest q");
  btable->add_option("--qmax", o.qmax, "Largest q")->required();
  btable->add_option("--mu", o.mu_list, "Multiplicities")->delimiter(',');
  btable->add_option("--N", o.n_list, "Dimensions")->delimiter(',');

  auto* thr = app.add_subcommand("threshold", "Smallest q where the one-shot estimate is below 1");
  add_output(thr, o);
  thr->add_option("--mu", o.mu, "Multiplicity (2, 3, 4)")->required();
  thr->add_option("--d", o.d, "Scale d")->required();
  thr->add_option("--qmax", o.qmax, "Scan limit (default 1024)");
  thr->add_option("--jobs", o.jobs, "Worker threads");

  auto* orc = app.add_subcommand("oracle", "Exhaustive enumeration");
  orc->require_subcommand(1);
  auto* opi = orc->add_subcommand("pi", "Probability that a random set misses A");
  auto* ot = orc->add_subcommand("t", "Histogram of m(A) over A-avoiding sets");
  for (auto* s : {opi, ot}) {
    add_plane(s, o);
    add_output(s, o);
    s->add_option("--w", o.w, "Sample size minus one")->required();
    s->add_option("--A", o.A, "Fixed point");
  }
  auto* omin = orc->add_subcommand("min-sat", "Smallest (1,mu)-saturating set");
  add_plane(omin, o);
  add_output(omin, o);
  omin->add_option("--mu", o.mu, "Target multiplicity")->check(CLI::PositiveNumber);
  auto* orad = orc->add_subcommand("radius", "Covering radius (capped at 3)");

  auto* code = app.add_subcommand("code", "Parity-check matrices");
  code->require_subcommand(1);
  auto* cexp = code->add_subcommand("export", "Parity-check matrix of a point set");
  auto* cchk = code->add_subcommand("check", "Multiple coverage of farthest-off points");
  for (auto* s : {orad, cexp, cchk}) {
    add_plane(s, o);
    s->add_option("--set-file", o.set_file, "Point-set file");
    s->add_option("--N", o.N, "Dimension of the ambient space");
    s->add_option("--matrix-file", o.matrix_file, "Matrix file");
  }
  orad->add_option("--format", o.format)->check(CLI::IsMember({"table", "json"}));
  cexp->add_option("--out", o.out, "Output file");
  add_output(cchk, o);
  cchk->add_option("--mu", o.mu, "Target multiplicity")->check(CLI::PositiveNumber);
  cchk->add_option("--method", o.method)->check(CLI::IsMember({"syndrome", "geometric"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*plane_gen) return cmd_plane_gen(o);
    if (*plane_check) return cmd_plane_check(o);
    if (*construct) return cmd_construct(o, set_out);
    if (*verify) return cmd_verify(o);
    if (*mc) return cmd_mc(o);
    if (*beval) return cmd_bounds_eval(o, *beval);
    if (*btable) return cmd_bounds_table(o);
    if (*thr) return cmd_threshold(o);
    if (*opi) return cmd_oracle_pi(o);
    if (*ot) return cmd_oracle_t(o);
    if (*omin) return cmd_oracle_min_sat(o);
    if (*orad) return cmd_oracle_radius(o);
    if (*cexp) return cmd_code_export(o);
    if (*cchk) return cmd_code_check(o);
  } catch (const Error& e) {
    report(e);
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    json err;
    err["schema"] = 1;
    err["error"] = "Internal";
    err["message"] = e.what();
    std::cerr << err.dump() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
