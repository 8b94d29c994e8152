// tranche-lab: build sampled continua, run verification suites, export figure data.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tranche/decomposition.hpp"
#include "tranche/depth.hpp"
#include "tranche/dynamics.hpp"
#include "tranche/errors.hpp"
#include "tranche/gallery.hpp"
#include "tranche/hilbert.hpp"
#include "tranche/mahavier.hpp"
#include "tranche/symbolic.hpp"
#include "tranche/tent.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tranche;

namespace {

// Usage problems found after CLI11 parsing (unknown space, bad config line).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::size_t samples = 20000;
  std::size_t verify_samples = 5000;
  std::size_t dim = 4;
  std::size_t cells = 1000;
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  std::string out_dir = "figures";
  std::string data_dir = "data";
};

// key = value lines; '#' starts a comment.
void read_config(const std::string& path, Settings& s) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    const auto eq = line.find('=');
    auto trim = [](std::string v) {
      const auto b = v.find_first_not_of(" \t\r"), e = v.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    try {
      if (key == "samples") s.samples = std::stoul(value);
      else if (key == "verify_samples") s.verify_samples = std::stoul(value);
      else if (key == "dim") s.dim = std::stoul(value);
      else if (key == "cells") s.cells = std::stoul(value);
      else if (key == "tolerance") s.tolerance = std::stod(value);
      else if (key == "seed") s.seed = std::stoull(value);
      else if (key == "out_dir") s.out_dir = value;
      else if (key == "data_dir") s.data_dir = value;
      else throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << text;
}

// ---------------------------------------------------------------------------
// build

struct Built {
  Cloud cloud{"empty", 0.0, 1, {0.0}};
  json meta = json::object();
};

Built build_space(const std::string& space, const Settings& s) {
  Built b;
  auto from_model = [&](const SampledSpace& sp, const std::string& label) {
    b.cloud = sp.cloud.relabeled(label);
    b.meta = json::parse(model_metadata_json(sp));
  };
  if (space == "warsaw") {
    from_model(warsaw_model(s.samples).space, "warsaw");
  } else if (space == "star-route") {
    from_model(star4_route_model(s.samples).space, "star-route");
  } else if (space == "star-good") {
    from_model(star4_good_model(s.samples).space, "star-good");
  } else if (space == "spiral") {
    from_model(circle_spiral_model(s.samples).space, "spiral");
  } else if (space == "comb") {
    from_model(comb_pair(s.samples).space, "comb");
  } else if (space == "comb-x1") {
    b.cloud = comb_pair(s.samples).x1.relabeled("comb-x1");
  } else if (space == "A_n") {
    b.cloud = build_A_n(s.dim, s.samples);
  } else if (space == "A") {
    b.cloud = build_A(s.dim, s.samples);
  } else if (space == "X_n") {
    b.cloud = build_X_n(s.dim, s.samples);
  } else if (space == "Xhat") {
    b.cloud = build_Xhat(s.dim, s.samples);
  } else if (space == "X_inf") {
    from_model(build_Xinf_space(s.dim, s.samples), "X_inf");
  } else {
    throw UsageError("unknown space '" + space + "'");
  }
  b.meta["space"] = space;
  b.meta["samples"] = s.samples;
  return b;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  bool ok;
  double residual;
  std::string detail;
};

using Suite = std::function<std::vector<Check>(const Settings&)>;

std::vector<Check> verify_metric(const Settings& s) {
  std::vector<Check> out;
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto cloud = [&](std::size_t n, std::size_t dim) {
    std::vector<double> c(n * dim);
    for (double& v : c) v = u(rng);
    return Cloud("random", 0.0, dim, std::move(c));
  };
  double worst = 0.0;
  for (int k = 0; k < 40; ++k) {
    const Cloud a = cloud(60 + k, 3 + k % 5), b = cloud(50 + 2 * k, 3 + (k + 2) % 5);
    worst = std::max(worst, std::fabs(hausdorff(a, b) - hausdorff_brute(a, b)));
  }
  out.push_back({"hausdorff-fast-vs-brute", worst <= s.tolerance, worst, "40 random pairs"});

  double tri = 0.0, st = 0.0, half = 0.0;
  for (int k = 0; k < 200; ++k) {
    std::vector<double> x(6), y(6), z(6);
    for (std::size_t i = 0; i < 6; ++i) x[i] = u(rng), y[i] = u(rng), z[i] = u(rng);
    const HPoint p(x), q(y), r(z);
    tri = std::max(tri, product_metric(p, r) - product_metric(p, q) - product_metric(q, r));
    st = std::max(st, product_metric(left_shift(right_shift(p)), p));
    half = std::max(half, std::fabs(product_metric(half_shift(p), half_shift(q)) - 0.25 * product_metric(p, q)));
  }
  out.push_back({"triangle-inequality", tri <= s.tolerance, std::max(tri, 0.0), "200 random triples"});
  out.push_back({"sigma-theta-identity", st <= s.tolerance, st, ""});
  out.push_back({"half-shift-scaling", half <= s.tolerance, half, "d(x/2 theta, y/2 theta) = d(x,y)/4"});
  return out;
}

std::vector<Check> verify_mahavier(const Settings& s) {
  std::vector<Check> out;
  Rational expect(1);
  for (std::size_t level = 1; level <= 4; ++level) {
    const GapReport g = longest_tranche_gap(level);
    out.push_back({"gap-level-" + std::to_string(level), g.longest == expect,
                   std::fabs(g.longest.to_double() - expect.to_double()), g.longest.to_string()});
    expect = expect * Rational(1, 4);
  }
  for (std::size_t n = 0; n + 1 <= 4; ++n) {
    const Cloud a = build_A_n(n, s.verify_samples), b = build_A_n(n + 1, s.verify_samples);
    const double d = hausdorff(a, b);
    const double bound = std::ldexp(1.0, -static_cast<int>(n + 2)) + a.mesh() + b.mesh();
    out.push_back({"A" + std::to_string(n) + "-to-A" + std::to_string(n + 1), d <= bound, d,
                   "bound " + std::to_string(bound)});
  }
  const Cloud x = build_Xhat(5, 2000);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < x.size(); ++i) bad += admissible(x[i]) ? 0 : 1;
  out.push_back({"xhat-admissible", bad == 0, static_cast<double>(bad), std::to_string(x.size()) + " points"});
  return out;
}

std::vector<Check> verify_depth(const Settings& s) {
  std::vector<Check> out;
  const LapTable& t = lap_table();
  const double glue = glueing_residual(t), fwd = forward_image_residual(t);
  out.push_back({"glueing", glue <= s.tolerance, glue, ""});
  out.push_back({"forward-image", fwd <= s.tolerance, fwd, ""});
  out.push_back({"nesting", nesting_violations(t) == 0, static_cast<double>(nesting_violations(t)), ""});
  for (std::size_t n = 1; n <= std::min<std::size_t>(s.dim, 3); ++n)
    for (const auto& r : verify_conditions(n, s.verify_samples))
      out.push_back({r.condition + "/n=" + std::to_string(n), r.ok, r.residual, r.detail});
  return out;
}

std::vector<Check> verify_gallery(const Settings& s) {
  std::vector<Check> out;
  const GalleryModel w = warsaw_model(s.samples);
  for (const auto& y : w.y0) {
    const double tol = 3.0 * w.space.cloud.mesh();
    const auto r = approximate(w, y.cloud, tol);
    out.push_back({"warsaw " + y.label, r.min < tol, r.min, "needs < 3 mesh"});
  }
  for (const GalleryModel& m : {star4_route_model(s.samples), circle_spiral_model(s.samples)}) {
    const auto& y = m.y0.front();
    const double tol = 3.0 * m.space.cloud.mesh();
    const auto r = approximate(m, y.cloud, 0.0);
    out.push_back({m.name + " " + y.label + " fails", r.min >= tol, r.min, "needs >= 3 mesh"});
  }
  const CombPair c = comb_pair(s.samples);
  const double w16 = comb_failure_witness(c, 16.0);
  out.push_back({"comb-failure-witness", w16 > 0.05, w16, "tail of L1 against the limit component"});
  const double kt = comb_k_tail_distance(c, 8.0);
  out.push_back({"comb-K-tail", kt <= 1.0 / 9.0 + c.space.cloud.mesh(), kt, "tail of K near X1 x {0}"});
  return out;
}

std::vector<Check> verify_decomposition(const Settings& s) {
  std::vector<Check> out;
  auto bound = [&](const std::string& name, const SampledSpace& sp) {
    // The profile grid may not be finer than the sampling mesh.
    const double span = sp.chart.hi - sp.chart.lo;
    const auto cells = std::min<std::size_t>(s.cells, static_cast<std::size_t>(span / sp.cloud.mesh()));
    const auto r = tranche_bound_check(sp, cells);
    out.push_back({name + " tranches <= b1", r.holds, static_cast<double>(r.tranches), r.to_json()});
  };
  bound("warsaw", warsaw_model(s.samples).space);
  bound("X_inf(1)", build_Xinf_space(1, s.verify_samples));
  bound("comb", comb_pair(s.samples).space);
  return out;
}

std::vector<Check> verify_symbolic(const Settings& s) {
  std::vector<Check> out;
  const fs::path dir = fs::path(s.data_dir) / "specs";
  if (!fs::is_directory(dir)) throw DomainError("spec directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const QuasiGraphSpec spec = QuasiGraphSpec::load(f.string());
    const auto v = validate(spec);
    const bool expect_bad = f.stem().string().rfind("bad_", 0) == 0;
    out.push_back({f.stem().string() + (expect_bad ? " rejected" : " valid"), v.empty() != expect_bad,
                   static_cast<double>(v.size()), violations_to_json(v)});
    if (expect_bad) continue;
    bool bounded = true;
    const auto trace = reduce(spec);
    for (const auto& st : trace.stages) bounded = bounded && tranche_count(st) <= betti1(quotient(st));
    out.push_back({f.stem().string() + " tranche bound at every stage", bounded,
                   static_cast<double>(trace.stages.size()), ""});
    const auto back = replay_reverse(spec, trace);
    out.push_back({f.stem().string() + " replay", validate(back).empty() && back.to_json() == spec.to_json(), 0.0, ""});
  }
  return out;
}

std::vector<Check> verify_dynamics(const Settings& s) {
  std::vector<Check> out;
  const auto e = entropy_lower_bound(8, 0.4, 512, s.seed);
  out.push_back({"entropy >= log 2", e.bound >= std::log(2.0) - 0.05, e.bound,
                 std::to_string(e.separated) + " separated"});
  const Cloud x = build_Xhat(7, 2000);
  const auto r = exactness_witness(fiber(x, 0.0, 0.0), x, 3);
  out.push_back({"exactness fiber over 0", r.found && r.n == 1, r.best, "n = " + std::to_string(r.n)});
  return out;
}

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> m = {
      {"metric", verify_metric},         {"mahavier", verify_mahavier},
      {"depth", verify_depth},           {"gallery", verify_gallery},
      {"decomposition", verify_decomposition}, {"symbolic", verify_symbolic},
      {"dynamics", verify_dynamics},
  };
  return m;
}

// ---------------------------------------------------------------------------
// figure

// Roles: samples of a quasi-arc, its limit set, or the rest of the space.
std::string points_csv(const Cloud& c, std::size_t coords, const std::vector<std::string>& roles) {
  std::ostringstream os;
  os.precision(17);
  static const char* names[] = {"x", "y", "z"};
  for (std::size_t k = 0; k < coords; ++k) os << names[k] << ',';
  os << "role\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t k = 0; k < coords; ++k) os << (k < c.dim() ? c[i][k] : 0.0) << ',';
    os << roles[i] << '\n';
  }
  return os.str();
}

std::vector<std::string> track_roles(const Cloud& c, const std::vector<Track>& tracks,
                                     const std::function<bool(std::size_t)>& is_limit) {
  std::vector<std::string> roles(c.size(), "base");
  for (std::size_t i = 0; i < c.size(); ++i)
    if (is_limit(i)) roles[i] = "limit";
  for (const auto& t : tracks)
    for (std::size_t i : t.indices) roles[i] = "quasi-arc";
  return roles;
}

json figure_meta(const std::string& name, const std::vector<std::string>& files, json extra = json::object()) {
  json j = std::move(extra);
  j["figure"] = name;
  j["files"] = files;
  j["roles"] = {"quasi-arc", "limit", "base"};
  return j;
}

json emit_figure(const std::string& name, const Settings& s) {
  const fs::path dir(s.out_dir);
  std::vector<std::string> files;
  auto put = [&](const std::string& file, const std::string& text) {
    write_file(dir / file, text);
    files.push_back(file);
  };
  json extra = json::object();
  if (name == "warsaw") {
    const SampledSpace sp = warsaw_model(s.samples).space;
    const auto roles = track_roles(sp.cloud, sp.arcs, [&](std::size_t i) { return sp.cloud[i][0] == 0.0; });
    put("warsaw.csv", points_csv(sp.cloud, 2, roles));
    extra = json::parse(model_metadata_json(sp));
  } else if (name == "A-projections") {
    for (std::size_t n = 0; n <= 2; ++n) {
      const Cloud a = build_A_n(n, s.samples);
      put("A_" + std::to_string(n) + ".csv", points_csv(a, 3, std::vector<std::string>(a.size(), "base")));
    }
  } else if (name == "X2-projection") {
    const Cloud x = build_X_n(2, 2000);
    put("X_2.csv", points_csv(x, 3, std::vector<std::string>(x.size(), "base")));
  } else if (name == "X1-depth") {
    const SampledSpace sp = build_Xinf_space(1, s.samples);
    const auto roles = track_roles(sp.cloud, sp.arcs, [&](std::size_t i) { return sp.cloud[i][0] == 0.0; });
    put("X1_depth.csv", points_csv(sp.cloud, 3, roles));
    extra = json::parse(model_metadata_json(sp));
  } else if (name == "comb") {
    const CombPair c = comb_pair(s.samples);
    // X1 starts with the three segments of G (1024 samples); the rest are L1, L2 and their limits.
    const auto r1 = track_roles(c.x1, {c.l1, c.l2}, [](std::size_t i) { return i >= 1024; });
    put("comb_X1.csv", points_csv(c.x1, 2, r1));
    const std::size_t n1 = c.x1.size();
    const auto r2 = track_roles(c.x, {c.k}, [n1](std::size_t i) { return i < n1; });
    put("comb_X.csv", points_csv(c.x, 3, r2));
    extra = json::parse(model_metadata_json(c.space));
  } else {
    throw UsageError("unknown figure '" + name + "'");
  }
  extra["samples"] = s.samples;
  const json meta = figure_meta(name, files, extra);
  write_file(dir / (name + ".json"), meta.dump(2) + "\n");
  return meta;
}

// ---------------------------------------------------------------------------

json violations_json(const std::vector<Violation>& v) { return json::parse(violations_to_json(v)); }

int run(int argc, char** argv) {
  CLI::App app{"Finite-resolution models of tranched continua"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  std::string config;
  app.add_option("--config", config, "key = value defaults file (flags override)");
  auto* seed_opt = app.add_option("--seed", s.seed, "seed for randomized sweeps");
  auto* data_opt = app.add_option("--data-dir", s.data_dir, "directory holding specs/");

  std::string space, out_file;
  auto* build = app.add_subcommand("build", "build a sampled space and write Cloud JSON");
  build->add_option("space", space, "warsaw, star-route, star-good, spiral, comb, comb-x1, A_n, A, X_n, Xhat, X_inf")
      ->required();
  auto* dim_opt = build->add_option("--dim", s.dim, "depth or dimension parameter");
  auto* samples_opt = build->add_option("--samples", s.samples, "sample budget");
  build->add_option("--out", out_file, "output file (default stdout)");

  std::string a_file, b_file;
  auto* hd = app.add_subcommand("hausdorff", "Hausdorff distance between two Cloud JSON files");
  hd->add_option("a", a_file)->required()->check(CLI::ExistingFile);
  hd->add_option("b", b_file)->required()->check(CLI::ExistingFile);

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "metric, mahavier, depth, gallery, decomposition, symbolic, dynamics")->required();
  auto* vsamples_opt = verify->add_option("--samples", s.verify_samples, "sample budget for built spaces");

  std::string figure;
  auto* fig = app.add_subcommand("figure", "write figure CSVs with role tags and JSON metadata");
  fig->add_option("name", figure, "warsaw, A-projections, X2-projection, X1-depth, comb")->required();
  auto* outdir_opt = fig->add_option("--out-dir", s.out_dir, "output directory");
  auto* fsamples_opt = fig->add_option("--samples", s.samples, "sample budget");

  std::string action, spec_file;
  auto* spec = app.add_subcommand("spec", "symbolic quasi-graph specifications");
  spec->add_option("action", action)->required()->check(CLI::IsMember({"validate", "quotient", "depth", "reduce"}));
  spec->add_option("file", spec_file)->required();

  auto* dyn = app.add_subcommand("dynamics", "shift dynamics on the Mahavier product");
  dyn->require_subcommand(1);
  std::size_t n = 8, budget = 4096, level = 1;
  double eps = 0.25;
  auto* ent = dyn->add_subcommand("entropy", "greedy separated-set entropy lower bound");
  ent->add_option("--n", n, "orbit length")->check(CLI::Range(1, 20));
  ent->add_option("--eps", eps, "separation")->check(CLI::PositiveNumber);
  ent->add_option("--budget", budget, "candidate budget");
  auto* exact = dyn->add_subcommand("exact", "exactness witness for a tranche fiber");
  exact->add_option("--tranche-level", level, "level of the fiber base")->check(CLI::Range(1, 4));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  // Config first, then explicit flags win.
  if (!config.empty()) {
    Settings flags = s;
    read_config(config, s);
    if (seed_opt->count()) s.seed = flags.seed;
    if (data_opt->count()) s.data_dir = flags.data_dir;
    if (dim_opt->count()) s.dim = flags.dim;
    if (samples_opt->count() || fsamples_opt->count()) s.samples = flags.samples;
    if (vsamples_opt->count()) s.verify_samples = flags.verify_samples;
    if (outdir_opt->count()) s.out_dir = flags.out_dir;
  }

  if (*build) {
    const Built b = build_space(space, s);
    const std::string text = cloud_to_json(b.cloud, b.meta.dump());
    if (out_file.empty())
      std::cout << text << '\n';
    else
      write_file(out_file, text + "\n");
    return 0;
  }
  if (*hd) {
    const Cloud a = load_cloud(a_file), b = load_cloud(b_file);
    json j{{"a", a.label()}, {"b", b.label()}, {"hausdorff", hausdorff(a, b)},
           {"directed_ab", directed_hausdorff(a, b)}, {"directed_ba", directed_hausdorff(b, a)}};
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  if (*verify) {
    const auto it = suites().find(suite);
    if (it == suites().end()) throw UsageError("unknown suite '" + suite + "'");
    bool ok = true;
    json checks = json::array();
    for (const auto& c : it->second(s)) {
      ok = ok && c.ok;
      checks.push_back({{"check", c.name}, {"status", c.ok ? "pass" : "fail"}, {"residual", c.residual},
                        {"detail", c.detail}});
    }
    std::cout << json{{"suite", suite}, {"ok", ok}, {"seed", s.seed}, {"checks", checks}}.dump(2) << '\n';
    return ok ? 0 : 1;
  }
  if (*fig) {
    std::cout << emit_figure(figure, s).dump(2) << '\n';
    return 0;
  }
  if (*spec) {
    const QuasiGraphSpec q = QuasiGraphSpec::load(spec_file);
    const auto v = validate(q);
    json j{{"file", spec_file}, {"valid", v.empty()}, {"violations", violations_json(v)}};
    if (action == "validate") {
      std::cout << j.dump(2) << '\n';
      return v.empty() ? 0 : 1;
    }
    if (!v.empty()) {
      std::cerr << j.dump(2) << '\n';
      return 1;
    }
    if (action == "quotient") {
      const TopoGraph g = quotient(q);
      j["quotient"] = json::parse(g.to_json());
      j["betti1"] = betti1(g);
      j["tranches"] = tranche_count(q);
    } else if (action == "depth") {
      const DepthReport d = order_and_depth(q);
      j["order"] = d.order;
      j["depth"] = d.depth;
    } else {
      const ReductionTrace t = reduce(q);
      json stages = json::array();
      for (const auto& st : t.stages) {
        const TopoGraph g = quotient(st);
        stages.push_back({{"arcs", st.arcs.size()}, {"tranches", tranche_count(st)}, {"betti1", betti1(g)}});
      }
      j["removed"] = t.order;
      j["stages"] = stages;
      j["replayValid"] = validate(replay_reverse(q, t)).empty();
    }
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  if (*ent) {
    const auto r = entropy_lower_bound(n, eps, budget, s.seed);
    std::cout << json{{"n", r.n}, {"eps", r.eps}, {"candidates", r.candidates}, {"separated", r.separated},
                      {"fromItineraries", r.from_itineraries}, {"bound", r.bound}, {"seed", s.seed},
                      {"log2", std::log(2.0)}}
                     .dump(2)
              << '\n';
    return 0;
  }
  if (*exact) {
    // Exact fiber over the smallest base of exactly this level: its forward chain
    // reaches 0 or 1 after level - 1 steps and is followed by an arbitrary X-hat point.
    const Cloud x = build_Xhat(7, 2000);
    const auto here = tranche_bases_exact(level);
    const auto below = level > 1 ? tranche_bases_exact(level - 1) : std::vector<Rational>{};
    for (const Rational& base : here) {
      if (std::binary_search(below.begin(), below.end(), base)) continue;
      std::vector<double> chain{base.to_double()};
      while (chain.size() < level) chain.push_back(tent::value(chain.back()));
      double& last = chain.back();
      if (std::fabs(last) > 1e-9 && std::fabs(last - 1.0) > 1e-9) continue;
      last = std::round(last);
      const auto r = exactness_witness(prefixed_copy(chain, x.with_dim(x.dim() - level)), x, level + 2);
      std::cout << json{{"level", level}, {"base", base.to_string()}, {"prefix", chain}, {"found", r.found},
                        {"n", r.n}, {"threshold", r.threshold}, {"best", r.best}, {"distances", r.distances}}
                       .dump(2)
                << '\n';
      return r.found ? 0 : 1;
    }
    throw ResolutionError("no base of level " + std::to_string(level));
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << '\n';
    return 1;
  }
}
