#include "telescope/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "telescope/error.hpp"
#include "telescope/fixtures.hpp"
#include "telescope/io.hpp"
#include "telescope/spectral.hpp"

namespace telescope {

using nlohmann::json;

namespace {

struct Report {
  std::string text;
  int code = 0;
};

Report as_json(const json& j, int code = 0) { return {j.dump(2) + "\n", code}; }

[[noreturn]] void bad_flag(const std::string& flag, const std::string& what) {
  throw Error(ErrorCode::ParseError, flag + ": " + what, {{"flag", flag}});
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep))
    if (!part.empty()) parts.push_back(part);
  return parts;
}

double parse_real(const std::string& s, const std::string& flag) {
  try {
    return BigRational::parse(s).to_double();
  } catch (const Error&) {
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::logic_error&) {
  }
  bad_flag(flag, "'" + s + "' is not a number");
}

/// "lo:hi:count" (geometric) or a comma list such as "1/4,0.5,2".
std::vector<double> parse_grid(const std::string& s) {
  const auto colon = split(s, ':');
  if (colon.size() == 3) {
    const double lo = parse_real(colon[0], "--grid"), hi = parse_real(colon[1], "--grid");
    const double n = parse_real(colon[2], "--grid");
    if (!(lo > 0) || !(hi >= lo) || n < 1 || n != std::floor(n)) bad_flag("--grid", "expected lo:hi:count with 0 < lo <= hi");
    return geometric_grid(lo, hi, static_cast<std::size_t>(n));
  }
  std::vector<double> out;
  for (const auto& p : split(s, ',')) {
    const double v = parse_real(p, "--grid");
    if (!(v > 0)) bad_flag("--grid", "weights must be positive");
    out.push_back(v);
  }
  if (out.empty()) bad_flag("--grid", "empty grid");
  return out;
}

std::vector<int> parse_depths(const std::string& s) {
  std::vector<int> out;
  for (const auto& p : split(s, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(p, &used);
      if (used != p.size()) throw std::invalid_argument(p);
      if (v < 1) bad_flag("--depth", "depth must be at least 1");
      out.push_back(v);
    } catch (const std::logic_error&) {
      bad_flag("--depth", "'" + p + "' is not an integer");
    }
  }
  if (out.empty()) bad_flag("--depth", "empty depth list");
  return out;
}

class Runner {
 public:
  explicit Runner(const RunConfig& cfg) : cfg_(cfg) {}

  Report run() {
    const std::string& c = cfg_.command;
    if (c == "validate") return validate();
    if (c == "homology") return homology_cmd();
    if (c == "euler") return euler();
    if (c == "torus") return torus();
    if (c == "contract-plus" || c == "contract-minus") return contract(c == "contract-plus");
    if (c == "novikov") return novikov();
    if (c == "wall") return wall();
    if (c == "scan-sigma") return scan_sigma();
    if (c == "scan-lambda") return scan_lambda();
    if (c == "index-window") return index_window();
    if (c == "fixtures-list") return fixtures_list();
    if (c == "fixtures-run") return fixtures_run();
    bad_flag("command", "unknown command '" + c + "'");
  }

 private:
  const json& input() {
    if (!loaded_) {
      if (cfg_.inputs.empty()) bad_flag("input", "an input file is required");
      input_ = io::read_json_file(cfg_.inputs.front());
      loaded_ = true;
    }
    return input_;
  }

  bool is_self_map(const json& j) const { return j.is_object() && j.contains("map"); }

  int depth(int fallback) const { return cfg_.depths.empty() ? fallback : cfg_.depths.back(); }
  std::vector<int> depth_list(std::vector<int> fallback) const { return cfg_.depths.empty() ? fallback : cfg_.depths; }

  Weight weight() const {
    try {
      return Weight(BigRational::parse(cfg_.weight));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) bad_flag("--weight", "'" + cfg_.weight + "' is not a rational");
      throw;
    }
  }

  NumericalRankPolicy policy() const {
    NumericalRankPolicy p;
    if (cfg_.tolerance) p.relative_tolerance = *cfg_.tolerance;
    return p;
  }

  Report validate() {
    const json& j = input();
    if (is_self_map(j)) {
      const auto in = io::self_map_from_json(j);
      validate_complex(in.h.source);
      validate_chain_map(in.h);
      return as_json({{"valid", true}, {"kind", "self_map"}, {"ring", to_string(in.h.source.ring)},
                      {"ranks", in.h.source.ranks}});
    }
    const ChainComplex c = io::complex_from_json(j);
    validate_complex(c);
    return as_json({{"valid", true}, {"kind", "complex"}, {"ring", to_string(c.ring)}, {"ranks", c.ranks}});
  }

  ChainComplex complex_or_torus() {
    const json& j = input();
    if (is_self_map(j)) {
      const auto in = io::self_map_from_json(j);
      return mapping_torus(validate_chain_map(in.h));
    }
    return validate_complex(io::complex_from_json(j));
  }

  Report homology_cmd() {
    ChainComplex c = complex_or_torus();
    if (cfg_.lambda) {
      GaussianRational lambda;
      try {
        lambda = GaussianRational::parse(*cfg_.lambda);
      } catch (const Error&) {
        bad_flag("--lambda", "'" + *cfg_.lambda + "' is not a Gaussian rational");
      }
      c = specialize(c, lambda);
    }
    return as_json(io::to_json(homology(c)));
  }

  Report euler() {
    const json& j = input();
    if (j.is_object() && j.contains("p")) {
      const WallEulerReport rep = wall_euler_class(io::wall_from_json(j), depth(6));
      return as_json(io::to_json(rep));
    }
    const ChainComplex c = complex_or_torus();
    if (c.ring == RingTag::Laurent)
      throw Error(ErrorCode::LaurentRing, "euler needs a complex over Q or Q[pi]; use homology --lambda");
    const EquivariantEuler eq = equivariant_euler(c);
    return as_json({{"chi", euler_characteristic(c)},
                    {"chi_equivariant", io::to_json(eq.from_homology)},
                    {"chi_equivariant_chains", io::to_json(eq.from_chains)},
                    {"agree", eq.agree},
                    {"reduced_nonzero", !reduced_class_is_zero(eq.from_homology)}},
                   eq.agree ? 0 : 1);
  }

  Report torus() {
    const auto in = io::self_map_from_json(input());
    const ChainComplex t = mapping_torus(validate_chain_map(in.h));
    return as_json(io::to_json(t));
  }

  Report contract(bool plus) {
    const auto in = io::self_map_from_json(input());
    validate_chain_map(in.h);
    const ContractionCertificate cert =
        plus ? plus_contraction(in.h, weight(), depth(8)) : minus_contraction(in.h, weight(), depth(8));
    return as_json(io::to_json(cert), cert.verified ? 0 : 1);
  }

  Report novikov() {
    const auto in = io::self_map_from_json(input());
    validate_chain_map(in.h);
    NovikovSide side;
    if (cfg_.side == "z")
      side = NovikovSide::Z;
    else if (cfg_.side == "z^-1" || cfg_.side == "zinv")
      side = NovikovSide::ZInverse;
    else
      bad_flag("--side", "expected z or z^-1");
    const NovikovCertificate cert = novikov_vanishing(in.h, side, depth(8), in.inverse);
    const bool ok = cert.verified && cert.factorization_verified.value_or(true);
    return as_json(io::to_json(cert), ok ? 0 : 1);
  }

  Report wall() {
    const WallComplex w = io::wall_from_json(input());
    const int n = depth(6);
    json out = {{"complex", io::to_json(w.extended.base)}, {"ell", w.ell.str()}, {"transpose", w.transpose}};
    const WallEulerReport rep = wall_euler_class(w, n);
    out["euler"] = io::to_json(rep);
    bool ok = rep.stable;
    if (w.transpose) {
      const TransposeInverse inv = transpose_inverse(w, n);
      out["inverse"] = io::to_json(inv);
      ok = ok && inv.exact_identity && inv.window_identity;
    } else {
      ok = ok && rep.matches_image_of_p;
    }
    return as_json(out, ok ? 0 : 1);
  }

  std::string grid_or(const std::string& fallback) const { return cfg_.grid.empty() ? fallback : cfg_.grid; }

  Report scan_sigma() {
    const auto in = io::self_map_from_json(input());
    const LaurentMatrix m = one_minus_zh(total_matrix(validate_chain_map(in.h)));
    const SigmaScanReport rep = sigma_min_scan(m, parse_grid(grid_or("1/2,1,2")), depth_list({16, 32, 64}),
                                               cfg_.tolerance.value_or(0.05));
    if (cfg_.format == "csv") return {io::sigma_csv(rep), 0};
    return as_json(io::to_json(rep));
  }

  Report scan_lambda() {
    const auto in = io::self_map_from_json(input());
    if (!(cfg_.radius > 0)) bad_flag("--radius", "radius must be positive");
    const LambdaScanReport rep = lambda_circle_scan(validate_chain_map(in.h), cfg_.radius, cfg_.samples, policy());
    if (cfg_.format == "csv") return {io::lambda_csv(rep), 0};
    return as_json(io::to_json(rep));
  }

  Report index_window() {
    WindowedModel model = ray_model();
    if (!cfg_.inputs.empty()) {
      const json& j = input();
      const auto in = io::self_map_from_json(j);
      validate_chain_map(in.h);
      ChainComplex f = ChainComplex::make(RingTag::Rational, in.h.source.group, 0, {}, {});
      std::map<int, LaurentMatrix> gluing;
      if (j.contains("compact")) {
        f = validate_complex(io::complex_from_json(j["compact"]));
        if (!j.contains("gluing") || !j["gluing"].is_object()) bad_flag("gluing", "expected an object keyed by degree");
        for (auto it = j["gluing"].begin(); it != j["gluing"].end(); ++it)
          gluing.emplace(std::stoi(it.key()), io::laurent_from_json(it.value(), f.group, "gluing." + it.key()));
      }
      model = glued_model(f, in.h, gluing);
    }
    double threshold = cfg_.threshold;
    if (!(threshold > 0)) bad_flag("--threshold", "threshold must be positive");
    if (cfg_.dual) {
      model = dual_model(model, *cfg_.dual);
      threshold = 1.0 / threshold;
    }
    const IndexReport rep =
        index_window_experiment(model, threshold, parse_grid(grid_or("1/4,1/2,2,4")), depth_list({32, 64}), policy());
    bool ok = true;
    for (const auto& p : rep.points)
      if (p.matches && !*p.matches) ok = false;
    if (cfg_.format == "csv") return {io::index_csv(rep), ok ? 0 : 1};
    return as_json(io::to_json(rep), ok ? 0 : 1);
  }

  Report fixtures_list() {
    json list = json::array();
    for (const auto& f : fixture_registry()) list.push_back({{"name", f.name}, {"description", f.description}});
    return as_json({{"fixtures", list}});
  }

  Report fixtures_run() {
    const std::string name = cfg_.inputs.empty() ? "all" : cfg_.inputs.front();
    if (name == "all") {
      json results = json::array();
      bool ok = true;
      for (const auto& r : run_all_fixtures(cfg_.seed)) {
        results.push_back(r.to_json());
        ok = ok && r.passed();
      }
      return as_json({{"fixtures", results}, {"passed", ok}, {"seed", cfg_.seed}}, ok ? 0 : 1);
    }
    const FixtureResult r = run_fixture(name, cfg_.seed);
    json out = r.to_json();
    out["seed"] = cfg_.seed;
    return as_json(out, r.passed() ? 0 : 1);
  }

  const RunConfig& cfg_;
  json input_;
  bool loaded_ = false;
};

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw Error(ErrorCode::ParseError, "cannot write '" + cfg.out + "'", {{"path", cfg.out}});
  file << text;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string depth_text;
  std::string radius_text = "1";

  CLI::App app{"Exact and numerical experiments on algebraic mapping telescopes", "telescope"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("input", cfg.inputs, "input JSON file");
    if (needs_input) in->required();
    sub->add_option("--depth", depth_text, "truncation depth N (comma list for scans)");
    sub->add_option("--out", cfg.out, "write the report here instead of standard output");
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    return sub;
  };

  common(app.add_subcommand("validate", "check d o d = 0 (and h d = d h for self-maps)"), true);
  auto* hom = common(app.add_subcommand("homology", "homology of a complex, or of the torus of a self-map"), true);
  hom->add_option("--lambda", cfg.lambda, "specialize z at this point of Q(i), e.g. 3/5+4/5i");
  common(app.add_subcommand("euler", "Euler characteristic and class; a wall input gives the wall class"), true);
  common(app.add_subcommand("torus", "mapping torus of a self-map"), true);
  for (const char* name : {"contract-plus", "contract-minus"}) {
    auto* s = common(app.add_subcommand(name, "contraction certificate of the one-sided torus"), true);
    s->add_option("--weight", cfg.weight, "weight k as num/den")->capture_default_str();
  }
  auto* nov = common(app.add_subcommand("novikov", "Novikov-side invertibility of I - zh"), true);
  nov->add_option("--side", cfg.side, "z or z^-1")->capture_default_str();
  common(app.add_subcommand("wall", "wall complex of a central idempotent"), true);
  for (const char* name : {"scan-sigma", "scan-lambda", "index-window"}) {
    auto* s = common(app.add_subcommand(name, "numerical scan"), std::string(name) != "index-window");
    s->add_option("--tolerance", cfg.tolerance, "relative tolerance");
    s->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    s->add_option("--grid", cfg.grid, "weights: lo:hi:count or a comma list");
    if (std::string(name) == "scan-lambda") {
      s->add_option("--samples", cfg.samples, "points on the circle")->capture_default_str();
      s->add_option("--radius", radius_text, "circle radius")->capture_default_str();
    }
    if (std::string(name) == "index-window") {
      s->add_option("--threshold", cfg.threshold, "regime boundary in k")->capture_default_str();
      s->add_option("--dual", cfg.dual, "evaluate the dual model of dimension n (threshold becomes 1/threshold)");
    }
  }
  auto* fx = app.add_subcommand("fixtures", "worked examples");
  fx->require_subcommand(1);
  common(fx->add_subcommand("list", "list fixtures"), false);
  common(fx->add_subcommand("run", "run a fixture by name, or all"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    if (cfg.command == "fixtures") cfg.command += "-" + sub->get_subcommands().front()->get_name();
  }

  try {
    if (!depth_text.empty()) cfg.depths = parse_depths(depth_text);
    cfg.radius = parse_real(radius_text, "--radius");
    if (cfg.tolerance && !(*cfg.tolerance > 0)) bad_flag("--tolerance", "tolerance must be positive");
    Runner runner(cfg);
    const Report report = runner.run();
    emit(cfg, report.text, out);
    return report.code;
  } catch (const Error& e) {
    const std::string payload = json(e.to_json()).dump(2) + "\n";
    try {
      emit(cfg, payload, out);
    } catch (const Error&) {
      out << payload;
    }
    err << "telescope: " << to_string(e.code()) << ": " << e.what() << "\n";
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    const json payload = {{"error", "InvalidInput"}, {"message", e.what()}, {"detail", json::object()}};
    out << payload.dump(2) << "\n";
    err << "telescope: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace telescope
