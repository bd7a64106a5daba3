#include "webgeom/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "webgeom/analysis.hpp"
#include "webgeom/connection.hpp"
#include "webgeom/errors.hpp"
#include "webgeom/relation.hpp"
#include "webgeom/report.hpp"
#include "webgeom/sampling.hpp"

namespace webgeom {

namespace {

using report::Json;

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  invalid input or unmet precondition (bad parameters, invalid web, not calibrated)\n"
    "  2  negative verdict (not ordinary, relation fails, curvature nonzero, bracket fires)\n"
    "  3  malformed web or relation file (message gives line and column)\n";

struct RunConfig {
  std::vector<std::string> paths;
  long n = 0, d = 0, q = 0;
  int p = 1;
  int max_order = -1;
  bool closed = false;
  std::string backend = "bigfloat";
  unsigned precision = kDefaultDigits;
  double tolerance = 1e-20;
  std::size_t points = 3;
  std::vector<std::string> point_texts;
  std::uint64_t seed = 0;
  bool json = false;
  std::string out_path;
  bool expect_ordinary = false;
  bool serial = false;
};

// Writes a finished report to --out or to the output stream.
class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void emit(const Json& j, const std::string& text) const {
    std::string body = cfg_.json ? j.dump(2) + "\n" : text;
    if (cfg_.out_path.empty()) {
      out_ << body;
      return;
    }
    std::ofstream f(cfg_.out_path);
    if (!f) throw InvalidArgument("cannot write " + cfg_.out_path);
    f << body;
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
};

AnalysisOptions analysis_options(const RunConfig& cfg, const Web& web) {
  AnalysisOptions opt;
  opt.backend = cfg.backend == "exact" ? Backend::Exact : Backend::BigFloat;
  opt.digits = cfg.precision;
  opt.tolerance = cfg.tolerance;
  opt.points = cfg.points;
  opt.seed = cfg.seed;
  opt.parallel = !cfg.serial;
  for (const auto& t : cfg.point_texts) opt.explicit_points.push_back(parse_point(t, web.variables));
  return opt;
}

ZeroTestOptions zero_options(const RunConfig& cfg) {
  ZeroTestOptions z;
  z.digits = cfg.precision;
  z.points = std::max<std::size_t>(cfg.points, ZeroTestOptions{}.points);
  z.seed = cfg.seed;
  return z;
}

int cmd_bounds(const RunConfig& cfg, const Emitter& em) {
  combinat::BoundProfile b = combinat::bound_profile(cfg.n, cfg.d, cfg.q, cfg.p);
  em.emit(report::to_json(b), report::text(b));
  return kExitOk;
}

int cmd_analyze(const RunConfig& cfg, const Emitter& em, std::ostream& err) {
  Web web = load_web(cfg.paths.at(0));
  combinat::check_parameters(web.n(), web.d(), web.q, cfg.p);
  AnalysisOptions opt = analysis_options(cfg, web);
  std::vector<Point> points = choose_points(web, opt);
  opt.explicit_points = points;
  ValidationReport val = validate(web, points);

  Json j;
  j["web"] = web.name;
  j["validation"] = report::to_json(val);
  if (!val.valid) {
    em.emit(j, "web fails validation at every sample point\n");
    err << "invalid web: " << val.issues.size() << " failed condition(s)\n";
    return kExitInput;
  }
  combinat::BoundProfile profile = combinat::bound_profile(web.n(), web.d(), web.q, cfg.p);
  OrdinarityReport rep = cfg.closed ? is_strongly_p_ordinary(web, cfg.p, opt) : is_p_ordinary(web, cfg.p, opt);

  const bool infinite = rep.bracket.value_or(false);
  std::optional<combinat::Int> bound;
  if (!infinite && rep.verdict == Verdict::Ordinary) bound = rep.closed ? profile.pi_prime : profile.pi0;

  std::vector<OrderRecord> extended;
  if (cfg.max_order > rep.horizon)
    extended = rank_profile(web, cfg.p, static_cast<unsigned>(cfg.max_order), rep.closed, points, opt);

  j["bounds"] = report::to_json(profile);
  j["report"] = report::to_json(rep);
  j["infinite"] = infinite;
  j["rank_bound"] = bound ? Json(*bound) : Json(nullptr);
  if (!extended.empty()) {
    j["extended"] = Json::array();
    for (const auto& o : extended) j["extended"].push_back(report::to_json(o));
  }

  std::ostringstream os;
  os << "web " << web.name << "\n" << report::text(profile) << report::text(rep);
  for (const auto& o : extended) {
    if (static_cast<int>(o.k) <= rep.horizon) continue;
    os << "  k=" << o.k << " (extended) ranks";
    for (long x : o.ranks) os << " " << x;
    if (o.rho) os << "  rho=" << *o.rho;
    os << "\n";
  }
  if (infinite) os << "rank bound: none (bracket criterion fires)\n";
  else if (bound) os << "rank bound: " << *bound << "\n";
  else os << "rank bound: not established\n";
  em.emit(j, os.str());

  if (cfg.expect_ordinary && rep.verdict != Verdict::Ordinary) return kExitNegative;
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const Emitter& em) {
  Web web = load_web(cfg.paths.at(0));
  ZeroTestOptions zopt = zero_options(cfg);
  RelationSpec first = load_relation(cfg.paths.at(1), web);
  if (cfg.paths.size() < 3) {
    RelationVerdict v = verify_relation(web, first, zopt);
    Json j;
    j["web"] = web.name;
    j["relation"] = report::to_json(v);
    em.emit(j, report::text(v));
    return v.is_abelian && v.is_closed ? kExitOk : kExitNegative;
  }
  // The two files may come in either order; the lower degree is the primitive.
  RelationSpec second = load_relation(cfg.paths.at(2), web);
  if (first.p > second.p) std::swap(first, second);
  CobordVerdict v = verify_cobord(web, first, second, zopt);
  Json j;
  j["web"] = web.name;
  j["cobord"] = report::to_json(v);
  em.emit(j, report::text(v));
  return v.ok && v.omega.is_closed ? kExitOk : kExitNegative;
}

int cmd_curvature(const RunConfig& cfg, const Emitter& em, std::ostream& err) {
  Web web = load_web(cfg.paths.at(0));
  combinat::check_parameters(web.n(), web.d(), web.q, cfg.p);
  if (!web.is_rational()) {
    // Only the numeric ordinarity check is available; report it before refusing.
    AnalysisOptions opt = analysis_options(cfg, web);
    opt.with_m = false;
    OrdinarityReport rep = cfg.closed ? is_strongly_p_ordinary(web, cfg.p, opt) : is_p_ordinary(web, cfg.p, opt);
    if (rep.verdict != Verdict::Ordinary) {
      err << "web is not " << (rep.closed ? "strongly " : "") << cfg.p << "-ordinary (" << verdict_name(rep.verdict)
          << ")\n";
      return kExitInput;
    }
    throw TranscendentalUnsupported("curvature needs a rational web");
  }
  ConnectionData cd = build_connection(web, cfg.p, cfg.closed ? Variant::Closed : Variant::Plain);
  Json j;
  j["web"] = web.name;
  j["connection"] = report::to_json(cd);
  em.emit(j, report::text(cd));
  return cd.flat ? kExitOk : kExitNegative;
}

int cmd_bracket(const RunConfig& cfg, const Emitter& em) {
  Web web = load_web(cfg.paths.at(0));
  if (web.q != web.n() - 1) throw WrongCodimension("bracket check needs codimension n-1");
  AnalysisOptions opt = analysis_options(cfg, web);
  std::vector<Point> points = choose_points(web, opt);
  Json j;
  j["web"] = web.name;
  j["pairs"] = Json::array();
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < web.d(); ++i)
    for (int k = i + 1; k < web.d(); ++k) {
      bool dep = bracket_test(web, i, k, points);
      any = any || dep;
      Json e;
      e["i"] = i + 1;
      e["j"] = k + 1;
      e["integrable_plane"] = dep;
      j["pairs"].push_back(e);
      os << "foliations " << i + 1 << "," << k + 1 << ": "
         << (dep ? "X, Y, [X,Y] dependent" : "independent") << "\n";
    }
  j["fires"] = any;
  os << "bracket criterion: " << (any ? "fires" : "does not fire") << "\n";
  em.emit(j, os.str());
  return any ? kExitNegative : kExitOk;
}

void add_analysis_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--backend", cfg.backend, "Rank backend")->check(CLI::IsMember({"exact", "bigfloat"}));
  sub->add_option("--precision", cfg.precision, "Working precision in decimal digits")->check(CLI::Range(20u, 100000u));
  sub->add_option("--tolerance", cfg.tolerance, "Relative pivot threshold of the numeric rank")
      ->check(CLI::PositiveNumber);
  sub->add_option("--points", cfg.points, "Number of random sample points")->check(CLI::Range(1, 1000));
  sub->add_option("--point", cfg.point_texts, "Explicit sample point, e.g. x=1/3,y=2 (repeatable)");
  sub->add_option("--seed", cfg.seed, "Seed of the point sampler");
}

void add_output_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_flag("--json", cfg.json, "Emit JSON instead of text");
  sub->add_option("--out", cfg.out_path, "Write the report to PATH");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app("Abelian relations of webs: rank bounds, ordinarity and curvature", "webgeom");
  app.footer(kExitCodes);
  app.require_subcommand(1);

  auto* bounds = app.add_subcommand("bounds", "Combinatorial bound profile for (n, d, q, p)");
  bounds->add_option("n", cfg.n, "Dimension")->required();
  bounds->add_option("d", cfg.d, "Number of foliations")->required();
  bounds->add_option("q", cfg.q, "Codimension")->required();
  bounds->add_option("p", cfg.p, "Form degree")->required();
  add_output_flags(bounds, cfg);

  auto* analyze = app.add_subcommand("analyze", "Rank profile and ordinarity of a web file");
  analyze->add_option("web", cfg.paths, "Web file")->required()->expected(1);
  analyze->add_option("--p", cfg.p, "Form degree")->check(CLI::PositiveNumber);
  analyze->add_option("--max-order", cfg.max_order, "Also rank orders up to K")->check(CLI::NonNegativeNumber);
  analyze->add_flag("--closed", cfg.closed, "Closed (strong) variant");
  analyze->add_flag("--expect-ordinary", cfg.expect_ordinary, "Exit 2 unless the verdict is ordinary");
  analyze->add_flag("--serial", cfg.serial, "Disable the OpenMP rank kernels");
  add_analysis_flags(analyze, cfg);
  add_output_flags(analyze, cfg);

  auto* verify = app.add_subcommand("verify", "Check an abelian relation, or a primitive/relation pair");
  verify->add_option("files", cfg.paths, "Web file, relation file, optional second relation file")
      ->required()
      ->expected(2, 3);
  add_analysis_flags(verify, cfg);
  add_output_flags(verify, cfg);

  auto* curvature = app.add_subcommand("curvature", "Connection form and curvature of a rational web");
  curvature->add_option("web", cfg.paths, "Web file")->required()->expected(1);
  curvature->add_option("--p", cfg.p, "Form degree")->check(CLI::PositiveNumber);
  curvature->add_flag("--closed", cfg.closed, "Closed (strong) variant");
  add_analysis_flags(curvature, cfg);
  add_output_flags(curvature, cfg);

  auto* bracket = app.add_subcommand("bracket-check", "Bracket criterion for webs of codimension n-1");
  bracket->add_option("web", cfg.paths, "Web file")->required()->expected(1);
  add_analysis_flags(bracket, cfg);
  add_output_flags(bracket, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  Emitter em(cfg, out);
  try {
    if (*bounds) return cmd_bounds(cfg, em);
    if (*analyze) return cmd_analyze(cfg, em, err);
    if (*verify) return cmd_verify(cfg, em);
    if (*curvature) return cmd_curvature(cfg, em, err);
    if (*bracket) return cmd_bracket(cfg, em);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace webgeom
