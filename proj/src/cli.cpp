#include "cuspcobord/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cuspcobord/cobordism_group.hpp"
#include "cuspcobord/json_io.hpp"
#include "cuspcobord/normal_forms.hpp"

namespace cuspcobord::cli {

namespace {

struct Options {
  bool json = false;
  std::string file;
  std::string file_b;
  std::string sigma_file;
  std::string out_path;
  std::string manifest_path;
  std::optional<long> chi_v;
  bool assume_removable = false;
  std::size_t component = 0;
  std::size_t position = 0;
  int i = 0;
  std::string first;
  std::string second;
  std::string reconnection;
  std::string kind;
  int n = 0;
  double t = 1.0;
  std::string grid;
  double tol = 1e-10;
  std::string alpha = "0:1:0.3";
  std::string beta = "0:1:1";
  bool svg = false;
  bool csv = false;
};

// Input or precondition failure reported with exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

MorseDescriptor load_descriptor(const std::string& path) {
  MorseDescriptor d = descriptor_from_json(read_json_file(path));
  const auto report = validate(d);
  if (!report.ok()) {
    std::string msg = fmt::format("'{}' is not a valid descriptor", path);
    for (const auto& issue : report.issues) msg += fmt::format("\n  {}: {}", issue.code, issue.message);
    throw InputError(msg);
  }
  return d;
}

SingularPattern load_pattern(const std::string& path) { return pattern_from_json(read_json_file(path)); }

SingularPattern load_valid_pattern(const std::string& path) {
  SingularPattern p = load_pattern(path);
  const auto report = validate_pattern(p);
  if (!report.ok()) {
    throw InputError(fmt::format("'{}' is not a valid pattern: {}", path, report.issues.front().message));
  }
  return p;
}

SignAssignment load_sigma(const Options& o, const std::vector<BoundaryCriticalPoint>& boundary) {
  if (o.sigma_file.empty()) return stored_signs(boundary);
  SignAssignment s = sigma_from_json(read_json_file(o.sigma_file));
  check_sign_domain(boundary, s);
  return s;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw InputError(fmt::format("cannot write '{}'", o.out_path));
  f << text;
}

ElementRef parse_ref(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError(fmt::format("'{}' is not COMPONENT:POSITION", text));
  try {
    return {static_cast<std::size_t>(std::stoul(text.substr(0, colon))),
            static_cast<std::size_t>(std::stoul(text.substr(colon + 1)))};
  } catch (const std::exception&) {
    throw InputError(fmt::format("'{}' is not COMPONENT:POSITION", text));
  }
}

std::vector<double> split_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw InputError(fmt::format("'{}' is not a number", piece));
    }
  }
  return out;
}

Bump parse_bump(const std::string& text) {
  const auto v = split_numbers(text, ':');
  if (v.size() != 3) throw InputError(fmt::format("bump '{}' must be CENTER:RADIUS:HEIGHT", text));
  if (!(v[1] > 0)) throw InputError(fmt::format("bump '{}' needs a positive radius", text));
  return {v[0], v[1], v[2]};
}

Axis parse_axis(const std::string& text) {
  const auto v = split_numbers(text, ':');
  if (v.size() != 3 || v[2] < 1 || v[2] != static_cast<int>(v[2])) {
    throw InputError(fmt::format("grid axis '{}' must be LO:HI:COUNT", text));
  }
  return {v[0], v[1], static_cast<int>(v[2])};
}

GridSpec default_grid(const LocalMap& m) {
  GridSpec g;
  switch (m.kind) {
    case MapKind::Fold:
      g.axes.push_back({-1, 1, 21});
      for (int j = 1; j < m.n; ++j) g.axes.push_back({-1, 1, 5});
      break;
    case MapKind::Cusp:
      g.axes.push_back({-1, 1, 21});
      g.axes.push_back({-1, 1, 11});
      for (int j = 2; j < m.n; ++j) g.axes.push_back({-1, 1, 3});
      break;
    case MapKind::SwallowTail:
      g.axes.push_back({-2, 2, 41});
      g.axes.push_back({-2.5, 2.5, 11});
      for (int j = 2; j < m.n; ++j) g.axes.push_back({-1, 1, 3});
      break;
    case MapKind::PerturbedFold:
      g.axes.push_back({-2, 2, 41});
      for (int j = 1; j < m.n; ++j) g.axes.push_back({-0.5, 0.5, 5});
      break;
  }
  return g;
}

GridSpec parse_grid(const std::string& text, int n) {
  GridSpec g;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) g.axes.push_back(parse_axis(piece));
  if (g.axes.size() == 1) g.axes.assign(n, g.axes.front());
  if (static_cast<int>(g.axes.size()) != n) {
    throw InputError(fmt::format("grid has {} axes, the map lives in dimension {}", g.axes.size(), n));
  }
  return g;
}

std::string relation_text(int n, long lhs, long rhs, bool holds) {
  if (n % 2 == 0) return fmt::format("{} {} {}", lhs, holds ? "≡" : "≢", rhs);
  return fmt::format("{} {} {}", lhs, holds ? "=" : "≠", rhs);
}

int cmd_invariant(const Options& o, std::ostream& out) {
  const MorseDescriptor d = load_descriptor(o.file);
  const CobordismClass c = cobordism_invariant(d);
  const long cp = chi_plus(d);
  if (o.json) {
    out << dump({{"n", d.n}, {"chi_M", d.chi_M}, {"chi_plus", cp}, {"invariant", c.value()},
                 {"group", c.group_name()}});
  } else {
    out << fmt::format("n={} chi_M={} chi_plus={} invariant={} group={}\n", d.n, d.chi_M, cp,
                       c.value(), c.group_name());
  }
  return kOk;
}

int cmd_cobordant(const Options& o, std::ostream& out) {
  const MorseDescriptor a = load_descriptor(o.file);
  const MorseDescriptor b = load_descriptor(o.file_b);
  if (a.n != b.n) throw InputError(fmt::format("dimension mismatch: {} vs {}", a.n, b.n));
  const bool yes = is_cobordant(a, b);
  const CobordismClass ca = cobordism_invariant(a);
  const CobordismClass cb = cobordism_invariant(b);
  if (o.json) {
    out << dump({{"cobordant", yes}, {"invariant_a", ca.value()}, {"invariant_b", cb.value()},
                 {"group", ca.group_name()}});
  } else {
    out << fmt::format("cobordant={} invariant_a={} invariant_b={} group={}\n", yes ? "yes" : "no",
                       ca.value(), cb.value(), ca.group_name());
  }
  return yes ? kOk : kNegative;
}

int cmd_extendable(const Options& o, std::ostream& out) {
  const MorseDescriptor d = load_descriptor(o.file);
  const SignAssignment sigma = load_sigma(o, d.boundary);
  const long cp = chi_plus_sigma(d.boundary, sigma);
  const bool holds = morse_van_schaack(d.n, d.chi_M, d.boundary, sigma);
  if (o.json) {
    out << dump({{"n", d.n}, {"chi_M", d.chi_M}, {"chi_plus", cp}, {"holds", holds},
                 {"modulus", d.n % 2 == 0 ? 2 : 0}});
  } else {
    out << fmt::format("n={} chi_M={} chi_plus={} condition={}\n", d.n, d.chi_M, cp,
                       holds ? "holds" : "fails");
    out << fmt::format("necessary condition {} ({})\n", holds ? "holds" : "FAILS",
                       relation_text(d.n, cp, d.chi_M, holds));
  }
  return holds ? kOk : kNegative;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const SingularPattern p = load_pattern(o.file);
  const auto report = validate_pattern(p);
  if (o.json) {
    Json issues = Json::array();
    for (const auto& i : report.issues) issues.push_back({{"code", i.code}, {"message", i.message}});
    out << dump({{"valid", report.ok()}, {"issues", issues}});
  } else {
    out << fmt::format("valid={} n={} components={} cusps={}\n", report.ok() ? "yes" : "no", p.n,
                       p.components.size(), p.total_cusps());
    for (const auto& i : report.issues) out << fmt::format("issue {}: {}\n", i.code, i.message);
  }
  return report.ok() ? kOk : kNegative;
}

int cmd_check(const Options& o, std::ostream& out) {
  const SingularPattern p = load_valid_pattern(o.file);
  const SignAssignment sigma = load_sigma(o, p.boundary_points);
  const auto per = p.n % 2 == 0 ? check_condition_even(p, sigma) : check_condition_odd(p, sigma);
  const bool field = vector_field_exists(p, sigma);
  const bool all = std::all_of(per.begin(), per.end(), [](bool b) { return b; });
  std::optional<bool> parity;
  if (p.chi_ambient) parity = cusp_parity_check(p);

  if (o.json) {
    Json rows = Json::array();
    for (std::size_t k = 0; k < per.size(); ++k) {
      const auto& c = p.components[k];
      Json row{{"component", k},
               {"kind", c.kind == ComponentKind::Circle ? "circle" : "interval"},
               {"cusps", c.cusp_count()},
               {"condition", static_cast<bool>(per[k])}};
      if (c.kind == ComponentKind::Interval) row["endpoints"] = {c.endpoints[0], c.endpoints[1]};
      rows.push_back(row);
    }
    Json j{{"n", p.n}, {"components", rows}, {"vector_field", field}, {"all_hold", all}};
    if (parity) j["cusp_parity"] = *parity;
    out << dump(j);
  } else {
    for (std::size_t k = 0; k < per.size(); ++k) {
      const auto& c = p.components[k];
      std::string ends = "-";
      if (c.kind == ComponentKind::Interval) ends = c.endpoints[0] + "," + c.endpoints[1];
      out << fmt::format("component={} kind={} cusps={} endpoints={} condition={}\n", k,
                         c.kind == ComponentKind::Circle ? "circle" : "interval", c.cusp_count(),
                         ends, per[k] ? "holds" : "fails");
    }
    out << fmt::format("n={} all_hold={} vector_field={}", p.n, all ? "yes" : "no",
                       field ? "yes" : "no");
    if (parity) out << fmt::format(" cusp_parity={}", *parity ? "consistent" : "inconsistent");
    out << "\n";
  }
  return all ? kOk : kNegative;
}

int cmd_normalize(const Options& o, std::ostream& out) {
  const SingularPattern p = load_valid_pattern(o.file);
  const SignAssignment sigma = load_sigma(o, p.boundary_points);
  NormalizeResult result;
  if (p.n % 2 == 0) {
    std::optional<long> chi_v = o.chi_v ? o.chi_v : p.chi_ambient;
    if (!chi_v) throw InputError("even n needs --chi-v or chi_ambient in the pattern");
    SingularPattern probe = p;
    probe.chi_ambient = *chi_v;
    if (!cusp_parity_check(probe)) {
      throw InputError(fmt::format("{} cusps and {} boundary points are inconsistent with chi_V = {}",
                                   p.total_cusps(), p.boundary_points.size(), *chi_v));
    }
    result = normalize_even(p, sigma, *chi_v);
  } else {
    result = normalize_odd(p, sigma);
  }

  if (const auto* obs = std::get_if<Obstruction>(&result)) {
    const Json j = to_json(*obs);
    if (o.json) {
      out << dump({{"obstruction", j}});
    } else {
      out << fmt::format("obstruction={} relation=\"{}\" lhs={} rhs={}", j["kind"].get<std::string>(),
                         j["relation"].get<std::string>(), j["lhs"].get<std::string>(),
                         j["rhs"].get<std::string>());
      if (obs->kind == ObstructionKind::SignSumNonzero) out << fmt::format(" sign_sum={}", obs->sign_sum);
      out << "\n";
    }
    return kNegative;
  }

  const auto& trace = std::get<MoveTrace>(result);
  const Json tj = to_json(trace);
  if (!o.out_path.empty()) {
    Options to_file = o;
    emit(to_file, out, dump(tj));
  }
  if (o.json) {
    if (o.out_path.empty()) out << dump(tj);
    return kOk;
  }
  out << fmt::format("normalized=yes moves={} cusps_before={} cusps_after={} components={}\n",
                     trace.moves.size(), trace.initial.total_cusps(), trace.final.total_cusps(),
                     trace.final.components.size());
  for (std::size_t k = 0; k < trace.moves.size(); ++k) {
    const Json mj = to_json(trace.moves[k]);
    out << fmt::format("move {} {} {}\n", k + 1, mj["kind"].get<std::string>(), mj["params"].dump());
  }
  return kOk;
}

int cmd_create(const Options& o, std::ostream& out) {
  const SingularPattern p = load_valid_pattern(o.file);
  emit(o, out, dump(to_json(create_cusp_pair(p, {o.component, o.position}, o.i))));
  return kOk;
}

int cmd_eliminate(const Options& o, std::ostream& out) {
  const SingularPattern p = load_valid_pattern(o.file);
  std::optional<Reconnection> r;
  if (o.reconnection == "split") r = Reconnection::Split;
  if (o.reconnection == "stay") r = Reconnection::Stay;
  emit(o, out,
       dump(to_json(eliminate_matching_pair(p, parse_ref(o.first), parse_ref(o.second), r,
                                            o.assume_removable))));
  return kOk;
}

int cmd_replay(const Options& o, std::ostream& out) {
  const MoveTrace trace = trace_from_json(read_json_file(o.file));
  const bool ok = verify_trace(trace);
  if (o.json) {
    out << dump({{"replay", ok}, {"moves", trace.moves.size()}});
  } else {
    out << fmt::format("replay={} moves={}\n", ok ? "ok" : "mismatch", trace.moves.size());
  }
  return ok ? kOk : kNegative;
}

int cmd_trace(const Options& o, std::ostream& out) {
  LocalMap m;
  if (o.kind == "swallowtail") {
    m = LocalMap::swallow_tail(o.n > 0 ? o.n : 3, o.i, o.t);
  } else if (o.kind == "fold") {
    m = LocalMap::fold(o.n > 0 ? o.n : 2, o.i);
  } else if (o.kind == "cusp") {
    m = LocalMap::cusp(o.n > 0 ? o.n : 2, o.i);
  } else {
    m = LocalMap::perturbed_fold(o.n > 0 ? o.n : 2, o.i, parse_bump(o.alpha), parse_bump(o.beta));
  }
  try {
    check_map(m);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const GridSpec grid = o.grid.empty() ? default_grid(m) : parse_grid(o.grid, m.n);
  const DetectorTolerances tols;

  std::vector<SingularSample> samples;
  if (m.kind == MapKind::PerturbedFold) {
    try {
      samples = perturbed_fold_image(m.index, m.n, m.alpha, m.beta, grid, o.tol).samples;
    } catch (const std::domain_error& e) {
      throw InputError(e.what());
    }
  } else {
    samples = detect_singular_set(m, grid, o.tol, tols);
  }
  const auto cusps = std::count_if(samples.begin(), samples.end(), [](const SingularSample& s) {
    return s.classification == SampleClass::CuspCandidate;
  });

  const std::string body = o.csv ? samples_csv(samples, m.n) : render_svg({image_polyline(m, samples)});
  emit(o, out, body);
  if (!o.out_path.empty()) out << fmt::format("samples={} cusps={}\n", samples.size(), cusps);

  if (!o.manifest_path.empty()) {
    Json axes = Json::array();
    for (const auto& a : grid.axes) axes.push_back({a.lo, a.hi, a.count});
    Json manifest{{"command", "trace"},
                  {"kind", kind_name(m.kind)},
                  {"n", m.n},
                  {"index", m.index},
                  {"grid", axes},
                  {"tolerances",
                   {{"residual", o.tol}, {"newton", tols.newton}, {"dedup", tols.dedup},
                    {"rank", tols.rank}, {"max_iterations", tols.max_iterations}}},
                  {"samples", samples.size()},
                  {"cusps", cusps},
                  {"format", o.csv ? "csv" : "svg"}};
    if (m.kind == MapKind::SwallowTail) manifest["t"] = m.t;
    if (m.kind == MapKind::PerturbedFold) {
      manifest["alpha"] = {m.alpha.center, m.alpha.radius, m.alpha.height};
      manifest["beta"] = {m.beta.center, m.beta.radius, m.beta.height};
    }
    if (const char* seed = std::getenv("CUSPCOBORD_SEED")) manifest["seed"] = seed;
    std::ofstream f(o.manifest_path, std::ios::binary);
    if (!f) throw InputError(fmt::format("cannot write '{}'", o.manifest_path));
    f << dump(manifest);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Cusp cobordism of Morse functions: invariants, singular patterns, local models",
               "cuspcobord"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Machine-readable JSON output");

  auto* inv = app.add_subcommand("invariant", "chi_+, chi(M) and the cobordism class of a descriptor");
  inv->add_option("file", o.file, "Descriptor JSON")->required();

  auto* cob = app.add_subcommand("cobordant", "Decide whether two descriptors are cobordant");
  cob->add_option("a", o.file, "First descriptor")->required();
  cob->add_option("b", o.file_b, "Second descriptor")->required();

  auto* ext = app.add_subcommand("extendable", "Necessary condition for a critical-point-free extension");
  ext->add_option("file", o.file, "Descriptor JSON")->required();
  ext->add_option("--sigma", o.sigma_file, "Sign assignment JSON");

  auto* pat = app.add_subcommand("pattern", "Singular pattern commands");
  pat->require_subcommand(1);
  auto* pv = pat->add_subcommand("validate", "Check the structural rules of a pattern");
  pv->add_option("pattern", o.file)->required();
  auto* pc = pat->add_subcommand("check", "Per-component cusp conditions and vector field criterion");
  pc->add_option("pattern", o.file)->required();
  pc->add_option("--sigma", o.sigma_file, "Sign assignment JSON");
  auto* pn = pat->add_subcommand("normalize", "Rewrite until every component satisfies its condition");
  pn->add_option("pattern", o.file)->required();
  pn->add_option("--sigma", o.sigma_file, "Sign assignment JSON");
  pn->add_option("--chi-v", o.chi_v, "Euler characteristic of V (even n)");
  pn->add_option("--out", o.out_path, "Write the move trace here");
  auto* pcr = pat->add_subcommand("create", "Create a matching pair of cusps on an arc");
  pcr->add_option("pattern", o.file)->required();
  pcr->add_option("--component", o.component)->required();
  pcr->add_option("--position", o.position)->required();
  pcr->add_option("--i", o.i, "Index i of the created pair")->required();
  pcr->add_option("--out", o.out_path);
  auto* pe = pat->add_subcommand("eliminate", "Eliminate a matching pair of cusps");
  pe->add_option("pattern", o.file)->required();
  pe->add_option("--first", o.first, "COMPONENT:POSITION")->required();
  pe->add_option("--second", o.second, "COMPONENT:POSITION")->required();
  pe->add_option("--reconnection", o.reconnection)->check(CLI::IsMember({"split", "stay"}));
  pe->add_flag("--assume-removable", o.assume_removable, "Treat the pair as removable (needed for n = 2)");
  pe->add_option("--out", o.out_path);
  auto* pr = pat->add_subcommand("replay", "Replay a move trace and compare with its final pattern");
  pr->add_option("trace", o.file)->required();

  auto* tr = app.add_subcommand("trace", "Detect and plot the singular set of a local model");
  tr->add_option("kind", o.kind)->required()->check(
      CLI::IsMember({"swallowtail", "perturbed-fold", "fold", "cusp"}));
  tr->add_option("--n", o.n, "Source dimension");
  tr->add_option("--i", o.i, "Index of the quadratic part");
  tr->add_option("--t", o.t, "Swallow-tail parameter");
  tr->add_option("--grid", o.grid, "LO:HI:COUNT per axis, comma separated");
  tr->add_option("--tol", o.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  tr->add_option("--alpha", o.alpha, "CENTER:RADIUS:HEIGHT");
  tr->add_option("--beta", o.beta, "CENTER:RADIUS:HEIGHT");
  tr->add_option("--out", o.out_path);
  tr->add_option("--manifest", o.manifest_path, "Write a JSON run manifest");
  auto* svg_flag = tr->add_flag("--svg", o.svg, "SVG output (default)");
  auto* csv_flag = tr->add_flag("--csv", o.csv, "CSV output");
  svg_flag->excludes(csv_flag);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*inv) return cmd_invariant(o, out);
    if (*cob) return cmd_cobordant(o, out);
    if (*ext) return cmd_extendable(o, out);
    if (*pv) return cmd_validate(o, out);
    if (*pc) return cmd_check(o, out);
    if (*pn) return cmd_normalize(o, out);
    if (*pcr) return cmd_create(o, out);
    if (*pe) return cmd_eliminate(o, out);
    if (*pr) return cmd_replay(o, out);
    if (*tr) return cmd_trace(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace cuspcobord::cli
