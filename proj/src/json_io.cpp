#include "cuspcobord/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace cuspcobord {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw SchemaError(fmt::format("unknown field '{}' in {}", key, where));
    }
  }
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(fmt::format("missing field '{}' in {}", key, where));
  return *it;
}

long get_int(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number_integer()) throw SchemaError(fmt::format("'{}' in {} must be an integer", key, where));
  return v.get<long>();
}

bool get_bool(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_boolean()) throw SchemaError(fmt::format("'{}' in {} must be a boolean", key, where));
  return v.get<bool>();
}

std::string get_string(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_string()) throw SchemaError(fmt::format("'{}' in {} must be a string", key, where));
  return v.get<std::string>();
}

const Json& get_array(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_array()) throw SchemaError(fmt::format("'{}' in {} must be an array", key, where));
  return v;
}

std::optional<Rational> get_value(const Json& j, const std::string& where) {
  auto it = j.find("value");
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (it->is_number_integer()) return Rational(it->get<std::int64_t>());
  if (!it->is_string()) throw SchemaError(fmt::format("'value' in {} must be \"p/q\"", where));
  try {
    return parse_rational(it->get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(fmt::format("bad value in {}: {}", where, e.what()));
  }
}

Json boundary_point_json(const BoundaryCriticalPoint& x) {
  Json j{{"id", x.id}, {"mu", x.mu}, {"sigma", x.sigma}};
  if (x.value) j["value"] = to_string(*x.value);
  return j;
}

BoundaryCriticalPoint boundary_point_from(const Json& j, const std::string& where) {
  only_keys(j, {"id", "mu", "sigma", "value"}, where);
  BoundaryCriticalPoint x;
  x.id = get_string(j, "id", where);
  x.mu = static_cast<int>(get_int(j, "mu", where));
  x.sigma = static_cast<int>(get_int(j, "sigma", where));
  x.value = get_value(j, where);
  return x;
}

Json ref_json(const ElementRef& r) { return Json::array({r.component, r.position}); }

ElementRef ref_from(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned()) {
    throw SchemaError(where + " must be [component, position]");
  }
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

std::size_t get_index(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number_unsigned()) {
    throw SchemaError(fmt::format("'{}' in {} must be a non-negative integer", key, where));
  }
  return v.get<std::size_t>();
}

std::string rational_text(const Rational& r) { return to_string(r); }

}  // namespace

Json to_json(const MorseDescriptor& d) {
  Json interior = Json::array();
  for (const auto& p : d.interior) {
    Json e{{"id", p.id}, {"index", p.index}};
    if (p.value) e["value"] = to_string(*p.value);
    interior.push_back(e);
  }
  Json boundary = Json::array();
  for (const auto& x : d.boundary) boundary.push_back(boundary_point_json(x));
  return Json{{"n", d.n},
              {"oriented", d.oriented},
              {"chi_M", d.chi_M},
              {"chi_boundary", d.chi_boundary},
              {"interior", interior},
              {"boundary", boundary}};
}

MorseDescriptor descriptor_from_json(const Json& j) {
  const std::string where = "descriptor";
  only_keys(j, {"n", "oriented", "chi_M", "chi_boundary", "interior", "boundary"}, where);
  MorseDescriptor d;
  d.n = static_cast<int>(get_int(j, "n", where));
  d.oriented = get_bool(j, "oriented", where);
  d.chi_M = get_int(j, "chi_M", where);
  d.chi_boundary = get_int(j, "chi_boundary", where);
  const Json& interior = get_array(j, "interior", where);
  for (std::size_t k = 0; k < interior.size(); ++k) {
    const std::string w = fmt::format("interior[{}]", k);
    only_keys(interior[k], {"id", "index", "value"}, w);
    InteriorCriticalPoint p;
    p.id = get_string(interior[k], "id", w);
    p.index = static_cast<int>(get_int(interior[k], "index", w));
    p.value = get_value(interior[k], w);
    d.interior.push_back(p);
  }
  const Json& boundary = get_array(j, "boundary", where);
  for (std::size_t k = 0; k < boundary.size(); ++k) {
    d.boundary.push_back(boundary_point_from(boundary[k], fmt::format("boundary[{}]", k)));
  }
  return d;
}

Json to_json(const SingularPattern& p) {
  Json points = Json::array();
  for (const auto& x : p.boundary_points) points.push_back(boundary_point_json(x));
  Json comps = Json::array();
  for (const auto& c : p.components) {
    Json seq = Json::array();
    for (const auto& e : c.sequence) {
      std::visit(overloaded{[&](const FoldArc& a) {
                              seq.push_back({{"arc", {{"id", a.id}, {"tau", a.tau}}}});
                            },
                            [&](const Cusp& cu) {
                              seq.push_back({{"cusp", {{"id", cu.id}, {"I", cu.normal_index}}}});
                            }},
                 e);
    }
    Json comp{{"kind", c.kind == ComponentKind::Circle ? "circle" : "interval"}, {"sequence", seq}};
    if (c.kind == ComponentKind::Interval) comp["endpoints"] = {c.endpoints[0], c.endpoints[1]};
    comps.push_back(comp);
  }
  Json j{{"n", p.n}, {"boundary_points", points}, {"components", comps}};
  if (p.chi_ambient) j["chi_ambient"] = *p.chi_ambient;
  return j;
}

SingularPattern pattern_from_json(const Json& j) {
  const std::string where = "pattern";
  only_keys(j, {"n", "chi_ambient", "boundary_points", "components"}, where);
  SingularPattern p;
  p.n = static_cast<int>(get_int(j, "n", where));
  if (auto it = j.find("chi_ambient"); it != j.end() && !it->is_null()) {
    p.chi_ambient = get_int(j, "chi_ambient", where);
  }
  const Json& points = get_array(j, "boundary_points", where);
  for (std::size_t k = 0; k < points.size(); ++k) {
    p.boundary_points.push_back(boundary_point_from(points[k], fmt::format("boundary_points[{}]", k)));
  }

  std::set<std::string> explicit_ids;
  const Json& comps = get_array(j, "components", where);
  for (const auto& c : comps) {
    if (!c.is_object() || !c.contains("sequence") || !c["sequence"].is_array()) continue;
    for (const auto& e : c["sequence"]) {
      for (const char* key : {"arc", "cusp"}) {
        if (e.is_object() && e.contains(key) && e[key].is_object() && e[key].contains("id") &&
            e[key]["id"].is_string()) {
          explicit_ids.insert(e[key]["id"].get<std::string>());
        }
      }
    }
  }
  int next_arc = 1;
  int next_cusp = 1;
  auto fresh = [&](char prefix, int& counter) {
    std::string id;
    do {
      id = prefix + std::to_string(counter++);
    } while (explicit_ids.count(id));
    return id;
  };

  for (std::size_t k = 0; k < comps.size(); ++k) {
    const std::string w = fmt::format("components[{}]", k);
    const Json& cj = comps[k];
    only_keys(cj, {"kind", "endpoints", "sequence"}, w);
    Component c;
    const std::string kind = get_string(cj, "kind", w);
    if (kind == "circle") {
      c.kind = ComponentKind::Circle;
      if (cj.contains("endpoints")) throw SchemaError(w + ": a circle has no endpoints");
    } else if (kind == "interval") {
      c.kind = ComponentKind::Interval;
      const Json& ends = get_array(cj, "endpoints", w);
      if (ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string()) {
        throw SchemaError(w + ": endpoints must be two ids");
      }
      c.endpoints = {ends[0].get<std::string>(), ends[1].get<std::string>()};
    } else {
      throw SchemaError(fmt::format("{}: kind must be \"circle\" or \"interval\", got \"{}\"", w, kind));
    }
    const Json& seq = get_array(cj, "sequence", w);
    for (std::size_t e = 0; e < seq.size(); ++e) {
      const std::string we = fmt::format("{}.sequence[{}]", w, e);
      const Json& ej = seq[e];
      if (!ej.is_object() || ej.size() != 1) throw SchemaError(we + " must be {\"arc\": ...} or {\"cusp\": ...}");
      if (ej.contains("arc")) {
        const Json& a = ej["arc"];
        only_keys(a, {"id", "tau"}, we);
        FoldArc arc;
        arc.tau = static_cast<int>(get_int(a, "tau", we));
        arc.id = a.contains("id") ? get_string(a, "id", we) : fresh('a', next_arc);
        c.sequence.emplace_back(arc);
      } else if (ej.contains("cusp")) {
        const Json& cu = ej["cusp"];
        only_keys(cu, {"id", "I"}, we);
        Cusp cusp;
        cusp.normal_index = static_cast<int>(get_int(cu, "I", we));
        cusp.id = cu.contains("id") ? get_string(cu, "id", we) : fresh('c', next_cusp);
        c.sequence.emplace_back(cusp);
      } else {
        throw SchemaError(we + " must be {\"arc\": ...} or {\"cusp\": ...}");
      }
    }
    p.components.push_back(std::move(c));
  }
  return p;
}

Json to_json(const Move& m) {
  Json params = std::visit(
      overloaded{[](const CreateCuspPair& c) { return Json{{"arc", ref_json(c.arc)}, {"i", c.i}}; },
                 [](const EliminateMatchingPair& e) {
                   Json r = nullptr;
                   if (e.reconnection) r = *e.reconnection == Reconnection::Split ? "split" : "stay";
                   return Json{{"first", ref_json(e.first)},
                               {"second", ref_json(e.second)},
                               {"reconnection", r},
                               {"assume_removable", e.assume_removable}};
                 },
                 [](const ToggleParity& t) {
                   return Json{{"component", t.component}, {"arc_position", t.arc_position}};
                 },
                 [](const MergeComponents& mc) {
                   return Json{{"component_a", mc.component_a},
                               {"arc_a", mc.arc_a},
                               {"component_b", mc.component_b},
                               {"arc_b", mc.arc_b},
                               {"flip_b", mc.flip_b}};
                 }},
      m);
  return Json{{"kind", move_kind(m)}, {"params", params}};
}

Move move_from_json(const Json& j) {
  const std::string where = "move";
  only_keys(j, {"kind", "params"}, where);
  const std::string kind = get_string(j, "kind", where);
  const Json& p = need(j, "params", where);
  const std::string w = "params of " + kind;
  if (kind == "create_cusp_pair") {
    only_keys(p, {"arc", "i"}, w);
    return CreateCuspPair{ref_from(need(p, "arc", w), w + ".arc"),
                          static_cast<int>(get_int(p, "i", w))};
  }
  if (kind == "eliminate_matching_pair") {
    only_keys(p, {"first", "second", "reconnection", "assume_removable"}, w);
    EliminateMatchingPair e;
    e.first = ref_from(need(p, "first", w), w + ".first");
    e.second = ref_from(need(p, "second", w), w + ".second");
    if (auto it = p.find("reconnection"); it != p.end() && !it->is_null()) {
      const std::string r = it->is_string() ? it->get<std::string>() : "";
      if (r == "split") {
        e.reconnection = Reconnection::Split;
      } else if (r == "stay") {
        e.reconnection = Reconnection::Stay;
      } else {
        throw SchemaError(w + ": reconnection must be \"split\", \"stay\" or null");
      }
    }
    if (p.contains("assume_removable")) e.assume_removable = get_bool(p, "assume_removable", w);
    return e;
  }
  if (kind == "toggle_parity") {
    only_keys(p, {"component", "arc_position"}, w);
    return ToggleParity{get_index(p, "component", w), get_index(p, "arc_position", w)};
  }
  if (kind == "merge_components") {
    only_keys(p, {"component_a", "arc_a", "component_b", "arc_b", "flip_b"}, w);
    return MergeComponents{get_index(p, "component_a", w), get_index(p, "arc_a", w),
                           get_index(p, "component_b", w), get_index(p, "arc_b", w),
                           get_bool(p, "flip_b", w)};
  }
  throw SchemaError(fmt::format("unknown move kind '{}'", kind));
}

Json to_json(const MoveTrace& t) {
  Json moves = Json::array();
  for (const auto& m : t.moves) moves.push_back(to_json(m));
  return Json{{"initial", to_json(t.initial)}, {"moves", moves}, {"final", to_json(t.final)}};
}

MoveTrace trace_from_json(const Json& j) {
  only_keys(j, {"initial", "moves", "final"}, "trace");
  MoveTrace t;
  t.initial = pattern_from_json(need(j, "initial", "trace"));
  for (const auto& m : get_array(j, "moves", "trace")) t.moves.push_back(move_from_json(m));
  t.final = pattern_from_json(need(j, "final", "trace"));
  return t;
}

Json to_json(const Obstruction& o) {
  if (o.kind == ObstructionKind::ParityMismatch) {
    return Json{{"kind", "parity_mismatch"},
                {"relation", "chi_V == chi_plus (mod 2)"},
                {"lhs", rational_text(o.lhs)},
                {"rhs", rational_text(o.rhs)}};
  }
  return Json{{"kind", "sign_sum_nonzero"},
              {"relation", "chi(dV)/2 == chi_plus"},
              {"lhs", rational_text(o.lhs)},
              {"rhs", rational_text(o.rhs)},
              {"sign_sum", o.sign_sum}};
}

Json to_json(const SignAssignment& s) {
  Json j = Json::object();
  for (const auto& [id, v] : s) j[id] = v;
  return j;
}

SignAssignment sigma_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("sign assignment must be an object");
  SignAssignment s;
  for (const auto& [id, v] : j.items()) {
    if (!v.is_number_integer() || (v.get<long>() != 1 && v.get<long>() != -1)) {
      throw SchemaError(fmt::format("sign of '{}' must be 1 or -1", id));
    }
    s[id] = v.get<int>();
  }
  return s;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(fmt::format("cannot open '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw SchemaError(fmt::format("'{}' is not valid JSON: {}", path, e.what()));
  }
}

}  // namespace cuspcobord
