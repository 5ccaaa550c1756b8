#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cuspcobord/cli.hpp"
#include "cuspcobord/cobordism_group.hpp"
#include "cuspcobord/json_io.hpp"
#include "cuspcobord/moves.hpp"
#include "cuspcobord/normal_forms.hpp"

namespace py = pybind11;
using namespace cuspcobord;

namespace {

// All structured values cross the boundary as JSON text.
MorseDescriptor descriptor(const std::string& s) { return descriptor_from_json(Json::parse(s)); }
SingularPattern pattern(const std::string& s) { return pattern_from_json(Json::parse(s)); }

SignAssignment signs_or_stored(const std::optional<std::string>& s, const SingularPattern& p) {
  return s ? sigma_from_json(Json::parse(*s)) : pattern_signs(p);
}

std::string issues_json(const ValidationReport& r) {
  Json out = Json::array();
  for (const auto& i : r.issues) out.push_back({{"code", i.code}, {"message", i.message}});
  return out.dump();
}

std::string invariant(const std::string& d) {
  const auto m = descriptor(d);
  const auto c = cobordism_invariant(m);
  return Json{{"n", m.n}, {"chi_M", m.chi_M}, {"chi_plus", chi_plus(m)}, {"invariant", c.value()},
              {"group", c.group_name()}}
      .dump();
}

bool extendable(const std::string& d, const std::optional<std::string>& sigma) {
  const auto m = descriptor(d);
  const SignAssignment s = sigma ? sigma_from_json(Json::parse(*sigma)) : stored_signs(m.boundary);
  return morse_van_schaack(m.n, m.chi_M, m.boundary, s);
}

std::string check(const std::string& ps, const std::optional<std::string>& sigma) {
  const auto p = pattern(ps);
  const auto s = signs_or_stored(sigma, p);
  const auto per = p.n % 2 == 0 ? check_condition_even(p, s) : check_condition_odd(p, s);
  return Json{{"conditions", per}, {"vector_field", vector_field_exists(p, s)}}.dump();
}

std::string normalize(const std::string& ps, const std::optional<std::string>& sigma,
                      std::optional<long> chi_v) {
  const auto p = pattern(ps);
  const auto s = signs_or_stored(sigma, p);
  NormalizeResult r;
  if (p.n % 2 == 0) {
    if (!chi_v) chi_v = p.chi_ambient;
    if (!chi_v) throw Error("even n needs chi_v or chi_ambient in the pattern");
    r = normalize_even(p, s, *chi_v);
  } else {
    r = normalize_odd(p, s);
  }
  if (const auto* t = std::get_if<MoveTrace>(&r)) return Json{{"trace", to_json(*t)}}.dump();
  return Json{{"obstruction", to_json(std::get<Obstruction>(r))}}.dump();
}

LocalMap make_map(const std::string& kind, int n, int i, double t) {
  LocalMap m;
  if (kind == "fold") {
    m = LocalMap::fold(n, i);
  } else if (kind == "cusp") {
    m = LocalMap::cusp(n, i);
  } else if (kind == "swallowtail") {
    m = LocalMap::swallow_tail(n, i, t);
  } else {
    throw Error("kind must be fold, cusp or swallowtail");
  }
  check_map(m);
  return m;
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cusp cobordism computations";
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def("validate_descriptor", [](const std::string& d) { return issues_json(validate(descriptor(d))); });
  m.def("invariant", &invariant);
  m.def("is_cobordant", [](const std::string& a, const std::string& b) {
    return is_cobordant(descriptor(a), descriptor(b));
  });
  m.def("disjoint_union", [](const std::string& a, const std::string& b) {
    return to_json(disjoint_union(descriptor(a), descriptor(b))).dump();
  });
  m.def("reverse", [](const std::string& d) { return to_json(reverse(descriptor(d))).dump(); });
  m.def("generator", [](int n) { return to_json(generator(n)).dump(); });
  m.def("extendable", &extendable, py::arg("descriptor"), py::arg("sigma") = py::none());

  m.def("validate_pattern", [](const std::string& p) { return issues_json(validate_pattern(pattern(p))); });
  m.def("check_pattern", &check, py::arg("pattern"), py::arg("sigma") = py::none());
  m.def("normalize", &normalize, py::arg("pattern"), py::arg("sigma") = py::none(),
        py::arg("chi_v") = py::none());
  m.def("apply_move", [](const std::string& p, const std::string& mv) {
    return to_json(apply_move(pattern(p), move_from_json(Json::parse(mv)))).dump();
  });
  m.def("verify_trace", [](const std::string& t) { return verify_trace(trace_from_json(Json::parse(t))); });

  m.def(
      "eval_map",
      [](const std::string& kind, int n, int i, double t, const std::vector<double>& point) {
        const Eigen::Vector2d v = eval(make_map(kind, n, i, t), to_vec(point));
        return std::pair<double, double>{v[0], v[1]};
      },
      py::arg("kind"), py::arg("n"), py::arg("i"), py::arg("t"), py::arg("point"));
  m.def("swallow_tail_curve", [](double t, double x) {
    const Eigen::Vector2d v = swallow_tail_singular_curve(t).image(x);
    return std::pair<double, double>{v[0], v[1]};
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
