#include "cuspcobord/singular_pattern.hpp"

#include <map>
#include <set>

#include <fmt/format.h>

namespace cuspcobord {

namespace {

int parity_sign(int i) { return (i % 2 == 0) ? 1 : -1; }

long mod2(long v) { return ((v % 2) + 2) % 2; }

std::map<std::string, const BoundaryCriticalPoint*> point_index(const SingularPattern& p) {
  std::map<std::string, const BoundaryCriticalPoint*> out;
  for (const auto& x : p.boundary_points) out.emplace(x.id, &x);
  return out;
}

void check_component_shape(const SingularPattern& p, std::size_t ci, ValidationReport& r) {
  const Component& c = p.components[ci];
  const int n = p.n;
  auto add = [&](std::string code, std::string msg) {
    r.issues.push_back({std::move(code), fmt::format("component {}: {}", ci, msg)});
  };
  const auto& seq = c.sequence;
  if (seq.empty()) {
    add("empty_component", "sequence is empty");
    return;
  }

  bool alternates = true;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const bool expect_arc = (k % 2 == 0);
    if (is_arc(seq[k]) != expect_arc) {
      add("alternation", fmt::format("position {} should be {}", k, expect_arc ? "an arc" : "a cusp"));
      alternates = false;
    }
  }
  if (c.kind == ComponentKind::Circle && seq.size() > 1 && seq.size() % 2 != 0) {
    add("alternation", fmt::format("circle sequence has odd length {} but more than one arc",
                                   seq.size()));
    alternates = false;
  }
  if (c.kind == ComponentKind::Interval && seq.size() % 2 == 0) {
    add("alternation", "interval must begin and end with an arc");
    alternates = false;
  }

  const int tau_lo = n / 2;  // ceil((n-1)/2)
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (const auto* a = std::get_if<FoldArc>(&seq[k])) {
      if (a->tau < tau_lo || a->tau > n - 1) {
        add("arc_tau", fmt::format("arc at position {} has tau = {} outside [{}, {}]", k, a->tau,
                                   tau_lo, n - 1));
      }
    } else {
      const auto& cu = std::get<Cusp>(seq[k]);
      if (cu.normal_index < 0 || cu.normal_index > n - 2) {
        add("cusp_index", fmt::format("cusp at position {} has I = {} outside [0, {}]", k,
                                      cu.normal_index, n - 2));
      }
    }
  }
  if (!alternates) return;

  const std::size_t len = seq.size();
  for (std::size_t k = 1; k < len; k += 2) {
    const auto& cu = std::get<Cusp>(seq[k]);
    const int left = std::get<FoldArc>(seq[k - 1]).tau;
    const int right = std::get<FoldArc>(seq[(k + 1) % len]).tau;
    const int tp = cu.tau(n);
    bool ok = false;
    if (n % 2 == 0 && cu.normal_index == n / 2 - 1) {
      ok = left == n / 2 && right == n / 2;
    } else {
      ok = (left == tp && right == tp + 1) || (left == tp + 1 && right == tp);
    }
    if (!ok) {
      add("transition", fmt::format("cusp at position {} (I = {}) is flanked by arcs of tau {} and "
                                    "{}",
                                    k, cu.normal_index, left, right));
    }
  }

  if (n % 2 == 1 && c.kind == ComponentKind::Circle && c.cusp_count() % 2 != 0) {
    add("odd_circle", fmt::format("circle carries {} cusps, odd n forces an even count",
                                  c.cusp_count()));
  }
}

}  // namespace

bool is_arc(const PatternElement& e) { return std::holds_alternative<FoldArc>(e); }
bool is_cusp(const PatternElement& e) { return std::holds_alternative<Cusp>(e); }

int Component::cusp_count() const {
  int k = 0;
  for (const auto& e : sequence) k += is_cusp(e) ? 1 : 0;
  return k;
}

int SingularPattern::total_cusps() const {
  int k = 0;
  for (const auto& c : components) k += c.cusp_count();
  return k;
}

const BoundaryCriticalPoint& SingularPattern::boundary_point(const std::string& id) const {
  for (const auto& x : boundary_points) {
    if (x.id == id) return x;
  }
  throw Error(fmt::format("unknown boundary point '{}'", id));
}

ValidationReport validate_pattern(const SingularPattern& p) {
  ValidationReport r;
  auto add = [&](std::string code, std::string msg) {
    r.issues.push_back({std::move(code), std::move(msg)});
  };
  if (p.n < 2) {
    add("dimension", fmt::format("n = {} but n >= 2 is required", p.n));
    return r;
  }

  std::map<std::string, int> uses;
  for (const auto& x : p.boundary_points) {
    if (uses.count(x.id)) add("duplicate_id", fmt::format("boundary point '{}' repeated", x.id));
    uses[x.id] = 0;
    if (x.mu < 0 || x.mu > p.n - 1) {
      add("boundary_index", fmt::format("boundary point '{}' has mu = {} outside [0, {}]", x.id,
                                        x.mu, p.n - 1));
    }
    if (x.sigma != 1 && x.sigma != -1) {
      add("sigma", fmt::format("boundary point '{}' has sigma = {}", x.id, x.sigma));
    }
  }

  std::set<std::string> labels;
  for (const auto& c : p.components) {
    for (const auto& e : c.sequence) {
      const std::string& id = is_arc(e) ? std::get<FoldArc>(e).id : std::get<Cusp>(e).id;
      if (!labels.insert(id).second) add("duplicate_id", fmt::format("element id '{}' repeated", id));
    }
  }

  const auto points = point_index(p);
  for (std::size_t ci = 0; ci < p.components.size(); ++ci) {
    const Component& c = p.components[ci];
    check_component_shape(p, ci, r);
    if (c.kind != ComponentKind::Interval) continue;
    for (int side = 0; side < 2; ++side) {
      const std::string& id = c.endpoints[side];
      auto it = points.find(id);
      if (it == points.end()) {
        add("unknown_endpoint", fmt::format("component {}: endpoint '{}' is not a boundary point",
                                            ci, id));
        continue;
      }
      ++uses[id];
      if (c.sequence.empty() || !is_arc(side == 0 ? c.sequence.front() : c.sequence.back())) {
        continue;
      }
      const auto& arc = std::get<FoldArc>(side == 0 ? c.sequence.front() : c.sequence.back());
      const int expected = fold_absolute_index(p.n, it->second->mu);
      if (arc.tau != expected) {
        add("endpoint_tau", fmt::format("component {}: arc at endpoint '{}' has tau = {}, mu = {} "
                                        "requires {}",
                                        ci, id, arc.tau, it->second->mu, expected));
      }
    }
  }
  for (const auto& [id, count] : uses) {
    if (count != 1) {
      add("endpoint_usage", fmt::format("boundary point '{}' ends {} intervals, expected 1", id,
                                        count));
    }
  }
  return r;
}

bool vector_field_exists(const SingularPattern& p, const SignAssignment& sigma) {
  check_sign_domain(p.boundary_points, sigma);
  for (const auto& c : p.components) {
    const bool even = c.cusp_count() % 2 == 0;
    if (c.kind == ComponentKind::Circle) {
      if (!even) return false;
    } else {
      const bool differ = sigma.at(c.endpoints[0]) != sigma.at(c.endpoints[1]);
      if (even != differ) return false;
    }
  }
  return true;
}

std::vector<bool> check_condition_even(const SingularPattern& p, const SignAssignment& sigma) {
  if (p.n % 2 != 0) throw Error(fmt::format("condition (even) needs even n, got {}", p.n));
  check_sign_domain(p.boundary_points, sigma);
  std::vector<bool> out;
  out.reserve(p.components.size());
  for (const auto& c : p.components) {
    long half = 0;
    if (c.kind == ComponentKind::Interval) {
      half = (sigma.at(c.endpoints[0]) + sigma.at(c.endpoints[1])) / 2;
    }
    out.push_back(mod2(c.cusp_count() + half) == 0);
  }
  return out;
}

std::vector<bool> check_condition_odd(const SingularPattern& p, const SignAssignment& sigma) {
  if (p.n % 2 == 0) throw Error(fmt::format("condition (odd) needs odd n, got {}", p.n));
  check_sign_domain(p.boundary_points, sigma);
  std::vector<bool> out;
  out.reserve(p.components.size());
  for (const auto& c : p.components) {
    long sum = 0;
    if (c.kind == ComponentKind::Interval) {
      for (const auto& id : c.endpoints) {
        sum += parity_sign(p.boundary_point(id).mu) * sigma.at(id);
      }
    }
    out.push_back(sum == 0);
  }
  return out;
}

bool cusp_parity_check(const SingularPattern& p) {
  if (!p.chi_ambient) throw Error("pattern has no chi_ambient");
  if (p.boundary_points.size() % 2 != 0) {
    throw Error(fmt::format("{} boundary points, expected an even number",
                            p.boundary_points.size()));
  }
  const long half = static_cast<long>(p.boundary_points.size() / 2);
  return mod2(p.total_cusps()) == mod2(*p.chi_ambient + half);
}

std::pair<int, int> aggregate_even(const SingularPattern& p, const SignAssignment& sigma,
                                   long chi_V) {
  if (p.n % 2 != 0) throw Error(fmt::format("aggregate (even) needs even n, got {}", p.n));
  SingularPattern probe = p;
  probe.chi_ambient = chi_V;
  if (!cusp_parity_check(probe)) {
    throw Error(fmt::format("cusp count {} violates the cusp parity rule for chi_V = {}",
                            p.total_cusps(), chi_V));
  }
  const long lhs = mod2(chi_V - chi_plus_sigma(p.boundary_points, sigma));
  long rhs = 0;
  for (const auto& c : p.components) {
    rhs += c.cusp_count();
    if (c.kind == ComponentKind::Interval) {
      rhs += (sigma.at(c.endpoints[0]) + sigma.at(c.endpoints[1])) / 2;
    }
  }
  return {static_cast<int>(lhs), static_cast<int>(mod2(rhs))};
}

std::pair<Rational, Rational> aggregate_odd(const SingularPattern& p, const SignAssignment& sigma) {
  if (p.n % 2 == 0) throw Error(fmt::format("aggregate (odd) needs odd n, got {}", p.n));
  const long cp = chi_plus_sigma(p.boundary_points, sigma);
  const Rational lhs = Rational(alternating_sum(p.boundary_points), 2) - Rational(cp);
  long sum = 0;
  for (const auto& c : p.components) {
    if (c.kind != ComponentKind::Interval) continue;
    for (const auto& id : c.endpoints) sum += parity_sign(p.boundary_point(id).mu) * sigma.at(id);
  }
  return {lhs, Rational(-sum, 2)};
}

SignAssignment pattern_signs(const SingularPattern& p) { return stored_signs(p.boundary_points); }

}  // namespace cuspcobord
