#include "cuspcobord/morse_model.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace cuspcobord {

MorseDescriptor MorseDescriptor::empty(int n) {
  MorseDescriptor d;
  d.n = n;
  return d;
}

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& i) { return i.code == code; });
}

long alternating_sum(const std::vector<BoundaryCriticalPoint>& boundary) {
  long sum = 0;
  for (const auto& x : boundary) sum += (x.mu % 2 == 0) ? 1 : -1;
  return sum;
}

ValidationReport validate(const MorseDescriptor& d) {
  ValidationReport r;
  auto add = [&](std::string code, std::string msg) {
    r.issues.push_back({std::move(code), std::move(msg)});
  };

  if (d.n < 2) add("dimension", fmt::format("n = {} but n >= 2 is required", d.n));

  std::set<std::string> ids;
  for (const auto& p : d.interior) {
    if (p.index < 0 || p.index > d.n) {
      add("interior_index", fmt::format("interior point '{}' has index {} outside [0, {}]", p.id,
                                        p.index, d.n));
    }
    if (!ids.insert(p.id).second) add("duplicate_id", fmt::format("id '{}' repeated", p.id));
  }
  for (const auto& x : d.boundary) {
    if (x.mu < 0 || x.mu > d.n - 1) {
      add("boundary_index", fmt::format("boundary point '{}' has mu = {} outside [0, {}]", x.id,
                                        x.mu, d.n - 1));
    }
    if (x.sigma != 1 && x.sigma != -1) {
      add("sigma", fmt::format("boundary point '{}' has sigma = {}, expected +1 or -1", x.id,
                               x.sigma));
    }
    if (!ids.insert(x.id).second) add("duplicate_id", fmt::format("id '{}' repeated", x.id));
  }

  const long alt = alternating_sum(d.boundary);
  if (alt != d.chi_boundary) {
    add("chi_boundary", fmt::format("chi_boundary = {} but the boundary critical points give {}",
                                    d.chi_boundary, alt));
  }
  if (d.chi_boundary % 2 != 0) {
    add("chi_boundary_parity", fmt::format("chi_boundary = {} is odd", d.chi_boundary));
  }
  if (d.boundary.size() % 2 != 0) {
    add("boundary_count_parity",
        fmt::format("{} boundary critical points, expected an even number", d.boundary.size()));
  }
  if (d.n % 2 == 1 && 2 * d.chi_M != d.chi_boundary) {
    add("odd_euler", fmt::format("n = {} is odd, so chi_M must equal chi_boundary / 2, got "
                                 "chi_M = {} and chi_boundary = {}",
                                 d.n, d.chi_M, d.chi_boundary));
  }
  return r;
}

namespace {

std::string fresh_id(const std::string& base, const std::set<std::string>& taken) {
  for (int k = 1;; ++k) {
    std::string candidate = base + "#" + std::to_string(k);
    if (!taken.count(candidate)) return candidate;
  }
}

}  // namespace

MorseDescriptor disjoint_union(const MorseDescriptor& a, const MorseDescriptor& b) {
  if (a.n != b.n) {
    throw Error(fmt::format("dimension mismatch in disjoint union: {} vs {}", a.n, b.n));
  }
  MorseDescriptor out = a;
  out.oriented = a.oriented && b.oriented;
  out.chi_M += b.chi_M;
  out.chi_boundary += b.chi_boundary;

  std::set<std::string> taken;
  for (const auto& p : a.interior) taken.insert(p.id);
  for (const auto& x : a.boundary) taken.insert(x.id);
  for (const auto& p : b.interior) taken.insert(p.id);
  for (const auto& x : b.boundary) taken.insert(x.id);

  std::set<std::string> used_by_a;
  for (const auto& p : a.interior) used_by_a.insert(p.id);
  for (const auto& x : a.boundary) used_by_a.insert(x.id);

  auto relabel = [&](std::string id) {
    if (!used_by_a.count(id)) return id;
    std::string fresh = fresh_id(id, taken);
    taken.insert(fresh);
    return fresh;
  };
  for (auto p : b.interior) {
    p.id = relabel(p.id);
    out.interior.push_back(std::move(p));
  }
  for (auto x : b.boundary) {
    x.id = relabel(x.id);
    out.boundary.push_back(std::move(x));
  }
  return out;
}

MorseDescriptor reverse(const MorseDescriptor& d) {
  MorseDescriptor out = d;
  out.oriented = !d.oriented;
  for (auto& p : out.interior) {
    p.index = d.n - p.index;
    if (p.value) p.value = -*p.value;
  }
  for (auto& x : out.boundary) {
    x.mu = d.n - 1 - x.mu;
    x.sigma = -x.sigma;
    if (x.value) x.value = -*x.value;
  }
  return out;
}

bool is_stable(const MorseDescriptor& d) {
  std::vector<Rational> values;
  values.reserve(d.interior.size() + d.boundary.size());
  for (const auto& p : d.interior) {
    if (!p.value) throw Error(fmt::format("interior point '{}' has no critical value", p.id));
    values.push_back(*p.value);
  }
  for (const auto& x : d.boundary) {
    if (!x.value) throw Error(fmt::format("boundary point '{}' has no critical value", x.id));
    values.push_back(*x.value);
  }
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) == values.end();
}

}  // namespace cuspcobord
