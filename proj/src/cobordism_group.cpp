#include "cuspcobord/cobordism_group.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace cuspcobord {

bool is_cobordant(const MorseDescriptor& a, const MorseDescriptor& b) {
  if (a.n != b.n) throw Error(fmt::format("dimension mismatch: {} vs {}", a.n, b.n));
  return cobordism_invariant(a) == cobordism_invariant(b);
}

MorseDescriptor generator(int n) {
  if (n < 2) throw Error(fmt::format("generator needs n >= 2, got {}", n));
  MorseDescriptor d;
  d.n = n;
  d.chi_M = 1;
  d.boundary = {{"x0", 0, 1, std::nullopt}, {"x1", n - 1, 1, std::nullopt}};
  d.chi_boundary = alternating_sum(d.boundary);
  return d;
}

MorseDescriptor realize_sign_assignment(const std::vector<BoundaryCriticalPoint>& boundary,
                                        const SignAssignment& sigma, int n, long chi_M) {
  // Checks the domain before anything else.
  chi_plus_sigma(boundary, sigma);
  MorseDescriptor d;
  d.n = n;
  d.chi_M = chi_M;
  d.boundary = boundary;
  for (auto& x : d.boundary) x.sigma = sigma.at(x.id);
  d.chi_boundary = alternating_sum(d.boundary);
  const auto report = validate(d);
  if (!report.ok()) {
    throw Error("target manifold data is invalid: " + report.issues.front().message);
  }
  return d;
}

namespace {

void check_inputs(const std::vector<BoundaryCriticalPoint>& boundary, int n, long chi_M,
                  const GroupElement& target) {
  if (target.n() != n) {
    throw Error(fmt::format("target lives in dimension {}, boundary data in {}", target.n(), n));
  }
  MorseDescriptor probe;
  probe.n = n;
  probe.chi_M = chi_M;
  probe.boundary = boundary;
  probe.chi_boundary = alternating_sum(boundary);
  const auto report = validate(probe);
  if (!report.ok()) throw Error("invalid manifold data: " + report.issues.front().message);
}

SigmaSearchResult exhaustive(const std::vector<BoundaryCriticalPoint>& boundary, int n, long chi_M,
                             const GroupElement& target) {
  const std::size_t k = boundary.size();
  std::set<long> attainable;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    long cp = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const bool minus = (mask >> (k - 1 - j)) & 1U;
      if (!minus) cp += (boundary[j].mu % 2 == 0) ? 1 : -1;
    }
    const CobordismClass value(n, chi_M - cp);
    if (value == target) {
      SignAssignment s;
      for (std::size_t j = 0; j < k; ++j) {
        s[boundary[j].id] = ((mask >> (k - 1 - j)) & 1U) ? -1 : 1;
      }
      return s;
    }
    attainable.insert(value.value());
  }
  return NoSolution{{attainable.begin(), attainable.end()}};
}

}  // namespace

SigmaSearchResult solve_sigma_closed_form(const std::vector<BoundaryCriticalPoint>& boundary, int n,
                                          long chi_M, const GroupElement& target) {
  check_inputs(boundary, n, chi_M, target);
  long even = 0;
  long odd = 0;
  for (const auto& x : boundary) ((x.mu % 2 == 0) ? even : odd) += 1;

  for (long p = even; p >= 0; --p) {
    for (long q = odd; q >= 0; --q) {
      if (CobordismClass(n, chi_M - (p - q)) != target) continue;
      SignAssignment s;
      long even_left = p;
      long odd_left = q;
      for (const auto& x : boundary) {
        long& left = (x.mu % 2 == 0) ? even_left : odd_left;
        s[x.id] = left > 0 ? 1 : -1;
        if (left > 0) --left;
      }
      return s;
    }
  }
  std::set<long> attainable;
  for (long v = -odd; v <= even; ++v) attainable.insert(CobordismClass(n, chi_M - v).value());
  return NoSolution{{attainable.begin(), attainable.end()}};
}

SigmaSearchResult solve_sigma_for_target(const std::vector<BoundaryCriticalPoint>& boundary, int n,
                                         long chi_M, const GroupElement& target) {
  if (boundary.size() > kExhaustiveSigmaLimit) {
    return solve_sigma_closed_form(boundary, n, chi_M, target);
  }
  check_inputs(boundary, n, chi_M, target);
  return exhaustive(boundary, n, chi_M, target);
}

}  // namespace cuspcobord
