#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuspcobord/rational.hpp"

namespace cuspcobord {

/// Thrown for precondition failures of the combinatorial operations
/// (dimension mismatch, domain mismatch, malformed references).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BoundaryCriticalPoint {
  std::string id;
  int mu = 0;     // Morse index of the restriction to the boundary
  int sigma = 1;  // +1 iff the function increases along inward normals
  std::optional<Rational> value;

  friend bool operator==(const BoundaryCriticalPoint&, const BoundaryCriticalPoint&) = default;
};

struct InteriorCriticalPoint {
  std::string id;
  int index = 0;
  std::optional<Rational> value;

  friend bool operator==(const InteriorCriticalPoint&, const InteriorCriticalPoint&) = default;
};

/// Finite encoding of a Morse function on a compact n-manifold with boundary.
///
/// chi_M is an independent input: nothing ties the interior critical points
/// to the Euler characteristic of M, so none is enforced.
struct MorseDescriptor {
  int n = 2;
  bool oriented = true;
  long chi_M = 0;
  long chi_boundary = 0;
  std::vector<InteriorCriticalPoint> interior;
  std::vector<BoundaryCriticalPoint> boundary;

  /// The function on the empty manifold; identity of the group law.
  static MorseDescriptor empty(int n);

  friend bool operator==(const MorseDescriptor&, const MorseDescriptor&) = default;
};

struct ValidationIssue {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool has(const std::string& code) const;
};

/// Alternating count sum_i (-1)^i #{points with mu = i}: the Euler
/// characteristic of the boundary by the Morse equality for g = f|dM.
long alternating_sum(const std::vector<BoundaryCriticalPoint>& boundary);

ValidationReport validate(const MorseDescriptor& d);

/// Group law. Colliding ids of the second operand get a numeric suffix.
MorseDescriptor disjoint_union(const MorseDescriptor& a, const MorseDescriptor& b);

/// Descriptor of -f on -M: index i -> n-i, (mu, sigma) -> (n-1-mu, -sigma),
/// critical values negated, orientation flag flipped.
MorseDescriptor reverse(const MorseDescriptor& d);

/// C-infinity stability: injectivity on all critical points. Throws Error if a
/// critical value is missing.
bool is_stable(const MorseDescriptor& d);

}  // namespace cuspcobord
