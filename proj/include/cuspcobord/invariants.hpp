#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cuspcobord/morse_model.hpp"
#include "cuspcobord/rational.hpp"

namespace cuspcobord {

/// Sign map on the boundary critical points, keyed by point id.
using SignAssignment = std::map<std::string, int>;

/// The signs stored on the points themselves.
SignAssignment stored_signs(const std::vector<BoundaryCriticalPoint>& boundary);

/// Throws Error unless sigma has exactly the point ids as keys and values +-1.
void check_sign_domain(const std::vector<BoundaryCriticalPoint>& boundary,
                       const SignAssignment& sigma);

/// Element of Z/2 (n even) or Z (n odd). Carries n so group arithmetic is
/// self-describing; mixing dimensions throws Error.
class CobordismClass {
 public:
  CobordismClass(int n, long raw);

  int n() const { return n_; }
  long value() const { return value_; }
  bool is_cyclic_of_order_two() const { return n_ % 2 == 0; }
  std::string group_name() const { return is_cyclic_of_order_two() ? "Z/2" : "Z"; }

  /// Generates the whole target group.
  bool is_generator() const;

  CobordismClass operator+(const CobordismClass& other) const;
  CobordismClass operator-() const;
  friend bool operator==(const CobordismClass&, const CobordismClass&) = default;

 private:
  int n_;
  long value_;
};

long chi_plus(const MorseDescriptor& d);

/// Same sum as chi_plus, with signs taken from `sigma` instead of the points.
/// Throws Error unless the key set of sigma equals the point ids.
long chi_plus_sigma(const std::vector<BoundaryCriticalPoint>& boundary, const SignAssignment& sigma);

/// Both sides of chi(P)/2 - chi_+(g; sigma) = -1/2 sum_i (-1)^i sum_{x in S^i} sigma(x).
/// Throws Error if chi_P is not the alternating count of the points.
std::pair<Rational, Rational> signed_defect(long chi_P,
                                            const std::vector<BoundaryCriticalPoint>& boundary,
                                            const SignAssignment& sigma);

/// chi(M) - chi_+[f], reduced mod 2 for even n.
CobordismClass cobordism_invariant(const MorseDescriptor& d);

/// Necessary condition for a critical-point-free extension of the boundary
/// germ: chi_+ = chi(M) (n odd) or chi_+ = chi(M) mod 2 (n even).
bool morse_van_schaack(int n, long chi_M, const std::vector<BoundaryCriticalPoint>& boundary,
                       const SignAssignment& sigma);

/// chi(X) = chi(dX)/2 for odd-dimensional X. Throws Error on odd input.
long euler_odd(long chi_boundary);

}  // namespace cuspcobord
