#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cuspcobord/invariants.hpp"
#include "cuspcobord/morse_model.hpp"
#include "cuspcobord/rational.hpp"

namespace cuspcobord {

/// Absolute index of a fold point whose quadratic form has `lambda` minus signs.
inline int fold_absolute_index(int n, int lambda) { return std::max(lambda, n - 1 - lambda); }

/// Absolute index of a cusp with normal index I.
inline int cusp_absolute_index(int n, int normal_index) {
  return std::max(normal_index, n - 2 - normal_index);
}

struct Cusp {
  std::string id;
  int normal_index = 0;  // Levine's index I, 0 <= I <= n-2

  int tau(int n) const { return cusp_absolute_index(n, normal_index); }
  friend bool operator==(const Cusp&, const Cusp&) = default;
};

struct FoldArc {
  std::string id;
  int tau = 1;  // absolute index, constant along the arc

  friend bool operator==(const FoldArc&, const FoldArc&) = default;
};

using PatternElement = std::variant<FoldArc, Cusp>;

enum class ComponentKind { Circle, Interval };

/// One component of the singular set.
///
/// The sequence alternates arc, cusp, arc, ... and always starts with an arc.
/// A Circle with k >= 1 cusps has 2k entries and its last cusp abuts the first
/// arc; a cusp-free Circle is a single arc. An Interval with k cusps has 2k+1
/// entries, and endpoints[0] / endpoints[1] abut the first / last arc.
struct Component {
  ComponentKind kind = ComponentKind::Circle;
  std::vector<PatternElement> sequence;
  std::array<std::string, 2> endpoints;  // Interval only

  int cusp_count() const;
  friend bool operator==(const Component&, const Component&) = default;
};

/// Combinatorial shadow of the singular set of a generic map to the plane on
/// a compact manifold Y with boundary.
struct SingularPattern {
  int n = 2;
  std::vector<Component> components;
  std::vector<BoundaryCriticalPoint> boundary_points;
  std::optional<long> chi_ambient;

  int total_cusps() const;
  const BoundaryCriticalPoint& boundary_point(const std::string& id) const;
  friend bool operator==(const SingularPattern&, const SingularPattern&) = default;
};

bool is_arc(const PatternElement& e);
bool is_cusp(const PatternElement& e);

ValidationReport validate_pattern(const SingularPattern& p);

/// Cusp-parity criterion for a nowhere-tangent normal field along S(G):
/// circles carry evenly many cusps, and an interval carries evenly many cusps
/// iff its endpoint signs differ. Throws Error if sigma does not cover the
/// boundary points exactly.
bool vector_field_exists(const SingularPattern& p, const SignAssignment& sigma);

/// Per component: #cusps + (1/2) sum of endpoint signs == 0 (mod 2).
/// Throws Error for odd n.
std::vector<bool> check_condition_even(const SingularPattern& p, const SignAssignment& sigma);

/// Per component: sum over endpoints of (-1)^mu * sigma == 0. Circles pass.
/// Throws Error for even n.
std::vector<bool> check_condition_odd(const SingularPattern& p, const SignAssignment& sigma);

/// Total cusp count has the parity of chi(Y) + #S(g)/2. Throws Error if
/// chi_ambient is missing or the boundary count is odd.
bool cusp_parity_check(const SingularPattern& p);

/// Both sides, as residues mod 2, of
///   chi(V) - chi_+(g; sigma) == sum_S [#cusps on S + (1/2) sum_{dS} sigma].
/// Throws Error for odd n or when cusp_parity_check fails with chi_ambient = chi_V.
std::pair<int, int> aggregate_even(const SingularPattern& p, const SignAssignment& sigma, long chi_V);

/// Both sides of
///   chi(dV)/2 - chi_+(g; sigma) == -1/2 sum_S sum_{x in dS} (-1)^mu(x) sigma(x)
/// with chi(dV) the alternating count of the boundary points. Throws Error for even n.
std::pair<Rational, Rational> aggregate_odd(const SingularPattern& p, const SignAssignment& sigma);

/// Sign assignment read off the boundary points of the pattern.
SignAssignment pattern_signs(const SingularPattern& p);

}  // namespace cuspcobord
