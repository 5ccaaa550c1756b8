#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cuspcobord/invariants.hpp"
#include "cuspcobord/rational.hpp"
#include "cuspcobord/singular_pattern.hpp"

namespace cuspcobord {

/// Position of an arc or cusp inside pattern.components[component].sequence.
struct ElementRef {
  std::size_t component = 0;
  std::size_t position = 0;

  friend bool operator==(const ElementRef&, const ElementRef&) = default;
  friend auto operator<=>(const ElementRef&, const ElementRef&) = default;
};

/// Rewiring of the four fold ends left by an elimination. With L/R the arcs
/// before/after each cusp, Split joins L1-R2 and R1-L2 (a single circle falls
/// apart in two) and Stay joins L1-L2 and R1-R2.
enum class Reconnection { Split, Stay };

struct CreateCuspPair {
  ElementRef arc;
  int i = 0;

  friend bool operator==(const CreateCuspPair&, const CreateCuspPair&) = default;
};

struct EliminateMatchingPair {
  ElementRef first;
  ElementRef second;
  std::optional<Reconnection> reconnection;  // nullopt: forced by tau, Split if free
  bool assume_removable = false;

  friend bool operator==(const EliminateMatchingPair&, const EliminateMatchingPair&) = default;
};

/// Adds a cusp of index n/2 - 1 on an arc of tau n/2 of an interval, plus a
/// new circle carrying one such cusp.
struct ToggleParity {
  std::size_t component = 0;
  std::size_t arc_position = 0;

  friend bool operator==(const ToggleParity&, const ToggleParity&) = default;
};

/// Creates a pair with i = (n-1)/2 on an arc of tau (n-1)/2 in each
/// component and eliminates the cross pair. flip_b reverses component b first,
/// arc_b refers to the unflipped sequence.
struct MergeComponents {
  std::size_t component_a = 0;
  std::size_t arc_a = 0;
  std::size_t component_b = 0;
  std::size_t arc_b = 0;
  bool flip_b = false;

  friend bool operator==(const MergeComponents&, const MergeComponents&) = default;
};

using Move = std::variant<CreateCuspPair, EliminateMatchingPair, ToggleParity, MergeComponents>;

std::string move_kind(const Move& m);

/// Change of the total cusp count caused by m.
int cusp_delta(const Move& m);

struct MoveTrace {
  SingularPattern initial;
  std::vector<Move> moves;
  SingularPattern final;
};

enum class ObstructionKind { ParityMismatch, SignSumNonzero };

/// ParityMismatch: lhs = chi(V) mod 2, rhs = chi_+ mod 2.
/// SignSumNonzero: lhs = chi(dV)/2, rhs = chi_+, sign_sum = sum (-1)^mu sigma.
struct Obstruction {
  ObstructionKind kind = ObstructionKind::ParityMismatch;
  Rational lhs;
  Rational rhs;
  long sign_sum = 0;
};

using NormalizeResult = std::variant<MoveTrace, Obstruction>;

SingularPattern create_cusp_pair(const SingularPattern& p, ElementRef arc, int i);

/// Throws Error unless both refs are cusps with I1 + I2 = n - 2, the requested
/// reconnection joins arcs of equal tau, and assume_removable is set for n = 2.
/// Components produced by the rewiring take the place of the first affected
/// component.
SingularPattern eliminate_matching_pair(const SingularPattern& p, ElementRef c1, ElementRef c2,
                                        std::optional<Reconnection> reconnection,
                                        bool assume_removable);

SingularPattern apply_move(const SingularPattern& p, const Move& m);
SingularPattern replay(const SingularPattern& initial, const std::vector<Move>& moves);
bool verify_trace(const MoveTrace& trace);

/// Preparatory creations leaving an arc of the given tau on the component,
/// and the position of that arc afterwards.
std::pair<std::vector<Move>, std::size_t> plan_index_ladder(const SingularPattern& p,
                                                            std::size_t component, int target_tau);

/// Flips the cusp parity of an interval (n even). Returns the preparatory
/// creations followed by the ToggleParity move.
std::vector<Move> plan_toggle_parity(const SingularPattern& p, std::size_t interval);
SingularPattern toggle_parity(const SingularPattern& p, std::size_t interval);

/// Puts two components on a common one (n odd, n > 2).
std::vector<Move> plan_merge_components(const SingularPattern& p, std::size_t comp_a,
                                        std::size_t comp_b, bool flip_b = false);
SingularPattern merge_components(const SingularPattern& p, std::size_t comp_a, std::size_t comp_b,
                                 bool flip_b = false);

/// Drives every component to satisfy the even-dimensional cusp condition, or
/// certifies chi(V) != chi_+ (mod 2). The trace's initial pattern carries
/// sigma and chi_ambient = chi_V. Throws Error on invalid input.
NormalizeResult normalize_even(const SingularPattern& p, const SignAssignment& sigma, long chi_V);

/// Drives every interval to a zero weighted sign sum, or certifies a nonzero
/// total. The trace's initial pattern carries sigma.
NormalizeResult normalize_odd(const SingularPattern& p, const SignAssignment& sigma);

}  // namespace cuspcobord
