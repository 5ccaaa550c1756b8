#pragma once

#include <variant>
#include <vector>

#include "cuspcobord/invariants.hpp"
#include "cuspcobord/morse_model.hpp"

namespace cuspcobord {

using GroupElement = CobordismClass;

/// Classes agree iff the invariants agree. Throws Error on dimension mismatch.
bool is_cobordant(const MorseDescriptor& a, const MorseDescriptor& b);

/// Height-type function on the n-disk whose boundary sphere carries a minimum
/// and a maximum, both with sigma = +1. Invariant 1 in Z/2 for even n and -1
/// in Z for odd n; reverse() of it gives +1.
MorseDescriptor generator(int n);

/// Descriptor with the given boundary data, signs overwritten by sigma and no
/// interior critical points. Throws Error if the result fails validation.
MorseDescriptor realize_sign_assignment(const std::vector<BoundaryCriticalPoint>& boundary,
                                        const SignAssignment& sigma, int n, long chi_M);

/// Every invariant value reachable by some sign assignment, sorted.
struct NoSolution {
  std::vector<long> attainable;
};

using SigmaSearchResult = std::variant<SignAssignment, NoSolution>;

/// Boundary lists up to this size are searched exhaustively.
inline constexpr std::size_t kExhaustiveSigmaLimit = 20;

/// Finds sigma with cobordism_invariant(realize_sign_assignment(...)) = target.
/// Exhaustive search visits assignments lexicographically in list order with
/// +1 before -1, so the first hit is deterministic. Larger inputs use the
/// closed form: chi_+ = p - q where p of the even-index and q of the odd-index
/// points carry +1.
SigmaSearchResult solve_sigma_for_target(const std::vector<BoundaryCriticalPoint>& boundary, int n,
                                         long chi_M, const GroupElement& target);

/// The closed-form branch on its own, for any list size.
SigmaSearchResult solve_sigma_closed_form(const std::vector<BoundaryCriticalPoint>& boundary, int n,
                                          long chi_M, const GroupElement& target);

}  // namespace cuspcobord
