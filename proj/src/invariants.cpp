#include "cuspcobord/invariants.hpp"

#include <fmt/format.h>

namespace cuspcobord {

namespace {

long reduce(int n, long raw) {
  if (n % 2 != 0) return raw;
  return ((raw % 2) + 2) % 2;
}

int parity_sign(int i) { return (i % 2 == 0) ? 1 : -1; }

}  // namespace

void check_sign_domain(const std::vector<BoundaryCriticalPoint>& boundary,
                       const SignAssignment& sigma) {
  if (sigma.size() != boundary.size()) {
    throw Error(fmt::format("sign assignment covers {} points, boundary has {}", sigma.size(),
                            boundary.size()));
  }
  for (const auto& x : boundary) {
    auto it = sigma.find(x.id);
    if (it == sigma.end()) throw Error(fmt::format("no sign for boundary point '{}'", x.id));
    if (it->second != 1 && it->second != -1) {
      throw Error(fmt::format("sign of '{}' is {}, expected +1 or -1", x.id, it->second));
    }
  }
}

SignAssignment stored_signs(const std::vector<BoundaryCriticalPoint>& boundary) {
  SignAssignment s;
  for (const auto& x : boundary) s[x.id] = x.sigma;
  return s;
}

CobordismClass::CobordismClass(int n, long raw) : n_(n), value_(reduce(n, raw)) {}

bool CobordismClass::is_generator() const {
  return is_cyclic_of_order_two() ? value_ == 1 : (value_ == 1 || value_ == -1);
}

CobordismClass CobordismClass::operator+(const CobordismClass& other) const {
  if (n_ != other.n_) {
    throw Error(fmt::format("cannot add classes of dimensions {} and {}", n_, other.n_));
  }
  return {n_, value_ + other.value_};
}

CobordismClass CobordismClass::operator-() const { return {n_, -value_}; }

long chi_plus(const MorseDescriptor& d) {
  long sum = 0;
  for (const auto& x : d.boundary) {
    if (x.sigma == 1) sum += parity_sign(x.mu);
  }
  return sum;
}

long chi_plus_sigma(const std::vector<BoundaryCriticalPoint>& boundary,
                    const SignAssignment& sigma) {
  check_sign_domain(boundary, sigma);
  long sum = 0;
  for (const auto& x : boundary) {
    if (sigma.at(x.id) == 1) sum += parity_sign(x.mu);
  }
  return sum;
}

std::pair<Rational, Rational> signed_defect(long chi_P,
                                            const std::vector<BoundaryCriticalPoint>& boundary,
                                            const SignAssignment& sigma) {
  const long alt = alternating_sum(boundary);
  if (alt != chi_P) {
    throw Error(fmt::format("chi_P = {} but the critical points give {}", chi_P, alt));
  }
  const Rational lhs = Rational(chi_P, 2) - Rational(chi_plus_sigma(boundary, sigma));
  long weighted = 0;
  for (const auto& x : boundary) weighted += parity_sign(x.mu) * sigma.at(x.id);
  const Rational rhs = Rational(-weighted, 2);
  return {lhs, rhs};
}

CobordismClass cobordism_invariant(const MorseDescriptor& d) {
  return {d.n, d.chi_M - chi_plus(d)};
}

bool morse_van_schaack(int n, long chi_M, const std::vector<BoundaryCriticalPoint>& boundary,
                       const SignAssignment& sigma) {
  const long cp = chi_plus_sigma(boundary, sigma);
  if (n % 2 == 0) return ((cp - chi_M) % 2) == 0;
  return cp == chi_M;
}

long euler_odd(long chi_boundary) {
  if (chi_boundary % 2 != 0) {
    throw Error(fmt::format("chi of the boundary is {}, but a closed boundary has even chi",
                            chi_boundary));
  }
  return chi_boundary / 2;
}

}  // namespace cuspcobord
