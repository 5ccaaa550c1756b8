#include <doctest.h>

#include <random>

#include "cuspcobord/invariants.hpp"
#include "cuspcobord/json_io.hpp"
#include "support/oracles.hpp"

using namespace cuspcobord;

namespace {

MorseDescriptor load(const std::string& name) {
  return descriptor_from_json(read_json_file(std::string(CUSPCOBORD_SOURCE_DIR) + "/corpus/" + name));
}

std::vector<BoundaryCriticalPoint> points(std::initializer_list<std::pair<int, int>> mu_sigma) {
  std::vector<BoundaryCriticalPoint> out;
  int k = 0;
  for (const auto& [mu, s] : mu_sigma) out.push_back({"x" + std::to_string(k++), mu, s, std::nullopt});
  return out;
}

}  // namespace

TEST_CASE("chi_plus of the circle descriptors") {
  CHECK(chi_plus(load("disk_plus_minus.json")) == 1);
  CHECK(chi_plus(load("disk_plus_plus.json")) == 0);
  CHECK(chi_plus(MorseDescriptor::empty(2)) == 0);
}

TEST_CASE("chi_plus_sigma uses the assignment, not the stored signs") {
  const auto f2 = load("disk_plus_plus.json");
  CHECK(chi_plus_sigma(f2.boundary, {{"x0", 1}, {"x1", -1}}) == 1);
  CHECK(chi_plus_sigma(f2.boundary, {{"x0", -1}, {"x1", -1}}) == 0);
  CHECK(chi_plus_sigma(f2.boundary, stored_signs(f2.boundary)) == chi_plus(f2));
  for (const auto& s : oracle::all_signs(f2.boundary)) {
    CHECK(chi_plus_sigma(f2.boundary, s) == oracle::chi_plus(f2.boundary, s));
  }
}

TEST_CASE("chi_plus_sigma rejects a domain mismatch") {
  const auto f2 = load("disk_plus_plus.json");
  CHECK_THROWS_AS(chi_plus_sigma(f2.boundary, {{"x0", 1}}), Error);
  CHECK_THROWS_AS(chi_plus_sigma(f2.boundary, {{"x0", 1}, {"x1", 1}, {"x2", 1}}), Error);
  CHECK_THROWS_AS(chi_plus_sigma(f2.boundary, {{"x0", 1}, {"x1", 0}}), Error);
}

TEST_CASE("signed defect sides") {
  const auto f2 = load("disk_plus_plus.json");
  auto [l1, r1] = signed_defect(0, f2.boundary, stored_signs(f2.boundary));
  CHECK(l1 == Rational(0));
  CHECK(r1 == Rational(0));

  auto [l2, r2] = signed_defect(0, {}, {});
  CHECK(l2 == Rational(0));
  CHECK(r2 == Rational(0));

  const auto two = points({{0, 1}, {0, 1}});
  auto [l3, r3] = signed_defect(2, two, stored_signs(two));
  CHECK(l3 == Rational(-1));
  CHECK(r3 == Rational(-1));

  CHECK_THROWS_AS(signed_defect(1, two, stored_signs(two)), Error);
}

TEST_CASE("signed defect identity over all small lists") {
  for (int k = 0; k <= 4; ++k) {
    for (int code = 0; code < (1 << (2 * k)); ++code) {
      std::vector<BoundaryCriticalPoint> pts;
      for (int j = 0; j < k; ++j) pts.push_back({"x" + std::to_string(j), (code >> (2 * j)) & 3, 1, std::nullopt});
      const long chi_P = oracle::euler_of_boundary(pts);
      for (const auto& s : oracle::all_signs(pts)) {
        const auto [lhs, rhs] = signed_defect(chi_P, pts, s);
        REQUIRE(lhs == rhs);
        REQUIRE(lhs == Rational(chi_P, 2) - oracle::chi_plus(pts, s));
      }
    }
  }
}

TEST_CASE("cobordism invariant values") {
  const auto f2 = cobordism_invariant(load("disk_plus_plus.json"));
  CHECK(f2.value() == 1);
  CHECK(f2.group_name() == "Z/2");
  CHECK(cobordism_invariant(MorseDescriptor::empty(2)).value() == 0);
  const auto d3 = cobordism_invariant(load("d3_generator.json"));
  CHECK(d3.value() == -1);
  CHECK(d3.group_name() == "Z");
}

TEST_CASE("class arithmetic") {
  CHECK(CobordismClass(2, -1).value() == 1);
  CHECK(CobordismClass(4, 5).value() == 1);
  CHECK(CobordismClass(3, -4).value() == -4);
  CHECK((CobordismClass(2, 1) + CobordismClass(2, 1)).value() == 0);
  CHECK((-CobordismClass(3, 2)).value() == -2);
  CHECK(CobordismClass(3, -1).is_generator());
  CHECK_FALSE(CobordismClass(3, 2).is_generator());
  CHECK(CobordismClass(2, 1).is_generator());
  CHECK_THROWS_AS(CobordismClass(2, 1) + CobordismClass(3, 1), Error);
}

TEST_CASE("morse van schaack condition") {
  const auto f2 = load("disk_plus_plus.json");
  CHECK_FALSE(morse_van_schaack(2, 1, f2.boundary, stored_signs(f2.boundary)));
  const auto s2 = points({{0, 1}, {2, -1}});
  CHECK(morse_van_schaack(3, 1, s2, stored_signs(s2)));
  CHECK(morse_van_schaack(2, 0, {}, {}));
  const auto s2p = points({{0, 1}, {2, 1}});
  CHECK_FALSE(morse_van_schaack(3, 1, s2p, stored_signs(s2p)));
  CHECK(morse_van_schaack(4, 3, s2, stored_signs(s2)));
}

TEST_CASE("euler characteristic of an odd-dimensional manifold") {
  CHECK(euler_odd(2) == 1);
  CHECK(euler_odd(0) == 0);
  CHECK(euler_odd(4) == 2);
  CHECK(euler_odd(-2) == -1);
  CHECK_THROWS_AS(euler_odd(3), Error);
}

TEST_CASE("chi_plus parity matches the number of positive points") {
  std::mt19937_64 rng(oracle::seed() + 2);
  for (int k = 0; k < 300; ++k) {
    const auto d = oracle::random_descriptor(rng, 2 + k % 4, "d");
    long plus = 0;
    for (const auto& x : d.boundary) plus += x.sigma == 1;
    CHECK(((chi_plus(d) - plus) % 2 + 2) % 2 == 0);
    CHECK(cobordism_invariant(d).value() == oracle::invariant(d));
  }
}

TEST_CASE("union and inverse laws on random pairs") {
  std::mt19937_64 rng(oracle::seed() + 3);
  for (int k = 0; k < 400; ++k) {
    const int n = 2 + k % 4;
    const auto a = oracle::random_descriptor(rng, n, "a");
    const auto b = oracle::random_descriptor(rng, n, "b");
    CHECK(cobordism_invariant(disjoint_union(a, b)) == cobordism_invariant(a) + cobordism_invariant(b));
    CHECK(cobordism_invariant(reverse(a)) == -cobordism_invariant(a));
  }
}
