#include <doctest.h>

#include "cuspcobord/json_io.hpp"
#include "cuspcobord/singular_pattern.hpp"
#include "support/enumerate.hpp"
#include "support/oracles.hpp"

using namespace cuspcobord;

namespace {

SingularPattern pattern(const char* text) { return pattern_from_json(Json::parse(text)); }

SingularPattern corpus(const std::string& name) {
  return pattern_from_json(read_json_file(std::string(CUSPCOBORD_SOURCE_DIR) + "/corpus/" + name));
}

SingularPattern interval(int n, int mu0, int mu1, std::vector<int> taus, std::vector<int> cusps) {
  SingularPattern p;
  p.n = n;
  p.boundary_points = {{"x0", mu0, 1, std::nullopt}, {"x1", mu1, 1, std::nullopt}};
  Component c;
  c.kind = ComponentKind::Interval;
  c.endpoints = {"x0", "x1"};
  for (std::size_t j = 0; j < taus.size(); ++j) {
    c.sequence.emplace_back(FoldArc{"a" + std::to_string(j), taus[j]});
    if (j < cusps.size()) c.sequence.emplace_back(Cusp{"c" + std::to_string(j), cusps[j]});
  }
  p.components.push_back(c);
  return p;
}

SingularPattern circle(int n, std::vector<int> taus, std::vector<int> cusps) {
  SingularPattern p;
  p.n = n;
  Component c;
  for (std::size_t j = 0; j < taus.size(); ++j) {
    c.sequence.emplace_back(FoldArc{"a" + std::to_string(j), taus[j]});
    if (j < cusps.size()) c.sequence.emplace_back(Cusp{"c" + std::to_string(j), cusps[j]});
  }
  p.components.push_back(c);
  return p;
}

}  // namespace

TEST_CASE("validate_pattern examples") {
  CHECK(validate_pattern(circle(3, {1}, {})).ok());
  CHECK(validate_pattern(circle(2, {1}, {0})).ok());
  CHECK(validate_pattern(corpus("odd_circle_n2.json")).ok());
  const auto bad = validate_pattern(circle(3, {1}, {0}));
  CHECK_FALSE(bad.ok());
  CHECK(bad.has("transition"));
  CHECK(bad.has("odd_circle"));
}

TEST_CASE("validate_pattern catches each rule") {
  CHECK(validate_pattern(circle(4, {1}, {})).has("arc_tau"));
  CHECK(validate_pattern(circle(4, {2, 3}, {3, 0})).has("cusp_index"));
  CHECK(validate_pattern(interval(3, 1, 0, {1}, {})).has("endpoint_tau"));
  CHECK(validate_pattern(interval(3, 0, 0, {2, 2}, {0})).has("transition"));

  auto two_arcs = circle(3, {1}, {});
  two_arcs.components[0].sequence.emplace_back(FoldArc{"b", 1});
  CHECK(validate_pattern(two_arcs).has("alternation"));

  auto empty = circle(3, {1}, {});
  empty.components[0].sequence.clear();
  CHECK(validate_pattern(empty).has("empty_component"));

  auto unknown = interval(3, 0, 0, {2}, {});
  unknown.components[0].endpoints[1] = "zz";
  CHECK(validate_pattern(unknown).has("unknown_endpoint"));

  auto unused = interval(3, 0, 0, {2}, {});
  unused.boundary_points.push_back({"x2", 0, 1, std::nullopt});
  CHECK(validate_pattern(unused).has("endpoint_usage"));

  auto dup = circle(3, {1, 2}, {1, 0});
  std::get<Cusp>(dup.components[0].sequence[3]).id = "a0";
  CHECK(validate_pattern(dup).has("duplicate_id"));

  auto low = circle(3, {1}, {});
  low.n = 1;
  CHECK(validate_pattern(low).has("dimension"));

  auto mu = interval(3, 0, 0, {2}, {});
  mu.boundary_points[0].mu = 5;
  CHECK(validate_pattern(mu).has("boundary_index"));
}

TEST_CASE("vector field criterion") {
  const auto i0 = interval(2, 0, 1, {1}, {});
  CHECK(vector_field_exists(i0, {{"x0", 1}, {"x1", -1}}));
  CHECK_FALSE(vector_field_exists(i0, {{"x0", 1}, {"x1", 1}}));
  CHECK_FALSE(vector_field_exists(circle(2, {1}, {0}), {}));
  const auto i1 = interval(2, 0, 0, {1, 1}, {0});
  CHECK(vector_field_exists(i1, {{"x0", 1}, {"x1", 1}}));
  CHECK_THROWS_AS(vector_field_exists(i1, {{"x0", 1}}), Error);
}

TEST_CASE("even condition") {
  CHECK(check_condition_even(circle(2, {1, 1}, {0, 0}), {}) == std::vector<bool>{true});
  CHECK(check_condition_even(interval(2, 0, 1, {1}, {}), {{"x0", 1}, {"x1", 1}}) == std::vector<bool>{false});
  CHECK(check_condition_even(interval(2, 0, 0, {1, 1}, {0}), {{"x0", 1}, {"x1", 1}}) ==
        std::vector<bool>{true});
  CHECK_THROWS_AS(check_condition_even(circle(3, {1}, {}), {}), Error);
}

TEST_CASE("odd condition") {
  CHECK(check_condition_odd(circle(3, {1}, {}), {}) == std::vector<bool>{true});
  CHECK(check_condition_odd(interval(3, 0, 1, {2, 1}, {1}), {{"x0", 1}, {"x1", 1}}) ==
        std::vector<bool>{true});
  CHECK(check_condition_odd(interval(3, 0, 0, {2}, {}), {{"x0", 1}, {"x1", 1}}) == std::vector<bool>{false});
  CHECK_THROWS_AS(check_condition_odd(circle(2, {1}, {}), {}), Error);
}

TEST_CASE("cusp parity check") {
  auto disk = interval(2, 0, 1, {1}, {});
  disk.chi_ambient = 1;
  CHECK(cusp_parity_check(disk));

  auto one = circle(2, {1}, {0});
  one.chi_ambient = 0;
  CHECK_FALSE(cusp_parity_check(one));

  SingularPattern empty;
  empty.chi_ambient = 0;
  CHECK(cusp_parity_check(empty));

  CHECK_THROWS_AS(cusp_parity_check(circle(2, {1}, {0})), Error);
}

TEST_CASE("aggregate identities on examples") {
  SingularPattern empty;
  CHECK(aggregate_even(empty, {}, 0) == std::pair<int, int>{0, 0});

  const auto c2 = circle(2, {1, 1}, {0, 0});
  const auto [l, r] = aggregate_even(c2, {}, 0);
  CHECK(l == r);

  const auto fig = interval(2, 0, 1, {1}, {});
  CHECK(aggregate_even(fig, {{"x0", 1}, {"x1", 1}}, 1) == std::pair<int, int>{1, 1});
  CHECK_THROWS_AS(aggregate_even(fig, {{"x0", 1}, {"x1", 1}}, 0), Error);

  SingularPattern odd_empty;
  odd_empty.n = 3;
  CHECK(aggregate_odd(odd_empty, {}) == std::pair<Rational, Rational>{0, 0});

  const auto s2 = interval(3, 0, 2, {2}, {});
  CHECK(aggregate_odd(s2, {{"x0", 1}, {"x1", 1}}) == std::pair<Rational, Rational>{-1, -1});
}

TEST_CASE("aggregate identities over enumerated patterns") {
  for (int n : {2, 3, 4, 5}) {
    for (const auto& p : enumerate::patterns(n, 2, 2)) {
      REQUIRE(validate_pattern(p).ok());
      for (const auto& s : oracle::all_signs(p.boundary_points)) {
        if (n % 2 == 0) {
          const long chi_V = (p.total_cusps() + static_cast<long>(p.boundary_points.size()) / 2) % 2;
          const auto [l, r] = aggregate_even(p, s, chi_V);
          CHECK(l == r);
          CHECK(l == ((chi_V - oracle::chi_plus(p.boundary_points, s)) % 2 + 2) % 2);
        } else {
          const auto [l, r] = aggregate_odd(p, s);
          CHECK(l == r);
          CHECK(l == Rational(oracle::euler_of_boundary(p.boundary_points), 2) -
                         oracle::chi_plus(p.boundary_points, s));
        }
      }
    }
  }
}

TEST_CASE("validator agrees with the reference rules on perturbed patterns") {
  std::mt19937_64 rng(oracle::seed() + 6);
  for (int n : {2, 3, 4, 5}) {
    const auto pool = enumerate::patterns(n, 2, 2);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int trial = 0; trial < 2000; ++trial) {
      SingularPattern p = pool[pick(rng)];
      if (p.components.empty()) continue;
      std::uniform_int_distribution<std::size_t> comp(0, p.components.size() - 1);
      auto& seq = p.components[comp(rng)].sequence;
      std::uniform_int_distribution<std::size_t> pos(0, seq.size() - 1);
      std::uniform_int_distribution<int> value(-1, n);
      auto& e = seq[pos(rng)];
      if (auto* a = std::get_if<FoldArc>(&e)) {
        a->tau = value(rng);
      } else {
        std::get<Cusp>(e).normal_index = value(rng);
      }
      CHECK(validate_pattern(p).ok() == oracle::pattern_valid(p));
    }
  }
}

TEST_CASE("odd dimensions force an even cusp count on circles") {
  for (int n : {3, 5}) {
    for (int k = 0; k <= 6; ++k) {
      std::vector<int> taus(k, n / 2);
      std::vector<int> cusps(k, 0);
      std::function<void(int)> rec = [&](int pos) {
        if (pos == 2 * k) {
          if (k == 0) return;
          const auto p = circle(n, taus, cusps);
          if (validate_pattern(p).ok()) CHECK(k % 2 == 0);
          return;
        }
        if (pos % 2 == 0) {
          for (int t = n / 2; t <= n - 1; ++t) {
            taus[pos / 2] = t;
            rec(pos + 1);
          }
        } else {
          for (int I = 0; I <= n - 2; ++I) {
            cusps[pos / 2] = I;
            rec(pos + 1);
          }
        }
      };
      rec(0);
    }
  }
}

TEST_CASE("predicate equivalences over enumerated patterns") {
  for (int n : {2, 3, 4}) {
    for (const auto& p : enumerate::patterns(n, 2, 2)) {
      for (const auto& s : oracle::all_signs(p.boundary_points)) {
        const auto per = n % 2 == 0 ? check_condition_even(p, s) : check_condition_odd(p, s);
        bool all = true;
        for (std::size_t k = 0; k < per.size(); ++k) {
          const auto q = oracle::single(p, k);
          CHECK(per[k] == vector_field_exists(q, oracle::restrict(s, q)));
          all = all && per[k];
        }
        CHECK(all == vector_field_exists(p, s));
      }
    }
  }
}
