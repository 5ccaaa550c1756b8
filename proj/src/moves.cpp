#include "cuspcobord/moves.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace cuspcobord {

namespace {

int parity_sign(int i) { return (i % 2 == 0) ? 1 : -1; }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

/// Hands out "a<k>" / "c<k>" labels not yet present in a pattern.
class IdPool {
 public:
  explicit IdPool(const SingularPattern& p) {
    for (const auto& c : p.components) {
      for (const auto& e : c.sequence) {
        std::visit([&](const auto& x) { used_.insert(x.id); }, e);
      }
    }
  }

  std::string next(char prefix) {
    for (int k = 1;; ++k) {
      std::string id = prefix + std::to_string(k);
      if (used_.insert(id).second) return id;
    }
  }

 private:
  std::set<std::string> used_;
};

const Component& component_at(const SingularPattern& p, std::size_t index) {
  if (index >= p.components.size()) {
    throw Error(fmt::format("component {} does not exist ({} components)", index,
                            p.components.size()));
  }
  return p.components[index];
}

const PatternElement& element_at(const SingularPattern& p, ElementRef ref) {
  const Component& c = component_at(p, ref.component);
  if (ref.position >= c.sequence.size()) {
    throw Error(fmt::format("position {} is outside component {} (length {})", ref.position,
                            ref.component, c.sequence.size()));
  }
  return c.sequence[ref.position];
}

const Cusp& cusp_at(const SingularPattern& p, ElementRef ref) {
  const auto* cu = std::get_if<Cusp>(&element_at(p, ref));
  if (!cu) throw Error(fmt::format("({}, {}) is not a cusp", ref.component, ref.position));
  return *cu;
}

const FoldArc& arc_at(const SingularPattern& p, ElementRef ref) {
  const auto* a = std::get_if<FoldArc>(&element_at(p, ref));
  if (!a) throw Error(fmt::format("({}, {}) is not an arc", ref.component, ref.position));
  return *a;
}

int tau_of(const PatternElement& e) { return std::get<FoldArc>(e).tau; }

// Cut-and-rewire machinery for eliminations. Paths run arc..arc; end 2k is
// the front of path k, end 2k+1 its back.
struct Wiring {
  std::vector<std::vector<PatternElement>> paths;
  std::vector<std::optional<std::string>> boundary;
  std::vector<int> partner;
  std::vector<int> boundary_starts;

  int add_path(std::vector<PatternElement> elems) {
    paths.push_back(std::move(elems));
    boundary.resize(2 * paths.size());
    partner.resize(2 * paths.size(), -1);
    return static_cast<int>(paths.size()) - 1;
  }

  int tau_at(int end) const {
    const auto& path = paths[end / 2];
    return tau_of(end % 2 == 0 ? path.front() : path.back());
  }

  void join(int a, int b) {
    partner[a] = b;
    partner[b] = a;
  }
};

std::vector<PatternElement> slice(const std::vector<PatternElement>& seq, std::size_t from,
                                  std::size_t to) {
  return {seq.begin() + static_cast<std::ptrdiff_t>(from),
          seq.begin() + static_cast<std::ptrdiff_t>(to)};
}

void append_fused(std::vector<PatternElement>& out, const std::vector<PatternElement>& elems,
                  bool reversed) {
  std::vector<PatternElement> piece = elems;
  if (reversed) std::reverse(piece.begin(), piece.end());
  auto first = piece.begin();
  if (!out.empty()) {
    if (tau_of(out.back()) != tau_of(*first)) {
      throw std::logic_error("elimination joined arcs of different tau");
    }
    ++first;
  }
  out.insert(out.end(), first, piece.end());
}

std::vector<Component> assemble(Wiring& w) {
  std::vector<bool> visited(w.paths.size(), false);
  std::vector<Component> out;

  auto walk = [&](int entry, bool cyclic) {
    std::vector<PatternElement> seq;
    int e = entry;
    while (true) {
      const int path = e / 2;
      const bool from_back = e % 2 == 1;
      visited[path] = true;
      append_fused(seq, w.paths[path], from_back);
      const int exit = from_back ? 2 * path : 2 * path + 1;
      if (!cyclic && w.boundary[exit]) return std::make_pair(seq, exit);
      const int next = w.partner[exit];
      if (next < 0) throw std::logic_error("dangling fold end");
      if (cyclic && next == entry) return std::make_pair(seq, exit);
      e = next;
    }
  };

  for (int start : w.boundary_starts) {
    if (visited[start / 2]) continue;
    auto [seq, exit] = walk(start, false);
    Component c;
    c.kind = ComponentKind::Interval;
    c.sequence = std::move(seq);
    c.endpoints = {*w.boundary[start], *w.boundary[exit]};
    out.push_back(std::move(c));
  }
  for (std::size_t k = 0; k < w.paths.size(); ++k) {
    if (visited[k]) continue;
    auto [seq, exit] = walk(static_cast<int>(2 * k), true);
    if (seq.size() > 1) {
      if (tau_of(seq.back()) != tau_of(seq.front())) {
        throw std::logic_error("elimination closed a circle across different tau");
      }
      seq.pop_back();
    }
    Component c;
    c.kind = ComponentKind::Circle;
    c.sequence = std::move(seq);
    out.push_back(std::move(c));
  }
  return out;
}

// Cuts one component at the cusp in position j; returns the (L, R) ends.
std::pair<int, int> cut_single(Wiring& w, const Component& c, std::size_t j) {
  const auto& seq = c.sequence;
  if (c.kind == ComponentKind::Circle) {
    auto elems = slice(seq, j + 1, seq.size());
    auto head = slice(seq, 0, j);
    elems.insert(elems.end(), head.begin(), head.end());
    const int k = w.add_path(std::move(elems));
    return {2 * k + 1, 2 * k};
  }
  const int left = w.add_path(slice(seq, 0, j));
  const int right = w.add_path(slice(seq, j + 1, seq.size()));
  w.boundary[2 * left] = c.endpoints[0];
  w.boundary[2 * right + 1] = c.endpoints[1];
  w.boundary_starts.push_back(2 * left);
  w.boundary_starts.push_back(2 * right + 1);
  return {2 * left + 1, 2 * right};
}

// Cuts one component at two cusps j < l; returns (L1, R1, L2, R2).
std::array<int, 4> cut_double(Wiring& w, const Component& c, std::size_t j, std::size_t l) {
  const auto& seq = c.sequence;
  if (c.kind == ComponentKind::Circle) {
    const int mid = w.add_path(slice(seq, j + 1, l));
    auto elems = slice(seq, l + 1, seq.size());
    auto head = slice(seq, 0, j);
    elems.insert(elems.end(), head.begin(), head.end());
    const int wrap = w.add_path(std::move(elems));
    return {2 * wrap + 1, 2 * mid, 2 * mid + 1, 2 * wrap};
  }
  const int p0 = w.add_path(slice(seq, 0, j));
  const int p1 = w.add_path(slice(seq, j + 1, l));
  const int p2 = w.add_path(slice(seq, l + 1, seq.size()));
  w.boundary[2 * p0] = c.endpoints[0];
  w.boundary[2 * p2 + 1] = c.endpoints[1];
  w.boundary_starts.push_back(2 * p0);
  w.boundary_starts.push_back(2 * p2 + 1);
  return {2 * p0 + 1, 2 * p1, 2 * p1 + 1, 2 * p2};
}

Component reversed(const Component& c) {
  Component out = c;
  auto& seq = out.sequence;
  if (c.kind == ComponentKind::Interval) {
    std::reverse(seq.begin(), seq.end());
    std::swap(out.endpoints[0], out.endpoints[1]);
  } else if (seq.size() > 1) {
    std::reverse(seq.begin() + 1, seq.end());
  }
  return out;
}

std::size_t reversed_position(const Component& c, std::size_t pos) {
  const std::size_t len = c.sequence.size();
  if (c.kind == ComponentKind::Interval) return len - 1 - pos;
  return pos == 0 ? 0 : len - pos;
}

SingularPattern apply_toggle(const SingularPattern& p, const ToggleParity& m) {
  const int n = p.n;
  if (n % 2 != 0) throw Error(fmt::format("parity toggle needs even n, got {}", n));
  if (component_at(p, m.component).kind != ComponentKind::Interval) {
    throw Error(fmt::format("component {} is not an interval", m.component));
  }
  const FoldArc& arc = arc_at(p, {m.component, m.arc_position});
  if (arc.tau != n / 2) {
    throw Error(fmt::format("parity toggle needs an arc of tau {}, found {}", n / 2, arc.tau));
  }
  IdPool ids(p);
  SingularPattern q = p;
  auto& seq = q.components[m.component].sequence;
  const std::vector<PatternElement> piece{Cusp{ids.next('c'), n / 2 - 1},
                                          FoldArc{ids.next('a'), n / 2}};
  seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(m.arc_position) + 1, piece.begin(),
             piece.end());
  Component circle;
  circle.kind = ComponentKind::Circle;
  circle.sequence = {FoldArc{ids.next('a'), n / 2}, Cusp{ids.next('c'), n / 2 - 1}};
  q.components.push_back(std::move(circle));
  return q;
}

void check_merge_shape(const SingularPattern& p, std::size_t a, std::size_t b) {
  if (p.n % 2 == 0 || p.n <= 2) {
    throw Error(fmt::format("merging components needs odd n > 2, got {}", p.n));
  }
  component_at(p, a);
  component_at(p, b);
  if (a == b) throw Error(fmt::format("component {} cannot be merged with itself", a));
}

SingularPattern apply_merge(const SingularPattern& p, const MergeComponents& m) {
  check_merge_shape(p, m.component_a, m.component_b);
  const int h = (p.n - 1) / 2;
  SingularPattern q = p;
  std::size_t pos_b = m.arc_b;
  arc_at(p, {m.component_b, m.arc_b});
  if (m.flip_b) {
    Component& b = q.components[m.component_b];
    pos_b = reversed_position(b, m.arc_b);
    b = reversed(b);
  }
  q = create_cusp_pair(q, {m.component_a, m.arc_a}, h);
  q = create_cusp_pair(q, {m.component_b, pos_b}, h);
  return eliminate_matching_pair(q, {m.component_a, m.arc_a + 1}, {m.component_b, pos_b + 3},
                                 Reconnection::Split, false);
}

void require_valid(const SingularPattern& p) {
  const auto report = validate_pattern(p);
  if (!report.ok()) throw Error("invalid pattern: " + report.issues.front().message);
}

SingularPattern with_signs(const SingularPattern& p, const SignAssignment& sigma) {
  check_sign_domain(p.boundary_points, sigma);
  SingularPattern q = p;
  for (auto& x : q.boundary_points) x.sigma = sigma.at(x.id);
  return q;
}

void push(MoveTrace& trace, SingularPattern& current, Move m) {
  current = apply_move(current, m);
  trace.moves.push_back(std::move(m));
}

std::optional<std::size_t> find_cusp(const Component& c, int normal_index) {
  for (std::size_t k = 1; k < c.sequence.size(); k += 2) {
    if (std::get<Cusp>(c.sequence[k]).normal_index == normal_index) return k;
  }
  return std::nullopt;
}

}  // namespace

std::string move_kind(const Move& m) {
  return std::visit(overloaded{[](const CreateCuspPair&) { return "create_cusp_pair"; },
                               [](const EliminateMatchingPair&) { return "eliminate_matching_pair"; },
                               [](const ToggleParity&) { return "toggle_parity"; },
                               [](const MergeComponents&) { return "merge_components"; }},
                    m);
}

int cusp_delta(const Move& m) { return std::holds_alternative<EliminateMatchingPair>(m) ? -2 : 2; }

SingularPattern create_cusp_pair(const SingularPattern& p, ElementRef ref, int i) {
  const int n = p.n;
  const FoldArc& arc = arc_at(p, ref);
  if (i < 0 || i > n - 2) throw Error(fmt::format("cusp index {} outside [0, {}]", i, n - 2));
  const int outer = fold_absolute_index(n, i);
  if (arc.tau != outer) {
    throw Error(fmt::format("creating a pair with i = {} needs an arc of tau {}, found {}", i,
                            outer, arc.tau));
  }
  const int inner = std::max(i + 1, n - 2 - i);
  IdPool ids(p);
  SingularPattern q = p;
  Component& c = q.components[ref.component];
  std::vector<PatternElement> piece{Cusp{ids.next('c'), i}, FoldArc{ids.next('a'), inner},
                                    Cusp{ids.next('c'), n - 2 - i}};
  // On a cusp-free circle the trailing arc is the original one again.
  if (!(c.kind == ComponentKind::Circle && c.sequence.size() == 1)) {
    piece.emplace_back(FoldArc{ids.next('a'), outer});
  }
  c.sequence.insert(c.sequence.begin() + static_cast<std::ptrdiff_t>(ref.position) + 1,
                    piece.begin(), piece.end());
  return q;
}

SingularPattern eliminate_matching_pair(const SingularPattern& p, ElementRef c1, ElementRef c2,
                                        std::optional<Reconnection> reconnection,
                                        bool assume_removable) {
  const int n = p.n;
  const Cusp& k1 = cusp_at(p, c1);
  const Cusp& k2 = cusp_at(p, c2);
  if (c1 == c2) throw Error("a cusp cannot be paired with itself");
  if (k1.normal_index + k2.normal_index != n - 2) {
    throw Error(fmt::format("cusps with I = {} and I = {} are not a matching pair (need sum {})",
                            k1.normal_index, k2.normal_index, n - 2));
  }
  if (n == 2 && !assume_removable) {
    throw Error("for n = 2 removability is not decided by the pattern; set assume_removable");
  }
  if (c2 < c1) std::swap(c1, c2);

  Wiring w;
  int L1 = 0;
  int R1 = 0;
  int L2 = 0;
  int R2 = 0;
  if (c1.component == c2.component) {
    const auto ends = cut_double(w, p.components[c1.component], c1.position, c2.position);
    L1 = ends[0];
    R1 = ends[1];
    L2 = ends[2];
    R2 = ends[3];
  } else {
    std::tie(L1, R1) = cut_single(w, p.components[c1.component], c1.position);
    std::tie(L2, R2) = cut_single(w, p.components[c2.component], c2.position);
  }

  const bool split_ok = w.tau_at(L1) == w.tau_at(R2) && w.tau_at(R1) == w.tau_at(L2);
  const bool stay_ok = w.tau_at(L1) == w.tau_at(L2) && w.tau_at(R1) == w.tau_at(R2);
  Reconnection choice = Reconnection::Split;
  if (reconnection) {
    choice = *reconnection;
    if ((choice == Reconnection::Split && !split_ok) || (choice == Reconnection::Stay && !stay_ok)) {
      throw Error(fmt::format("{} reconnection would join fold arcs of different tau",
                              choice == Reconnection::Split ? "split" : "stay"));
    }
  } else if (!split_ok) {
    if (!stay_ok) throw Error("no reconnection joins arcs of equal tau");
    choice = Reconnection::Stay;
  }
  if (choice == Reconnection::Split) {
    w.join(L1, R2);
    w.join(R1, L2);
  } else {
    w.join(L1, L2);
    w.join(R1, R2);
  }

  std::vector<Component> rebuilt = assemble(w);
  SingularPattern q = p;
  if (c1.component != c2.component) {
    q.components.erase(q.components.begin() + static_cast<std::ptrdiff_t>(c2.component));
  }
  const auto at = q.components.begin() + static_cast<std::ptrdiff_t>(c1.component);
  q.components.erase(at);
  q.components.insert(q.components.begin() + static_cast<std::ptrdiff_t>(c1.component),
                      rebuilt.begin(), rebuilt.end());
  return q;
}

SingularPattern apply_move(const SingularPattern& p, const Move& m) {
  return std::visit(
      overloaded{[&](const CreateCuspPair& c) { return create_cusp_pair(p, c.arc, c.i); },
                 [&](const EliminateMatchingPair& e) {
                   return eliminate_matching_pair(p, e.first, e.second, e.reconnection,
                                                  e.assume_removable);
                 },
                 [&](const ToggleParity& t) { return apply_toggle(p, t); },
                 [&](const MergeComponents& mc) { return apply_merge(p, mc); }},
      m);
}

SingularPattern replay(const SingularPattern& initial, const std::vector<Move>& moves) {
  SingularPattern p = initial;
  for (const auto& m : moves) p = apply_move(p, m);
  return p;
}

bool verify_trace(const MoveTrace& trace) { return replay(trace.initial, trace.moves) == trace.final; }

std::pair<std::vector<Move>, std::size_t> plan_index_ladder(const SingularPattern& p,
                                                            std::size_t component, int target_tau) {
  const Component& c = component_at(p, component);
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < c.sequence.size(); k += 2) {
    const int t = tau_of(c.sequence[k]);
    if (t == target_tau) return {{}, k};
    if (!best || t < tau_of(c.sequence[*best])) best = k;
  }
  if (!best) throw Error(fmt::format("component {} has no arcs", component));
  int t = tau_of(c.sequence[*best]);
  if (t < target_tau) {
    throw Error(fmt::format("arcs of component {} sit below tau {}", component, target_tau));
  }
  std::vector<Move> moves;
  std::size_t pos = *best;
  while (t > target_tau) {
    moves.emplace_back(CreateCuspPair{{component, pos}, p.n - 1 - t});
    pos += 2;
    --t;
  }
  return {moves, pos};
}

std::vector<Move> plan_toggle_parity(const SingularPattern& p, std::size_t interval) {
  if (p.n % 2 != 0) throw Error(fmt::format("parity toggle needs even n, got {}", p.n));
  if (component_at(p, interval).kind != ComponentKind::Interval) {
    throw Error(fmt::format("component {} is not an interval", interval));
  }
  auto [moves, pos] = plan_index_ladder(p, interval, p.n / 2);
  moves.emplace_back(ToggleParity{interval, pos});
  return moves;
}

SingularPattern toggle_parity(const SingularPattern& p, std::size_t interval) {
  return replay(p, plan_toggle_parity(p, interval));
}

std::vector<Move> plan_merge_components(const SingularPattern& p, std::size_t comp_a,
                                        std::size_t comp_b, bool flip_b) {
  check_merge_shape(p, comp_a, comp_b);
  const int h = (p.n - 1) / 2;
  auto [moves, pos_a] = plan_index_ladder(p, comp_a, h);
  auto [more, pos_b] = plan_index_ladder(p, comp_b, h);
  moves.insert(moves.end(), more.begin(), more.end());
  moves.emplace_back(MergeComponents{comp_a, pos_a, comp_b, pos_b, flip_b});
  return moves;
}

SingularPattern merge_components(const SingularPattern& p, std::size_t comp_a, std::size_t comp_b,
                                 bool flip_b) {
  return replay(p, plan_merge_components(p, comp_a, comp_b, flip_b));
}

NormalizeResult normalize_even(const SingularPattern& p, const SignAssignment& sigma, long chi_V) {
  const int n = p.n;
  if (n % 2 != 0) throw Error(fmt::format("even normalization needs even n, got {}", n));
  require_valid(p);
  SingularPattern current = with_signs(p, sigma);
  current.chi_ambient = chi_V;
  if (!cusp_parity_check(current)) {
    throw Error(fmt::format("{} cusps contradict the cusp parity rule for chi_V = {} and {} boundary "
                            "points",
                            p.total_cusps(), chi_V, p.boundary_points.size()));
  }
  const long cp = chi_plus_sigma(p.boundary_points, sigma);
  if (((chi_V - cp) % 2) != 0) {
    Obstruction o;
    o.kind = ObstructionKind::ParityMismatch;
    o.lhs = ((chi_V % 2) + 2) % 2;
    o.rhs = ((cp % 2) + 2) % 2;
    return o;
  }

  MoveTrace trace;
  trace.initial = current;

  // Intervals first: each violating one gets its parity flipped.
  const auto ok = check_condition_even(current, sigma);
  for (std::size_t k = 0; k < ok.size(); ++k) {
    if (ok[k] || current.components[k].kind != ComponentKind::Interval) continue;
    for (auto& m : plan_toggle_parity(current, k)) push(trace, current, std::move(m));
  }

  // The remaining offenders are circles with odd cusp counts; fuse them pairwise.
  while (true) {
    std::vector<std::size_t> odd;
    for (std::size_t k = 0; k < current.components.size(); ++k) {
      const auto& c = current.components[k];
      if (c.kind == ComponentKind::Circle && c.cusp_count() % 2 != 0) odd.push_back(k);
    }
    if (odd.empty()) break;
    if (odd.size() < 2) throw std::logic_error("an odd circle is left without a partner");
    const std::size_t a = odd[0];
    const std::size_t b = odd[1];
    const auto pa = find_cusp(current.components[a], n / 2 - 1);
    const auto pb = find_cusp(current.components[b], n / 2 - 1);
    if (!pa || !pb) throw std::logic_error("odd circle without a cusp of index n/2 - 1");
    push(trace, current,
         EliminateMatchingPair{{a, *pa}, {b, *pb}, Reconnection::Split, n == 2});
    if (n == 2) {
      while (current.components[a].cusp_count() > 0) {
        push(trace, current, EliminateMatchingPair{{a, 1}, {a, 3}, Reconnection::Stay, true});
      }
    }
  }
  trace.final = current;
  return trace;
}

NormalizeResult normalize_odd(const SingularPattern& p, const SignAssignment& sigma) {
  if (p.n % 2 == 0) throw Error(fmt::format("odd normalization needs odd n, got {}", p.n));
  require_valid(p);
  SingularPattern current = with_signs(p, sigma);

  std::map<std::string, int> eps;
  long total = 0;
  for (const auto& x : current.boundary_points) {
    eps[x.id] = parity_sign(x.mu) * x.sigma;
    total += eps[x.id];
  }
  if (total != 0) {
    Obstruction o;
    o.kind = ObstructionKind::SignSumNonzero;
    o.lhs = Rational(alternating_sum(current.boundary_points), 2);
    o.rhs = Rational(chi_plus_sigma(current.boundary_points, sigma));
    o.sign_sum = total;
    return o;
  }

  // Intervals that are already balanced keep their endpoints as a pair; the
  // rest are paired greedily in id order.
  std::vector<std::pair<std::string, std::string>> pairs;
  std::set<std::string> kept;
  for (const auto& c : current.components) {
    if (c.kind != ComponentKind::Interval) continue;
    if (eps[c.endpoints[0]] + eps[c.endpoints[1]] == 0) {
      kept.insert(c.endpoints[0]);
      kept.insert(c.endpoints[1]);
    }
  }
  std::vector<std::string> plus;
  std::vector<std::string> minus;
  for (const auto& [id, e] : eps) {
    if (kept.count(id)) continue;
    (e > 0 ? plus : minus).push_back(id);
  }
  for (std::size_t k = 0; k < plus.size(); ++k) pairs.emplace_back(plus[k], minus[k]);

  MoveTrace trace;
  trace.initial = current;
  for (const auto& [x, y] : pairs) {
    std::size_t ax = 0;
    std::size_t ay = 0;
    int sx = 0;
    int sy = 0;
    for (std::size_t k = 0; k < current.components.size(); ++k) {
      const auto& c = current.components[k];
      if (c.kind != ComponentKind::Interval) continue;
      for (int s = 0; s < 2; ++s) {
        if (c.endpoints[s] == x) std::tie(ax, sx) = std::make_pair(k, s);
        if (c.endpoints[s] == y) std::tie(ay, sy) = std::make_pair(k, s);
      }
    }
    if (ax == ay) continue;
    for (auto& m : plan_merge_components(current, ax, ay, sx == sy)) {
      push(trace, current, std::move(m));
    }
  }
  trace.final = current;
  return trace;
}

}  // namespace cuspcobord
