#include "cuspcobord/normal_forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace cuspcobord {

namespace {

// Sign of the j-th square in a quadratic form with `minus` leading minus signs.
double qsign(int j, int minus) { return j < minus ? -1.0 : 1.0; }

double quadratic(const Eigen::VectorXd& p, int from, int minus) {
  double q = 0.0;
  for (int j = from; j < p.size(); ++j) q += qsign(j - from, minus) * p[j] * p[j];
  return q;
}

double squared_norm_tail(const Eigen::VectorXd& p) { return p.tail(p.size() - 1).squaredNorm(); }

void check_point(const LocalMap& m, const Eigen::VectorXd& p) {
  if (p.size() != m.n) {
    throw std::invalid_argument(fmt::format("point has {} coordinates, map needs {}", p.size(), m.n));
  }
}

int class_rank(SampleClass c) {
  switch (c) {
    case SampleClass::CuspCandidate: return 0;
    case SampleClass::Fold: return 1;
    default: return 2;
  }
}

bool lexicographic_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

void classify(const LocalMap& m, SingularSample& s, const DetectorTolerances& tols) {
  const int dim = m.n - 1;
  if (dim == 0) {
    s.classification = SampleClass::Unknown;
    return;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(fiber_hessian(m, s.point),
                                                        Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  int near_zero = 0;
  int negative = 0;
  for (int k = 0; k < dim; ++k) {
    if (std::abs(ev[k]) < tols.rank * scale) {
      ++near_zero;
    } else if (ev[k] < 0) {
      ++negative;
    }
  }
  s.fold_index = -1;
  if (near_zero == 0) {
    s.classification = SampleClass::Fold;
    s.fold_index = negative;
  } else if (near_zero == 1) {
    s.classification = SampleClass::CuspCandidate;
  } else {
    s.classification = SampleClass::Unknown;
  }
}

std::optional<Eigen::VectorXd> newton_fiber(const LocalMap& m, Eigen::VectorXd p,
                                            const DetectorTolerances& tols) {
  const int dim = m.n - 1;
  for (int it = 0; it < tols.max_iterations; ++it) {
    const Eigen::VectorXd g = fiber_gradient(m, p);
    if (g.norm() < tols.newton) return p;
    const auto lu = fiber_hessian(m, p).fullPivLu();
    if (!lu.isInvertible()) return std::nullopt;
    p.tail(dim) -= lu.solve(g);
    if (!p.allFinite()) return std::nullopt;
  }
  return p;
}

Eigen::VectorXd cusp_system(const LocalMap& m, const Eigen::VectorXd& p) {
  const int dim = m.n - 1;
  Eigen::VectorXd f(m.n);
  f.head(dim) = fiber_gradient(m, p);
  f[dim] = fiber_hessian(m, p).determinant();
  return f;
}

std::optional<Eigen::VectorXd> newton_cusp(const LocalMap& m, Eigen::VectorXd p,
                                           const DetectorTolerances& tols) {
  const int n = m.n;
  for (int it = 0; it < tols.max_iterations; ++it) {
    const Eigen::VectorXd f = cusp_system(m, p);
    if (f.norm() < tols.newton) return p;
    Eigen::MatrixXd jac(n, n);
    for (int j = 0; j < n; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(p[j]));
      Eigen::VectorXd plus = p;
      Eigen::VectorXd minus = p;
      plus[j] += h;
      minus[j] -= h;
      jac.col(j) = (cusp_system(m, plus) - cusp_system(m, minus)) / (2 * h);
    }
    const auto lu = jac.fullPivLu();
    if (!lu.isInvertible()) return std::nullopt;
    p -= lu.solve(f);
    if (!p.allFinite() || p.norm() > 1e6) return std::nullopt;
  }
  return p;
}

std::vector<Eigen::VectorXd> grid_seeds(const GridSpec& grid, int n) {
  if (static_cast<int>(grid.axes.size()) != n) {
    throw std::invalid_argument(fmt::format("grid has {} axes, map needs {}", grid.axes.size(), n));
  }
  for (const auto& a : grid.axes) {
    if (a.count < 1) throw std::invalid_argument("grid axis needs at least one point");
  }
  std::vector<Eigen::VectorXd> seeds;
  std::vector<int> idx(n, 0);
  while (true) {
    Eigen::VectorXd p(n);
    for (int j = 0; j < n; ++j) p[j] = grid.axes[j].at(idx[j]);
    seeds.push_back(p);
    int j = n - 1;
    while (j >= 0 && ++idx[j] == grid.axes[j].count) idx[j--] = 0;
    if (j < 0) break;
  }
  return seeds;
}

std::string number(double v, const char* spec) {
  std::string s = fmt::format(fmt::runtime(spec), v);
  if (s.front() == '-' && s.find_first_of("123456789") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace

double Bump::value(double x) const {
  const double u = (x - center) / radius;
  if (std::abs(u) >= 1.0) return 0.0;
  const double w = 1.0 - u * u;
  return height * w * w * w;
}

double Bump::derivative(double x) const {
  const double u = (x - center) / radius;
  if (std::abs(u) >= 1.0) return 0.0;
  const double w = 1.0 - u * u;
  return height * (-6.0 * u * w * w) / radius;
}

double Bump::second_derivative(double x) const {
  const double u = (x - center) / radius;
  if (std::abs(u) >= 1.0) return 0.0;
  const double w = 1.0 - u * u;
  return height * w * (30.0 * u * u - 6.0) / (radius * radius);
}

double Bump::sup_abs() const { return std::abs(height); }

double Bump::sup_abs_derivative() const {
  // Peak of 6u(1-u^2)^2 sits at u = 1/sqrt(5).
  return std::abs(height) * 96.0 / (25.0 * std::sqrt(5.0)) / radius;
}

std::vector<double> Bump::knots() const {
  const double d = radius / std::sqrt(5.0);
  return {center - radius, center - d, center, center + d, center + radius};
}

LocalMap LocalMap::fold(int n, int i) {
  LocalMap m;
  m.n = n;
  m.kind = MapKind::Fold;
  m.index = i;
  return m;
}

LocalMap LocalMap::cusp(int n, int k) {
  LocalMap m;
  m.n = n;
  m.kind = MapKind::Cusp;
  m.index = k;
  return m;
}

LocalMap LocalMap::swallow_tail(int n, int i, double t) {
  LocalMap m;
  m.n = n;
  m.kind = MapKind::SwallowTail;
  m.index = i;
  m.t = t;
  return m;
}

LocalMap LocalMap::perturbed_fold(int n, int i, Bump alpha, Bump beta) {
  LocalMap m;
  m.n = n;
  m.kind = MapKind::PerturbedFold;
  m.index = i;
  m.alpha = alpha;
  m.beta = beta;
  return m;
}

int LocalMap::curve_coordinate() const {
  return (kind == MapKind::Cusp || kind == MapKind::SwallowTail) ? 1 : 0;
}

std::string kind_name(MapKind k) {
  switch (k) {
    case MapKind::Fold: return "fold";
    case MapKind::Cusp: return "cusp";
    case MapKind::SwallowTail: return "swallowtail";
    case MapKind::PerturbedFold: return "perturbed-fold";
  }
  return "unknown";
}

void check_map(const LocalMap& m) {
  if (m.n < 2) throw std::invalid_argument(fmt::format("n = {} but n >= 2 is required", m.n));
  const int hi = (m.kind == MapKind::Fold || m.kind == MapKind::PerturbedFold) ? m.n - 1 : m.n - 2;
  if (m.index < 0 || m.index > hi) {
    throw std::invalid_argument(
        fmt::format("{} index {} outside [0, {}]", kind_name(m.kind), m.index, hi));
  }
  if (m.kind == MapKind::SwallowTail && m.t == 0.0) {
    throw std::invalid_argument("swallow tail at t = 0 is not generic");
  }
  if (m.kind == MapKind::PerturbedFold && (m.alpha.radius <= 0 || m.beta.radius <= 0)) {
    throw std::invalid_argument("bump radius must be positive");
  }
}

Eigen::Vector2d eval(const LocalMap& m, const Eigen::VectorXd& p) {
  check_point(m, p);
  double h = 0.0;
  switch (m.kind) {
    case MapKind::Fold: h = quadratic(p, 1, m.index); break;
    case MapKind::Cusp: h = p[0] * p[1] + p[1] * p[1] * p[1] + quadratic(p, 2, m.index); break;
    case MapKind::SwallowTail: {
      const double x = p[1];
      h = x * x * x * x / 12.0 - m.t * x * x / 2.0 + p[0] * x + quadratic(p, 2, m.index);
      break;
    }
    case MapKind::PerturbedFold:
      h = quadratic(p, 1, m.index) + m.alpha.value(p[0]) * m.beta.value(squared_norm_tail(p));
      break;
  }
  return {p[0], h};
}

Eigen::VectorXd fiber_gradient(const LocalMap& m, const Eigen::VectorXd& p) {
  check_point(m, p);
  const int dim = m.n - 1;
  Eigen::VectorXd g(dim);
  switch (m.kind) {
    case MapKind::Fold:
      for (int j = 0; j < dim; ++j) g[j] = 2.0 * qsign(j, m.index) * p[j + 1];
      break;
    case MapKind::Cusp:
      g[0] = p[0] + 3.0 * p[1] * p[1];
      for (int j = 1; j < dim; ++j) g[j] = 2.0 * qsign(j - 1, m.index) * p[j + 1];
      break;
    case MapKind::SwallowTail:
      g[0] = p[1] * p[1] * p[1] / 3.0 - m.t * p[1] + p[0];
      for (int j = 1; j < dim; ++j) g[j] = 2.0 * qsign(j - 1, m.index) * p[j + 1];
      break;
    case MapKind::PerturbedFold: {
      const double c = m.alpha.value(p[0]) * m.beta.derivative(squared_norm_tail(p));
      for (int j = 0; j < dim; ++j) g[j] = 2.0 * (qsign(j, m.index) + c) * p[j + 1];
      break;
    }
  }
  return g;
}

Eigen::MatrixXd fiber_hessian(const LocalMap& m, const Eigen::VectorXd& p) {
  check_point(m, p);
  const int dim = m.n - 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  switch (m.kind) {
    case MapKind::Fold:
      for (int j = 0; j < dim; ++j) h(j, j) = 2.0 * qsign(j, m.index);
      break;
    case MapKind::Cusp:
      h(0, 0) = 6.0 * p[1];
      for (int j = 1; j < dim; ++j) h(j, j) = 2.0 * qsign(j - 1, m.index);
      break;
    case MapKind::SwallowTail:
      h(0, 0) = p[1] * p[1] - m.t;
      for (int j = 1; j < dim; ++j) h(j, j) = 2.0 * qsign(j - 1, m.index);
      break;
    case MapKind::PerturbedFold: {
      const double r = squared_norm_tail(p);
      const double a = m.alpha.value(p[0]);
      const Eigen::VectorXd z = p.tail(dim);
      h = 4.0 * a * m.beta.second_derivative(r) * z * z.transpose();
      for (int j = 0; j < dim; ++j) h(j, j) += 2.0 * (qsign(j, m.index) + a * m.beta.derivative(r));
      break;
    }
  }
  return h;
}

Eigen::MatrixXd jacobian(const LocalMap& m, const Eigen::VectorXd& p) {
  check_point(m, p);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2, m.n);
  jac(0, 0) = 1.0;
  double dt = 0.0;
  switch (m.kind) {
    case MapKind::Fold: break;
    case MapKind::Cusp:
    case MapKind::SwallowTail: dt = p[1]; break;
    case MapKind::PerturbedFold:
      dt = m.alpha.derivative(p[0]) * m.beta.value(squared_norm_tail(p));
      break;
  }
  jac(1, 0) = dt;
  jac.block(1, 1, 1, m.n - 1) = fiber_gradient(m, p).transpose();
  return jac;
}

double Axis::at(int k) const {
  if (count <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
}

std::string class_label(const SingularSample& s) {
  switch (s.classification) {
    case SampleClass::Fold: return fmt::format("fold({})", s.fold_index);
    case SampleClass::CuspCandidate: return "cusp";
    default: return "unknown";
  }
}

std::vector<SingularSample> detect_singular_set(const LocalMap& m, const GridSpec& grid, double tol,
                                                const DetectorTolerances& tols) {
  check_map(m);
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const auto seeds = grid_seeds(grid, m.n);

  auto accept = [&](const Eigen::VectorXd& p) -> std::optional<SingularSample> {
    SingularSample s;
    s.point = p;
    s.residual = fiber_gradient(m, p).norm();
    if (!(s.residual < tol)) return std::nullopt;
    classify(m, s, tols);
    return s;
  };

  std::vector<SingularSample> raw;
  for (const auto& seed : seeds) {
    if (auto p = newton_fiber(m, seed, tols)) {
      if (auto s = accept(*p)) {
        // Fold samples that look degenerate are pulled onto the nearby cusp.
        if (s->classification == SampleClass::CuspCandidate) {
          if (auto q = newton_cusp(m, *p, tols)) {
            if (auto c = accept(*q); c && c->classification == SampleClass::CuspCandidate) s = c;
          }
        }
        raw.push_back(*s);
      }
    }
    if (auto p = newton_cusp(m, seed, tols)) {
      if (auto s = accept(*p); s && s->classification == SampleClass::CuspCandidate) {
        raw.push_back(*s);
      }
    }
  }

  std::sort(raw.begin(), raw.end(), [](const SingularSample& a, const SingularSample& b) {
    const int ra = class_rank(a.classification);
    const int rb = class_rank(b.classification);
    if (ra != rb) return ra < rb;
    return lexicographic_less(a.point, b.point);
  });
  std::vector<SingularSample> kept;
  for (auto& s : raw) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const SingularSample& k) {
      return (k.point - s.point).norm() < tols.dedup;
    });
    if (!dup) kept.push_back(std::move(s));
  }
  std::sort(kept.begin(), kept.end(), [](const SingularSample& a, const SingularSample& b) {
    return lexicographic_less(a.point, b.point);
  });
  return kept;
}

SwallowTailCurve::SwallowTailCurve(double t_) : t(t_) {
  if (t == 0.0) throw std::invalid_argument("swallow tail at t = 0 is not generic");
}

Eigen::VectorXd SwallowTailCurve::point(double x, int n) const {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  p[0] = -x * x * x / 3.0 + t * x;
  p[1] = x;
  return p;
}

Eigen::Vector2d SwallowTailCurve::image(double x) const {
  return {-x * x * x / 3.0 + t * x, -x * x * x * x / 4.0 + t * x * x / 2.0};
}

std::vector<double> SwallowTailCurve::cusp_parameters() const {
  if (t < 0) return {};
  return {-std::sqrt(t), std::sqrt(t)};
}

double SwallowTailCurve::distance(const Eigen::VectorXd& p) const {
  return (p - point(p[1], static_cast<int>(p.size()))).norm();
}

SwallowTailCurve swallow_tail_singular_curve(double t) { return SwallowTailCurve(t); }

double perturbation_sup(const Bump& alpha, const Bump& beta, const Axis& t_grid,
                        const Axis& r_grid) {
  if (alpha.radius <= 0 || beta.radius <= 0) {
    throw std::invalid_argument("bump radius must be positive");
  }
  std::vector<double> ts = alpha.knots();
  for (int k = 0; k < t_grid.count; ++k) ts.push_back(t_grid.at(k));
  std::vector<double> rs = beta.knots();
  for (int k = 0; k < r_grid.count; ++k) rs.push_back(r_grid.at(k));
  double a = 0.0;
  for (double t : ts) a = std::max(a, std::abs(alpha.value(t)));
  double b = 0.0;
  for (double r : rs) b = std::max(b, std::abs(beta.derivative(r)));
  return a * b;
}

bool check_perturbation_condition(const Bump& alpha, const Bump& beta, const Axis& t_grid,
                                  const Axis& r_grid, double margin) {
  return perturbation_sup(alpha, beta, t_grid, r_grid) < 1.0 - margin;
}

PerturbedFoldReport perturbed_fold_image(int i, int n, const Bump& alpha, const Bump& beta,
                                         const GridSpec& grid, double tol) {
  const LocalMap m = LocalMap::perturbed_fold(n, i, alpha, beta);
  check_map(m);
  if (grid.axes.empty()) throw std::invalid_argument("grid has no axes");
  const Axis r_grid{beta.center - beta.radius, beta.center + beta.radius, 201};
  if (!check_perturbation_condition(alpha, beta, grid.axes[0], r_grid)) {
    throw std::domain_error(fmt::format("perturbation condition fails: sup |alpha beta'| = {}",
                                        perturbation_sup(alpha, beta, grid.axes[0], r_grid)));
  }
  PerturbedFoldReport report;
  report.samples = detect_singular_set(m, grid, tol);
  bool folds_only = true;
  for (const auto& s : report.samples) {
    report.max_offset = std::max(report.max_offset, s.point.tail(n - 1).norm());
    const double expected = alpha.value(s.point[0]) * beta.value(0.0);
    report.max_image_error = std::max(report.max_image_error, std::abs(eval(m, s.point)[1] - expected));
    folds_only = folds_only && s.classification == SampleClass::Fold;
  }
  report.passed = !report.samples.empty() && folds_only && report.max_offset < tol &&
                  report.max_image_error < tol;
  return report;
}

std::string render_svg(const std::vector<Polyline>& curves) {
  double min_x = 0;
  double max_x = 0;
  double min_y = 0;
  double max_y = 0;
  bool any = false;
  auto grow = [&](const Eigen::Vector2d& q) {
    if (!any) {
      min_x = max_x = q.x();
      min_y = max_y = q.y();
      any = true;
    }
    min_x = std::min(min_x, q.x());
    max_x = std::max(max_x, q.x());
    min_y = std::min(min_y, q.y());
    max_y = std::max(max_y, q.y());
  };
  for (const auto& c : curves) {
    for (const auto& q : c.points) grow(q);
    for (const auto& q : c.cusps) grow(q);
  }
  double vx = -1;
  double vy = -1;
  double vw = 2;
  double vh = 2;
  if (any) {
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-3});
    const double pad = 0.05 * span;
    vx = min_x - pad;
    vy = -max_y - pad;
    vw = (max_x - min_x) + 2 * pad;
    vh = (max_y - min_y) + 2 * pad;
  }
  const double size = std::max(vw, vh);
  auto num = [](double v) { return number(v, "{:.4f}"); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" "
      "viewBox=\"{} {} {} {}\">\n",
      num(vx), num(vy), num(vw), num(vh));
  out += fmt::format(
      "<style>.fold{{fill:none;stroke:#1f4e79;stroke-width:{}}}.cusp{{fill:#c0392b}}</style>\n",
      num(0.005 * size));
  for (const auto& c : curves) {
    if (!c.points.empty()) {
      out += "<polyline class=\"fold\" points=\"";
      for (std::size_t k = 0; k < c.points.size(); ++k) {
        if (k) out += ' ';
        out += num(c.points[k].x()) + "," + num(-c.points[k].y());
      }
      out += "\"/>\n";
    }
    for (const auto& q : c.cusps) {
      out += fmt::format("<circle class=\"cusp\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n", num(q.x()),
                         num(-q.y()), num(0.015 * size));
    }
  }
  out += "</svg>\n";
  return out;
}

Polyline image_polyline(const LocalMap& m, const std::vector<SingularSample>& samples) {
  std::vector<const SingularSample*> order;
  for (const auto& s : samples) order.push_back(&s);
  const int c = m.curve_coordinate();
  std::stable_sort(order.begin(), order.end(), [c](const SingularSample* a, const SingularSample* b) {
    return a->point[c] < b->point[c];
  });
  Polyline line;
  for (const auto* s : order) {
    const Eigen::Vector2d q = eval(m, s->point);
    line.points.push_back(q);
    if (s->classification == SampleClass::CuspCandidate) line.cusps.push_back(q);
  }
  return line;
}

std::string samples_csv(const std::vector<SingularSample>& samples, int n) {
  std::string out = "t";
  for (int j = 1; j < n; ++j) out += fmt::format(",z{}", j);
  out += ",residual,class\n";
  for (const auto& s : samples) {
    for (int j = 0; j < n; ++j) {
      if (j) out += ',';
      out += number(s.point[j], "{:.10f}");
    }
    out += fmt::format(",{:.3e},{}\n", s.residual, class_label(s));
  }
  return out;
}

}  // namespace cuspcobord
