#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cuspcobord {

/// Compactly supported bump height * (1 - u^2)^3 with u = (x - center) / radius.
struct Bump {
  double center = 0.0;
  double radius = 1.0;
  double height = 1.0;

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
  /// Exact suprema of |value| and |derivative|.
  double sup_abs() const;
  double sup_abs_derivative() const;
  /// Points where |value| or |derivative| peak, plus the support ends.
  std::vector<double> knots() const;
};

enum class MapKind { Fold, Cusp, SwallowTail, PerturbedFold };

/// Maps of the shape (t, h(t, z)) with z in R^{n-1}.
struct LocalMap {
  int n = 2;
  MapKind kind = MapKind::Fold;
  int index = 0;   // minus signs of the quadratic part: i for folds, k for cusps
  double t = 1.0;  // swallow-tail parameter
  Bump alpha{0.0, 1.0, 0.0};
  Bump beta{0.0, 1.0, 1.0};

  static LocalMap fold(int n, int i);
  static LocalMap cusp(int n, int k);
  static LocalMap swallow_tail(int n, int i, double t);
  static LocalMap perturbed_fold(int n, int i, Bump alpha, Bump beta);

  /// Index of the coordinate that parametrizes the singular curve.
  int curve_coordinate() const;
};

std::string kind_name(MapKind k);

/// Throws std::invalid_argument on dimension or parameter mismatch.
void check_map(const LocalMap& m);

Eigen::Vector2d eval(const LocalMap& m, const Eigen::VectorXd& p);
/// 2 x n Jacobian, exact.
Eigen::MatrixXd jacobian(const LocalMap& m, const Eigen::VectorXd& p);
/// Gradient and Hessian of h in the z variables.
Eigen::VectorXd fiber_gradient(const LocalMap& m, const Eigen::VectorXd& p);
Eigen::MatrixXd fiber_hessian(const LocalMap& m, const Eigen::VectorXd& p);

struct Axis {
  double lo = -1.0;
  double hi = 1.0;
  int count = 11;

  double at(int k) const;
};

struct GridSpec {
  std::vector<Axis> axes;  // one per coordinate of R^n
};

struct DetectorTolerances {
  double newton = 1e-12;
  double dedup = 1e-6;
  double rank = 1e-5;
  int max_iterations = 100;
};

enum class SampleClass { Fold, CuspCandidate, Unknown };

struct SingularSample {
  Eigen::VectorXd point;
  double residual = 0.0;
  SampleClass classification = SampleClass::Unknown;
  int fold_index = -1;  // negative eigenvalues, folds only
};

std::string class_label(const SingularSample& s);

/// Newton in z at fixed t from every grid seed, plus Newton on
/// (D^z h, det D^z D^z h) in all variables for cusps. Samples with residual
/// below tol survive, sorted canonically and deduplicated.
std::vector<SingularSample> detect_singular_set(const LocalMap& m, const GridSpec& grid, double tol,
                                                const DetectorTolerances& tols = {});

/// Parametrized singular curve of the swallow-tail model.
struct SwallowTailCurve {
  double t;

  /// Throws std::invalid_argument for t = 0.
  explicit SwallowTailCurve(double t);
  /// The point phi_t(x) in R^n.
  Eigen::VectorXd point(double x, int n = 3) const;
  /// Image of phi_t(x) in the plane.
  Eigen::Vector2d image(double x) const;
  /// Curve parameters of the cusps: -sqrt(t), sqrt(t) for t > 0, none otherwise.
  std::vector<double> cusp_parameters() const;
  /// Upper bound on the distance from p to the curve, measured to the curve
  /// point with the same x coordinate.
  double distance(const Eigen::VectorXd& p) const;
};

SwallowTailCurve swallow_tail_singular_curve(double t);

/// sup |alpha(t) beta'(r)| over the grid and the bump knots is below 1 - margin.
/// Throws std::invalid_argument for a bump without positive radius.
bool check_perturbation_condition(const Bump& alpha, const Bump& beta, const Axis& t_grid,
                                  const Axis& r_grid, double margin = 1e-6);
double perturbation_sup(const Bump& alpha, const Bump& beta, const Axis& t_grid, const Axis& r_grid);

struct PerturbedFoldReport {
  std::vector<SingularSample> samples;
  double max_offset = 0.0;       // largest |z| over detected singular points
  double max_image_error = 0.0;  // largest |F_2 - alpha(t) beta(0)|
  bool passed = false;
};

/// Throws std::domain_error if the perturbation condition fails.
PerturbedFoldReport perturbed_fold_image(int i, int n, const Bump& alpha, const Bump& beta,
                                         const GridSpec& grid, double tol);

struct Polyline {
  std::vector<Eigen::Vector2d> points;
  std::vector<Eigen::Vector2d> cusps;
};

/// Deterministic SVG 1.1 text. The viewBox is the padded bounding box of all
/// points, y pointing up.
std::string render_svg(const std::vector<Polyline>& curves);

/// Images of the detected samples ordered along the curve coordinate, with
/// cusp candidates as markers.
Polyline image_polyline(const LocalMap& m, const std::vector<SingularSample>& samples);

/// Header plus one row per sample: t,z1,...,z_{n-1},residual,class.
std::string samples_csv(const std::vector<SingularSample>& samples, int n);

}  // namespace cuspcobord
