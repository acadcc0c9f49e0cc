#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace hetnet {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class Representation { EquivariantCubic, LotkaVolterra };

std::string to_string(Representation r);

/// Equilibrium on a coordinate axis. `axis` is 1-based.
struct Equilibrium {
  int axis = 1;
  int sign = 1;
  Vector coordinates;

  /// Signed axis id, e.g. -2 for the equilibrium at x2 = -1.
  int id() const { return sign * axis; }
};

/// Eigenvalue of the Jacobian at an axis equilibrium. `direction` is the
/// 1-based coordinate index; the radial direction equals the axis itself.
struct DirectionalEigenvalue {
  int direction = 1;
  bool radial = false;
  double value = 0.0;
  /// The same eigenvalue for the Lotka-Volterra form in its own time. The
  /// transverse values coincide; the radial one halves (-2 becomes -1).
  double lotka_volterra_value = 0.0;
};

/// Vector field x_j' = x_j (1 - chi + sum_k a(k, j) s_k), where s_k = x_k^2
/// and chi = sum x_k^2 for the cubic form, s_k = y_k and chi = sum y_k for the
/// Lotka-Volterra form. The model is immutable once built.
class NetworkModel {
 public:
  /// Validates and builds a model. Throws Error on a bad matrix.
  static NetworkModel make(const Matrix& a, Representation rep, bool orthant_restricted);

  int dimension() const { return static_cast<int>(a_.rows()); }
  const Matrix& coupling() const { return a_; }
  Representation representation() const { return rep_; }
  bool orthant_restricted() const { return orthant_; }

  /// Per-coordinate growth rates 1 - chi + sum_k a(k, j) s_k given the
  /// "squared" variables s (x^2 for the cubic form, y for Lotka-Volterra).
  void growth_rates(const Vector& s, Vector& out) const;

  /// Evaluates the field without admissibility checks.
  void evaluate(const Vector& x, Vector& out) const;

  /// chi as used by this representation.
  double chi(const Vector& x) const;

  bool operator==(const NetworkModel& other) const;

 private:
  NetworkModel(Matrix a, Representation rep, bool orthant)
      : a_(std::move(a)), rep_(rep), orthant_(orthant) {}

  Matrix a_;
  Representation rep_;
  bool orthant_;
};

struct GHParams {
  double c21 = 1, c32 = 1, c13 = 1;
  double e12 = 1, e23 = 1, e31 = 1;
};

/// Four-dimensional two-cycle network parameters. t34 and t43 are the
/// transverse contracting rates between the x3 and x4 directions.
struct KSParams {
  double e12 = 1, c13 = 1, c14 = 1, c21 = 1;
  double e23 = 1, e24 = 1, e31 = 1, c32 = 1;
  double t43 = 1, e41 = 1, c42 = 1, t34 = 1;
};

struct RPSSLParams {
  double cA = 1, eA = 1, cB = 1, eB = 1;
};

NetworkModel make_generic_model(int n, const Matrix& a, Representation rep, bool orthant_restricted);
NetworkModel make_gh_model(const GHParams& p);
NetworkModel make_ks_model(const KSParams& p);
NetworkModel make_rpssl_model(const RPSSLParams& p);

/// Field evaluation with admissibility checks (finite input, nonnegative
/// coordinates in orthant mode).
Vector vector_field(const NetworkModel& m, const Vector& x);

/// Same coefficient matrix in Lotka-Volterra form. A cubic solution x(t)
/// maps to the Lotka-Volterra solution through y(2t) = x(t)^2.
NetworkModel to_lotka_volterra(const NetworkModel& m);

/// Time-rescaling factor between cubic and Lotka-Volterra time.
inline constexpr double kLotkaVolterraTimeScale = 2.0;

std::vector<Equilibrium> equilibria(const NetworkModel& m);

/// Eigenvalues at the positive equilibrium on axis `j` (1-based), ordered by
/// direction. The eigenvalue in direction k != j is a(j, k), the coefficient
/// of x_j^2 in equation k; the radial one is -2 (cubic) or -1 (Lotka-Volterra).
std::vector<DirectionalEigenvalue> jacobian_eigenvalues_at(const NetworkModel& m, int j);

Equilibrium axis_equilibrium(int n, int axis, int sign = 1);

}  // namespace hetnet
