#include "hetnet/models.hpp"

#include "hetnet/error.hpp"

#include <cmath>
#include <sstream>

namespace hetnet {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DiagonalNonzero: return "DiagonalNonzero";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::NegativeCoordinate: return "NegativeCoordinate";
    case ErrorCode::AlreadyLV: return "AlreadyLV";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InadmissibleInitialCondition: return "InadmissibleInitialCondition";
    case ErrorCode::InvalidOptions: return "InvalidOptions";
    case ErrorCode::NoConnection: return "NoConnection";
    case ErrorCode::NoEvents: return "NoEvents";
    case ErrorCode::TooFewEpisodes: return "TooFewEpisodes";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::TrajectoryTooShort: return "TrajectoryTooShort";
    case ErrorCode::SamplingFailed: return "SamplingFailed";
    case ErrorCode::AllTrajectoriesFailed: return "AllTrajectoriesFailed";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::string to_string(Representation r) {
  return r == Representation::EquivariantCubic ? "equivariant-cubic" : "lotka-volterra";
}

NetworkModel NetworkModel::make(const Matrix& a, Representation rep, bool orthant_restricted) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient matrix must be square");
  }
  if (a.rows() < 3) {
    throw Error(ErrorCode::DimensionTooSmall, "dimension must be at least 3");
  }
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    if (a(k, k) != 0.0) {
      std::ostringstream msg;
      msg << "diagonal entry a[" << k + 1 << "][" << k + 1 << "] = " << a(k, k) << " must be zero";
      throw Error(ErrorCode::DiagonalNonzero, msg.str());
    }
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::InvalidOptions, "coefficient matrix must be finite");
  }
  // The Lotka-Volterra form is only meaningful on the nonnegative orthant.
  if (rep == Representation::LotkaVolterra) orthant_restricted = true;
  return NetworkModel(a, rep, orthant_restricted);
}

void NetworkModel::growth_rates(const Vector& s, Vector& out) const {
  out.noalias() = a_.transpose() * s;
  out.array() += 1.0 - s.sum();
}

double NetworkModel::chi(const Vector& x) const {
  return rep_ == Representation::EquivariantCubic ? x.squaredNorm() : x.sum();
}

void NetworkModel::evaluate(const Vector& x, Vector& out) const {
  if (rep_ == Representation::EquivariantCubic) {
    growth_rates(x.cwiseAbs2(), out);
  } else {
    growth_rates(x, out);
  }
  out.array() *= x.array();
}

bool NetworkModel::operator==(const NetworkModel& other) const {
  return rep_ == other.rep_ && orthant_ == other.orthant_ && a_.rows() == other.a_.rows() &&
         a_ == other.a_;
}

NetworkModel make_generic_model(int n, const Matrix& a, Representation rep, bool orthant_restricted) {
  if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "dimension must be at least 3");
  if (a.rows() != n || a.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient matrix must be n x n");
  }
  return NetworkModel::make(a, rep, orthant_restricted);
}

namespace {

void require_positive(std::initializer_list<std::pair<const char*, double>> values) {
  for (const auto& [name, v] : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "parameter " << name << " = " << v << " must be strictly positive";
      throw Error(ErrorCode::NonPositiveParameter, msg.str());
    }
  }
}

// a(k, j) multiplies x_k^2 in equation j; indices here are 1-based.
void set(Matrix& a, int k, int j, double v) { a(k - 1, j - 1) = v; }

}  // namespace

NetworkModel make_gh_model(const GHParams& p) {
  require_positive({{"c21", p.c21}, {"c32", p.c32}, {"c13", p.c13},
                    {"e12", p.e12}, {"e23", p.e23}, {"e31", p.e31}});
  Matrix a = Matrix::Zero(3, 3);
  set(a, 2, 1, -p.c21);
  set(a, 3, 1, p.e31);
  set(a, 1, 2, p.e12);
  set(a, 3, 2, -p.c32);
  set(a, 1, 3, -p.c13);
  set(a, 2, 3, p.e23);
  return NetworkModel::make(a, Representation::EquivariantCubic, true);
}

NetworkModel make_ks_model(const KSParams& p) {
  require_positive({{"e12", p.e12}, {"c13", p.c13}, {"c14", p.c14}, {"c21", p.c21},
                    {"e23", p.e23}, {"e24", p.e24}, {"e31", p.e31}, {"c32", p.c32},
                    {"t43", p.t43}, {"e41", p.e41}, {"c42", p.c42}, {"t34", p.t34}});
  Matrix a = Matrix::Zero(4, 4);
  set(a, 2, 1, -p.c21);
  set(a, 3, 1, p.e31);
  set(a, 4, 1, p.e41);
  set(a, 1, 2, p.e12);
  set(a, 3, 2, -p.c32);
  set(a, 4, 2, -p.c42);
  set(a, 1, 3, -p.c13);
  set(a, 2, 3, p.e23);
  set(a, 4, 3, -p.t43);
  set(a, 1, 4, -p.c14);
  set(a, 2, 4, p.e24);
  set(a, 3, 4, -p.t34);
  return NetworkModel::make(a, Representation::EquivariantCubic, true);
}

NetworkModel make_rpssl_model(const RPSSLParams& p) {
  require_positive({{"cA", p.cA}, {"eA", p.eA}, {"cB", p.cB}, {"eB", p.eB}});
  Matrix a = Matrix::Zero(5, 5);
  for (int j = 0; j < 5; ++j) {
    a((j + 1) % 5, j) = -p.cA;
    a((j + 2) % 5, j) = p.eB;
    a((j + 3) % 5, j) = -p.cB;
    a((j + 4) % 5, j) = p.eA;
  }
  return NetworkModel::make(a, Representation::EquivariantCubic, true);
}

Vector vector_field(const NetworkModel& m, const Vector& x) {
  if (x.size() != m.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match model");
  }
  if (!x.allFinite()) throw Error(ErrorCode::InadmissibleInitialCondition, "state is not finite");
  if (m.orthant_restricted() && (x.array() < 0.0).any()) {
    throw Error(ErrorCode::NegativeCoordinate, "orthant-restricted model requires x >= 0");
  }
  Vector out(x.size());
  m.evaluate(x, out);
  return out;
}

NetworkModel to_lotka_volterra(const NetworkModel& m) {
  if (m.representation() == Representation::LotkaVolterra) {
    throw Error(ErrorCode::AlreadyLV, "model is already in Lotka-Volterra form");
  }
  return NetworkModel::make(m.coupling(), Representation::LotkaVolterra, true);
}

Equilibrium axis_equilibrium(int n, int axis, int sign) {
  Equilibrium e;
  e.axis = axis;
  e.sign = sign >= 0 ? 1 : -1;
  e.coordinates = Vector::Zero(n);
  e.coordinates(axis - 1) = e.sign;
  return e;
}

std::vector<Equilibrium> equilibria(const NetworkModel& m) {
  const int n = m.dimension();
  std::vector<Equilibrium> out;
  for (int j = 1; j <= n; ++j) out.push_back(axis_equilibrium(n, j, 1));
  if (!m.orthant_restricted() && m.representation() == Representation::EquivariantCubic) {
    for (int j = 1; j <= n; ++j) out.push_back(axis_equilibrium(n, j, -1));
  }
  return out;
}

std::vector<DirectionalEigenvalue> jacobian_eigenvalues_at(const NetworkModel& m, int j) {
  const int n = m.dimension();
  if (j < 1 || j > n) {
    throw Error(ErrorCode::IndexOutOfRange, "equilibrium index out of range");
  }
  const bool cubic = m.representation() == Representation::EquivariantCubic;
  std::vector<DirectionalEigenvalue> out;
  for (int k = 1; k <= n; ++k) {
    DirectionalEigenvalue ev;
    ev.direction = k;
    if (k == j) {
      ev.radial = true;
      ev.value = cubic ? -2.0 : -1.0;
      ev.lotka_volterra_value = -1.0;
    } else {
      ev.value = m.coupling()(j - 1, k - 1);
      ev.lotka_volterra_value = ev.value;
    }
    out.push_back(ev);
  }
  return out;
}

}  // namespace hetnet
