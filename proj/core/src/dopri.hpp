#pragma once

// Dormand-Prince 5(4) with FSAL, PI step-size control and the standard
// fourth-order continuous extension.

#include "hetnet/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hetnet::detail {

struct DenseOutput {
  double t0 = 0.0;
  double h = 0.0;
  Vector r1, r2, r3, r4, r5;

  void eval(double t, Vector& out) const {
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    out = r1 + s * (r2 + s1 * (r3 + s * (r4 + s1 * r5)));
  }
};

struct StepperConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 1.0;
  long max_steps = 10'000'000;
};

enum class StepStatus { Accepted, Underflow, StepLimit };

/// `Rhs` is callable as f(t, y, dydt). `Admissible` decides whether a
/// candidate step end may be accepted (used for orthant positivity).
template <class Rhs>
class DormandPrince45 {
 public:
  DormandPrince45(Rhs rhs, const StepperConfig& cfg) : f_(std::move(rhs)), cfg_(cfg) {}

  void reset(double t, const Vector& y) {
    t_ = t;
    y_ = y;
    const auto n = y.size();
    k1_.resize(n);
    f_(t_, y_, k1_);
    h_ = initial_step();
    facold_ = 1e-4;
  }

  /// Re-evaluates the derivative after an external change to the state.
  void set_state(const Vector& y) {
    y_ = y;
    f_(t_, y_, k1_);
  }

  double t() const { return t_; }
  const Vector& y() const { return y_; }
  const DenseOutput& dense() const { return dense_; }
  long accepted() const { return accepted_; }
  long rejected() const { return rejected_; }

  /// Advances one accepted step, never past t_end.
  template <class Admissible>
  StepStatus step(double t_end, Admissible&& admissible) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                     a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                     d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                     d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
    constexpr double beta = 0.04;
    constexpr double expo1 = 0.2 - beta * 0.75;
    constexpr double safe = 0.9;
    constexpr double facc1 = 1.0 / 0.2;  // largest shrink
    constexpr double facc2 = 1.0 / 10.0; // largest growth
    constexpr double eps = std::numeric_limits<double>::epsilon();

    const auto n = y_.size();
    k2_.resize(n); k3_.resize(n); k4_.resize(n); k5_.resize(n); k6_.resize(n); k7_.resize(n);
    ynew_.resize(n); ystage_.resize(n); err_.resize(n);

    bool last_attempt_rejected = false;
    while (true) {
      if (accepted_ + rejected_ >= cfg_.max_steps) return StepStatus::StepLimit;
      double h = std::min(h_, cfg_.max_step);
      bool hits_end = false;
      if (t_ + h >= t_end) {
        h = t_end - t_;
        hits_end = true;
      }
      if (h <= 16.0 * eps * std::max(1.0, std::abs(t_))) return StepStatus::Underflow;

      ystage_ = y_ + h * a21 * k1_;
      f_(t_ + c2 * h, ystage_, k2_);
      ystage_ = y_ + h * (a31 * k1_ + a32 * k2_);
      f_(t_ + c3 * h, ystage_, k3_);
      ystage_ = y_ + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
      f_(t_ + c4 * h, ystage_, k4_);
      ystage_ = y_ + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
      f_(t_ + c5 * h, ystage_, k5_);
      ystage_ = y_ + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
      const double tnew = hits_end ? t_end : t_ + h;
      f_(tnew, ystage_, k6_);
      ynew_ = y_ + h * (a71 * k1_ + a73 * k3_ + a74 * k4_ + a75 * k5_ + a76 * k6_);
      f_(tnew, ynew_, k7_);
      err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);

      double err = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double sk = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y_(i)), std::abs(ynew_(i)));
        const double r = err_(i) / sk;
        err += r * r;
      }
      err = n > 0 ? std::sqrt(err / static_cast<double>(n)) : 0.0;

      if (!std::isfinite(err) || !ynew_.allFinite() || !admissible(ynew_)) {
        ++rejected_;
        h_ = h * 0.2;
        last_attempt_rejected = true;
        continue;
      }

      const double fac11 = std::pow(std::max(err, 1e-300), expo1);
      if (err <= 1.0) {
        double fac = fac11 / std::pow(facold_, beta);
        fac = std::max(facc2, std::min(facc1, fac / safe));
        double hnew = h / fac;
        if (last_attempt_rejected) hnew = std::min(hnew, h);
        facold_ = std::max(err, 1e-4);

        dense_.t0 = t_;
        dense_.h = h;
        dense_.r1 = y_;
        dense_.r2 = ynew_ - y_;
        dense_.r3 = h * k1_ - dense_.r2;
        dense_.r4 = dense_.r2 - h * k7_ - dense_.r3;
        dense_.r5 = h * (d1 * k1_ + d3 * k3_ + d4 * k4_ + d5 * k5_ + d6 * k6_ + d7 * k7_);

        t_ = tnew;
        y_.swap(ynew_);
        k1_.swap(k7_);
        if (!hits_end) h_ = hnew;
        ++accepted_;
        return StepStatus::Accepted;
      }
      ++rejected_;
      h_ = h / std::min(facc1, fac11 / safe);
      last_attempt_rejected = true;
    }
  }

 private:
  double initial_step() {
    // Hairer's starting-step heuristic.
    const auto n = y_.size();
    if (n == 0) return cfg_.max_step;
    Vector sk = (cfg_.abs_tol + cfg_.rel_tol * y_.array().abs()).matrix();
    const double dnf = std::sqrt((k1_.array() / sk.array()).square().mean());
    const double dny = std::sqrt((y_.array() / sk.array()).square().mean());
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
    h = std::min(h, cfg_.max_step);
    Vector y1 = y_ + h * k1_;
    Vector k2(n);
    f_(t_ + h, y1, k2);
    const double der2 = std::sqrt(((k2 - k1_).array() / sk.array()).square().mean()) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3)
                                     : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * h, h1, cfg_.max_step});
  }

  Rhs f_;
  StepperConfig cfg_;
  double t_ = 0.0;
  double h_ = 0.0;
  double facold_ = 1e-4;
  long accepted_ = 0;
  long rejected_ = 0;
  Vector y_, k1_, k2_, k3_, k4_, k5_, k6_, k7_, ynew_, ystage_, err_;
  DenseOutput dense_;
};

}  // namespace hetnet::detail
