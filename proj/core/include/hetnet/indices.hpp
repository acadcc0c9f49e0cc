#pragma once

#include "hetnet/models.hpp"

#include <map>
#include <span>
#include <string>

namespace hetnet {

/// Tolerance for the analytic resonance flags in StabilityIndices.
inline constexpr double kAnalyticResonanceTol = 1e-9;
/// Tolerance used to decide "at resonance" when predicting a regime. The
/// published parameters are rounded to three digits, so rho can be off
/// unity by a few 1e-4 for a case meant to be resonant.
inline constexpr double kRegimeResonanceTol = 1e-3;

/// Product of contracting magnitudes over the product of expanding rates.
double rho(std::span<const double> contracting, std::span<const double> expanding);

struct StabilityIndices {
  std::map<std::string, double> rho_values;
  std::map<std::string, double> nu_values;
  std::map<std::string, bool> resonance_flags;
};

StabilityIndices gh_indices(const GHParams& p, double resonance_tol = kAnalyticResonanceTol);

double rho_123(const KSParams& p);
double rho_124(const KSParams& p);

/// rho_123, rho_124 and the six transverse quantities nu_1234, nu_2314,
/// nu_3124 (cycle 1-2-3, perturbations along x4) and nu_1243, nu_2413,
/// nu_4123 (cycle 1-2-4, perturbations along x3).
StabilityIndices nu_quantities(const KSParams& p, double resonance_tol = kAnalyticResonanceTol);

enum class KSRegime {
  NotAtResonance_NoSwitching,
  NotAtResonance_Switching,
  AtResonance_NoSwitching,
  AtResonance_Switching,
  Uncatalogued,
};

enum class SwitchDirection { None, ThreeToFour, FourToThree, Both };

std::string to_string(KSRegime r);
std::string describe(KSRegime r);
std::string to_string(SwitchDirection d);

struct KSRegimeReport {
  double rho_123 = 0.0;
  double rho_124 = 0.0;
  bool resonant_123 = false;
  bool resonant_124 = false;
  std::map<std::string, double> nu;
  SwitchDirection switching = SwitchDirection::None;
  KSRegime regime = KSRegime::Uncatalogued;
};

KSRegimeReport predict_ks_regime(const KSParams& p, double resonance_tol = kRegimeResonanceTol);

enum class GHRegime { AsymptoticallyStable, Resonant, Unstable };

std::string describe(GHRegime r);

GHRegime predict_gh_regime(const GHParams& p, double resonance_tol = kRegimeResonanceTol);

}  // namespace hetnet
