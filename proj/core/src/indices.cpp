#include "hetnet/indices.hpp"

#include "hetnet/error.hpp"

#include <cmath>

namespace hetnet {

namespace {

void validate(const KSParams& p) {
  // make_ks_model performs the positivity checks.
  (void)make_ks_model(p);
}

double product(std::span<const double> values) {
  double out = 1.0;
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::NonPositiveInput, "rho inputs must be strictly positive");
    }
    out *= v;
  }
  return out;
}

}  // namespace

double rho(std::span<const double> contracting, std::span<const double> expanding) {
  if (contracting.empty() || expanding.empty()) {
    throw Error(ErrorCode::NonPositiveInput, "rho needs nonempty inputs");
  }
  return product(contracting) / product(expanding);
}

StabilityIndices gh_indices(const GHParams& p, double resonance_tol) {
  (void)make_gh_model(p);
  const double c[] = {p.c13, p.c21, p.c32};
  const double e[] = {p.e12, p.e23, p.e31};
  StabilityIndices out;
  out.rho_values["rho_123"] = rho(c, e);
  out.resonance_flags["rho_123"] = std::abs(out.rho_values["rho_123"] - 1.0) <= resonance_tol;
  return out;
}

double rho_123(const KSParams& p) {
  const double c[] = {p.c13, p.c21, p.c32};
  const double e[] = {p.e12, p.e23, p.e31};
  return rho(c, e);
}

double rho_124(const KSParams& p) {
  const double c[] = {p.c14, p.c21, p.c42};
  const double e[] = {p.e12, p.e24, p.e41};
  return rho(c, e);
}

StabilityIndices nu_quantities(const KSParams& p, double resonance_tol) {
  validate(p);
  StabilityIndices out;
  out.rho_values["rho_123"] = rho_123(p);
  out.rho_values["rho_124"] = rho_124(p);
  for (const auto& [id, value] : out.rho_values) {
    out.resonance_flags[id] = std::abs(value - 1.0) <= resonance_tol;
  }

  auto& nu = out.nu_values;
  // Cycle 1-2-3, transverse direction x4.
  nu["nu_1234"] = p.c14 / p.e12 - p.c13 * p.e24 / (p.e12 * p.e23) +
                  p.c21 * p.c13 * p.t34 / (p.e12 * p.e31 * p.e23);
  nu["nu_2314"] = -p.e24 / p.e23 + p.c21 * p.t34 / (p.e23 * p.e31) +
                  p.c14 * p.c32 * p.c21 / (p.e12 * p.e23 * p.e31);
  nu["nu_3124"] = p.t34 / p.e31 + p.c32 * p.c14 / (p.e12 * p.e31) -
                  p.c32 * p.c13 * p.e24 / (p.e23 * p.e12 * p.e31);
  // Cycle 1-2-4: the same expressions with 3 and 4 exchanged.
  nu["nu_1243"] = p.c13 / p.e12 - p.c14 * p.e23 / (p.e12 * p.e24) +
                  p.c21 * p.c14 * p.t43 / (p.e12 * p.e41 * p.e24);
  nu["nu_2413"] = -p.e23 / p.e24 + p.c21 * p.t43 / (p.e24 * p.e41) +
                  p.c13 * p.c42 * p.c21 / (p.e12 * p.e24 * p.e41);
  nu["nu_4123"] = p.t43 / p.e41 + p.c42 * p.c13 / (p.e12 * p.e41) -
                  p.c42 * p.c14 * p.e23 / (p.e24 * p.e12 * p.e41);
  return out;
}

std::string to_string(KSRegime r) {
  switch (r) {
    case KSRegime::NotAtResonance_NoSwitching: return "NotAtResonance_NoSwitching";
    case KSRegime::NotAtResonance_Switching: return "NotAtResonance_Switching";
    case KSRegime::AtResonance_NoSwitching: return "AtResonance_NoSwitching";
    case KSRegime::AtResonance_Switching: return "AtResonance_Switching";
    case KSRegime::Uncatalogued: return "Uncatalogued";
  }
  return "Unknown";
}

std::string describe(KSRegime r) {
  switch (r) {
    case KSRegime::NotAtResonance_NoSwitching: return "Not at resonance, no switching";
    case KSRegime::NotAtResonance_Switching: return "Not at resonance, with switching";
    case KSRegime::AtResonance_NoSwitching: return "At resonance, no switching";
    case KSRegime::AtResonance_Switching: return "At resonance, switching";
    case KSRegime::Uncatalogued: return "Outside the catalogued regimes";
  }
  return "Unknown";
}

std::string to_string(SwitchDirection d) {
  switch (d) {
    case SwitchDirection::None: return "none";
    case SwitchDirection::ThreeToFour: return "3->4";
    case SwitchDirection::FourToThree: return "4->3";
    case SwitchDirection::Both: return "both";
  }
  return "unknown";
}

KSRegimeReport predict_ks_regime(const KSParams& p, double resonance_tol) {
  if (!(resonance_tol >= 0.0)) {
    throw Error(ErrorCode::InvalidOptions, "resonance_tol must be nonnegative");
  }
  const auto idx = nu_quantities(p);
  KSRegimeReport out;
  out.rho_123 = idx.rho_values.at("rho_123");
  out.rho_124 = idx.rho_values.at("rho_124");
  out.resonant_123 = std::abs(out.rho_123 - 1.0) <= resonance_tol;
  out.resonant_124 = std::abs(out.rho_124 - 1.0) <= resonance_tol;
  out.nu = idx.nu_values;

  bool any4_negative = false, all4_positive = true;
  for (const char* k : {"nu_1234", "nu_2314", "nu_3124"}) {
    any4_negative |= out.nu[k] < 0.0;
    all4_positive &= out.nu[k] > 0.0;
  }
  bool any3_negative = false, all3_positive = true;
  for (const char* k : {"nu_1243", "nu_2413", "nu_4123"}) {
    any3_negative |= out.nu[k] < 0.0;
    all3_positive &= out.nu[k] > 0.0;
  }

  bool catalogued = true;
  if (all3_positive && all4_positive) {
    out.switching = SwitchDirection::None;
  } else if (any4_negative && all3_positive) {
    out.switching = SwitchDirection::ThreeToFour;
  } else if (any3_negative && all4_positive) {
    out.switching = SwitchDirection::FourToThree;
  } else {
    out.switching = any3_negative && any4_negative ? SwitchDirection::Both : SwitchDirection::None;
    catalogued = false;
  }
  // The catalogued regimes need both subcycles attracting within their own
  // invariant subspaces (rho >= 1 up to the resonance tolerance).
  const bool attracting = (out.rho_123 > 1.0 || out.resonant_123) &&
                          (out.rho_124 > 1.0 || out.resonant_124);
  if (!catalogued || !attracting) {
    out.regime = KSRegime::Uncatalogued;
    return out;
  }
  const bool resonant = out.resonant_123 || out.resonant_124;
  const bool switching = out.switching != SwitchDirection::None;
  if (resonant) {
    out.regime = switching ? KSRegime::AtResonance_Switching : KSRegime::AtResonance_NoSwitching;
  } else {
    out.regime = switching ? KSRegime::NotAtResonance_Switching
                           : KSRegime::NotAtResonance_NoSwitching;
  }
  return out;
}

std::string describe(GHRegime r) {
  switch (r) {
    case GHRegime::AsymptoticallyStable: return "asymptotically stable (restricted orthant)";
    case GHRegime::Resonant: return "at resonance (Lyapunov stable, periodic orbits nearby)";
    case GHRegime::Unstable: return "not attracting";
  }
  return "unknown";
}

GHRegime predict_gh_regime(const GHParams& p, double resonance_tol) {
  const double r = gh_indices(p).rho_values.at("rho_123");
  if (std::abs(r - 1.0) <= resonance_tol) return GHRegime::Resonant;
  return r > 1.0 ? GHRegime::AsymptoticallyStable : GHRegime::Unstable;
}

}  // namespace hetnet
