#include "hetnet/error.hpp"
#include "hetnet/indices.hpp"
#include "hetnet/presets.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>

using namespace hetnet;

TEST_CASE("rho is the contracting product over the expanding product") {
  const double c[] = {2.0, 3.0};
  const double e[] = {1.5, 4.0};
  CHECK(rho(c, e) == 1.0);
  const double bad[] = {1.0, 0.0};
  try {
    rho(bad, e);
    FAIL("expected NonPositiveInput");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NonPositiveInput);
  }
}

TEST_CASE("rho_123 and rho_124 are symmetric under relabelling 3 <-> 4") {
  for (char row : {'a', 'b', 'c', 'd'}) {
    const KSParams p = ks_table_params(row);
    KSParams q = p;
    std::swap(q.c13, q.c14);
    std::swap(q.e23, q.e24);
    std::swap(q.e31, q.e41);
    std::swap(q.c32, q.c42);
    std::swap(q.t34, q.t43);
    CHECK(rho_123(q) == rho_124(p));
    CHECK(rho_124(q) == rho_123(p));
    const auto a = nu_quantities(p).nu_values;
    const auto b = nu_quantities(q).nu_values;
    CHECK(std::abs(a.at("nu_1234") - b.at("nu_1243")) < 1e-14);
    CHECK(std::abs(a.at("nu_2314") - b.at("nu_2413")) < 1e-14);
    CHECK(std::abs(a.at("nu_3124") - b.at("nu_4123")) < 1e-14);
  }
}

TEST_CASE("all-ones Kirk-Silber parameters: nu = 1, rho = 1, resonant") {
  const KSParams p;
  const auto idx = nu_quantities(p);
  for (const auto& [k, v] : idx.nu_values) CHECK(v == 1.0);
  CHECK(idx.rho_values.at("rho_123") == 1.0);
  CHECK(idx.rho_values.at("rho_124") == 1.0);
  for (const auto& [k, flag] : idx.resonance_flags) CHECK(flag);
}

TEST_CASE("GH regime prediction") {
  CHECK(predict_gh_regime(gh_table_params()) == GHRegime::AsymptoticallyStable);
  CHECK(predict_gh_regime(gh_resonant_params()) == GHRegime::Resonant);
  GHParams p = gh_table_params();
  p.c13 = 0.5;
  CHECK(predict_gh_regime(p) == GHRegime::Unstable);
  CHECK(describe(GHRegime::AsymptoticallyStable) == "asymptotically stable (restricted orthant)");
}

TEST_CASE("Kirk-Silber table rows give four distinct regimes") {
  std::set<KSRegime> seen;
  for (char row : {'a', 'b', 'c', 'd'}) seen.insert(predict_ks_regime(ks_table_params(row)).regime);
  CHECK(seen.size() == 4);
  CHECK(predict_ks_regime(ks_table_params('a')).regime == KSRegime::NotAtResonance_NoSwitching);
  CHECK(predict_ks_regime(ks_table_params('b')).regime == KSRegime::NotAtResonance_Switching);
  CHECK(predict_ks_regime(ks_table_params('c')).regime == KSRegime::AtResonance_NoSwitching);
  CHECK(predict_ks_regime(ks_table_params('d')).regime == KSRegime::AtResonance_Switching);
  CHECK(predict_ks_regime(ks_table_params('b')).switching == SwitchDirection::ThreeToFour);
}

TEST_CASE("regimes outside the catalogue") {
  // Both subcycles repelling within their own subspaces.
  KSParams p;
  p.c13 = 0.1;
  p.c14 = 0.1;
  const auto r = predict_ks_regime(p);
  CHECK(r.regime == KSRegime::Uncatalogued);
  try {
    predict_ks_regime(KSParams{}, -1.0);
    FAIL("expected InvalidOptions");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidOptions);
  }
}
