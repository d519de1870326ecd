#include <doctest.h>

#include <cmath>

#include "gpr1d/gpr_core.hpp"
#include "test_common.hpp"

using namespace gpr1d;
using testfix::rel;

TEST_CASE("relaxation-time closures, pointwise forms") {
  // (3/cs^2)(lambda/(rho cv))(T/T0)(rho0/rho) with unit arguments.
  CHECK(gpr_core::tau_kinetic(1, 1, 1, 1, 1, 1, 1) == doctest::Approx(3.0));
  // (lambda/(rho cv)) / (2 cp T).
  CHECK(gpr_core::tau_thermomass(2, 1, 1, 1, 1) == doctest::Approx(1.0));
  // alpha = sqrt(lambda rho0 / (tau T0)).
  CHECK(gpr_core::derive_alpha(4.0, 1.0, 1.0, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("material calibration at the dodecane reference states") {
  const auto liq = testfix::dodecane_liquid();
  const auto vap = testfix::dodecane_vapor();
  CHECK(rel(liq.tau_ref, 1.0295457840166657e-12) < 1e-9);
  CHECK(rel(liq.alpha, 322657.3520587578) < 1e-9);
  CHECK(rel(vap.tau_ref, 3.8835410651768787e-10) < 1e-9);
  CHECK(rel(vap.alpha, 826.9728060768033) < 1e-9);

  // alpha^2 tau T0 / rho0 recovers lambda by construction.
  CHECK(rel(liq.alpha2 * liq.tau_ref * liq.T0 / liq.rho0, liq.lambda) < 1e-13);
  CHECK(rel(vap.alpha2 * vap.tau_ref * vap.T0 / vap.rho0, vap.lambda) < 1e-13);

  // The kinetic calibration puts the thermal speed at cs/sqrt(3).
  CHECK(rel(gpr_core::c_h(liq, liq.rho0, liq.T0), liq.cs0 / std::sqrt(3.0)) < 1e-12);
  CHECK(rel(gpr_core::c_h(vap, vap.rho0, vap.T0), vap.cs0 / std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("fixed-tau material and the energy potential") {
  // gamma = 2, cv = 1 gives R = 1; rho = p = 1 puts T = eps = 1. The fixed
  // tau = 1 with lambda = 4, rho0 = T0 = 1 gives alpha = 2.
  const auto eos = thermo::make_ideal(2.0, 1.0);
  const auto m = gpr_core::make_material(eos, 4.0, 1.0, 1.0,
                                         gpr_core::TauModel::Fixed, 1.0);
  CHECK(m.alpha == doctest::Approx(2.0).epsilon(1e-14));

  const gpr_core::Prim w{1.0, 0.0, 1.0, 1.0};
  const double T = gpr_core::temperature(m, w);
  CHECK(T == doctest::Approx(1.0).epsilon(1e-14));
  // e = eps + u^2/2 + alpha^2 j^2 / 2 = 1 + 0 + 2.
  CHECK(gpr_core::total_energy(m, w, T) == doctest::Approx(3.0).epsilon(1e-14));
  // q = alpha^2 T j.
  CHECK(gpr_core::heat_flux(m, 3.0, 0.5) == doctest::Approx(6.0).epsilon(1e-14));
  // c_h = (alpha/rho) sqrt(T/cv).
  CHECK(gpr_core::c_h(m, 1.0, 4.0) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("signal speed is |u| plus the faster of the two mode speeds") {
  const auto vap = testfix::dodecane_vapor();
  const gpr_core::Prim w{4.3830, 12.0, 0.10e6, 0.0};
  const double T = gpr_core::temperature(vap, w);
  const double cs = thermo::sound_speed(vap.eos, w.rho, w.p);
  const double ch = gpr_core::c_h(vap, w.rho, T);
  CHECK(rel(gpr_core::max_signal_speed(vap, w, T),
            std::abs(w.u) + std::max(cs, ch)) < 1e-14);
}

TEST_CASE("conserved/primitive conversions round-trip") {
  const auto liq = testfix::dodecane_liquid();
  const auto vap = testfix::dodecane_vapor();
  for (const auto& w0 : {gpr_core::Prim{539.94, 0.3, 0.13e6, 1e-7},
                         gpr_core::Prim{539.90, -0.05, 0.12e6, -2e-7}}) {
    const auto c = gpr_core::to_cons(liq, w0);
    const auto w1 = gpr_core::to_prim(liq, c);
    CHECK(rel(w1.rho, w0.rho) < 1e-13);
    CHECK(rel(w1.u, w0.u) < 1e-13);
    CHECK(rel(w1.p, w0.p) < 1e-10);
    CHECK(rel(w1.j, w0.j) < 1e-13);
  }
  const gpr_core::Prim wv{4.3830, 21.0, 0.11e6, 7e-4};
  const auto cv = gpr_core::to_cons(vap, wv);
  CHECK(rel(cv.rho, wv.rho) < 1e-15);
  CHECK(rel(cv.mom, wv.rho * wv.u) < 1e-15);
  CHECK(rel(cv.J, wv.rho * wv.j) < 1e-15);
  const auto wv1 = gpr_core::to_prim(vap, cv);
  CHECK(rel(wv1.p, wv.p) < 1e-10);

  CHECK_THROWS_AS((void)gpr_core::to_prim(vap, {-1.0, 0.0, 1e5, 0.0}),
                  gpr_core::StateError);
}

TEST_CASE("physical flux assembles the four conserved-density fluxes") {
  const auto vap = testfix::dodecane_vapor();
  const gpr_core::Prim w{4.3830, 21.0, 0.11e6, 7e-4};
  const double T = gpr_core::temperature(vap, w);
  const double e = gpr_core::total_energy(vap, w, T);
  const auto f = gpr_core::physical_flux(vap, w, T, e);
  CHECK(rel(f[0], w.rho * w.u) < 1e-14);
  CHECK(rel(f[1], w.rho * w.u * w.u + w.p) < 1e-14);
  CHECK(rel(f[2], (w.rho * e + w.p) * w.u + gpr_core::heat_flux(vap, T, w.j)) <
        1e-14);
  CHECK(rel(f[3], w.rho * w.j * w.u + T) < 1e-14);
}

TEST_CASE("relaxation bookkeeping identities") {
  const auto liq = testfix::dodecane_liquid();
  const double rho = 520.0, T = 490.0;
  CHECK(rel(gpr_core::theta(liq, rho, T), liq.lambda * rho / T) < 1e-13);
  CHECK(rel(gpr_core::tau_H(liq, rho, T),
            rho * liq.lambda / (T * liq.alpha2)) < 1e-13);
  CHECK(rel(gpr_core::theta(liq, rho, T),
            gpr_core::tau_H(liq, rho, T) * liq.alpha2) < 1e-13);

  const double rho_j = rho * 3e-7;
  CHECK(rel(gpr_core::relaxation_source(liq, rho_j, rho, T),
            -rho_j / gpr_core::tau_H(liq, rho, T)) < 1e-13);

  const double j = 2e-7;
  CHECK(rel(gpr_core::entropy_production(liq, j),
            liq.alpha2 * liq.alpha2 * j * j / liq.lambda) < 1e-13);
  CHECK(gpr_core::entropy_production(liq, -j) ==
        gpr_core::entropy_production(liq, j));
}
