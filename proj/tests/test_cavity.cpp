#include <doctest.h>

#include <cmath>
#include <limits>

#include "ringsim/cavity.hpp"
#include "ringsim/constants.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/medium.hpp"

using namespace ringsim;

namespace {

const double mhz = rad_per_mhz;
const double wreq = two_pi * speed_of_light / 780.24e-9;

CavityConfig empty_cavity(double R = 0.969053859165, double excess = 0.0, double ell = 0.1) {
    return CavityConfig::make(1.0, ell, R, excess, wreq);
}

}  // namespace

TEST_CASE("lock frequency snaps to an exact resonance order") {
    const CavityConfig cfg = empty_cavity();
    CHECK(cfg.mode_N > 0);
    CHECK(cfg.omega_lock ==
          doctest::Approx(static_cast<double>(cfg.mode_N) * cfg.fsr()).epsilon(1e-15));
    CHECK(cfg.omega_lock == doctest::Approx(wreq).epsilon(1e-6));
    CHECK(cfg.fsr() == doctest::Approx(two_pi * speed_of_light / cfg.length_L));

    CHECK_THROWS_AS(CavityConfig::make(1.0, 2.0, 0.9, 0.0, wreq), ParameterError);
    CHECK_THROWS_AS(CavityConfig::make(1.0, 0.1, 1.2, 0.0, wreq), ParameterError);
    CHECK_THROWS_AS(CavityConfig::make(-1.0, 0.1, 0.9, 0.0, wreq), ParameterError);
}

TEST_CASE("round-trip phase delta: trivial cases") {
    const CavityConfig cfg = empty_cavity();
    const MediumSpec vac = MediumSpec::vacuum(cfg.omega_lock);
    CHECK(round_trip_phase_delta(cfg, vac, 0.0) == 0.0);

    const double dw = 7.3 * mhz;
    CHECK(round_trip_phase_delta(cfg, vac, dw) ==
          doctest::Approx(dw * cfg.length_L / speed_of_light).epsilon(1e-14));
}

TEST_CASE("round-trip phase delta: linear medium matches the first-order expansion") {
    const CavityConfig cfg = empty_cavity();
    const double ng = 17.0;
    const MediumSpec lin = MediumSpec::linear_toy((ng - 1.0) / cfg.omega_lock, cfg.omega_lock);
    const double dw = two_pi * 1e5;
    const double expected =
        dw * ((cfg.length_L - cfg.length_medium) + ng * cfg.length_medium) / speed_of_light;
    CHECK(round_trip_phase_delta(cfg, lin, dw) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("transmission: unit vacuum peak and the antiresonance floor") {
    const CavityConfig cfg = empty_cavity();
    const MediumSpec vac = MediumSpec::vacuum(cfg.omega_lock);
    CHECK(transmission(cfg, vac, 0.0) == doctest::Approx(1.0).epsilon(1e-14));

    const double a0 = cfg.round_trip_amplitude0();
    const double fc = 4.0 * a0 / ((1.0 - a0) * (1.0 - a0));
    CHECK(transmission(cfg, vac, 0.5 * cfg.fsr()) ==
          doctest::Approx(1.0 / (1.0 + fc)).epsilon(1e-10));
}

TEST_CASE("transmission: periodic in the free spectral range for vacuum") {
    const CavityConfig cfg = empty_cavity();
    const MediumSpec vac = MediumSpec::vacuum(cfg.omega_lock);
    for (double dw : {-3.0 * mhz, 0.7 * mhz, 12.0 * mhz}) {
        const double t1 = transmission(cfg, vac, dw);
        const double t2 = transmission(cfg, vac, dw + cfg.fsr());
        CHECK(t1 == doctest::Approx(t2).epsilon(1e-12));
    }
}

TEST_CASE("transmission: gain can push the normalized peak above one") {
    const CavityConfig cfg = empty_cavity();
    const MediumSpec gain = MediumSpec::raman_single(1e-9, 1.0 * mhz, cfg.omega_lock);
    CHECK(transmission(cfg, gain, 0.0) > 1.0);
}

TEST_CASE("transmission: above threshold is rejected") {
    const CavityConfig cfg = empty_cavity();
    const MediumSpec hot = MediumSpec::raman_single(1e-6, 1.0 * mhz, cfg.omega_lock);
    CHECK_THROWS_AS(transmission(cfg, hot, 0.0), AboveThresholdError);
}

TEST_CASE("empty linewidth: analytic formula against a bisection of the true curve") {
    const CavityConfig cfg = empty_cavity();
    const MediumSpec vac = MediumSpec::vacuum(cfg.omega_lock);
    const double analytic = empty_linewidth_analytic(cfg);
    // independent oracle: direct bisection for T = 1/2 on each flank
    auto half_cross = [&](double lo, double hi) {
        for (int i = 0; i < 120; ++i) {
            const double m = 0.5 * (lo + hi);
            (transmission(cfg, vac, m) > 0.5 ? lo : hi) = m;
        }
        return 0.5 * (lo + hi);
    };
    const double right = half_cross(0.0, 0.4 * cfg.fsr());
    CHECK(analytic == doctest::Approx(2.0 * right).epsilon(1e-9));
    CHECK(rad_to_mhz(analytic) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("spectrum: vacuum width matches the analytic value within 0.5 %") {
    const CavityConfig cfg = empty_cavity();
    const MediumSpec vac = MediumSpec::vacuum(cfg.omega_lock);
    const double expect = empty_linewidth_analytic(cfg);
    const SpectrumResult sr = spectrum(cfg, vac, -3.0 * expect, 3.0 * expect, 2001);
    CHECK(sr.fwhm == doctest::Approx(expect).epsilon(0.005));
    CHECK(std::abs(sr.peak_center) < 1e-3 * expect);
    CHECK(sr.detunings.size() == 2001);
    CHECK(sr.transmission.size() == 2001);
}

TEST_CASE("spectrum: rejects bad windows and sampling") {
    const CavityConfig cfg = empty_cavity();
    const MediumSpec vac = MediumSpec::vacuum(cfg.omega_lock);
    CHECK_THROWS_AS(spectrum(cfg, vac, 1.0, -1.0, 100), ParameterError);
    CHECK_THROWS_AS(spectrum(cfg, vac, -1.0 * mhz, 1.0 * mhz, 8), ParameterError);
    // window much narrower than the resonance: no half-max crossings inside
    CHECK_THROWS_AS(spectrum(cfg, vac, -0.1 * mhz, 0.1 * mhz, 64), WindowError);
    // window centered far off the peak: maximum on the boundary
    CHECK_THROWS_AS(spectrum(cfg, vac, 5.0 * mhz, 8.0 * mhz, 64), WindowError);
}

TEST_CASE("linewidth ratio: degenerate and published operating points") {
    const CavityConfig cfg = empty_cavity();
    CHECK(linewidth_ratio_analytic(cfg, MediumSpec::vacuum(cfg.omega_lock)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // pure dispersion, n_g = 50, medium filling a tenth of the ring
    const MediumSpec lin50 =
        MediumSpec::linear_toy(49.0 / cfg.omega_lock, cfg.omega_lock);
    CHECK(linewidth_ratio_analytic(cfg, lin50) == doctest::Approx(1.0 / 5.9).epsilon(1e-9));
}

TEST_CASE("linewidth ratio: narrowing threshold for negative dispersion") {
    const CavityConfig full = CavityConfig::make(1.0, 1.0, 0.969053859165, 0.0, wreq);
    auto ratio_at = [&](double ng) {
        const MediumSpec lin = MediumSpec::linear_toy((ng - 1.0) / full.omega_lock,
                                                      full.omega_lock);
        return linewidth_ratio_analytic(full, lin);
    };
    // |1 + (n_g - 1)| crosses 1 at n_g = -1 when the medium fills the ring
    CHECK(ratio_at(-1.0 - 1e-3) < 1.0);
    CHECK(ratio_at(-1.0 + 1e-3) > 1.0);
    // any positive dispersion narrows
    CHECK(ratio_at(1.5) < 1.0);
    CHECK(ratio_at(50.0) < 1.0);
}

TEST_CASE("linewidth ratio: infinite at the critically anomalous point") {
    const CavityConfig full = CavityConfig::make(1.0, 1.0, 0.969053859165, 0.0, wreq);
    const MediumSpec cad = MediumSpec::linear_toy(-1.0 / full.omega_lock, full.omega_lock);
    CHECK(std::isinf(linewidth_ratio_analytic(full, cad)));
}

TEST_CASE("linewidth ratio: domain errors") {
    // arcsine argument above 1: a cavity this lossy has no resonance
    const CavityConfig lossy = CavityConfig::make(1.0, 0.1, 0.05, 0.0, wreq);
    CHECK_THROWS_AS(empty_linewidth_analytic(lossy), FormulaDomainError);
    CHECK_THROWS_AS(linewidth_ratio_analytic(lossy, MediumSpec::vacuum(lossy.omega_lock)),
                    FormulaDomainError);
    // gain pushing the loaded amplitude to one and beyond
    const CavityConfig cfg = empty_cavity();
    const MediumSpec hot = MediumSpec::raman_single(1e-6, 1.0 * mhz, cfg.omega_lock);
    CHECK_THROWS_AS(linewidth_ratio_analytic(cfg, hot), FormulaDomainError);
}

TEST_CASE("numeric linewidth ratio matches the analytic ratio for linear dispersion") {
    const CavityConfig cfg = empty_cavity();
    const double vac_width = linewidth_numeric(cfg, MediumSpec::vacuum(cfg.omega_lock));
    for (double ng : {2.0, 10.0, 50.0, 100.0}) {
        const MediumSpec lin =
            MediumSpec::linear_toy((ng - 1.0) / cfg.omega_lock, cfg.omega_lock);
        const double loaded = linewidth_numeric(cfg, lin);
        const double analytic = linewidth_ratio_analytic(cfg, lin);
        CHECK(loaded / vac_width == doctest::Approx(analytic).epsilon(0.01));
    }
}

TEST_CASE("gain narrows more than the same dispersion alone") {
    const CavityConfig cfg = empty_cavity();
    const MediumSpec gain = MediumSpec::raman_single(5e-9, 1.0 * mhz, cfg.omega_lock);
    const double ng = local_group_index(gain, cfg.omega_lock);
    const MediumSpec lin =
        MediumSpec::linear_toy((ng - 1.0) / cfg.omega_lock, cfg.omega_lock);
    CHECK(linewidth_ratio_analytic(cfg, gain) < linewidth_ratio_analytic(cfg, lin));
    CHECK(linewidth_numeric(cfg, gain) < linewidth_numeric(cfg, lin));
}

TEST_CASE("loss calibration helpers invert the analytic linewidth") {
    const double R = reflectivity_for_linewidth(1.0, 3.0 * mhz);
    CHECK(R == doctest::Approx(0.969053859165).epsilon(1e-10));
    const CavityConfig c3 = CavityConfig::make(1.0, 0.0, R, 0.0, wreq);
    CHECK(empty_linewidth_analytic(c3) == doctest::Approx(3.0 * mhz).epsilon(1e-12));

    const double x8 = excess_loss_for_linewidth(1.0, R, 8.0 * mhz);
    CHECK(x8 == doctest::Approx(0.0994047237628).epsilon(1e-9));
    const CavityConfig c8 = CavityConfig::make(1.0, 0.0, R, x8, wreq);
    CHECK(empty_linewidth_analytic(c8) == doctest::Approx(8.0 * mhz).epsilon(1e-12));

    // no excess loss needed when the target equals the mirror-limited width
    CHECK(excess_loss_for_linewidth(1.0, R, 3.0 * mhz) == doctest::Approx(0.0).margin(1e-12));
    CHECK_THROWS_AS(excess_loss_for_linewidth(1.0, R, 2.0 * mhz), ParameterError);
}

TEST_CASE("detuned cavity: vacuum resonance lands on the applied lock shift") {
    const CavityConfig cfg = empty_cavity();
    const MediumSpec vac = MediumSpec::vacuum(cfg.omega_lock);
    const double dw0 = 4.0 * mhz;
    const CavityConfig det = cfg.with_lock_shift(dw0);
    const SpectrumResult sr = spectrum(det, vac, dw0 - 10.0 * mhz, dw0 + 10.0 * mhz, 4001);
    CHECK(sr.peak_center == doctest::Approx(dw0).epsilon(1e-6));
}
