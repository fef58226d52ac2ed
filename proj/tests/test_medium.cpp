#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "ringsim/constants.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/medium.hpp"

using namespace ringsim;

namespace {

const double w0 = two_pi * speed_of_light / 780.24e-9;  // optical carrier
const double mhz = rad_per_mhz;

MediumSpec fig2b_eit() {
    // 1 MHz transparency window, group index 50, Doppler-effective line.
    return calibrate_eit(1.0 * mhz, 50.0, w0, 1000.0 * mhz, 0.0);
}

}  // namespace

TEST_CASE("vacuum: zero susceptibility, unit indices") {
    const MediumSpec vac = MediumSpec::vacuum(w0);
    CHECK(susceptibility(vac, w0 + 123.0 * mhz) == std::complex<double>(0.0, 0.0));
    const OpticalResponse r = optical_response(vac, w0);
    CHECK(r.n == 1.0);
    CHECK(r.alpha == 0.0);
    CHECK(r.n_g == 1.0);
    const GroupIndexFd fd = group_index_fd(vac, w0, 1.0 * mhz);
    CHECK(fd.value == 1.0);
    CHECK_FALSE(fd.step_too_large);
}

TEST_CASE("eit: exact transparency at center when the ground state is stable") {
    MediumSpec s = MediumSpec::eit_lambda(1e-7, 6.0 * mhz, 0.0, 3.0 * mhz, w0);
    const std::complex<double> chi = susceptibility(s, w0);
    CHECK(chi.real() == 0.0);
    CHECK(chi.imag() == 0.0);
    CHECK(optical_response(s, w0).n == 1.0);
}

TEST_CASE("eit: pump off reduces to a two-level absorption line") {
    MediumSpec s = MediumSpec::eit_lambda(3e-7, 6.0 * mhz, 0.0, 0.0, w0);
    const std::complex<double> chi = susceptibility(s, w0);
    CHECK(chi.real() == doctest::Approx(0.0).margin(1e-20));
    CHECK(chi.imag() == doctest::Approx(3e-7).epsilon(1e-12));
    // absorbing: alpha > 0 when Im[chi] > 0
    CHECK(optical_response(s, w0).alpha > 0.0);
}

TEST_CASE("linear toy: group index is exactly 1 + w*k") {
    const double k = 49.0 / w0;
    MediumSpec lin = MediumSpec::linear_toy(k, w0);
    const OpticalResponse r = optical_response(lin, w0);
    CHECK(r.n == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.n_g == doctest::Approx(1.0 + w0 * k).epsilon(1e-12));
    CHECK(r.alpha == 0.0);

    const GroupIndexFd fd = group_index_fd(lin, w0, 0.5 * mhz);
    CHECK(fd.value == doctest::Approx(1.0 + w0 * k).epsilon(1e-12));
    const double away = w0 + 37.0 * mhz;
    CHECK(local_group_index(lin, away) == doctest::Approx(1.0 + away * k).epsilon(1e-12));
}

TEST_CASE("analytic group index agrees with the finite-difference oracle") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> detuning(-3.0, 3.0);

    std::vector<MediumSpec> media = {
        MediumSpec::vacuum(w0),
        MediumSpec::linear_toy(10.0 / w0, w0),
        fig2b_eit(),
        MediumSpec::eit_lambda(2e-7, 6.0 * mhz, 0.05 * mhz, 3.0 * mhz, w0),
        MediumSpec::raman_single(1e-8, 1.0 * mhz, w0),
        MediumSpec::raman_dual(1e-8, 1.0 * mhz, 1.2 * mhz, w0),
    };
    for (const MediumSpec& m : media) {
        const double feature = std::isfinite(narrowest_feature(m))
                                   ? narrowest_feature(m)
                                   : 10.0 * mhz;
        for (int i = 0; i < 20; ++i) {
            const double w = w0 + detuning(rng) * feature;
            const double exact = local_group_index(m, w);
            const double h = feature / 3000.0;
            const GroupIndexFd fd = group_index_fd(m, w, h);
            CHECK_FALSE(fd.step_too_large);
            CHECK(fd.value == doctest::Approx(exact).epsilon(1e-6));
        }
    }
}

TEST_CASE("group_index_fd flags steps comparable to the narrowest feature") {
    MediumSpec s = MediumSpec::raman_single(1e-8, 1.0 * mhz, w0);
    CHECK(group_index_fd(s, w0, 0.2 * mhz).step_too_large);
    CHECK_FALSE(group_index_fd(s, w0, 0.01 * mhz).step_too_large);
    CHECK_THROWS_AS(group_index_fd(s, w0, 0.0), ParameterError);
}

TEST_CASE("effective group index: limit, linear profile, and wing decay") {
    MediumSpec eit = fig2b_eit();
    const double ng0 = local_group_index(eit, w0);
    CHECK(effective_group_index(eit, w0, 0.0) == doctest::Approx(ng0).epsilon(1e-12));

    // linear profile: effective equals local at the far end for every dw
    const double k = 23.0 / w0;
    MediumSpec lin = MediumSpec::linear_toy(k, w0);
    for (double dw : {-40.0 * mhz, -0.3 * mhz, 0.7 * mhz, 55.0 * mhz})
        CHECK(effective_group_index(lin, w0, dw) ==
              doctest::Approx(local_group_index(lin, w0 + dw)).epsilon(1e-9));

    // outside the transparency window the effective index decays toward 1
    const double wband = eit_transparency_fwhm(eit);
    double prev = std::abs(effective_group_index(eit, w0, wband));
    for (double f = 2.0; f < 60.0; f *= 1.9) {
        const double cur = std::abs(effective_group_index(eit, w0, f * wband));
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(prev < 0.1 * (ng0 - 1.0) + 1.0);
}

TEST_CASE("dual-peak gain: anomalous dispersion at the midpoint") {
    MediumSpec dual = MediumSpec::raman_dual(1e-8, 1.0 * mhz, 1.2 * mhz, w0);
    CHECK(local_group_index(dual, w0) < 0.0);
    // sign confirmed by the finite-difference oracle
    CHECK(group_index_fd(dual, w0, 1.0e-3 * mhz).value < 0.0);
}

TEST_CASE("raman gain: negative absorption at the peaks") {
    MediumSpec single = MediumSpec::raman_single(1e-8, 1.0 * mhz, w0);
    CHECK(optical_response(single, w0).alpha < 0.0);
    MediumSpec dual = MediumSpec::raman_dual(1e-8, 1.0 * mhz, 1.5 * mhz, w0);
    CHECK(optical_response(dual, w0 + dual.peak_offset).alpha < 0.0);
    CHECK(optical_response(dual, w0 - dual.peak_offset).alpha < 0.0);
}

TEST_CASE("symmetry: Re[chi] odd, Im[chi] even, n_g even about the center") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u(0.01, 4.0);
    std::vector<MediumSpec> media = {
        MediumSpec::eit_lambda(2e-7, 6.0 * mhz, 0.02 * mhz, 2.5 * mhz, w0),
        MediumSpec::raman_dual(1e-8, 1.0 * mhz, 1.3 * mhz, w0),
    };
    for (const MediumSpec& m : media) {
        for (int i = 0; i < 25; ++i) {
            const double d = u(rng) * mhz;
            const auto plus = susceptibility(m, w0 + d);
            const auto minus = susceptibility(m, w0 - d);
            CHECK(plus.real() == doctest::Approx(-minus.real()).epsilon(1e-12));
            CHECK(plus.imag() == doctest::Approx(minus.imag()).epsilon(1e-12));
            CHECK(local_group_index(m, w0 + d) ==
                  doctest::Approx(local_group_index(m, w0 - d)).epsilon(1e-9));
        }
    }
}

TEST_CASE("Kramers-Kronig: Hilbert transform of Im[chi] reproduces Re[chi]") {
    // all model responses are sums of Lorentzians, so causality is built in
    MediumSpec s = MediumSpec::eit_lambda(2e-7, 6.0 * mhz, 0.0, 6.0 * mhz, w0);
    const double g = s.gamma_opt;

    std::vector<double> ts, ys;
    const int n = 60001;
    const double span = 120.0 * g;
    for (int i = 0; i < n; ++i) {
        const double t = -span + 2.0 * span * i / (n - 1);
        ts.push_back(t);
        ys.push_back(susceptibility(s, w0 + t).imag());
    }
    for (double d : {-3.0, -1.7, -0.6, 0.45, 1.2, 2.6}) {
        const double delta = d * g;  // within +-3 linewidths of the center
        const double re_kk = oracles::hilbert_pv(ts, ys, delta);
        const double re_exact = susceptibility(s, w0 + delta).real();
        CHECK(re_kk == doctest::Approx(re_exact).epsilon(0.01));
    }
}

TEST_CASE("calibrate_eit reproduces the published operating point within 1 %") {
    MediumSpec s = fig2b_eit();
    CHECK(s.kind == MediumKind::EitLambda);
    CHECK(eit_transparency_fwhm(s) == doctest::Approx(1.0 * mhz).epsilon(0.01));
    CHECK(local_group_index(s, w0) == doctest::Approx(50.0).epsilon(0.01));
    // independent check through the finite-difference oracle
    CHECK(group_index_fd(s, w0, 1.0 * mhz / 3000.0).value ==
          doctest::Approx(50.0).epsilon(0.01));
}

TEST_CASE("calibrate_eit: frozen operating point for the default line") {
    MediumSpec s = fig2b_eit();
    CHECK(s.chi0 == doctest::Approx(1.27654944384e-07).epsilon(5e-3));
    CHECK(s.rabi_pump == doctest::Approx(31.6385840391 * mhz).epsilon(5e-3));
}

TEST_CASE("calibrate_eit: degenerate and failing targets") {
    MediumSpec flat = calibrate_eit(1.0 * mhz, 1.0, w0, 6.0 * mhz);
    CHECK(flat.chi0 == 0.0);
    CHECK(susceptibility(flat, w0 + 0.3 * mhz) == std::complex<double>(0.0, 0.0));

    CHECK_THROWS_AS(calibrate_eit(1.0 * mhz, 1e9, w0, 6.0 * mhz), CalibrationError);
    try {
        calibrate_eit(1.0 * mhz, 1e9, w0, 6.0 * mhz);
    } catch (const CalibrationError& e) {
        CHECK(e.best_residual > 0.0);
    }
    CHECK_THROWS_AS(calibrate_eit(-1.0, 50.0, w0, 6.0 * mhz), ParameterError);
    CHECK_THROWS_AS(calibrate_eit(1.0 * mhz, 0.5, w0, 6.0 * mhz), ParameterError);
}

TEST_CASE("weak-susceptibility linearity: doubling chi0 doubles n_g - 1") {
    MediumSpec s = MediumSpec::eit_lambda(1e-8, 6.0 * mhz, 0.0, 3.0 * mhz, w0);
    MediumSpec s2 = s;
    s2.chi0 = 2.0 * s.chi0;
    const double a = local_group_index(s, w0) - 1.0;
    const double b = local_group_index(s2, w0) - 1.0;
    CHECK(b == doctest::Approx(2.0 * a).epsilon(1e-6));
}

TEST_CASE("parameter-domain errors name the offending field") {
    MediumSpec bad = MediumSpec::eit_lambda(1e-7, 0.0, 0.0, 1.0 * mhz, w0);
    CHECK_THROWS_WITH_AS(susceptibility(bad, w0), doctest::Contains("gamma_opt"),
                         ParameterError);
    MediumSpec neg = MediumSpec::raman_single(-1e-8, 1.0 * mhz, w0);
    CHECK_THROWS_WITH_AS(susceptibility(neg, w0), doctest::Contains("chi0"), ParameterError);
    CHECK_THROWS_AS(susceptibility(MediumSpec::vacuum(w0), -1.0), ParameterError);
}

TEST_CASE("model breakdown: overwhelming susceptibility is rejected") {
    // strong absorber far above any physical vapor density
    MediumSpec s = MediumSpec::linear_toy(-2.0 / (1.0 * mhz), w0);
    CHECK_THROWS_AS(optical_response(s, w0 + 1.0 * mhz), ModelBreakdownError);
}

TEST_CASE("tune_dual_peak_offset hits the requested center group index") {
    const double gamma = 0.3 * mhz;
    const double beta = 1.0 + std::sqrt(2.0);
    const double chi0 = std::sqrt(2.0) * (0.5 * gamma) * (beta * beta + 1.0) / w0;
    const double d = tune_dual_peak_offset(chi0, gamma, w0, 0.0);
    // the chosen amplitude puts the zero exactly on the flat design point
    CHECK(d == doctest::Approx(beta * 0.5 * gamma).epsilon(1e-6));
    MediumSpec dual = MediumSpec::raman_dual(chi0, gamma, d, w0);
    CHECK(local_group_index(dual, w0) == doctest::Approx(0.0).margin(1e-7));

    // amplitude too small for the target
    CHECK_THROWS_AS(tune_dual_peak_offset(chi0 / 100.0, gamma, w0, 0.0), SolverError);
}
