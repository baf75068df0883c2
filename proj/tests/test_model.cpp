#include <random>

#include "sdwave/model.hpp"
#include "sdwave/transform.hpp"
#include "testkit.hpp"

using namespace sdwave;
using testkit::begin;

namespace {

void families() {
    begin("nonlinearity families");
    SourceSpec cub = SourceSpec::cubic(1.3);
    TK_CLOSE(cub.f(2.0), 8.0 - 2.6, 1e-14);
    TK_CLOSE(cub.fprime(2.0), 12.0 - 1.3, 1e-14);
    TK_CLOSE(cub.F(2.0), 4.0 - 2.6, 1e-14);
    TK_CHECK(cub.degree() == 3);

    SourceSpec qui = SourceSpec::quintic(0.5);
    TK_CLOSE(qui.f(1.5), std::pow(1.5, 5) - 0.75, 1e-12);
    TK_CHECK(qui.degree() == 5);

    // odd-poly [1, 0, 2] is s + 2 s^5
    SourceSpec op = SourceSpec::odd_poly({1.0, 0.0, 2.0});
    TK_CLOSE(op.f(2.0), 2.0 + 64.0, 1e-12);
    TK_CLOSE(op.F(1.0), 0.5 + 2.0 / 6.0, 1e-12);
    TK_CHECK(op.degree() == 5);

    DampingSpec qd = DampingSpec::quartic(2.0);
    TK_CLOSE(qd.sigma(1.5), 2.0 * std::pow(1.5, 4), 1e-12);
    TK_CLOSE(qd.Sigma(1.0), 0.4, 1e-14);
    TK_CLOSE(qd.SigmaHat(1.0), 2.0 / 6.0, 1e-14);
    TK_CHECK(DampingSpec::constant(3.0).degree() == 0);
    TK_CHECK(DampingSpec::even_poly({1.0, 0.0, 4.0}).degree() == 4);
}

void nemytskii_oracles() {
    begin("nemytskii projection oracles");
    // w = c phi_1 in 1-D; w^3 = c^3 (2/pi)^{3/2} sin^3 x and
    // sin^3 = (3 sin x - sin 3x)/4, so the projected coefficients are
    // 3 c^3 / (2 pi) on mode 1 and -c^3 / (2 pi) on mode 3.
    BasisSpec b(1, 8, 3.0);
    double c = 0.7;
    SpectralField w(b);
    w.coeffs[0] = c;
    SpectralField w3 = nemytskii([](double s) { return s * s * s; }, w);
    TK_CLOSE(w3.coeffs[0], 3.0 * c * c * c / (2.0 * M_PI), 1e-13);
    TK_CLOSE(w3.coeffs[2], -c * c * c / (2.0 * M_PI), 1e-13);
    TK_CLOSE(w3.coeffs[1], 0.0, 1e-13);
    TK_CLOSE(w3.coeffs[3], 0.0, 1e-13);

    // identity map reproduces the field
    SpectralField wid = nemytskii([](double s) { return s; }, w);
    TK_CLOSE(wid.coeffs[0], c, 1e-13);
}

void functional_integrals() {
    begin("functional integrals");
    // w(x) = sin x: int w^4/4 = 3 pi / 32, int w^6/6 = 5 pi / 96
    BasisSpec b(1, 8, 3.0);
    SpectralField w(b);
    w.coeffs[0] = std::sqrt(M_PI / 2.0);  // orthonormal coefficient of sin x
    double quart = functional_integral([](double s) { return 0.25 * s * s * s * s; }, w);
    TK_CLOSE(quart, 3.0 * M_PI / 32.0, 1e-11);
    double sext =
        functional_integral([](double s) { return std::pow(s, 6) / 6.0; }, w);
    TK_CLOSE(sext, 5.0 * M_PI / 96.0, 1e-11);
}

void truncations() {
    begin("truncated nonlinearities");
    SourceSpec cub = SourceSpec::cubic(0.0);
    ScalarFn f2 = truncate_source(cub, 2);
    TK_CLOSE(f2(1.5), cub.f(1.5), 0.0);      // inside the window
    TK_CLOSE(f2(5.0), cub.f(2.0), 0.0);      // clamped
    TK_CLOSE(f2(-5.0), cub.f(-2.0), 0.0);
    // Lipschitz on all of R once truncated: slope bounded by f'(k)
    double lip = 0.0;
    for (double s = -6.0; s < 6.0; s += 1e-2)
        lip = std::max(lip, std::abs(f2(s + 1e-4) - f2(s)) / 1e-4);
    TK_CHECK(lip <= cub.fprime(2.0) + 1e-6);

    DampingSpec qd = DampingSpec::quartic(1.0);
    ScalarFn s3 = truncate_damping(qd, 3);
    TK_CLOSE(s3(10.0), 81.0, 1e-12);

    ScalarFn fp2 = truncate_source_derivative(cub, 2);
    TK_CLOSE(fp2(1.0), 3.0, 1e-14);
    TK_CLOSE(fp2(2.5), 0.0, 0.0);
}

void cutoff_field() {
    begin("soft-threshold cutoff");
    BasisSpec b(1, 16, 2.0);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 2.0);
    SpectralField w(b);
    for (double& c : w.coeffs) c = gauss(rng) / 4.0;
    double m = 0.3;
    GridField g = to_grid(w);
    GridField cg = cutoff_grid(g, m);
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        double v = g.values[i], cv = cg.values[i];
        TK_CHECK(std::abs(cv) <= std::abs(v) + 1e-15);
        if (std::abs(v) <= m) TK_CHECK(cv == 0.0);
        if (std::abs(v) > 2.0 * m) TK_CHECK(std::abs(v) < 2.0 * std::abs(cv) + 1e-15);
        TK_CHECK(std::abs(std::abs(v) - std::abs(cv)) <= m + 1e-15);
    }
    SpectralField wc = cutoff(w, m);
    TK_CHECK(wc.finite());
}

void validator() {
    begin("hypothesis validation");
    BasisSpec b(1, 16, 3.0);
    ModelSpec good(b, SourceSpec::cubic(1.0), DampingSpec::quartic(1.0));
    ValidationReport rep = validate_conditions(good, 2001);
    TK_CHECK(rep.pass);
    TK_CHECK(rep.violations.empty());
    TK_CHECK(rep.lipschitz_c > 0.0);

    // negative damping fails the sign condition
    ModelSpec bad1(b, SourceSpec::cubic(1.0), DampingSpec::constant(-1.0));
    TK_CHECK(!validate_conditions(bad1, 501).pass);

    // degree-7 source fails the growth gate
    ModelSpec bad2(b, SourceSpec::odd_poly({0.0, 0.0, 0.0, 1.0}),
                   DampingSpec::quartic(1.0));
    ValidationReport r2 = validate_conditions(bad2, 501);
    TK_CHECK(!r2.pass);
    TK_CHECK(!r2.violations.empty());

    // strongly softening source violates the tail condition when a is huge
    ModelSpec bad3(b, SourceSpec::odd_poly({-50.0}), DampingSpec::quartic(1.0));
    TK_CHECK(!validate_conditions(bad3, 501).pass);

    // under-resolved quintic model draws an aliasing warning
    ModelSpec warn(BasisSpec(1, 16, 1.2), SourceSpec::quintic(0.0),
                   DampingSpec::quartic(1.0));
    TK_CHECK(!validate_conditions(warn, 501).warnings.empty());
}

}  // namespace

int main() {
    families();
    nemytskii_oracles();
    functional_integrals();
    truncations();
    cutoff_field();
    validator();
    return testkit::finish();
}
