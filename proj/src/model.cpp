#include "sdwave/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sdwave/transform.hpp"

namespace sdwave {

SourceSpec SourceSpec::cubic(double a) { return SourceSpec{"cubic", a, {}}; }
SourceSpec SourceSpec::quintic(double a) { return SourceSpec{"quintic", a, {}}; }
SourceSpec SourceSpec::odd_poly(std::vector<double> coeffs) {
    return SourceSpec{"odd-poly", 0.0, std::move(coeffs)};
}

double SourceSpec::f(double s) const {
    if (family == "cubic") return s * s * s - a * s;
    if (family == "quintic") return s * s * s * s * s - a * s;
    if (family == "odd-poly") {
        double acc = 0.0, p = s;
        for (double c : odd_coeffs) {
            acc += c * p;
            p *= s * s;
        }
        return acc;
    }
    throw std::invalid_argument("SourceSpec: unknown family " + family);
}

double SourceSpec::F(double s) const {
    if (family == "cubic") return 0.25 * s * s * s * s - 0.5 * a * s * s;
    if (family == "quintic") {
        double s2 = s * s;
        return s2 * s2 * s2 / 6.0 - 0.5 * a * s2;
    }
    if (family == "odd-poly") {
        double acc = 0.0, p = s * s;
        for (std::size_t i = 0; i < odd_coeffs.size(); ++i) {
            acc += odd_coeffs[i] * p / (2.0 * i + 2.0);
            p *= s * s;
        }
        return acc;
    }
    throw std::invalid_argument("SourceSpec: unknown family " + family);
}

double SourceSpec::fprime(double s) const {
    if (family == "cubic") return 3.0 * s * s - a;
    if (family == "quintic") return 5.0 * s * s * s * s - a;
    if (family == "odd-poly") {
        double acc = 0.0, p = 1.0;
        for (std::size_t i = 0; i < odd_coeffs.size(); ++i) {
            acc += odd_coeffs[i] * (2.0 * i + 1.0) * p;
            p *= s * s;
        }
        return acc;
    }
    throw std::invalid_argument("SourceSpec: unknown family " + family);
}

int SourceSpec::degree() const {
    if (family == "cubic") return 3;
    if (family == "quintic") return 5;
    int deg = 0;
    for (std::size_t i = 0; i < odd_coeffs.size(); ++i)
        if (odd_coeffs[i] != 0.0) deg = static_cast<int>(2 * i + 1);
    return deg;
}

DampingSpec DampingSpec::quartic(double b) { return DampingSpec{"quartic", b, {}}; }
DampingSpec DampingSpec::constant(double b) { return DampingSpec{"constant", b, {}}; }
DampingSpec DampingSpec::even_poly(std::vector<double> coeffs) {
    return DampingSpec{"even-poly", 0.0, std::move(coeffs)};
}

double DampingSpec::sigma(double s) const {
    if (family == "quartic") return b * s * s * s * s;
    if (family == "constant") return b;
    if (family == "even-poly") {
        double acc = 0.0, p = 1.0;
        for (double c : even_coeffs) {
            acc += c * p;
            p *= s * s;
        }
        return acc;
    }
    throw std::invalid_argument("DampingSpec: unknown family " + family);
}

double DampingSpec::Sigma(double s) const {
    if (family == "quartic") return b * s * s * s * s * s / 5.0;
    if (family == "constant") return b * s;
    if (family == "even-poly") {
        double acc = 0.0, p = s;
        for (std::size_t i = 0; i < even_coeffs.size(); ++i) {
            acc += even_coeffs[i] * p / (2.0 * i + 1.0);
            p *= s * s;
        }
        return acc;
    }
    throw std::invalid_argument("DampingSpec: unknown family " + family);
}

double DampingSpec::SigmaHat(double s) const {
    if (family == "quartic") return b * s * s * s * s * s * s / 6.0;
    if (family == "constant") return 0.5 * b * s * s;
    if (family == "even-poly") {
        double acc = 0.0, p = s * s;
        for (std::size_t i = 0; i < even_coeffs.size(); ++i) {
            acc += even_coeffs[i] * p / (2.0 * i + 2.0);
            p *= s * s;
        }
        return acc;
    }
    throw std::invalid_argument("DampingSpec: unknown family " + family);
}

int DampingSpec::degree() const {
    if (family == "quartic") return 4;
    if (family == "constant") return 0;
    int deg = 0;
    for (std::size_t i = 0; i < even_coeffs.size(); ++i)
        if (even_coeffs[i] != 0.0) deg = static_cast<int>(2 * i);
    return deg;
}

SpectralField nemytskii(const ScalarFn& phi, const SpectralField& f) {
    GridField g = to_grid(f);
    for (double& v : g.values) v = phi(v);
    if (!g.finite()) throw std::runtime_error("nemytskii: non-finite grid values");
    return to_coeffs(g);
}

ScalarFn truncate_source(const SourceSpec& spec, int k) {
    if (k < 1) throw std::invalid_argument("truncate_source: k >= 1");
    double kk = static_cast<double>(k);
    return [spec, kk](double s) { return spec.f(std::clamp(s, -kk, kk)); };
}

ScalarFn truncate_damping(const DampingSpec& spec, int k) {
    if (k < 1) throw std::invalid_argument("truncate_damping: k >= 1");
    double kk = static_cast<double>(k);
    return [spec, kk](double s) { return spec.sigma(std::clamp(s, -kk, kk)); };
}

ScalarFn truncate_source_derivative(const SourceSpec& spec, int k) {
    double kk = static_cast<double>(k);
    return [spec, kk](double s) { return std::abs(s) <= kk ? spec.fprime(s) : 0.0; };
}

GridField cutoff_grid(const GridField& w, double m) {
    if (m <= 0.0) throw std::invalid_argument("cutoff: m > 0");
    GridField out = w;
    for (double& v : out.values) {
        if (v > m)
            v -= m;
        else if (v < -m)
            v += m;
        else
            v = 0.0;
    }
    return out;
}

SpectralField cutoff(const SpectralField& w, double m) {
    return to_coeffs(cutoff_grid(to_grid(w), m));
}

double functional_integral(const ScalarFn& anti, const SpectralField& w) {
    GridField g = to_grid(w);
    double acc = 0.0;
    for (double v : g.values) {
        double a = anti(v);
        if (!std::isfinite(a)) throw std::runtime_error("functional_integral: non-finite value");
        acc += a;
    }
    return acc * quadrature_weight(w.basis);
}

ValidationReport validate_conditions(const ModelSpec& model, int sample_count) {
    if (sample_count < 100)
        throw std::invalid_argument("validate_conditions: sample_count >= 100");
    ValidationReport rep;
    const double smin = rep.sample_min, smax = rep.sample_max;
    const double lam1 = first_eigenvalue(model.basis);
    auto note = [&rep](const std::string& s) {
        rep.pass = false;
        rep.violations.push_back(s);
    };

    // degree gates: the Lipschitz bound caps f at quintic growth, the
    // damping bound at quartic
    if (model.source.degree() > 5) {
        std::ostringstream os;
        os << "source degree " << model.source.degree()
           << " exceeds the quintic growth bound";
        note(os.str());
    }
    if (model.damping.degree() > 4) {
        std::ostringstream os;
        os << "damping degree " << model.damping.degree()
           << " exceeds the quartic growth bound";
        note(os.str());
    }

    // sampled Lipschitz-growth constant for f
    double c_lip = 0.0;
    for (int i = 0; i < sample_count; ++i) {
        double s = smin + (smax - smin) * i / (sample_count - 1);
        double t = s + 1e-3 * (smax - smin);
        double denom = (1.0 + std::pow(std::abs(s), 4) + std::pow(std::abs(t), 4)) *
                       std::abs(s - t);
        c_lip = std::max(c_lip, std::abs(model.source.f(s) - model.source.f(t)) / denom);
    }
    rep.lipschitz_c = c_lip;

    // sigma >= 0 and the quartic bound
    double c_sig = 0.0;
    for (int i = 0; i < sample_count; ++i) {
        double s = smin + (smax - smin) * i / (sample_count - 1);
        double sg = model.damping.sigma(s);
        if (sg < 0.0) {
            std::ostringstream os;
            os << "sigma(" << s << ") = " << sg << " < 0";
            note(os.str());
            break;
        }
        c_sig = std::max(c_sig, std::abs(sg) / (1.0 + std::pow(std::abs(s), 4)));
    }
    rep.sigma_growth_c = c_sig;

    // tail sign condition f(s)/s > -lambda_1 + margin, checked for |s| above
    // half the window (a true liminf is untestable; the window is reported)
    const double margin = 1e-6;
    double worst = 1e300;
    for (int i = 0; i < sample_count; ++i) {
        double s = 0.5 * smax + 0.5 * smax * i / (sample_count - 1);
        for (double sg : {s, -s}) {
            double ratio = model.source.f(sg) / sg;
            worst = std::min(worst, ratio + lam1);
            if (ratio <= -lam1 + margin) {
                std::ostringstream os;
                os << "f(" << sg << ")/s = " << ratio << " violates the tail condition";
                note(os.str());
            }
        }
    }
    rep.liminf_margin = worst;

    // antiderivative consistency by central differences
    for (int i = 1; i < 8; ++i) {
        double s = smin + (smax - smin) * i / 8.0;
        double h = 1e-5;
        double fd = (model.source.F(s + h) - model.source.F(s - h)) / (2.0 * h);
        double scale = 1.0 + std::abs(model.source.f(s));
        if (std::abs(fd - model.source.f(s)) / scale > 1e-6)
            note("antiderivative F inconsistent with f at s = " + std::to_string(s));
        double sd = (model.damping.Sigma(s + h) - model.damping.Sigma(s - h)) / (2.0 * h);
        double sscale = 1.0 + std::abs(model.damping.sigma(s));
        if (std::abs(sd - model.damping.sigma(s)) / sscale > 1e-6)
            note("antiderivative Sigma inconsistent with sigma at s = " + std::to_string(s));
    }

    if (!model.forcing.finite()) note("forcing g has non-finite coefficients");

    // aliasing advisory: products of degree p need q >= (p+1)/2 per axis
    int p = std::max(model.source.degree(), model.damping.degree() + 1);
    if (model.basis.oversampling < 0.5 * (p + 1)) {
        std::ostringstream os;
        os << "oversampling q = " << model.basis.oversampling
           << " below the alias-free factor " << 0.5 * (p + 1) << " for degree " << p;
        rep.warnings.push_back(os.str());
    }
    return rep;
}

}  // namespace sdwave
