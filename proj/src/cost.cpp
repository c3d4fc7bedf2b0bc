#include "wardrop/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "wardrop/errors.hpp"

namespace wardrop {

CostFunction CostFunction::polynomial(std::vector<std::pair<int, double>> terms) {
    std::map<int, double> merged;
    for (const auto& [k, c] : terms) {
        if (k < 0) throw StructuralError("polynomial: negative degree");
        if (c < 0.0) throw StructuralError("polynomial: negative coefficient");
        if (c != 0.0) merged[k] += c;
    }
    CostFunction f;
    f.kind_ = CostKind::Polynomial;
    for (const auto& [k, c] : merged) f.terms_.emplace_back(double(k), c);
    return f;
}

CostFunction CostFunction::constant(double a) { return polynomial({{0, a}}); }

CostFunction CostFunction::monomial(int degree, double coeff) {
    return polynomial({{degree, coeff}});
}

CostFunction CostFunction::zero() { return polynomial({}); }

CostFunction CostFunction::bpr(double fft, double b, double capacity, double power) {
    if (fft < 0 || b < 0 || power < 0) throw StructuralError("bpr: negative parameter");
    if (capacity <= 0) throw StructuralError("bpr: capacity must be positive");
    CostFunction f;
    f.kind_ = CostKind::Bpr;
    f.bpr_fft_ = fft;
    f.bpr_b_ = b;
    f.bpr_capacity_ = capacity;
    f.bpr_power_ = power;
    // Sparse-power view: fft + (fft*b/cap^p) x^p.
    if (fft > 0) {
        f.terms_.emplace_back(0.0, fft);
        const double lead = fft * b / std::pow(capacity, power);
        if (lead > 0 && power > 0) f.terms_.emplace_back(power, lead);
        else if (lead > 0) f.terms_[0].second += lead;
    }
    return f;
}

CostFunction CostFunction::oscillating(int degree, OscPhase phase) {
    if (degree < 1) throw StructuralError("oscillating: degree must be a positive integer");
    CostFunction f;
    f.kind_ = CostKind::Oscillating;
    f.osc_degree_ = degree;
    f.phase_ = phase;
    if (phase == OscPhase::None) f.terms_.emplace_back(double(degree), 1.0);
    return f;
}

CostFunction CostFunction::generic(std::string name, std::function<double(double)> fn,
                                   ExtReal rv_light, ExtReal rv_heavy) {
    if (!fn) throw StructuralError("generic: missing evaluator");
    CostFunction f;
    f.kind_ = CostKind::Generic;
    f.name_ = std::move(name);
    f.generic_ = std::move(fn);
    f.rv_light_ = rv_light;
    f.rv_heavy_ = rv_heavy;
    return f;
}

namespace {

double eval_terms(const std::vector<std::pair<double, double>>& terms, double x) {
    double s = 0.0;
    for (const auto& [k, c] : terms) s += (k == 0.0) ? c : c * std::pow(x, k);
    return s;
}

double osc_factor(OscPhase phase, double logx) {
    switch (phase) {
        case OscPhase::Sine: return 1.0 + 0.5 * std::sin(logx);
        case OscPhase::Cosine: return 1.0 + 0.5 * std::cos(logx);
        default: return 1.0;
    }
}

}  // namespace

double CostFunction::operator()(double x) const {
    switch (kind_) {
        case CostKind::Polynomial:
            return eval_terms(terms_, x);
        case CostKind::Bpr:
            return bpr_fft_ * (1.0 + bpr_b_ * std::pow(x / bpr_capacity_, bpr_power_));
        case CostKind::Oscillating: {
            if (x <= 0.0) return 0.0;  // continuous extension
            return std::pow(x, osc_degree_) * osc_factor(phase_, std::log(x));
        }
        case CostKind::Generic:
            return generic_(x);
    }
    return 0.0;
}

double CostFunction::derivative(double x) const {
    switch (kind_) {
        case CostKind::Polynomial: {
            double s = 0.0;
            for (const auto& [k, c] : terms_)
                if (k > 0.0) s += c * k * std::pow(x, k - 1.0);
            return s;
        }
        case CostKind::Bpr: {
            if (bpr_power_ == 0.0) return 0.0;
            return bpr_fft_ * bpr_b_ * bpr_power_ * std::pow(x / bpr_capacity_, bpr_power_ - 1.0) /
                   bpr_capacity_;
        }
        case CostKind::Oscillating: {
            if (x <= 0.0) return 0.0;
            const double logx = std::log(x);
            const double d = osc_degree_;
            double s = d * osc_factor(phase_, logx);
            if (phase_ == OscPhase::Sine) s += 0.5 * std::cos(logx);
            else if (phase_ == OscPhase::Cosine) s -= 0.5 * std::sin(logx);
            return std::pow(x, d - 1.0) * s;
        }
        case CostKind::Generic: {
            const double h = std::max(1e-6, 1e-6 * x);
            const double lo = std::max(0.0, x - h);
            const double hi = x + h;
            return (generic_(hi) - generic_(lo)) / (hi - lo);
        }
    }
    return 0.0;
}

double CostFunction::primitive(double x) const {
    if (x <= 0.0) return 0.0;
    switch (kind_) {
        case CostKind::Polynomial: {
            double s = 0.0;
            for (const auto& [k, c] : terms_) s += c * std::pow(x, k + 1.0) / (k + 1.0);
            return s;
        }
        case CostKind::Bpr: {
            const double lead = bpr_fft_ * bpr_b_ / std::pow(bpr_capacity_, bpr_power_);
            return bpr_fft_ * x + lead * std::pow(x, bpr_power_ + 1.0) / (bpr_power_ + 1.0);
        }
        case CostKind::Oscillating: {
            // int x^d sin(log x) dx = x^{d+1} [(d+1) sin(log x) - cos(log x)] / ((d+1)^2 + 1)
            // int x^d cos(log x) dx = x^{d+1} [(d+1) cos(log x) + sin(log x)] / ((d+1)^2 + 1)
            const double d1 = osc_degree_ + 1.0;
            const double base = std::pow(x, d1) / d1;
            if (phase_ == OscPhase::None) return base;
            const double logx = std::log(x);
            const double den = d1 * d1 + 1.0;
            double osc;
            if (phase_ == OscPhase::Sine)
                osc = (d1 * std::sin(logx) - std::cos(logx)) / den;
            else
                osc = (d1 * std::cos(logx) + std::sin(logx)) / den;
            return base + 0.5 * std::pow(x, d1) * osc;
        }
        case CostKind::Generic:
            return adaptive_quadrature(generic_, 0.0, x);
    }
    return 0.0;
}

bool CostFunction::is_zero() const {
    if (kind_ == CostKind::Generic) return false;
    if (kind_ == CostKind::Oscillating && phase_ != OscPhase::None) return false;
    return terms_.empty();
}

bool CostFunction::poly_like() const {
    switch (kind_) {
        case CostKind::Polynomial:
        case CostKind::Bpr:
            return true;
        case CostKind::Oscillating:
            return phase_ == OscPhase::None;
        default:
            return false;
    }
}

const std::vector<std::pair<double, double>>& CostFunction::poly_terms() const {
    if (!poly_like()) throw StructuralError("poly_terms: cost has no sparse-power form");
    return terms_;
}

double CostFunction::min_degree() const {
    const auto& t = poly_terms();
    if (t.empty()) return std::numeric_limits<double>::infinity();  // zero cost convention
    return t.front().first;
}

double CostFunction::max_degree() const {
    const auto& t = poly_terms();
    if (t.empty()) return 0.0;  // zero cost convention
    return t.back().first;
}

double CostFunction::coeff_at(double degree) const {
    for (const auto& [k, c] : poly_terms())
        if (k == degree) return c;
    return 0.0;
}

ExtReal CostFunction::rv_degree(TrafficLimit w) const {
    switch (kind_) {
        case CostKind::Polynomial:
        case CostKind::Bpr:
            if (terms_.empty()) return ExtReal::undef();  // zero cost is not a valid benchmark
            return ExtReal::finite(w == TrafficLimit::Light ? min_degree() : max_degree());
        case CostKind::Oscillating:
            if (phase_ == OscPhase::None) return ExtReal::finite(double(osc_degree_));
            return ExtReal::undef();  // not regularly varying
        case CostKind::Generic:
            return w == TrafficLimit::Light ? rv_light_ : rv_heavy_;
    }
    return ExtReal::undef();
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b, double fb,
             double m, double fm, double whole, double tol, int depth) {
    if (depth > 60) throw NumericError("adaptive_quadrature: refinement limit reached");
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double rel_tol) {
    if (b <= a) return 0.0;
    const double fa = f(a), fb = f(b);
    const double m = 0.5 * (a + b), fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    // Scale the tolerance by a crude magnitude estimate; fall back to an
    // absolute floor for integrals near zero.
    const double scale = std::max(std::abs(whole), (b - a) * std::max(std::abs(fa), std::abs(fb)));
    const double tol = std::max(rel_tol * scale, 1e-300);
    const double r = adapt(f, a, fa, b, fb, m, fm, whole, tol, 0);
    if (!std::isfinite(r)) throw NumericError("adaptive_quadrature: non-finite integral");
    return r;
}

}  // namespace wardrop
