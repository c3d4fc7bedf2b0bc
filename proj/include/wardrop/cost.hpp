#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wardrop/ext_real.hpp"

namespace wardrop {

enum class CostKind { Polynomial, Bpr, Oscillating, Generic };
enum class OscPhase { Sine, Cosine, None };
enum class TrafficLimit { Light, Heavy };

inline const char* limit_name(TrafficLimit w) {
    return w == TrafficLimit::Light ? "light" : "heavy";
}

/// Nondecreasing, nonnegative edge latency c(x) on [0, inf).
///
/// Four families:
///  - Polynomial: sparse nonnegative-coefficient polynomial, integer degrees.
///  - Bpr:        fft * (1 + b * (x/capacity)^power); power may be fractional.
///  - Oscillating: x^d * [1 + 1/2 sin(log x)] (or cos, or no phase = plain
///                 monomial); c(0) = 0 by continuity.
///  - Generic:    arbitrary evaluator, optionally with declared
///                regular-variation degrees at each traffic limit.
///
/// Derivatives and primitives are closed-form for the structured families;
/// Generic falls back to central differences and adaptive quadrature.
class CostFunction {
  public:
    static CostFunction polynomial(std::vector<std::pair<int, double>> terms);
    static CostFunction constant(double a);
    static CostFunction monomial(int degree, double coeff = 1.0);
    static CostFunction zero();
    static CostFunction bpr(double fft, double b, double capacity, double power);
    static CostFunction oscillating(int degree, OscPhase phase);
    /// `name` identifies the evaluator for serialization. rv_* are optional
    /// declared regular-variation degrees (ExtReal::inf() = grows faster
    /// than any power, undef = unknown); they override numeric limit
    /// detection where a strict degree comparison decides.
    static CostFunction generic(std::string name, std::function<double(double)> f,
                                ExtReal rv_light = ExtReal::undef(),
                                ExtReal rv_heavy = ExtReal::undef());

    double operator()(double x) const;
    double derivative(double x) const;
    /// Primitive C(x) = integral of c over [0, x].
    double primitive(double x) const;
    /// Marginal cost c(x) + x c'(x), the integrand whose primitive is x c(x).
    double marginal(double x) const { return (*this)(x) + x * derivative(x); }

    CostKind kind() const { return kind_; }
    OscPhase phase() const { return phase_; }
    const std::string& name() const { return name_; }
    bool is_zero() const;

    /// True when the cost has an exact sparse-power representation
    /// (Polynomial, Bpr, phase-free Oscillating).
    bool poly_like() const;
    /// Sparse (degree, coefficient) terms, ascending degree. Degrees are
    /// doubles because BPR powers may be fractional. Only for poly_like().
    const std::vector<std::pair<double, double>>& poly_terms() const;

    /// Smallest degree with positive coefficient; +inf for the zero cost.
    double min_degree() const;
    /// Largest degree with positive coefficient; 0 for the zero cost.
    double max_degree() const;
    double coeff_at(double degree) const;

    /// Oscillating degree d for sine/cosine phases (bounded positive factor
    /// times x^d, not regularly varying).
    int osc_degree() const { return osc_degree_; }

    /// Declared regular-variation degree at the given limit. Exact for
    /// structured families; the declared hint (possibly undef) for Generic;
    /// undef for sine/cosine oscillating costs.
    ExtReal rv_degree(TrafficLimit w) const;

    // BPR parameter access (kind() == Bpr only).
    double bpr_fft() const { return bpr_fft_; }
    double bpr_b() const { return bpr_b_; }
    double bpr_capacity() const { return bpr_capacity_; }
    double bpr_power() const { return bpr_power_; }

    const std::function<double(double)>& evaluator() const { return generic_; }

  private:
    CostFunction() = default;

    CostKind kind_ = CostKind::Polynomial;
    std::vector<std::pair<double, double>> terms_;  // for poly_like kinds
    double bpr_fft_ = 0, bpr_b_ = 0, bpr_capacity_ = 1, bpr_power_ = 0;
    int osc_degree_ = 0;
    OscPhase phase_ = OscPhase::None;
    std::function<double(double)> generic_;
    std::string name_;
    ExtReal rv_light_ = ExtReal::undef();
    ExtReal rv_heavy_ = ExtReal::undef();
};

/// Adaptive Simpson quadrature of f over [a, b] to the given relative
/// tolerance. Throws NumericError when the refinement limit is reached.
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-12);

}  // namespace wardrop
