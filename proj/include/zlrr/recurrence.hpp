#pragma once

#include <cstdint>
#include <vector>

#include "zlrr/bigint.hpp"

namespace zlrr {

/// A linear recurrence Z_{n+1} = c_1 Z_n + c_2 Z_{n-1} + ... + c_L Z_{n+1-L}
/// whose leading coefficient c_1 is zero. With c_1 = 0 the represented
/// integers generally admit more than one decomposition, which is the whole
/// point of this library.
struct ZlrrSpec {
    /// c_1..c_L, non-negative, c_1 = 0, c_L >= 1.
    std::vector<unsigned long> coefficients;
    /// Z_0..Z_{L-1} (or longer), Z_0 = 1, all positive.
    std::vector<Int> initial_terms;

    std::size_t order() const { return coefficients.size(); }
};

/// Checks every ZlrrSpec invariant and returns the spec unchanged.
/// Throws Error with code NonZeroLeadingCoefficient, ZeroTrailingCoefficient
/// or BadInitialTerms.
const ZlrrSpec& validate_spec(const ZlrrSpec& spec);

/// Cached exact terms Z_0..Z_n of a validated spec.
struct SequenceTable {
    ZlrrSpec spec;
    std::vector<Int> terms;
    /// Smallest index s such that Z_{n+1} > Z_n for every cached n >= s.
    /// The default sequence has Z_2 = Z_3, so s = 3 there.
    std::size_t strictly_increasing_from = 0;
    /// True when terms never decrease; enables binary search in the greedy
    /// decomposer.
    bool non_decreasing = true;

    std::size_t max_index() const { return terms.size() - 1; }
};

/// Generates exact terms for indices 0..n_max. n_max must cover the initial
/// terms (no truncation).
SequenceTable generate_sequence(const ZlrrSpec& spec, std::size_t n_max);

/// Dense integer polynomial, coefficients lowest degree first.
struct IntPolynomial {
    std::vector<Int> coefficients;

    std::size_t degree() const;
    Int eval(const Int& x) const;
    double eval(double x) const;
    /// Derivative value at x.
    double deriv(double x) const;
    IntPolynomial derivative() const;
    /// Human-readable form like "x^3 - x - 1".
    std::string pretty() const;

    bool operator==(const IntPolynomial& other) const;
};

/// x^L - c_1 x^{L-1} - ... - c_L for a validated spec.
IntPolynomial characteristic_polynomial(const ZlrrSpec& spec);

/// Root data driving every asymptotic formula.
struct RootInfo {
    /// Dominant real root, > 1.
    double lambda1 = 0.0;
    /// 1 / P'(lambda1). A property of the polynomial alone; whether it
    /// matches the actual sequence growth is a report question.
    double binet_a = 0.0;
    /// Upper bound on the modulus of every other root.
    double subdominant_modulus_bound = 0.0;
    double tolerance = 0.0;
};

/// Locates the dominant real root by sign-change bisection on
/// [1, 1 + max|c_i| + 1] followed by Newton polishing, then bounds the
/// remaining root moduli on the deflated polynomial (Graeffe root squaring
/// plus a Cauchy-type bound, so the bound is tight enough to certify
/// dominance). Throws NoDominantRoot or AmbiguousDominance.
RootInfo dominant_root(const IntPolynomial& poly, double tol = 1e-12);

/// |Z_n - a lambda1^n| / lambda1^n. Stays accurate when Z_n is far outside
/// double range.
double binet_residual(const SequenceTable& table, const RootInfo& info, std::size_t n);

}  // namespace zlrr
