#include "zlrr/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "zlrr/error.hpp"

namespace zlrr {

const ZlrrSpec& validate_spec(const ZlrrSpec& spec) {
    if (spec.coefficients.empty())
        fail(ErrorCode::WrongSpecShape, "recurrence needs at least one coefficient");
    if (spec.coefficients.front() != 0)
        fail(ErrorCode::NonZeroLeadingCoefficient,
             "c_1 must be 0, got " + std::to_string(spec.coefficients.front()));
    if (spec.coefficients.back() == 0)
        fail(ErrorCode::ZeroTrailingCoefficient, "c_L must be positive");
    if (spec.initial_terms.size() < spec.order())
        fail(ErrorCode::BadInitialTerms, "need at least " + std::to_string(spec.order()) +
                                             " initial terms, got " +
                                             std::to_string(spec.initial_terms.size()));
    if (spec.initial_terms.front() != 1)
        fail(ErrorCode::BadInitialTerms, "Z_0 must be 1, got " + to_decimal(spec.initial_terms.front()));
    for (const Int& t : spec.initial_terms)
        if (t <= 0) fail(ErrorCode::BadInitialTerms, "initial terms must be positive");
    return spec;
}

SequenceTable generate_sequence(const ZlrrSpec& spec, std::size_t n_max) {
    validate_spec(spec);
    if (n_max + 1 < spec.initial_terms.size())
        fail(ErrorCode::TableTooSmall, "n_max would truncate the initial terms");
    SequenceTable table;
    table.spec = spec;
    table.terms = spec.initial_terms;
    table.terms.reserve(n_max + 1);
    const std::size_t L = spec.order();
    for (std::size_t i = table.terms.size(); i <= n_max; ++i) {
        Int next = 0;
        for (std::size_t j = 1; j <= L; ++j)
            if (spec.coefficients[j - 1] != 0) next += spec.coefficients[j - 1] * table.terms[i - j];
        table.terms.push_back(next);
    }
    table.non_decreasing = true;
    table.strictly_increasing_from = 0;
    for (std::size_t n = 0; n + 1 < table.terms.size(); ++n) {
        if (table.terms[n + 1] < table.terms[n]) table.non_decreasing = false;
        if (table.terms[n + 1] <= table.terms[n]) table.strictly_increasing_from = n + 1;
    }
    return table;
}

std::size_t IntPolynomial::degree() const {
    std::size_t d = coefficients.size();
    while (d > 1 && coefficients[d - 1] == 0) --d;
    return d - 1;
}

Int IntPolynomial::eval(const Int& x) const {
    Int acc = 0;
    for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * x + coefficients[i];
    return acc;
}

double IntPolynomial::eval(double x) const {
    double acc = 0.0;
    for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * x + coefficients[i].get_d();
    return acc;
}

double IntPolynomial::deriv(double x) const {
    double acc = 0.0;
    for (std::size_t i = coefficients.size(); i-- > 1;)
        acc = acc * x + static_cast<double>(i) * coefficients[i].get_d();
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    IntPolynomial d;
    if (coefficients.size() <= 1) {
        d.coefficients = {Int(0)};
        return d;
    }
    d.coefficients.reserve(coefficients.size() - 1);
    for (std::size_t i = 1; i < coefficients.size(); ++i)
        d.coefficients.push_back(static_cast<unsigned long>(i) * coefficients[i]);
    return d;
}

std::string IntPolynomial::pretty() const {
    std::string out;
    for (std::size_t i = degree() + 1; i-- > 0;) {
        const Int& c = coefficients.size() > i ? coefficients[i] : Int(0);
        if (c == 0 && !(out.empty() && i == 0)) continue;
        Int mag = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (i == 0 || mag != 1) out += to_decimal(mag);
        if (i >= 1) {
            out += "x";
            if (i >= 2) out += "^" + std::to_string(i);
        }
    }
    if (out.empty()) out = "0";
    return out;
}

bool IntPolynomial::operator==(const IntPolynomial& other) const {
    std::size_t d = degree(), od = other.degree();
    if (d != od) return false;
    for (std::size_t i = 0; i <= d; ++i)
        if (coefficients[i] != other.coefficients[i]) return false;
    return true;
}

IntPolynomial characteristic_polynomial(const ZlrrSpec& spec) {
    validate_spec(spec);
    const std::size_t L = spec.order();
    IntPolynomial p;
    p.coefficients.assign(L + 1, Int(0));
    p.coefficients[L] = 1;
    for (std::size_t j = 1; j <= L; ++j)
        p.coefficients[L - j] = -Int(spec.coefficients[j - 1]);
    return p;
}

namespace {

/// Upper bound on the root moduli of a monic double polynomial,
/// min(Cauchy, Fujiwara).
double root_modulus_bound(const std::vector<double>& monic) {
    std::size_t m = monic.size() - 1;
    double cauchy = 0.0, fujiwara = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double a = std::fabs(monic[j]);
        cauchy = std::max(cauchy, a);
        if (a > 0.0) fujiwara = std::max(fujiwara, std::pow(a, 1.0 / static_cast<double>(m - j)));
    }
    return std::min(1.0 + cauchy, 2.0 * fujiwara);
}

/// One Graeffe root-squaring round on a monic polynomial: the result is
/// monic with the squared roots.
std::vector<double> graeffe_round(const std::vector<double>& c) {
    std::size_t m = c.size() - 1;
    std::vector<double> g(m + 1, 0.0);
    for (std::size_t j = 0; j <= m; ++j) {
        double s = c[j] * c[j];
        for (std::size_t t = 1; t <= j && j + t <= m; ++t) {
            double term = 2.0 * c[j - t] * c[j + t];
            s += (t % 2) ? -term : term;
        }
        g[j] = ((m - j) % 2) ? -s : s;
    }
    return g;
}

}  // namespace

RootInfo dominant_root(const IntPolynomial& poly, double tol) {
    const std::size_t d = poly.degree();
    if (d < 1) fail(ErrorCode::NoDominantRoot, "constant polynomial has no roots");
    if (poly.coefficients[d] <= 0)
        fail(ErrorCode::NoDominantRoot, "leading coefficient must be positive");

    double lead = poly.coefficients[d].get_d();
    double at_one = poly.eval(1.0);
    if (at_one >= 0.0)
        fail(ErrorCode::NoDominantRoot, "no sign change right of 1; no dominant root above 1");

    double hi = 1.0;
    for (std::size_t i = 0; i < d; ++i)
        hi = std::max(hi, 1.0 + std::fabs(poly.coefficients[i].get_d()) / lead);
    while (poly.eval(hi) <= 0.0) hi *= 2.0;

    double lo = 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (poly.eval(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        double p = poly.eval(x), dp = poly.deriv(x);
        if (dp == 0.0) break;
        double step = p / dp;
        double nx = x - step;
        if (nx <= 1.0 || !std::isfinite(nx)) break;
        x = nx;
        if (std::fabs(step) <= tol * x) break;
    }

    RootInfo info;
    info.lambda1 = x;
    info.tolerance = tol;
    double dp = poly.deriv(x);
    if (dp == 0.0) fail(ErrorCode::AmbiguousDominance, "dominant root is a multiple root");
    // 1/P'(lambda1) on the monic normalization, so a common integer scale of
    // the coefficients does not change the constant.
    info.binet_a = lead / dp;

    // Deflate by (x - lambda1) on the monic normalization.
    std::vector<double> monic(d + 1);
    for (std::size_t i = 0; i <= d; ++i) monic[i] = poly.coefficients[i].get_d() / lead;
    std::vector<double> q(d, 0.0);
    double carry = monic[d];
    for (std::size_t i = d; i-- > 0;) {
        q[i] = carry;
        carry = monic[i] + x * carry;
    }

    double bound = 0.0;
    if (d >= 2) {
        bound = root_modulus_bound(q);
        std::vector<double> cur = q;
        double scale = 1.0;
        for (int round = 1; round <= 7; ++round) {
            cur = graeffe_round(cur);
            scale *= 0.5;
            bool overflow = false;
            for (double c : cur)
                if (!std::isfinite(c) || std::fabs(c) > 1e150) overflow = true;
            if (overflow) break;
            bound = std::min(bound, std::pow(root_modulus_bound(cur), scale));
        }
    }
    info.subdominant_modulus_bound = bound;
    if (bound >= x * (1.0 - 1e-9))
        fail(ErrorCode::AmbiguousDominance,
             "subdominant modulus bound " + std::to_string(bound) + " reaches the dominant root");
    return info;
}

double binet_residual(const SequenceTable& table, const RootInfo& info, std::size_t n) {
    if (n > table.max_index()) fail(ErrorCode::TableTooSmall, "index beyond cached terms");
    double log_ratio = log_int(table.terms[n]) - static_cast<double>(n) * std::log(info.lambda1);
    return std::fabs(std::exp(log_ratio) - info.binet_a);
}

}  // namespace zlrr
