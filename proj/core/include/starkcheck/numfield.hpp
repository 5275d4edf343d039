#pragma once

#include "starkcheck/real.hpp"

#include <gmpxx.h>

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace starkcheck {

// Dense polynomial over Q, coefficients low to high, no trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<mpq_class> c);
    static Poly constant(const mpq_class& c);
    static Poly x();

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    mpq_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }
    const mpq_class& lead() const { return c_.back(); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const mpq_class& s);

    Poly derivative() const;
    mpq_class eval(const mpq_class& t) const;
    Real eval(const Real& t) const;
    // a(q(x)), not reduced.
    Poly compose(const Poly& q) const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }

    // Human-readable form in x, e.g. "x^2 - 10".
    std::string to_string() const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Poly a, const mpq_class& s);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
// Monic gcd.
Poly gcd(Poly a, Poly b);
// Returns g = gcd(a, b) and s with s*a = g mod b.
Poly inverse_mod(const Poly& a, const Poly& m, Poly* g = nullptr);

class NumberField {
public:
    // Monic integer polynomial, low to high. Throws NonInvertible if p is not squarefree.
    explicit NumberField(std::vector<mpz_class> min_poly);

    int degree() const { return p_.degree(); }
    const Poly& poly() const { return p_; }
    const std::vector<mpz_class>& min_poly() const { return int_coeffs_; }

private:
    std::vector<mpz_class> int_coeffs_;
    Poly p_;
};

using FieldPtr = std::shared_ptr<const NumberField>;
FieldPtr make_field(std::vector<mpz_class> min_poly);

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldPtr k, const Poly& rep);
    FieldElement(FieldPtr k, const mpq_class& c);
    static FieldElement x(FieldPtr k);

    const FieldPtr& field() const { return k_; }
    const Poly& rep() const { return rep_; }
    // Coefficient vector of length deg p.
    std::vector<mpq_class> coeffs() const;
    bool is_zero() const { return rep_.is_zero(); }
    bool is_one() const;

    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);

    FieldElement inverse() const;
    FieldElement pow(long e) const;
    // Exact norm to Q (determinant of multiplication by this element).
    mpq_class norm() const;
    // a(q(x)) mod p; throws NotAnAutomorphism unless p(q) = 0 in K.
    FieldElement apply_aut(const FieldElement& q) const;
    // True if p(this) = 0, i.e. this is the image of x under some automorphism.
    bool is_root_of_min_poly() const;

    bool operator==(const FieldElement& o) const;

private:
    void check_same(const FieldElement& o) const;
    FieldPtr k_;
    Poly rep_;
};

FieldElement operator+(FieldElement a, const FieldElement& b);
FieldElement operator-(FieldElement a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement operator*(FieldElement a, const FieldElement& b);
FieldElement operator/(FieldElement a, const FieldElement& b);

struct RealRoot {
    Real approx;
    mpq_class lo;
    mpq_class hi;
    long precision_bits = 0;
    // Bound on |approx - true root|.
    Real error;
};

// Newton refinement from r.approx, bisection when a step leaves [lo, hi].
RealRoot refine_root(const Poly& p, const RealRoot& r, long target_bits);

// Horner evaluation at the root, with a forward error bound; PrecisionExhausted
// when the bound exceeds 2^(-bits/2) relative to max(1, |value|).
Real nf_embed(const FieldElement& a, const RealRoot& r, long bits, Real* error_bound = nullptr);

// Parses a decimal or fraction string ("-7/34", "12").
mpq_class parse_rational(const std::string& s);
std::string rational_string(const mpq_class& q);

}  // namespace starkcheck
