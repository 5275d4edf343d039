#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>

namespace starkcheck {

// Owning handle on an mpfr_t. New values take the calling thread's MPFR
// default precision, which PrecisionScope sets for the duration of a run.
class Real {
public:
    Real();
    Real(long v);
    Real(int v) : Real(static_cast<long>(v)) {}
    explicit Real(double v);
    explicit Real(const mpz_class& v);
    explicit Real(const mpq_class& v);
    explicit Real(std::string_view decimal);

    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Nearest integer (ties away from zero).
    mpz_class round() const;
    mpz_class floor() const;
    // Exact value of the binary float.
    mpq_class to_rational() const;
    // Scientific notation with `digits` significant digits.
    std::string to_string(int digits) const;
    // log2 of |x|, or a very negative number for zero.
    long exponent2() const;

    static Real pi();
    static Real pow2(long e);

private:
    mpfr_t v_;
};

Real operator+(Real a, const Real& b);
Real operator-(Real a, const Real& b);
Real operator*(Real a, const Real& b);
Real operator/(Real a, const Real& b);
Real operator-(const Real& a);
bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);

Real abs(const Real& a);
Real log(const Real& a);
Real exp(const Real& a);
Real sqrt(const Real& a);
Real cos(const Real& a);
Real sin(const Real& a);

// Digits needed to print `bits` of precision faithfully.
int decimal_digits_for(long bits);

struct Complex {
    Real re;
    Real im;

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex conj(const Complex& a);
Real abs(const Complex& a);
// e^{2 pi i t} for an exact turn fraction t.
Complex unit_root(const mpq_class& turns);

// Sets the thread's MPFR default precision; restores it on destruction.
class PrecisionScope {
public:
    explicit PrecisionScope(long bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    mpfr_prec_t saved_;
};

long current_precision();

// 2^(-bits/2): the comparison tolerance used throughout.
Real tolerance(long bits);

}  // namespace starkcheck
