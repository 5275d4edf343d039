#include "starkcheck/real.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace starkcheck {

Real::Real() { mpfr_init_set_si(v_, 0, MPFR_RNDN); }
Real::Real(long v) { mpfr_init_set_si(v_, v, MPFR_RNDN); }
Real::Real(double v) { mpfr_init_set_d(v_, v, MPFR_RNDN); }
Real::Real(const mpz_class& v) { mpfr_init_set_z(v_, v.get_mpz_t(), MPFR_RNDN); }
Real::Real(const mpq_class& v) { mpfr_init_set_q(v_, v.get_mpq_t(), MPFR_RNDN); }

Real::Real(std::string_view decimal) {
    mpfr_init(v_);
    std::string s(decimal);
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw std::invalid_argument("not a decimal number: " + s);
    }
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real& Real::operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

mpz_class Real::round() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDNA);
    return z;
}

mpz_class Real::floor() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
}

mpq_class Real::to_rational() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
}

std::string Real::to_string(int digits) const {
    if (mpfr_zero_p(v_)) return "0";
    std::vector<char> buf(static_cast<size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

long Real::exponent2() const {
    if (mpfr_zero_p(v_)) return -(1L << 30);
    return mpfr_get_exp(v_);
}

Real Real::pi() {
    Real r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real Real::pow2(long e) {
    Real r(1L);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
}

Real operator+(Real a, const Real& b) { return a += b; }
Real operator-(Real a, const Real& b) { return a -= b; }
Real operator*(Real a, const Real& b) { return a *= b; }
Real operator/(Real a, const Real& b) { return a /= b; }
Real operator-(const Real& a) {
    Real r;
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }

#define STARKCHECK_UNARY(name, fn)              \
    Real name(const Real& a) {                  \
        Real r;                                 \
        fn(r.get(), a.get(), MPFR_RNDN);        \
        return r;                               \
    }
STARKCHECK_UNARY(abs, mpfr_abs)
STARKCHECK_UNARY(log, mpfr_log)
STARKCHECK_UNARY(exp, mpfr_exp)
STARKCHECK_UNARY(sqrt, mpfr_sqrt)
STARKCHECK_UNARY(cos, mpfr_cos)
STARKCHECK_UNARY(sin, mpfr_sin)
#undef STARKCHECK_UNARY

int decimal_digits_for(long bits) {
    return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398120)) + 2;
}

Complex& Complex::operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
Complex& Complex::operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
Complex& Complex::operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    Real i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(const Complex& a, const Complex& b) {
    Real den = b.re * b.re + b.im * b.im;
    if (den.is_zero()) throw std::domain_error("complex division by zero");
    return Complex((a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den);
}
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
Complex conj(const Complex& a) { return Complex(a.re, -a.im); }
Real abs(const Complex& a) { return sqrt(a.re * a.re + a.im * a.im); }

Complex unit_root(const mpq_class& turns) {
    mpq_class t = turns - mpq_class(mpz_class(turns.get_num() / turns.get_den()));
    if (t < 0) t += 1;
    // Exact values at the quarter turns keep real characters exactly real.
    if (t == 0) return Complex(Real(1L), Real(0L));
    if (t == mpq_class(1, 2)) return Complex(Real(-1L), Real(0L));
    if (t == mpq_class(1, 4)) return Complex(Real(0L), Real(1L));
    if (t == mpq_class(3, 4)) return Complex(Real(0L), Real(-1L));
    Real theta = Real(t) * Real::pi() * Real(2L);
    return Complex(cos(theta), sin(theta));
}

PrecisionScope::PrecisionScope(long bits) : saved_(mpfr_get_default_prec()) {
    mpfr_set_default_prec(static_cast<mpfr_prec_t>(bits));
}
PrecisionScope::~PrecisionScope() { mpfr_set_default_prec(saved_); }

long current_precision() { return static_cast<long>(mpfr_get_default_prec()); }

Real tolerance(long bits) { return Real::pow2(-bits / 2); }

}  // namespace starkcheck
