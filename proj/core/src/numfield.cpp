#include "starkcheck/numfield.hpp"

#include "starkcheck/error.hpp"
#include "starkcheck/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace starkcheck {

Poly::Poly(std::vector<mpq_class> c) : c_(std::move(c)) {
    for (auto& v : c_) v.canonicalize();
    trim();
}

Poly Poly::constant(const mpq_class& c) { return Poly(std::vector<mpq_class>{c}); }
Poly Poly::x() { return Poly(std::vector<mpq_class>{0, 1}); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const mpq_class& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
}

Poly Poly::derivative() const {
    std::vector<mpq_class> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return Poly(std::move(d));
}

mpq_class Poly::eval(const mpq_class& t) const {
    mpq_class s = 0;
    for (std::size_t i = c_.size(); i-- > 0;) s = s * t + c_[i];
    return s;
}

Real Poly::eval(const Real& t) const {
    Real s(0L);
    for (std::size_t i = c_.size(); i-- > 0;) s = s * t + Real(c_[i]);
    return s;
}

Poly Poly::compose(const Poly& q) const {
    Poly s;
    for (std::size_t i = c_.size(); i-- > 0;) s = s * q + Poly::constant(c_[i]);
    return s;
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const mpq_class& v = c_[i];
        if (v == 0) continue;
        mpq_class a = abs(v);
        if (out.empty()) {
            if (v < 0) out += "-";
        } else {
            out += v < 0 ? " - " : " + ";
        }
        bool unit = a == 1 && i > 0;
        if (!unit) out += a.get_str();
        if (i > 0) {
            if (!unit) out += "*";
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator-(const Poly& a) { return a * mpq_class(-1); }
Poly operator*(Poly a, const mpq_class& s) { return a *= s; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<mpq_class> c(a.coeffs().size() + b.coeffs().size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return Poly(std::move(c));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
    std::vector<mpq_class> r = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {Poly(), a};
    std::vector<mpq_class> q(static_cast<std::size_t>(a.degree() - db + 1), mpq_class(0));
    for (int i = a.degree(); i >= db; --i) {
        mpq_class f = r[static_cast<std::size_t>(i)] / b.lead();
        if (f == 0) continue;
        q[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * (mpq_class(1) / a.lead());
}

Poly inverse_mod(const Poly& a, const Poly& m, Poly* g) {
    // Invariant: s0*a = r0, s1*a = r1 (mod m).
    Poly r0 = m, r1 = a % m, s0, s1 = Poly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        Poly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.is_zero()) {
        if (g) *g = r0;
        return Poly();
    }
    mpq_class inv = mpq_class(1) / r0.lead();
    if (g) *g = r0 * inv;
    return (s0 * inv) % m;
}

NumberField::NumberField(std::vector<mpz_class> min_poly) : int_coeffs_(std::move(min_poly)) {
    std::vector<mpq_class> c;
    for (const auto& v : int_coeffs_) c.emplace_back(v);
    p_ = Poly(std::move(c));
    if (p_.degree() < 1 || p_.lead() != 1)
        throw Error(Errc::SchemaError, "defining polynomial must be monic of positive degree");
    if (gcd(p_, p_.derivative()).degree() != 0)
        throw Error(Errc::NonInvertible, "defining polynomial is not squarefree");
}

FieldPtr make_field(std::vector<mpz_class> min_poly) {
    return std::make_shared<const NumberField>(std::move(min_poly));
}

FieldElement::FieldElement(FieldPtr k, const Poly& rep) : k_(std::move(k)), rep_(rep % k_->poly()) {}
FieldElement::FieldElement(FieldPtr k, const mpq_class& c) : k_(std::move(k)), rep_(Poly::constant(c)) {}
FieldElement FieldElement::x(FieldPtr k) { return FieldElement(std::move(k), Poly::x()); }

std::vector<mpq_class> FieldElement::coeffs() const {
    std::vector<mpq_class> c(static_cast<std::size_t>(k_->degree()), mpq_class(0));
    for (std::size_t i = 0; i < rep_.coeffs().size(); ++i) c[i] = rep_.coeffs()[i];
    return c;
}

bool FieldElement::is_one() const { return rep_.degree() == 0 && rep_.lead() == 1; }

void FieldElement::check_same(const FieldElement& o) const {
    if (k_ != o.k_ && !(k_ && o.k_ && k_->min_poly() == o.k_->min_poly()))
        throw Error(Errc::DomainMismatch, "elements of different fields");
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(o);
    rep_ += o.rep_;
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same(o);
    rep_ -= o.rep_;
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(o);
    rep_ = (rep_ * o.rep_) % k_->poly();
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    check_same(o);
    return *this *= o.inverse();
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    Poly g;
    Poly s = inverse_mod(rep_, k_->poly(), &g);
    if (g.degree() != 0) throw Error(Errc::NonInvertible, "element shares a factor with the defining polynomial");
    return FieldElement(k_, s);
}

FieldElement FieldElement::pow(long e) const {
    FieldElement base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    FieldElement r(k_, mpq_class(1));
    while (n) {
        if (n & 1) r *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return r;
}

mpq_class FieldElement::norm() const {
    const std::size_t n = static_cast<std::size_t>(k_->degree());
    RatMatrix m(n, n, mpq_class(0));
    FieldElement col = *this;
    const FieldElement xk = FieldElement::x(k_);
    for (std::size_t j = 0; j < n; ++j) {
        auto c = col.coeffs();
        for (std::size_t i = 0; i < n; ++i) m(i, j) = c[i];
        col *= xk;
    }
    return det(std::move(m));
}

bool FieldElement::is_root_of_min_poly() const {
    return (k_->poly().compose(rep_) % k_->poly()).is_zero();
}

FieldElement FieldElement::apply_aut(const FieldElement& q) const {
    check_same(q);
    if (!q.is_root_of_min_poly()) throw Error(Errc::NotAnAutomorphism, "p(q) is not zero mod p");
    Poly s;
    const Poly& p = k_->poly();
    for (std::size_t i = rep_.coeffs().size(); i-- > 0;) s = (s * q.rep_ + Poly::constant(rep_.coeffs()[i])) % p;
    return FieldElement(k_, s);
}

bool FieldElement::operator==(const FieldElement& o) const {
    check_same(o);
    return rep_ == o.rep_;
}

FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
FieldElement operator-(const FieldElement& a) { return FieldElement(a.field(), -a.rep()); }
FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

RealRoot refine_root(const Poly& p, const RealRoot& r, long target_bits) {
    const mpq_class plo = p.eval(r.lo), phi = p.eval(r.hi);
    if (r.lo >= r.hi || sgn(plo) * sgn(phi) >= 0)
        throw Error(Errc::RefinementEscapedInterval, "p does not change sign on the isolating interval");
    const long work = std::max(target_bits, current_precision()) + 32;
    PrecisionScope scope(work);
    const Poly dp = p.derivative();
    Real lo(r.lo), hi(r.hi);
    Real x(r.approx);
    x = Real(x.to_rational());  // re-round at working precision
    if (x < lo || x > hi) x = (lo + hi) / Real(2L);
    const int slo = sgn(plo);
    const Real goal = Real::pow2(-(target_bits + 8));
    for (int iter = 0; iter < 4 * work + 64; ++iter) {
        Real fx = p.eval(x);
        if (fx.is_zero()) break;
        // Shrink the bracket around the root using the sign at x.
        if (fx.sign() == slo) lo = x;
        else hi = x;
        Real dfx = dp.eval(x);
        Real next = dfx.is_zero() ? (lo + hi) / Real(2L) : x - fx / dfx;
        if (next <= lo || next >= hi) next = (lo + hi) / Real(2L);
        Real step = abs(next - x);
        x = std::move(next);
        if (step <= goal * (abs(x) + Real(1L)) || hi - lo <= goal) break;
    }
    if (x < Real(r.lo) || x > Real(r.hi))
        throw Error(Errc::RefinementEscapedInterval, "refined root left its interval");
    RealRoot out;
    out.lo = r.lo;
    out.hi = r.hi;
    out.precision_bits = target_bits;
    out.approx = x;
    Real fx = abs(p.eval(x)), dfx = abs(dp.eval(x));
    // Newton's estimate, doubled, plus one ulp of the working precision.
    out.error = (dfx.is_zero() ? abs(hi - lo) : Real(2L) * fx / dfx) + Real::pow2(x.exponent2() - work);
    return out;
}

Real nf_embed(const FieldElement& a, const RealRoot& r, long bits, Real* error_bound) {
    const auto& c = a.rep().coeffs();
    Real xi = r.approx;
    Real axi = abs(xi);
    Real v(0L), mag(0L), dmag(0L);
    for (std::size_t i = c.size(); i-- > 0;) {
        v = v * xi + Real(c[i]);
        dmag = dmag * axi + mag;
        mag = mag * axi + abs(Real(c[i]));
    }
    const long prec = current_precision();
    // Rounding in Horner: about 2n ulps of the magnitude sum; root error via |a'|.
    Real bound = Real(static_cast<long>(2 * c.size() + 2)) * Real::pow2(-prec) * mag + r.error * dmag;
    Real scale = abs(v);
    if (scale < Real(1L)) scale = Real(1L);
    if (bound > tolerance(bits) * scale)
        throw Error(Errc::PrecisionExhausted, "embedding error bound exceeds tolerance");
    if (error_bound) *error_bound = bound;
    return v;
}

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    std::string t = s;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.find('.') != std::string::npos || t.find('e') != std::string::npos || t.find('E') != std::string::npos) {
        // Exact decimal: mantissa over a power of ten.
        std::string mant = t, ex;
        auto epos = t.find_first_of("eE");
        if (epos != std::string::npos) {
            mant = t.substr(0, epos);
            ex = t.substr(epos + 1);
        }
        long e10 = ex.empty() ? 0 : std::stol(ex);
        auto dot = mant.find('.');
        if (dot != std::string::npos) {
            e10 -= static_cast<long>(mant.size() - dot - 1);
            mant.erase(dot, 1);
        }
        mpz_class m;
        if (m.set_str(mant, 10) != 0) throw std::invalid_argument("not a rational: " + s);
        mpz_class ten;
        mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
        q = e10 < 0 ? mpq_class(m, ten) : mpq_class(m * ten);
        q.canonicalize();
        return q;
    }
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("not a rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

}  // namespace starkcheck
