#include "starkcheck/groupalg.hpp"

#include "starkcheck/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace starkcheck {

namespace {

bool poly_less(const FieldElement& a, const FieldElement& b) {
    auto ca = a.coeffs(), cb = b.coeffs();
    for (std::size_t i = ca.size(); i-- > 0;)
        if (ca[i] != cb[i]) return ca[i] < cb[i];
    return false;
}

mpq_class frac(const mpq_class& t) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    mpq_class r = t - mpq_class(f);
    r.canonicalize();
    return r;
}

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

int AbelianGroup::index_of(const FieldElement& q) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == q) return static_cast<int>(i);
    return -1;
}

int AbelianGroup::index_of_label(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    return -1;
}

int AbelianGroup::pow(int g, long e) const {
    long n = element_order(g);
    e = mod(e, n);
    int r = 0;
    for (long k = 0; k < e; ++k) r = mul[static_cast<std::size_t>(r)][static_cast<std::size_t>(g)];
    return r;
}

long AbelianGroup::element_order(int g) const {
    long k = 1;
    for (int r = g; r != 0; r = mul[static_cast<std::size_t>(r)][static_cast<std::size_t>(g)]) ++k;
    return k;
}

GroupPtr build_group(const std::vector<FieldElement>& automorphisms, const std::vector<std::string>& labels) {
    if (automorphisms.empty()) throw Error(Errc::NoIdentity, "empty automorphism list");
    if (!labels.empty() && labels.size() != automorphisms.size())
        throw Error(Errc::SchemaError, "automorphism labels do not match the list");
    const FieldPtr k = automorphisms.front().field();
    for (const auto& q : automorphisms)
        if (!q.is_root_of_min_poly()) throw Error(Errc::NotAnAutomorphism, "p(q) != 0 for q = " + q.rep().to_string());

    const FieldElement id = FieldElement::x(k);
    std::vector<std::size_t> order(automorphisms.size());
    std::iota(order.begin(), order.end(), 0);
    auto idpos = std::find_if(order.begin(), order.end(), [&](std::size_t i) { return automorphisms[i] == id; });
    if (idpos == order.end()) throw Error(Errc::NoIdentity, "identity automorphism x is missing");
    std::iter_swap(order.begin(), idpos);
    std::sort(order.begin() + 1, order.end(),
              [&](std::size_t a, std::size_t b) { return poly_less(automorphisms[a], automorphisms[b]); });

    auto G = std::make_shared<AbelianGroup>();
    G->field = k;
    for (std::size_t i : order) {
        G->elements.push_back(automorphisms[i]);
        G->labels.push_back(labels.empty() ? (i == order[0] ? "id" : "s" + std::to_string(G->labels.size())) : labels[i]);
    }
    const std::size_t n = G->elements.size();
    for (std::size_t i = 1; i < n; ++i)
        if (G->elements[i] == G->elements[i - 1]) throw Error(Errc::NotClosed, "duplicate automorphism");

    G->mul.assign(n, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // (s_i s_j)(x) = s_i(q_j(x)) = q_j(q_i(x))
            int idx = G->index_of(G->elements[j].apply_aut(G->elements[i]));
            if (idx < 0) throw Error(Errc::NotClosed, "composition of " + G->labels[i] + " and " + G->labels[j] + " is not in the list");
            G->mul[i][j] = idx;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (G->mul[i][j] != G->mul[j][i]) throw Error(Errc::NotAbelian, G->labels[i] + " and " + G->labels[j] + " do not commute");
    G->inv.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (G->mul[i][j] == 0) G->inv[i] = static_cast<int>(j);

    G->coords.assign(n, {});
    int cyc = -1;
    for (std::size_t i = 0; i < n && cyc < 0; ++i)
        if (G->element_order(static_cast<int>(i)) == static_cast<long>(n)) cyc = static_cast<int>(i);
    if (n == 1) {
        // trivial group: no generators
    } else if (cyc >= 0) {
        G->invariants = {static_cast<long>(n)};
        G->generators = {cyc};
        int r = 0;
        for (long e = 0; e < static_cast<long>(n); ++e) {
            G->coords[static_cast<std::size_t>(r)] = {e};
            r = G->mul[static_cast<std::size_t>(r)][static_cast<std::size_t>(cyc)];
        }
    } else {
        // Relations e_i + e_j - e_ij on Z^n, plus e_id; Smith form splits the quotient.
        IntMatrix R(n * n + 1, n, mpz_class(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t row = i * n + j;
                R(row, i) += 1;
                R(row, j) += 1;
                R(row, static_cast<std::size_t>(G->mul[i][j])) -= 1;
            }
        R(n * n, 0) = 1;
        SmithForm f = smith_normal_form(R);
        for (std::size_t kk = 0; kk < n; ++kk) {
            if (f.diag[kk] == 1) continue;
            long d = f.diag[kk].get_si();
            int g = 0;
            for (std::size_t j = 0; j < n; ++j) {
                long e = mod(mpz_class(f.Vinv(kk, j) % d).get_si(), d);
                g = G->mul[static_cast<std::size_t>(g)][static_cast<std::size_t>(G->pow(static_cast<int>(j), e))];
            }
            G->invariants.push_back(d);
            G->generators.push_back(g);
            for (std::size_t i = 0; i < n; ++i) G->coords[i].push_back(mod(mpz_class(f.V(i, kk) % d).get_si(), d));
        }
    }
    // The decomposition must reproduce the table.
    for (std::size_t i = 0; i < n; ++i) {
        int g = 0;
        for (std::size_t kk = 0; kk < G->generators.size(); ++kk)
            g = G->mul[static_cast<std::size_t>(g)][static_cast<std::size_t>(G->pow(G->generators[kk], G->coords[i][kk]))];
        if (g != static_cast<int>(i)) throw Error(Errc::NotClosed, "cyclic decomposition does not reproduce the group");
    }
    return G;
}

std::vector<int> Character::kernel() const {
    std::vector<int> k;
    for (std::size_t i = 0; i < angle.size(); ++i)
        if (angle[i] == 0) k.push_back(static_cast<int>(i));
    return k;
}

bool Character::contains_in_kernel(const std::vector<int>& subgroup) const {
    for (int s : subgroup)
        if (angle[static_cast<std::size_t>(s)] != 0) return false;
    return true;
}

Character Character::conj() const { return power(-1); }

Character Character::power(long a) const {
    Character r = *this;
    for (auto& t : r.angle) t = frac(t * a);
    long o = 1;
    for (const auto& t : r.angle) o = std::lcm(o, t.get_den().get_si());
    r.order = o;
    for (auto& e : r.exps) e *= a;  // not reduced; angles are authoritative
    return r;
}

std::vector<Character> character_table(const AbelianGroup& G) {
    std::vector<Character> out;
    const std::size_t r = G.invariants.size();
    std::vector<long> a(r, 0);
    for (;;) {
        Character chi;
        chi.exps = a;
        chi.angle.resize(G.order());
        long o = 1;
        for (std::size_t i = 0; i < G.order(); ++i) {
            mpq_class t = 0;
            for (std::size_t k = 0; k < r; ++k) t += mpq_class(a[k] * G.coords[i][k], G.invariants[k]);
            chi.angle[i] = frac(t);
            o = std::lcm(o, chi.angle[i].get_den().get_si());
        }
        chi.order = o;
        out.push_back(std::move(chi));
        std::size_t k = r;
        while (k-- > 0) {
            if (++a[k] < G.invariants[k]) break;
            a[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

int find_character(const std::vector<Character>& table, const Character& chi) {
    for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i].angle == chi.angle) return static_cast<int>(i);
    return -1;
}

CGroupRing& CGroupRing::operator+=(const CGroupRing& o) {
    if (G != o.G) throw Error(Errc::DomainMismatch, "group ring elements over different groups");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

CGroupRing& CGroupRing::operator*=(const Complex& s) {
    for (auto& v : c) v *= s;
    return *this;
}

CGroupRing operator*(const CGroupRing& a, const CGroupRing& b) {
    if (a.G != b.G) throw Error(Errc::DomainMismatch, "group ring elements over different groups");
    CGroupRing r(a.G);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[static_cast<std::size_t>(a.G->mul[i][j])] += a.c[i] * b.c[j];
    return r;
}

CGroupRing to_complex(const QGroupRing& a) {
    CGroupRing r(a.G);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = Complex(Real(a.c[i]), Real(0L));
    return r;
}

Complex apply_char(const Character& chi, const QGroupRing& a) {
    Complex s;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != 0) s += chi.value(static_cast<int>(i)) * Complex(Real(a.c[i]));
    return s;
}

Complex apply_char(const Character& chi, const CGroupRing& a) {
    Complex s;
    for (std::size_t i = 0; i < a.c.size(); ++i) s += chi.value(static_cast<int>(i)) * a.c[i];
    return s;
}

CGroupRing idempotent(const Character& chi, const GroupPtr& G) {
    CGroupRing e(G);
    const Real n(static_cast<long>(G->order()));
    for (std::size_t s = 0; s < G->order(); ++s) {
        Complex v = chi.value(static_cast<int>(s));
        e.c[static_cast<std::size_t>(G->inv[s])] = Complex(v.re / n, v.im / n);
    }
    return e;
}

QGroupRing rational_idempotent_sum(const std::vector<Character>& chars, const GroupPtr& G) {
    const long n = static_cast<long>(G->order());
    for (const auto& chi : chars)
        for (long a = 2; a < n; ++a) {
            if (std::gcd(a, n) != 1) continue;
            Character g = chi.power(a);
            bool found = std::any_of(chars.begin(), chars.end(), [&](const Character& c) { return c.angle == g.angle; });
            if (!found) throw Error(Errc::NotGaloisStable, "character set is not closed under Galois conjugation");
        }
    CGroupRing sum(G);
    for (const auto& chi : chars) sum += idempotent(chi, G);
    QGroupRing e(G);
    const Real tol = tolerance(current_precision());
    for (std::size_t s = 0; s < G->order(); ++s) {
        Real scaled = sum.c[s].re * Real(n);
        mpz_class k = scaled.round();
        if (abs(scaled - Real(k)) > tol || abs(sum.c[s].im) > tol)
            throw Error(Errc::RoundingExceededTolerance, "idempotent coefficient is not a multiple of 1/|G|");
        e.c[s] = mpq_class(k, n);
        e.c[s].canonicalize();
    }
    if (!(e * e == e)) throw Error(Errc::RoundingExceededTolerance, "rounded idempotent is not idempotent");
    return e;
}

ZGroupRing to_integral(const QGroupRing& a) {
    ZGroupRing z(a.G);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].get_den() != 1) throw Error(Errc::NonIntegralCoefficients, "coefficient " + a.c[i].get_str() + " is not an integer");
        z.c[i] = a.c[i].get_num();
    }
    return z;
}

mpz_class denominator(const QGroupRing& a) {
    mpz_class d = 1;
    for (const auto& v : a.c) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
    return d;
}

}  // namespace starkcheck
