#pragma once

#include "starkcheck/error.hpp"
#include "starkcheck/numfield.hpp"
#include "starkcheck/real.hpp"

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace starkcheck {

// Finite abelian group of automorphisms of K. Element 0 is the identity; the rest
// are sorted by their polynomials, comparing coefficients from x^(n-1) down.
struct AbelianGroup {
    FieldPtr field;
    std::vector<FieldElement> elements;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;
    // G = sum of Z/invariants[k], generated by elements[generators[k]].
    std::vector<long> invariants;
    std::vector<int> generators;
    // coords[i][k]: exponent of generator k in element i.
    std::vector<std::vector<long>> coords;

    std::size_t order() const { return elements.size(); }
    bool is_cyclic() const { return invariants.size() <= 1; }
    int index_of(const FieldElement& q) const;
    int index_of_label(const std::string& label) const;
    int pow(int g, long e) const;
    long element_order(int g) const;
};

using GroupPtr = std::shared_ptr<const AbelianGroup>;

// `labels` may be empty; otherwise parallel to `automorphisms` and carried along
// through the reordering. Throws NotClosed, NotAbelian, NoIdentity, NotAnAutomorphism.
GroupPtr build_group(const std::vector<FieldElement>& automorphisms, const std::vector<std::string>& labels = {});

// A character with values stored as exact turn fractions in [0, 1).
struct Character {
    std::vector<long> exps;         // exponent on each cyclic generator
    std::vector<mpq_class> angle;   // per group element
    long order = 1;

    bool is_trivial() const { return order == 1; }
    Complex value(int g) const { return unit_root(angle[static_cast<std::size_t>(g)]); }
    std::vector<int> kernel() const;
    bool contains_in_kernel(const std::vector<int>& subgroup) const;
    Character conj() const;
    Character power(long a) const;
    bool operator==(const Character& o) const { return angle == o.angle; }
};

// Trivial character first, then lexicographic in the exponent tuples.
std::vector<Character> character_table(const AbelianGroup& G);
// Index of a character in the table, matched by its angles; -1 if absent.
int find_character(const std::vector<Character>& table, const Character& chi);

template <class T>
struct GroupRingElem {
    GroupPtr G;
    std::vector<T> c;

    GroupRingElem() = default;
    explicit GroupRingElem(GroupPtr g) : G(std::move(g)), c(G->order(), T(0)) {}
    GroupRingElem(GroupPtr g, std::vector<T> coeffs) : G(std::move(g)), c(std::move(coeffs)) {}

    static GroupRingElem basis(GroupPtr g, int sigma) {
        GroupRingElem e(std::move(g));
        e.c[static_cast<std::size_t>(sigma)] = T(1);
        return e;
    }
    // Sum of the elements of a subgroup (N_G when the subgroup is all of G).
    static GroupRingElem norm_element(GroupPtr g, const std::vector<int>& subgroup) {
        GroupRingElem e(std::move(g));
        for (int s : subgroup) e.c[static_cast<std::size_t>(s)] += T(1);
        return e;
    }
    static GroupRingElem norm_element(GroupPtr g) {
        GroupRingElem e(g);
        for (auto& v : e.c) v = T(1);
        return e;
    }

    const T& operator[](int s) const { return c[static_cast<std::size_t>(s)]; }
    T& operator[](int s) { return c[static_cast<std::size_t>(s)]; }

    GroupRingElem& operator+=(const GroupRingElem& o) {
        check(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    GroupRingElem& operator-=(const GroupRingElem& o) {
        check(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    GroupRingElem& operator*=(const T& s) {
        for (auto& v : c) v *= s;
        return *this;
    }
    // sigma -> sigma^-1
    GroupRingElem involution() const {
        GroupRingElem r(G);
        for (std::size_t i = 0; i < c.size(); ++i) r.c[static_cast<std::size_t>(G->inv[i])] = c[i];
        return r;
    }
    bool operator==(const GroupRingElem& o) const { return G == o.G && c == o.c; }

    void check(const GroupRingElem& o) const {
        if (G != o.G) throw Error(Errc::DomainMismatch, "group ring elements over different groups");
    }
};

template <class T>
GroupRingElem<T> operator+(GroupRingElem<T> a, const GroupRingElem<T>& b) { return a += b; }
template <class T>
GroupRingElem<T> operator-(GroupRingElem<T> a, const GroupRingElem<T>& b) { return a -= b; }
template <class T>
GroupRingElem<T> operator*(GroupRingElem<T> a, const T& s) { return a *= s; }
template <class T>
GroupRingElem<T> operator*(const GroupRingElem<T>& a, const GroupRingElem<T>& b) {
    a.check(b);
    GroupRingElem<T> r(a.G);
    const auto& mul = a.G->mul;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == T(0)) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[static_cast<std::size_t>(mul[i][j])] += a.c[i] * b.c[j];
    }
    return r;
}

using QGroupRing = GroupRingElem<mpq_class>;
using ZGroupRing = GroupRingElem<mpz_class>;

// Complex group ring elements; kept separate since Complex has no == against 0.
struct CGroupRing {
    GroupPtr G;
    std::vector<Complex> c;

    CGroupRing() = default;
    explicit CGroupRing(GroupPtr g) : G(std::move(g)), c(G->order()) {}

    CGroupRing& operator+=(const CGroupRing& o);
    CGroupRing& operator*=(const Complex& s);
    const Complex& operator[](int s) const { return c[static_cast<std::size_t>(s)]; }
};

CGroupRing operator*(const CGroupRing& a, const CGroupRing& b);
CGroupRing to_complex(const QGroupRing& a);

Complex apply_char(const Character& chi, const QGroupRing& a);
Complex apply_char(const Character& chi, const CGroupRing& a);

// e_chi = (1/|G|) sum chi(s) s^-1
CGroupRing idempotent(const Character& chi, const GroupPtr& G);
// Exact sum of e_chi over a Galois-stable set; NotGaloisStable, RoundingExceededTolerance.
QGroupRing rational_idempotent_sum(const std::vector<Character>& chars, const GroupPtr& G);

// Integer coefficients or NonIntegralCoefficients.
ZGroupRing to_integral(const QGroupRing& a);
// Least d >= 1 with d*a integral.
mpz_class denominator(const QGroupRing& a);

}  // namespace starkcheck
