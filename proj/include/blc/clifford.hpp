#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "blc/perm.hpp"
#include "blc/scalar.hpp"

namespace blc {

// ---------------------------------------------------------------------------
// Basis monomials of Cliff^0_{n+1}.
//
// The generators ha_1..ha_n satisfy ha_i^2 = -1 and ha_j ha_i = -ha_i ha_j
// exactly when |i-j| = 1 (they commute otherwise).  A basis monomial
// e_S = prod_{i in S, ascending} ha_i is stored as a bitmask (bit i-1 for
// generator i).  Signs under multiplication come from counting
// adjacent-index swaps in a stable merge plus one -1 per annihilated pair.
// ---------------------------------------------------------------------------

using Mask = uint32_t;

inline int mono_mul_sign(Mask s, Mask t) {
    int swaps = __builtin_popcount(t & (s >> 1));  // t elements passing t+1 in s
    int annih = __builtin_popcount(s & t);
    return ((swaps + annih) & 1) ? -1 : 1;
}

// +-1 with |q| = e_S: a signed basis monomial, the working representation of
// elements of Quat_{n+1}.
struct Mono {
    Mask mask = 0;
    int sign = 1;

    friend bool operator==(const Mono& x, const Mono& y) { return x.mask == y.mask && x.sign == y.sign; }
    friend bool operator!=(const Mono& x, const Mono& y) { return !(x == y); }
    friend Mono operator*(const Mono& x, const Mono& y) {
        return Mono{x.mask ^ y.mask, x.sign * y.sign * mono_mul_sign(x.mask, y.mask)};
    }
    friend Mono operator-(const Mono& x) { return Mono{x.mask, -x.sign}; }
    Mono inverse() const {
        // e_S e_S = mono_mul_sign(S,S) e_0
        return Mono{mask, sign * mono_mul_sign(mask, mask)};
    }
    uint32_t code() const { return (mask << 1) | uint32_t(sign < 0); }
    static Mono from_code(uint32_t c) { return Mono{c >> 1, (c & 1) ? -1 : 1}; }
    static Mono gen(int i) { return Mono{Mask(1u) << (i - 1), 1}; }
    static Mono unit() { return Mono{0, 1}; }
};

// group commutator [q0,q1] in {-1,+1}: parity of adjacent index pairs
inline int commutator(Mask s, Mask t) {
    int c = __builtin_popcount(t & (s >> 1)) + __builtin_popcount(s & (t >> 1));
    return (c & 1) ? -1 : 1;
}
inline int commutator(const Mono& a, const Mono& b) { return commutator(a.mask, b.mask); }
// [ha_i, q]
inline int commutator_gen(int i, Mask q) {
    Mask adj = 0;
    if (i >= 2) adj |= Mask(1u) << (i - 2);
    adj |= Mask(1u) << i;  // generator i+1 (bit i); harmless if > n, never set in q
    return (__builtin_popcount(q & adj) & 1) ? -1 : 1;
}

// ---------------------------------------------------------------------------
// Exact elements of Cliff^0_{n+1}: dense coefficient vector over the 2^n
// basis monomials (n <= 8 in practice).
// ---------------------------------------------------------------------------
struct CliffElem {
    int n = 0;
    std::vector<Scalar> c;  // size 2^n, index = mask

    CliffElem() = default;
    explicit CliffElem(int n_) : n(n_), c(size_t(1) << n_) {}

    static CliffElem zero(int n) { return CliffElem(n); }
    static CliffElem unit(int n) {
        CliffElem z(n);
        z.c[0] = Scalar::one();
        return z;
    }
    static CliffElem monomial(int n, const Mono& m, const Scalar& coeff = Scalar::one()) {
        CliffElem z(n);
        if (m.mask >= z.c.size()) throw std::invalid_argument("CliffElem: monomial mask out of range");
        z.c[m.mask] = m.sign < 0 ? -coeff : coeff;
        return z;
    }
    // acute generator (1 + ha_i)/sqrt2
    static CliffElem acute_gen(int n, int i) {
        CliffElem z(n);
        Scalar h = Scalar::pow2_half(-1);
        z.c[0] = h;
        z.c[Mask(1u) << (i - 1)] = h;
        return z;
    }
    static CliffElem grave_gen(int n, int i) {
        CliffElem z(n);
        Scalar h = Scalar::pow2_half(-1);
        z.c[0] = h;
        z.c[Mask(1u) << (i - 1)] = -h;
        return z;
    }

    bool is_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    Scalar re() const { return c[0]; }

    friend bool operator==(const CliffElem& x, const CliffElem& y) { return x.n == y.n && x.c == y.c; }
    friend bool operator!=(const CliffElem& x, const CliffElem& y) { return !(x == y); }

    friend CliffElem operator+(const CliffElem& x, const CliffElem& y) {
        check(x, y);
        CliffElem r(x.n);
        for (size_t m = 0; m < x.c.size(); ++m) r.c[m] = x.c[m] + y.c[m];
        return r;
    }
    friend CliffElem operator-(const CliffElem& x, const CliffElem& y) {
        check(x, y);
        CliffElem r(x.n);
        for (size_t m = 0; m < x.c.size(); ++m) r.c[m] = x.c[m] - y.c[m];
        return r;
    }
    friend CliffElem operator-(const CliffElem& x) {
        CliffElem r(x.n);
        for (size_t m = 0; m < x.c.size(); ++m) r.c[m] = -x.c[m];
        return r;
    }
    friend CliffElem operator*(const CliffElem& x, const CliffElem& y) {
        check(x, y);
        CliffElem r(x.n);
        for (Mask s = 0; s < x.c.size(); ++s) {
            if (x.c[s].is_zero()) continue;
            for (Mask t = 0; t < y.c.size(); ++t) {
                if (y.c[t].is_zero()) continue;
                Scalar v = x.c[s] * y.c[t];
                if (mono_mul_sign(s, t) < 0) v = -v;
                r.c[s ^ t] += v;
            }
        }
        return r;
    }
    CliffElem mul_mono(const Mono& m) const {  // right multiplication by a monomial
        CliffElem r(n);
        if (m.mask >= c.size()) throw std::invalid_argument("CliffElem: monomial mask out of range");
        for (Mask s = 0; s < c.size(); ++s) {
            if (c[s].is_zero()) continue;
            int sg = m.sign * mono_mul_sign(s, m.mask);
            r.c[s ^ m.mask] = sg < 0 ? -c[s] : c[s];
        }
        return r;
    }
    CliffElem lmul_mono(const Mono& m) const {  // left multiplication by a monomial
        CliffElem r(n);
        for (Mask s = 0; s < c.size(); ++s) {
            if (c[s].is_zero()) continue;
            int sg = m.sign * mono_mul_sign(m.mask, s);
            r.c[s ^ m.mask] = sg < 0 ? -c[s] : c[s];
        }
        return r;
    }

    // reversal anti-automorphism; inverts elements of Spin_{n+1}.
    // tau(ha_i) = -ha_i, plus the reordering sign of reversing e_S.
    CliffElem reverse() const {
        CliffElem r(n);
        for (Mask s = 0; s < c.size(); ++s) {
            if (c[s].is_zero()) continue;
            int sg = __builtin_popcount(s) + __builtin_popcount(s & (s >> 1));
            r.c[s] = (sg & 1) ? -c[s] : c[s];
        }
        return r;
    }

    // E in {+-1}^n acting by (ha_i)^E = E_i ha_i; eneg = bitmask of -1 entries
    CliffElem act_E(Mask eneg) const {
        CliffElem r(n);
        for (Mask s = 0; s < c.size(); ++s) {
            if (c[s].is_zero()) continue;
            r.c[s] = (__builtin_popcount(s & eneg) & 1) ? -c[s] : c[s];
        }
        return r;
    }

    // The single signed monomial, if this element is one (used for Quat values).
    Mono as_mono() const {
        int found = -1;
        for (Mask s = 0; s < c.size(); ++s) {
            if (c[s].is_zero()) continue;
            if (found >= 0) throw std::runtime_error("CliffElem: not a monomial");
            found = int(s);
        }
        if (found < 0) throw std::runtime_error("CliffElem: zero is not a monomial");
        const Scalar& v = c[found];
        if (v == Scalar::one()) return Mono{Mask(found), 1};
        if (v == -Scalar::one()) return Mono{Mask(found), -1};
        throw std::runtime_error("CliffElem: monomial with non-unit coefficient");
    }

  private:
    static void check(const CliffElem& x, const CliffElem& y) {
        if (x.n != y.n) throw std::invalid_argument("CliffElem: size mismatch");
    }
};

inline Scalar inner(const CliffElem& x, const CliffElem& y) {
    if (x.n != y.n) throw std::invalid_argument("inner: size mismatch");
    Scalar s;
    for (size_t m = 0; m < x.c.size(); ++m) s += x.c[m] * y.c[m];
    return s;
}

// ---------------------------------------------------------------------------
// Signed permutation matrices (the image of tilde B^+ under Pi).
// Row i carries a single +-1 in column col[i].
// ---------------------------------------------------------------------------
struct SignedPerm {
    std::vector<uint8_t> col;
    std::vector<int8_t> sgn;

    SignedPerm() = default;
    static SignedPerm identity(int m) {
        SignedPerm p;
        p.col.resize(m);
        p.sgn.assign(m, 1);
        for (int i = 0; i < m; ++i) p.col[i] = uint8_t(i);
        return p;
    }
    // Pi(acute a_i): the pi/2 rotation block [[0,-1],[1,0]] at rows i,i+1
    static SignedPerm acute_gen(int m, int i) {
        SignedPerm p = identity(m);
        p.col[i - 1] = uint8_t(i);
        p.sgn[i - 1] = -1;
        p.col[i] = uint8_t(i - 1);
        p.sgn[i] = 1;
        return p;
    }
    int size() const { return int(col.size()); }
    friend bool operator==(const SignedPerm& x, const SignedPerm& y) { return x.col == y.col && x.sgn == y.sgn; }
    friend SignedPerm operator*(const SignedPerm& x, const SignedPerm& y) {
        SignedPerm r;
        int m = x.size();
        r.col.resize(m);
        r.sgn.resize(m);
        for (int i = 0; i < m; ++i) {
            r.col[i] = y.col[x.col[i]];
            r.sgn[i] = int8_t(x.sgn[i] * y.sgn[x.col[i]]);
        }
        return r;
    }
    SignedPerm transpose() const {
        SignedPerm r;
        int m = size();
        r.col.resize(m);
        r.sgn.resize(m);
        for (int i = 0; i < m; ++i) {
            r.col[col[i]] = uint8_t(i);
            r.sgn[col[i]] = sgn[i];
        }
        return r;
    }
    Permutation perm() const {
        std::vector<uint8_t> v(col.begin(), col.end());
        return Permutation(std::move(v));
    }
    int det() const {
        int d = 1;
        for (int8_t s : sgn) d *= s;
        Permutation p = perm();
        return d * ((inv_count(p) & 1) ? -1 : 1);
    }
    std::vector<std::vector<int>> matrix() const {
        int m = size();
        std::vector<std::vector<int>> a(m, std::vector<int>(m, 0));
        for (int i = 0; i < m; ++i) a[i][col[i]] = sgn[i];
        return a;
    }
};

// ---------------------------------------------------------------------------
// Elements of tilde B^+_{n+1}: exact Clifford expansion carried in lockstep
// with the signed permutation matrix image under Pi.
// ---------------------------------------------------------------------------
struct GroupElem {
    CliffElem z;
    SignedPerm so;

    GroupElem() = default;
    GroupElem(CliffElem z_, SignedPerm so_) : z(std::move(z_)), so(std::move(so_)) {}

    static GroupElem unit(int n) { return GroupElem(CliffElem::unit(n), SignedPerm::identity(n + 1)); }
    static GroupElem acute_gen(int n, int i) {
        return GroupElem(CliffElem::acute_gen(n, i), SignedPerm::acute_gen(n + 1, i));
    }
    static GroupElem quat(int n, const Mono& m) {
        // Pi(e_S): diagonal with -1 where exactly one of j-1, j lies in S
        SignedPerm p = SignedPerm::identity(n + 1);
        for (int j = 0; j < n + 1; ++j) {
            int b = 0;
            if (j >= 1 && (m.mask >> (j - 1) & 1)) ++b;
            if (j < n && (m.mask >> j & 1)) ++b;
            if (b == 1) p.sgn[j] = -1;
        }
        return GroupElem(CliffElem::monomial(n, m), p);
    }

    int n() const { return z.n; }
    friend bool operator==(const GroupElem& x, const GroupElem& y) { return x.z == y.z; }
    friend GroupElem operator*(const GroupElem& x, const GroupElem& y) {
        return GroupElem(x.z * y.z, x.so * y.so);
    }
    friend GroupElem operator-(const GroupElem& x) { return GroupElem(-x.z, x.so); }
    GroupElem inverse() const { return GroupElem(z.reverse(), so.transpose()); }
    GroupElem mul_mono(const Mono& m) const { return GroupElem(z.mul_mono(m), so * quat(z.n, m).so); }
    GroupElem act_E(Mask eneg) const {
        GroupElem e = quat_diag(eneg);
        return GroupElem(z.act_E(eneg), e.so * so * e.so);
    }
    Scalar re() const { return z.re(); }
    Permutation perm() const { return so.perm(); }

  private:
    // any diagonal D with D_j D_{j+1} = E_j, as a signed-perm conjugator
    GroupElem quat_diag(Mask eneg) const {
        SignedPerm p = SignedPerm::identity(z.n + 1);
        int cur = 1;
        for (int j = 0; j < z.n + 1; ++j) {
            p.sgn[j] = int8_t(cur);
            if (j < z.n && (eneg >> j & 1)) cur = -cur;
        }
        return GroupElem(CliffElem::unit(z.n), p);
    }
};

// acute sigma = product of acute generators along any reduced word
inline GroupElem acute(const Permutation& s) {
    GroupElem g = GroupElem::unit(s.n());
    for (int l : canonical_word(s).letters) g = g * GroupElem::acute_gen(s.n(), l);
    return g;
}
inline GroupElem acute(const Word& w) {
    GroupElem g = GroupElem::unit(w.n);
    for (int l : w.letters) g = g * GroupElem::acute_gen(w.n, l);
    return g;
}
inline GroupElem grave(const Permutation& s) { return acute(s).inverse(); }

// |Re(z)| from the rotation angles of Pi(z): product of cos(theta/2) over the
// rotation blocks.  A signed permutation matrix decomposes into cycles; a
// cycle of length m and sign product s has eigenangles (2 pi t + [s<0] pi)/m.
inline double re_via_eigenvalues(const GroupElem& g) {
    const SignedPerm& p = g.so;
    int m = p.size();
    std::vector<char> seen(m, 0);
    double prod = 1.0;
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < m; ++i) {
        if (seen[i]) continue;
        int len = 0, sgn = 1, j = i;
        while (!seen[j]) {
            seen[j] = 1;
            sgn *= p.sgn[j];
            j = p.col[j];
            ++len;
        }
        double off = (sgn < 0) ? pi : 0.0;
        // eigenangles theta in (0, pi], one per conjugate pair
        for (int t = 0; t < len; ++t) {
            double th = (2.0 * pi * t + off) / len;
            if (th > 1e-12 && th <= pi + 1e-12) prod *= std::cos(th / 2.0);
        }
    }
    return std::abs(prod);
}

}  // namespace blc
