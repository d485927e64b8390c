#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace blc {

// Exact arithmetic over Z[sqrt(2), 1/2]: value = (a + b*sqrt(2)) / 2^f.
// Normal form: f == 0, or a and b not both even.  Closed under +,-,*;
// equality and sign are decided exactly.  All integer operations are
// overflow-checked; coefficients stay within int64 for the group elements
// handled here (words of length <= 36).
struct Scalar {
    long long a = 0;
    long long b = 0;
    int f = 0;

    Scalar() = default;
    Scalar(long long a_, long long b_, int f_) : a(a_), b(b_), f(f_) { normalize(); }

    static Scalar integer(long long v) { return Scalar(v, 0, 0); }
    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1, 0, 0); }

    // 2^(m/2) for any integer m (negative allowed).
    static Scalar pow2_half(int m) {
        if (m >= 0) {
            if (m % 2 == 0) return Scalar(shl(1, m / 2), 0, 0);
            return Scalar(0, shl(1, (m - 1) / 2), 0);
        }
        int k = -m;
        if (k % 2 == 0) return Scalar(1, 0, k / 2);
        return Scalar(0, 1, (k + 1) / 2);  // 2^{-k/2} = sqrt2 / 2^{(k+1)/2}
    }

    bool is_zero() const { return a == 0 && b == 0; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.a == y.a && x.b == y.b && x.f == y.f;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    friend Scalar operator-(const Scalar& x) { return Scalar(neg(x.a), neg(x.b), x.f); }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        int F = x.f > y.f ? x.f : y.f;
        long long xa = shl(x.a, F - x.f), xb = shl(x.b, F - x.f);
        long long ya = shl(y.a, F - y.f), yb = shl(y.b, F - y.f);
        return Scalar(add(xa, ya), add(xb, yb), F);
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        // (a + b s)(a' + b' s) = (aa' + 2bb') + (ab' + a'b) s,  s = sqrt2
        long long ra = add(mul(x.a, y.a), mul(2, mul(x.b, y.b)));
        long long rb = add(mul(x.a, y.b), mul(x.b, y.a));
        return Scalar(ra, rb, x.f + y.f);
    }

    Scalar& operator+=(const Scalar& y) { *this = *this + y; return *this; }
    Scalar& operator-=(const Scalar& y) { *this = *this - y; return *this; }
    Scalar& operator*=(const Scalar& y) { *this = *this * y; return *this; }

    // Exact sign of a + b*sqrt2 (the 2^-f factor is positive).
    int sign() const {
        if (a == 0 && b == 0) return 0;
        if (a >= 0 && b >= 0) return 1;
        if (a <= 0 && b <= 0) return -1;
        // opposite signs: compare a^2 with 2 b^2
        long long a2 = mul(a, a), b2 = mul(2, mul(b, b));
        if (a > 0) return a2 > b2 ? 1 : (a2 < b2 ? -1 : 0);
        return a2 < b2 ? 1 : (a2 > b2 ? -1 : 0);
    }

    double to_double() const { return (double(a) + double(b) * std::sqrt(2.0)) / std::ldexp(1.0, f); }

    std::string str() const {
        std::string s = "(" + std::to_string(a);
        if (b != 0) s += (b > 0 ? "+" : "") + std::to_string(b) + "*sqrt2";
        s += ")";
        if (f > 0) s += "/2^" + std::to_string(f);
        return s;
    }

  private:
    void normalize() {
        while (f > 0 && a % 2 == 0 && b % 2 == 0) { a /= 2; b /= 2; --f; }
        if (a == 0 && b == 0) f = 0;
    }
    static long long add(long long x, long long y) {
        long long r;
        if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("Scalar: int64 overflow in add");
        return r;
    }
    static long long mul(long long x, long long y) {
        long long r;
        if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("Scalar: int64 overflow in mul");
        return r;
    }
    static long long neg(long long x) {
        if (x == INT64_MIN) throw std::overflow_error("Scalar: int64 overflow in neg");
        return -x;
    }
    static long long shl(long long x, int k) {
        long long r = x;
        while (k-- > 0) r = mul(r, 2);
        return r;
    }
};

}  // namespace blc
