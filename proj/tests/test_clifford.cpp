#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "blc/clifford.hpp"
#include "oracles.hpp"

using namespace blc;

TEST_CASE("scalar arithmetic", "[clifford]") {
    Scalar h = Scalar::pow2_half(-1);  // 1/sqrt2
    CHECK(h * h == Scalar(1, 0, 1));
    CHECK(Scalar::pow2_half(3) == Scalar(0, 2, 0));
    CHECK(Scalar::pow2_half(-3) == Scalar(0, 1, 2));
    CHECK((Scalar(1, 1, 0) * Scalar(1, -1, 0)) == Scalar::integer(-1));  // (1+s)(1-s) = -1
    CHECK(Scalar(2, 0, 1) == Scalar::one());
    CHECK(Scalar(1, -1, 0).sign() == -1);
    CHECK(Scalar(3, -2, 0).sign() == 1);  // 3 > 2*sqrt2
    CHECK(Scalar(-3, 2, 2).sign() == -1);
    CHECK(Scalar::zero().sign() == 0);
    CHECK(Scalar(0, 1, 1).to_double() == Catch::Approx(std::sqrt(2.0) / 2));
}

TEST_CASE("monomial products", "[clifford]") {
    auto mul = [](std::initializer_list<int> S, std::initializer_list<int> T) {
        Mask s = 0, t = 0;
        for (int i : S) s |= 1u << (i - 1);
        for (int i : T) t |= 1u << (i - 1);
        Mono r = Mono{s, 1} * Mono{t, 1};
        return std::make_pair(r.sign, r.mask);
    };
    CHECK(mul({1}, {1}) == std::make_pair(-1, Mask(0)));        // ha1^2 = -1
    CHECK(mul({2}, {1}) == std::make_pair(-1, Mask(0b11)));     // anticommute
    CHECK(mul({1, 2}, {1}) == std::make_pair(1, Mask(0b10)));   // ha1 ha2 ha1 = ha2
    CHECK(mul({1}, {3}) == std::make_pair(1, Mask(0b101)));     // commute

    // against the matrix model, n = 3: all pairs
    int n = 3;
    for (Mask s = 0; s < 8u; ++s)
        for (Mask t = 0; t < 8u; ++t) {
            Mono r = Mono{s, 1} * Mono{t, 1};
            auto lhs = blc_test::imat_mul(blc_test::mono_matrix(n, s), blc_test::mono_matrix(n, t));
            auto rhs = blc_test::mono_matrix(n, r.mask);
            for (auto& row : rhs)
                for (auto& v : row) v *= r.sign;
            CHECK(lhs == rhs);
        }
}

TEST_CASE("clifford algebra matches the matrix model", "[clifford]") {
    // 10,000 random products for n <= 3, exact entrywise
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int n = 1; n <= 3; ++n) {
        int reps = n == 3 ? 4000 : 3000;
        for (int rep = 0; rep < reps; ++rep) {
            std::vector<long long> xc(1 << n), yc(1 << n);
            CliffElem x(n), y(n);
            for (Mask s = 0; s < xc.size(); ++s) {
                xc[s] = coeff(rng);
                yc[s] = coeff(rng);
                x.c[s] = Scalar::integer(xc[s]);
                y.c[s] = Scalar::integer(yc[s]);
            }
            CliffElem z = x * y;
            auto zm = blc_test::imat_mul(blc_test::clifford_matrix(n, xc),
                                         blc_test::clifford_matrix(n, yc));
            // read back coefficients: z = sum c_S e_S  =>  c_S = <z, e_S>
            for (Mask s = 0; s < xc.size(); ++s) {
                REQUIRE(z.c[s].f == 0);
                REQUIRE(z.c[s].b == 0);
            }
            auto zm2 = blc_test::clifford_matrix(n, [&] {
                std::vector<long long> v(1 << n);
                for (Mask s = 0; s < v.size(); ++s) v[s] = z.c[s].a;
                return v;
            }());
            CHECK(zm == zm2);
        }
    }
}

TEST_CASE("acute elements", "[clifford]") {
    // acute(eta in S3) = (ha1 + ha2)/sqrt2
    GroupElem a3 = acute(Permutation::top(3));
    CliffElem want(2);
    want.c[0b01] = Scalar::pow2_half(-1);
    want.c[0b10] = Scalar::pow2_half(-1);
    CHECK(a3.z == want);
    CHECK(a3.re() == Scalar::zero());

    // square of an acute generator is the hat generator
    GroupElem g = GroupElem::acute_gen(2, 1);
    CHECK((g * g).z == CliffElem::monomial(2, Mono::gen(1)));

    // acute(eta in S4) = (-1 + ha2 + ha1 ha3 - ha1 ha2 ha3)/2
    GroupElem a4 = acute(Permutation::top(4));
    CliffElem w4(3);
    w4.c[0b000] = -Scalar(1, 0, 1);
    w4.c[0b010] = Scalar(1, 0, 1);
    w4.c[0b101] = Scalar(1, 0, 1);
    w4.c[0b111] = -Scalar(1, 0, 1);
    CHECK(a4.z == w4);
    CHECK(a4.re() == -Scalar(1, 0, 1));

    // acute(53421 in S5) = (-a1 - a1a2 + a1a3 - a1a2a3 - a4 + a2a4 - a3a4 - a2a3a4)/(2 sqrt2)
    GroupElem a5 = acute(Permutation::from_oneline("53421"));
    Scalar c = Scalar::pow2_half(-3);
    CliffElem w5(4);
    w5.c[0b0001] = -c;
    w5.c[0b0011] = -c;
    w5.c[0b0101] = c;
    w5.c[0b0111] = -c;
    w5.c[0b1000] = -c;
    w5.c[0b1010] = c;
    w5.c[0b1100] = -c;
    w5.c[0b1110] = -c;
    CHECK(a5.z == w5);

    // acute(563412 in S6) = (-a1 - a2a3a4 - a5 + a1a2a3a4a5)/2
    GroupElem a6 = acute(Permutation::from_oneline("563412"));
    CliffElem w6(5);
    w6.c[0b00001] = -Scalar(1, 0, 1);
    w6.c[0b01110] = -Scalar(1, 0, 1);
    w6.c[0b10000] = -Scalar(1, 0, 1);
    w6.c[0b11111] = Scalar(1, 0, 1);
    CHECK(a6.z == w6);

    // reduced-word independence over all words, all sigma in S4
    std::vector<uint8_t> v{0, 1, 2, 3};
    do {
        Permutation s((std::vector<uint8_t>(v)));
        GroupElem ref = acute(s);
        for (const auto& w : reduced_words(s)) CHECK(acute(w) == ref);
    } while (std::next_permutation(v.begin(), v.end()));
}

TEST_CASE("group element structure", "[clifford]") {
    // Pi is a homomorphism and the signed matrix stays in lockstep
    std::mt19937 rng(99);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<uint8_t> v{0, 1, 2, 3, 4};
        std::shuffle(v.begin(), v.end(), rng);
        Permutation s(v);
        std::shuffle(v.begin(), v.end(), rng);
        Permutation t(v);
        GroupElem a = acute(s), b = acute(t), ab = a * b;
        CHECK(ab.so == (a.so * b.so));
        CHECK(ab.perm() == s * t);
        CHECK(ab.so.det() == 1);
        // inverse via reversal
        CHECK((a * a.inverse()) == GroupElem::unit(4));
    }

    // kernel of Pi on Quat is {+-1}: Pi(m) = I iff mask = 0
    for (uint32_t code = 0; code < 32; ++code) {
        Mono m = Mono::from_code(code);
        GroupElem g = GroupElem::quat(4, m);
        bool isid = g.so == SignedPerm::identity(5);
        CHECK(isid == (m.mask == 0));
    }
}

TEST_CASE("commutator", "[clifford]") {
    CHECK(commutator_gen(1, 0) == 1);                        // [ha1, 1] = 1
    CHECK(commutator_gen(1, Mask(0b10)) == -1);              // [ha1, ha2] = -1
    CHECK(commutator_gen(2, Mask(0b1101)) == 1);             // [ha2, ha1 ha3 ha4] = +1
    // against direct group computation in Quat5
    for (int i = 1; i <= 4; ++i)
        for (Mask s = 0; s < 16u; ++s) {
            Mono q{s, 1}, g = Mono::gen(i);
            Mono c = g.inverse() * q.inverse() * g * q;
            REQUIRE(c.mask == 0);
            CHECK(c.sign == commutator_gen(i, s));
        }
}

TEST_CASE("E action", "[clifford]") {
    GroupElem a3 = acute(Permutation::top(3));
    CHECK(a3.z.act_E(0) == a3.z);
    // (ha1+ha2)/sqrt2 under E = (-1,+1) -> (-ha1+ha2)/sqrt2
    CliffElem t = a3.z.act_E(0b01);
    CHECK(t.c[0b01] == -Scalar::pow2_half(-1));
    CHECK(t.c[0b10] == Scalar::pow2_half(-1));

    // Re is E-invariant on random tilde-B+ elements
    std::mt19937 rng(7);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<uint8_t> v{0, 1, 2, 3, 4};
        std::shuffle(v.begin(), v.end(), rng);
        GroupElem g = acute(Permutation(v)).mul_mono(Mono::from_code(rng() % 32));
        Mask e = rng() % 16;
        CHECK(g.z.act_E(e).re() == g.re());
        // E acts by automorphisms: check on products
        GroupElem h = GroupElem::acute_gen(4, 1 + int(rng() % 4));
        CHECK((g * h).z.act_E(e) == (g.z.act_E(e) * h.z.act_E(e)));
    }
}

TEST_CASE("coset elements have uniform support", "[clifford]") {
    // every element of acute(sigma) Quat has all nonzero coefficients of the
    // same absolute value, and the inner product sees the orthonormal basis
    std::mt19937 rng(13);
    std::vector<uint8_t> v{0, 1, 2, 3, 4};
    for (int rep = 0; rep < 10; ++rep) {
        std::shuffle(v.begin(), v.end(), rng);
        GroupElem a = acute(Permutation(v));
        for (uint32_t code = 0; code < 32; ++code) {
            GroupElem z = a.mul_mono(Mono::from_code(code));
            Scalar mag;
            bool first = true;
            for (const auto& c : z.z.c) {
                if (c.is_zero()) continue;
                Scalar m = c.sign() < 0 ? -c : c;
                if (first) { mag = m; first = false; }
                else CHECK(m == mag);
            }
            CHECK_FALSE(first);
            CHECK(inner(z.z, z.z) == Scalar::one());  // Spin elements are unit
        }
    }
    // orthonormality of the monomial basis under the inner product
    for (Mask s = 0; s < 8; ++s)
        for (Mask t = 0; t < 8; ++t) {
            Scalar ip = inner(CliffElem::monomial(3, Mono{s, 1}), CliffElem::monomial(3, Mono{t, 1}));
            CHECK(ip == (s == t ? Scalar::one() : Scalar::zero()));
        }
}

TEST_CASE("real part values on a coset", "[clifford]") {
    // Re(z) in {0, +-2^{-(n+1-c)/2}} over all of tilde-B+_{n+1}, n <= 5
    for (int m : {3, 4, 5, 6}) {
        std::vector<uint8_t> v(m);
        std::iota(v.begin(), v.end(), 0);
        do {
            Permutation s(v);
            int c = num_cycles(s);
            GroupElem a = acute(s);
            Scalar mag = Scalar::pow2_half(-(s.size() - c));
            bool seen_pos = false;
            for (uint32_t code = 0; code < (1u << m); ++code) {
                Scalar re = a.mul_mono(Mono::from_code(code)).re();
                bool ok = re == Scalar::zero() || re == mag || re == -mag;
                CHECK(ok);
                seen_pos |= re == mag;
            }
            CHECK(seen_pos);  // some z0 with Re(z0) > 0 always exists
        } while (std::next_permutation(v.begin(), v.end()));
    }
}

TEST_CASE("re via eigenvalues", "[clifford]") {
    CHECK(re_via_eigenvalues(GroupElem::unit(3)) == Catch::Approx(1.0));
    // -1 eigenvalue forces Re = 0: hat a1 projects to a block diag(-1,-1)
    CHECK(re_via_eigenvalues(GroupElem::quat(3, Mono::gen(1))) == Catch::Approx(0.0).margin(1e-12));
    // full sweep over acute(sigma) Quat for n <= 3: |Re| matches the exact value
    std::vector<uint8_t> v{0, 1, 2, 3};
    do {
        Permutation s((std::vector<uint8_t>(v)));
        GroupElem a = acute(s);
        for (uint32_t code = 0; code < 16; ++code) {
            GroupElem z = a.mul_mono(Mono::from_code(code));
            CHECK(re_via_eigenvalues(z) == Catch::Approx(std::abs(z.re().to_double())).margin(1e-12));
        }
    } while (std::next_permutation(v.begin(), v.end()));
}
