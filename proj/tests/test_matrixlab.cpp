#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "blc/matrixlab.hpp"
#include "blc/order.hpp"

using namespace blc;

static std::vector<Permutation> all_perms(int m) {
    std::vector<uint8_t> v(m);
    std::iota(v.begin(), v.end(), 0);
    std::vector<Permutation> out;
    do out.push_back(Permutation(v));
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

static Mat random_upper(int m, std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    Mat u = Mat::identity(m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) u(i, j) = uni(rng);
        if (std::abs(u(i, i)) < 0.3) u(i, i) = std::copysign(0.5, u(i, i));
    }
    return u;
}

TEST_CASE("q_of", "[matrixlab]") {
    // identity
    LowerTriangular I3(3);
    Mat q = q_of(I3);
    CHECK(q.dist(Mat::identity(3)) < 1e-14);

    // worked example: x = y = 0, z = 1
    LowerTriangular L0(3);
    L0(2, 0) = 1.0;
    Mat q0 = q_of(L0);
    double h = std::sqrt(2.0) / 2;
    Mat want(3);
    want(0, 0) = h; want(0, 2) = -h;
    want(1, 1) = 1;
    want(2, 0) = h; want(2, 2) = h;
    CHECK(q0.dist(want) < 1e-14);

    // random L: Q orthogonal, det reconstructable, L = Q R round trip
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        LowerTriangular L(5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < i; ++j) L(i, j) = uni(rng);
        Mat Q = q_of(L);
        CHECK((Q.transpose() * Q).dist(Mat::identity(5)) < 1e-12);
        // R = Q^T L must be upper with positive diagonal
        Mat R = Q.transpose() * L.a;
        for (int i = 0; i < 5; ++i) {
            CHECK(R(i, i) > 0);
            for (int j = 0; j < i; ++j) CHECK(std::abs(R(i, j)) < 1e-12);
        }
        CHECK((Q * R).dist(L.a) < 1e-12);
    }
}

TEST_CASE("sample_stratum entries", "[matrixlab]") {
    // aba: x = t1 + t3, y = t2, z = t2 t3
    Word aba = Word::parse("a1 a2 a1", 2);
    LowerTriangular L = sample_stratum(aba, std::vector<double>{0.3, -0.7, 1.1});
    CHECK(L(1, 0) == Catch::Approx(0.3 + 1.1));
    CHECK(L(2, 1) == Catch::Approx(-0.7));
    CHECK(L(2, 0) == Catch::Approx(-0.7 * 1.1));

    // bacb: u = t1 t2, v = t3 t4, w = 0, x = t2, y = t1 + t4, z = t3
    Word bacb = Word::parse("a2 a1 a3 a2", 3);
    std::vector<double> t{0.4, 0.9, -1.2, 0.6};
    LowerTriangular M = sample_stratum(bacb, t);
    CHECK(M(2, 0) == Catch::Approx(t[0] * t[1]));
    CHECK(M(3, 1) == Catch::Approx(t[2] * t[3]));
    CHECK(M(3, 0) == Catch::Approx(0.0).margin(1e-15));
    CHECK(M(1, 0) == Catch::Approx(t[1]));
    CHECK(M(2, 1) == Catch::Approx(t[0] + t[3]));
    CHECK(M(3, 2) == Catch::Approx(t[2]));

    CHECK_THROWS(sample_stratum(aba, std::vector<double>{1.0, 0.0, 1.0}));
}

TEST_CASE("bruhat_permutation", "[matrixlab]") {
    std::mt19937 rng(23);
    // signed permutation matrices classify to their permutation part
    for (const auto& s : all_perms(5)) {
        GroupElem a = acute(s);
        CHECK(bruhat_permutation(signed_perm_mat(a.so)) == s);
    }
    // constructive oracle: U0 P U1 recovers sigma
    for (int rep = 0; rep < 200; ++rep) {
        auto perms = all_perms(5);
        const Permutation& s = perms[rng() % perms.size()];
        Mat P(5);
        for (int i = 0; i < 5; ++i) P(i, s.img[i]) = 1.0;
        Mat M = random_upper(5, rng) * P * random_upper(5, rng);
        CHECK(bruhat_permutation(M) == s);
    }
}

TEST_CASE("angle factorization round trip", "[matrixlab]") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ang(0.05, 3.09);
    for (const char* ol : {"321", "4231", "43512", "54321"}) {
        Permutation s = Permutation::from_oneline(ol);
        Word w = canonical_word(s);
        for (int rep = 0; rep < 1000; ++rep) {
            std::vector<double> th(w.length());
            for (auto& t : th) t = ang(rng);
            Mat q = phi_so(w, th);
            AngleFactorization f = factor_angles(q, w);
            REQUIRE(f.residual < 1e-9);
            for (int k = 0; k < w.length(); ++k) CHECK(f.thetas[k] == Catch::Approx(th[k]).margin(1e-9));
        }
    }
    // n = 5 words: the fixed 563412 word and the staircase of eta in S6
    {
        Word w5 = Word::parse("a2 a1 a3 a2 a4 a3 a5 a4 a2 a1 a3 a2", 5);
        Word w6 = canonical_word(Permutation::top(6));
        for (const Word& w : {w5, w6}) {
            for (int rep = 0; rep < 200; ++rep) {
                std::vector<double> th(w.length());
                for (auto& t : th) t = ang(rng);
                AngleFactorization f = factor_angles(phi_so(w, th), w);
                REQUIRE(f.residual < 1e-9);
                for (int k = 0; k < w.length(); ++k)
                    CHECK(f.thetas[k] == Catch::Approx(th[k]).margin(1e-9));
            }
        }
    }

    // near acute(sigma): all angles pi/2 +- small
    Word w = canonical_word(Permutation::top(4));
    std::vector<double> th(w.length(), 1.5707963267948966);
    for (auto& t : th) t += 0.01 * (ang(rng) - 1.5);
    AngleFactorization f = factor_angles(phi_so(w, th), w);
    for (int k = 0; k < w.length(); ++k) CHECK(f.thetas[k] == Catch::Approx(th[k]).margin(1e-9));
}

TEST_CASE("normalize to the Phi chart", "[matrixlab]") {
    // Q(L) for random samples lands in Phi after a diagonal adjustment
    std::mt19937 rng(41);
    Word w = canonical_word(Permutation::from_oneline("43512"));
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<int8_t> signs(w.length());
        for (auto& s : signs) s = rng() % 2 ? 1 : -1;
        LowerTriangular L = sample_stratum(w, signs, rng);
        Mat q = q_of(L);
        Normalized nf = normalize_to_phi(q, w);
        for (double t : nf.thetas) {
            CHECK(t > 0);
            CHECK(t < 3.14159265358979323846);
        }
    }
}

TEST_CASE("ancestry of explicit matrices", "[matrixlab]") {
    // Example with x = y = 0, z = 1: eps = (-2, +1, +2)
    Word aba = Word::parse("a1 a2 a1", 2);
    LowerTriangular L0(3);
    L0(2, 0) = 1.0;
    Classified c = ancestry_of(L0, aba);
    CHECK(c.anc.str() == "(-2,+1,+2)");
    // P = (1 - ha1 ha2)/sqrt2
    CliffElem want(2);
    want.c[0b00] = Scalar::pow2_half(-1);
    want.c[0b11] = -Scalar::pow2_half(-1);
    CHECK(c.P.z == want);

    // 4x4 example: eps = (-2, -1, +1, +2)
    Word bacb = Word::parse("a2 a1 a3 a2", 3);
    LowerTriangular L1(4);
    L1(2, 0) = 1.0;
    L1(3, 1) = 1.0;
    Classified c1 = ancestry_of(L1, bacb);
    CHECK(c1.anc.str() == "(-2,-1,+1,+2)");
    // z0 = (1 - ha1ha2 - ha1ha3 - ha2ha3)/2
    CliffElem want1(3);
    want1.c[0b000] = Scalar(1, 0, 1);
    want1.c[0b011] = -Scalar(1, 0, 1);
    want1.c[0b101] = -Scalar(1, 0, 1);
    want1.c[0b110] = -Scalar(1, 0, 1);
    CHECK(c1.P.z == want1);
}

TEST_CASE("normalized angles of the worked 3x3 example", "[matrixlab]") {
    // Q(L0) for x = y = 0, z = 1 normalizes to Phi(pi/2, 3pi/4, pi/2): the
    // alpha1(-pi/2) alpha2(pi/4) alpha1(pi/2) presentation picks up the
    // angle flip pi/4 -> 3pi/4 when the sign blocks are pushed to the right
    Word aba = Word::parse("a1 a2 a1", 2);
    LowerTriangular L0(3);
    L0(2, 0) = 1.0;
    Normalized nf = normalize_to_phi(q_of(L0), aba);
    const double pi = 3.14159265358979323846;
    CHECK(nf.thetas[0] == Catch::Approx(pi / 2).margin(1e-12));
    CHECK(nf.thetas[1] == Catch::Approx(3 * pi / 4).margin(1e-12));
    CHECK(nf.thetas[2] == Catch::Approx(pi / 2).margin(1e-12));
    // and the adjusted point reproduces Q exactly
    Mat qd = q_of(L0);
    for (int j = 0; j < 3; ++j)
        if (nf.dadj[j] < 0)
            for (int i = 0; i < 3; ++i) qd(i, j) = -qd(i, j);
    CHECK(qd.dist(phi_so(aba, nf.thetas)) < 1e-12);
}

TEST_CASE("sign pattern classification", "[matrixlab]") {
    // all 2^l sign vectors on short words classify to themselves with the
    // Lemma-P product as P
    std::mt19937 rng(51);
    for (const char* ol : {"321", "4231", "4321", "43512", "43521"}) {
        Permutation s = Permutation::from_oneline(ol);
        Word w = canonical_word(s);
        REQUIRE(w.length() <= 8);
        for (uint32_t bits = 0; bits < (1u << w.length()); ++bits) {
            std::vector<int8_t> signs(w.length());
            for (int k = 0; k < w.length(); ++k) signs[k] = (bits >> k & 1) ? 1 : -1;
            LowerTriangular L = sample_stratum(w, signs, rng);
            Classified c = ancestry_of(L, w);
            CHECK(c.anc.eps == signs);
            CHECK(c.P == P_by_product(w, signs));
        }
    }
}

TEST_CASE("sign pattern classification at n = 5", "[matrixlab]") {
    std::mt19937 rng(55);
    Word w = canonical_word(Permutation::top(6));  // l = 15
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<int8_t> signs(w.length());
        for (auto& s : signs) s = rng() % 2 ? 1 : -1;
        LowerTriangular L = sample_stratum(w, signs, rng);
        Classified c = ancestry_of(L, w);
        REQUIRE(c.anc.eps == signs);
        REQUIRE(c.P == P_by_product(w, signs));
    }
}

TEST_CASE("E equivariance", "[matrixlab]") {
    std::mt19937 rng(61);
    Word w = canonical_word(Permutation::from_oneline("4321"));
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<int8_t> signs(w.length());
        for (auto& s : signs) s = rng() % 2 ? 1 : -1;
        LowerTriangular L = sample_stratum(w, signs, rng);
        Mask e = rng() % 8;
        // Q is equivariant
        Mat qe = q_of(L.act_E(e));
        // compare against conjugation of q_of(L)
        Mat q = q_of(L);
        std::vector<double> d(4, 1.0);
        for (int j = 0; j + 1 < 4; ++j) d[j + 1] = d[j] * ((e >> j & 1) ? -1.0 : 1.0);
        Mat conj = q;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) conj(i, j) = d[i] * d[j] * q(i, j);
        CHECK(qe.dist(conj) < 1e-12);

        // dimension-0 ancestries twist positionwise: eps^E(k) = E_{i_k} eps(k)
        Classified ce = ancestry_of(L.act_E(e), w);
        std::vector<int8_t> twisted(signs);
        for (int k = 0; k < w.length(); ++k)
            if (e >> (w.letters[k] - 1) & 1) twisted[k] = int8_t(-twisted[k]);
        CHECK(ce.anc.eps == twisted);
    }
}

TEST_CASE("boundary classification within tolerance", "[matrixlab]") {
    // the 4231 codimension-2 stratum: l32 = l42 = l43 = 0, l41 > 0
    Word w = canonical_word(Permutation::from_oneline("4231"));
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> uni(0.3, 1.7);
    for (int rep = 0; rep < 20; ++rep) {
        LowerTriangular L(4);
        L(1, 0) = uni(rng) - 1.0;
        L(2, 0) = uni(rng) - 1.0;
        L(3, 0) = uni(rng);  // l41 > 0, others in row/col below zero
        Classified c = ancestry_of(L, w);
        CHECK(c.anc.str() == "(-2,-2,+1,+2,+2)");
    }
}

TEST_CASE("region checks for n = 2", "[matrixlab]") {
    // z < min(0, xy) lands in the component of (1 + ha1 ha2)/sqrt2
    Word aba = Word::parse("a1 a2 a1", 2);
    std::mt19937 rng(81);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    CliffElem comp(2);
    comp.c[0b00] = Scalar::pow2_half(-1);
    comp.c[0b11] = Scalar::pow2_half(-1);
    for (int rep = 0; rep < 50; ++rep) {
        double x = uni(rng), y = uni(rng);
        double z = std::min(0.0, x * y) - 0.1 - std::abs(uni(rng));
        LowerTriangular L(3);
        L(1, 0) = x;
        L(2, 1) = y;
        L(2, 0) = z;
        Classified c = ancestry_of(L, aba);
        CHECK(c.anc.dim == 0);
        CHECK(c.P.z == comp);
    }
}

TEST_CASE("whitney witness pair", "[matrixlab]") {
    // Example bcbabdcb: theta1 = pi/2, theta3..theta8 as stated;
    // theta2 = pi/2 gives eps0, theta2 in (pi/3, pi/2) gives eps1
    Word w = Word::parse("a2 a3 a2 a1 a2 a4 a3 a2", 4);
    const double pi = 3.14159265358979323846;
    auto make_L = [&](double th2) {
        std::vector<double> th{pi / 2, th2, pi / 4, pi / 4, pi - std::atan(std::sqrt(2.0)),
                               pi / 4, pi / 4, pi / 4};
        Mat z8 = phi_so(w, th);
        return lower_of(z8);
    };
    Classified c0 = ancestry_of(make_L(pi / 2), w);
    CHECK(c0.anc.str() == "(-2,-2,+1,-1,-1,+1,+2,+2)");
    Classified c1 = ancestry_of(make_L(pi / 2 - 0.2), w);
    CHECK(c1.anc.str() == "(-2,-1,+2,-1,-2,+1,+1,+2)");

    // eps0 < eps1 in the ancestry order
    ClosureCache cache;
    CHECK(ancestry_leq(belem_chain(w, c0.anc.eps), belem_chain(w, c1.anc.eps), cache));
}
