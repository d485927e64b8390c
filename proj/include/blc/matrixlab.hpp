#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "blc/ancestry.hpp"
#include "blc/clifford.hpp"
#include "blc/perm.hpp"

namespace blc {

// ---------------------------------------------------------------------------
// Floating-point side: Q/L maps, Givens angle peeling over a reduced word,
// and the ancestry classifier.  All rank/zero decisions use the tolerance
// passed in (default 1e-9); samples are expected to stay away from stratum
// boundaries except in targeted boundary tests.
// ---------------------------------------------------------------------------

struct Mat {
    int m = 0;
    std::vector<double> a;

    Mat() = default;
    explicit Mat(int m_) : m(m_), a(size_t(m_) * m_, 0.0) {}
    double& operator()(int i, int j) { return a[size_t(i) * m + j]; }
    double operator()(int i, int j) const { return a[size_t(i) * m + j]; }

    static Mat identity(int m) {
        Mat r(m);
        for (int i = 0; i < m; ++i) r(i, i) = 1.0;
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat r(x.m);
        for (int i = 0; i < x.m; ++i)
            for (int k = 0; k < x.m; ++k) {
                double v = x(i, k);
                if (v == 0.0) continue;
                for (int j = 0; j < x.m; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }
    Mat transpose() const {
        Mat r(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    double dist(const Mat& y) const {
        double s = 0;
        for (size_t k = 0; k < a.size(); ++k) s += (a[k] - y.a[k]) * (a[k] - y.a[k]);
        return std::sqrt(s);
    }
    // right multiplication by the rotation alpha_i(theta), columns i-1, i (0-based)
    void rot_right(int i, double theta) {
        double c = std::cos(theta), s = std::sin(theta);
        for (int r = 0; r < m; ++r) {
            double x = (*this)(r, i - 1), y = (*this)(r, i);
            (*this)(r, i - 1) = c * x + s * y;
            (*this)(r, i) = -s * x + c * y;
        }
    }
};

inline Mat alpha_so(int m, int i, double theta) {
    Mat r = Mat::identity(m);
    r(i - 1, i - 1) = std::cos(theta);
    r(i, i) = std::cos(theta);
    r(i - 1, i) = -std::sin(theta);
    r(i, i - 1) = std::sin(theta);
    return r;
}
inline Mat phi_so(const Word& w, const std::vector<double>& thetas) {
    Mat r = Mat::identity(w.n + 1);
    for (int k = 0; k < w.length(); ++k) r.rot_right(w.letters[k], thetas[k]);
    return r;
}
inline Mat signed_perm_mat(const SignedPerm& p) {
    Mat r(p.size());
    for (int i = 0; i < p.size(); ++i) r(i, p.col[i]) = p.sgn[i];
    return r;
}

// unit lower triangular with free entries below the diagonal
struct LowerTriangular {
    int m = 0;
    Mat a;

    LowerTriangular() = default;
    explicit LowerTriangular(int m_) : m(m_), a(Mat::identity(m_)) {}
    explicit LowerTriangular(const Mat& mat) : m(mat.m), a(mat) {
        for (int i = 0; i < m; ++i) {
            if (a(i, i) != 1.0) throw std::invalid_argument("LowerTriangular: diagonal must be 1");
            for (int j = i + 1; j < m; ++j)
                if (a(i, j) != 0.0) throw std::invalid_argument("LowerTriangular: not lower triangular");
        }
    }
    double& operator()(int i, int j) { return a(i, j); }
    double operator()(int i, int j) const { return a(i, j); }

    // conjugation by a diagonal D with D_j D_{j+1} = E_j
    LowerTriangular act_E(Mask eneg) const {
        std::vector<double> d(m, 1.0);
        for (int j = 0; j + 1 < m; ++j) d[j + 1] = d[j] * ((eneg >> j & 1) ? -1.0 : 1.0);
        LowerTriangular r(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < i; ++j) r.a(i, j) = d[i] * d[j] * a(i, j);
        return r;
    }
};

// lambda_i(t) = I + t l_i
inline LowerTriangular lambda_gen(int m, int i, double t) {
    LowerTriangular r(m);
    r.a(i, i - 1) = t;
    return r;
}

// L = lambda_{i_1}(t_1) ... lambda_{i_l}(t_l)
inline LowerTriangular sample_stratum(const Word& w, const std::vector<double>& t) {
    if (int(t.size()) != w.length()) throw std::invalid_argument("sample_stratum: wrong t length");
    Mat r = Mat::identity(w.n + 1);
    for (int k = 0; k < w.length(); ++k) {
        if (t[k] == 0.0) throw std::invalid_argument("sample_stratum: t_k = 0");
        int i = w.letters[k];
        // right multiply by I + t l_i: col_{i-1} += t * col_i
        for (int row = 0; row < r.m; ++row) r(row, i - 1) += t[k] * r(row, i);
    }
    return LowerTriangular(r);
}
inline LowerTriangular sample_stratum(const Word& w, const std::vector<int8_t>& signs, std::mt19937& rng) {
    std::uniform_real_distribution<double> mag(0.2, 2.0);
    std::vector<double> t(w.length());
    for (int k = 0; k < w.length(); ++k) t[k] = (signs[k] > 0 ? 1.0 : -1.0) * mag(rng);
    return sample_stratum(w, t);
}

// QR with positive diagonal R (modified Gram-Schmidt, one reorthogonalization)
inline Mat q_of(const LowerTriangular& L) {
    int m = L.m;
    Mat q(m);
    std::vector<std::vector<double>> cols(m, std::vector<double>(m));
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) cols[j][i] = L.a(i, j);
    for (int j = 0; j < m; ++j) {
        auto& v = cols[j];
        for (int pass = 0; pass < 2; ++pass)
            for (int k = 0; k < j; ++k) {
                double dot = 0;
                for (int i = 0; i < m; ++i) dot += q(i, k) * v[i];
                for (int i = 0; i < m; ++i) v[i] -= dot * q(i, k);
            }
        double nrm = 0;
        for (int i = 0; i < m; ++i) nrm += v[i] * v[i];
        nrm = std::sqrt(nrm);
        for (int i = 0; i < m; ++i) q(i, j) = v[i] / nrm;
    }
    return q;
}

// unit-lower factor of the plain LU factorization (no pivoting); the L of
// the inverse map Spin -> Lo on the top cell
inline LowerTriangular lower_of(const Mat& z, double tol = 1e-12) {
    int m = z.m;
    Mat u = z;
    Mat l = Mat::identity(m);
    for (int j = 0; j < m; ++j) {
        if (std::abs(u(j, j)) < tol) throw std::runtime_error("lower_of: zero leading minor");
        for (int i = j + 1; i < m; ++i) {
            double f = u(i, j) / u(j, j);
            l(i, j) = f;
            for (int k = 0; k < m; ++k) u(i, k) -= f * u(j, k);
        }
    }
    return LowerTriangular(l);
}

// ---------------------------------------------------------------------------
// Bruhat permutation of an invertible matrix by pivot elimination: process
// columns left to right, pivot at the bottommost unused row, eliminate
// upward (rows above, a left Up-multiplication) and rightward (columns to
// the right, a right Up-multiplication).
// ---------------------------------------------------------------------------
struct NearBoundary : std::runtime_error {
    explicit NearBoundary(const std::string& msg) : std::runtime_error(msg) {}
};

inline Permutation bruhat_permutation(const Mat& q, double tol = 1e-9) {
    int m = q.m;
    Mat w = q;
    std::vector<char> used(m, 0);
    std::vector<uint8_t> img(m, 0);
    for (int j = 0; j < m; ++j) {
        int piv = -1;
        for (int i = m - 1; i >= 0; --i) {
            if (used[i]) continue;
            if (std::abs(w(i, j)) > tol) { piv = i; break; }
        }
        if (piv < 0) throw NearBoundary("bruhat_permutation: no pivot in column " + std::to_string(j + 1));
        used[piv] = 1;
        img[piv] = uint8_t(j);
        for (int i = 0; i < piv; ++i) {
            if (used[i] || w(i, j) == 0.0) continue;
            double f = w(i, j) / w(piv, j);
            for (int k = j; k < m; ++k) w(i, k) -= f * w(piv, k);
        }
        for (int k = j + 1; k < m; ++k) {
            double f = w(piv, k) / w(piv, j);
            for (int i = 0; i < m; ++i) w(i, k) -= f * w(i, j);
        }
    }
    return Permutation(std::move(img));
}

namespace detail {

// Partially eliminate columns 1..col-1 of a matrix in Bru_rho (pivot rows
// known from rho), as in bruhat_permutation; returns the working copy.
inline Mat partial_reduce(const Mat& q, const Permutation& rho, int col, double tol) {
    Mat w = q;
    int m = q.m;
    Permutation inv = rho.inverse();
    for (int j = 0; j < col - 1; ++j) {
        int piv = inv.img[j];
        if (std::abs(w(piv, j)) <= tol) throw NearBoundary("partial_reduce: vanished pivot");
        for (int i = 0; i < piv; ++i) {
            if (rho.img[i] < j) continue;  // pivot row of an earlier column
            if (w(i, j) == 0.0) continue;
            double f = w(i, j) / w(piv, j);
            for (int k = j; k < m; ++k) w(i, k) -= f * w(piv, k);
        }
        for (int k = j + 1; k < m; ++k) {
            double f = w(piv, k) / w(piv, j);
            for (int i = 0; i < m; ++i) w(i, k) -= f * w(i, j);
        }
    }
    return w;
}

}  // namespace detail

// For q in Bru_rho with rho a_i < rho: the unique theta in (0,pi) with
// q . alpha_i(-theta) in Bru_{rho a_i}.
inline double peel_angle(const Mat& q, const Permutation& rho, int i, double tol = 1e-9) {
    Mat w = detail::partial_reduce(q, rho, i, tol);
    int u = rho.inverse().img[i - 1];  // pivot row of column i
    double A = w(u, i - 1), B = w(u, i);
    if (std::abs(A) <= tol) throw NearBoundary("peel_angle: already on the smaller cell");
    double th = std::atan2(A, B);
    if (th <= 0) th += 3.14159265358979323846;
    return th;
}

// Forward crossing angle: the unique theta in (0,pi) with
// q . alpha_i(theta) in Bru_{rho a_i} (descent case).
inline double critical_angle(const Mat& q, const Permutation& rho, int i, double tol = 1e-9) {
    Mat w = detail::partial_reduce(q, rho, i, tol);
    int u = rho.inverse().img[i - 1];
    double A = w(u, i - 1), B = w(u, i);
    if (std::abs(A) <= tol) throw NearBoundary("critical_angle: already on the smaller cell");
    double th = std::atan2(A, -B);
    if (th <= 0) th += 3.14159265358979323846;
    return th;
}

// Peel all angles off q along the reduced word (prefix cells sigma_k), so
// that q = D0 * alpha_{i_1}(t_1) ... alpha_{i_l}(t_l) with all t in (0,pi)
// and D0 diagonal +-1.
struct Peeled {
    std::vector<double> thetas;
    std::vector<int> d0;  // diagonal of D0
    double residual = 0;
};

inline Peeled peel_word(const Mat& q, const Word& w, double tol = 1e-9) {
    int m = w.n + 1;
    Peeled out;
    out.thetas.assign(w.length(), 0.0);
    std::vector<Permutation> prefix(w.length() + 1, Permutation::identity(m));
    for (int k = 0; k < w.length(); ++k) prefix[k + 1] = prefix[k].right_mul_gen(w.letters[k]);
    Mat cur = q;
    for (int k = w.length(); k >= 1; --k) {
        double th = peel_angle(cur, prefix[k], w.letters[k - 1], tol);
        out.thetas[k - 1] = th;
        cur.rot_right(w.letters[k - 1], -th);
    }
    out.d0.assign(m, 1);
    Mat d0 = Mat::identity(m);
    for (int i = 0; i < m; ++i) {
        out.d0[i] = cur(i, i) >= 0 ? 1 : -1;
        d0(i, i) = out.d0[i];
    }
    out.residual = cur.dist(d0);
    return out;
}

// Q in the image of Phi: peel and require D0 = I.
struct AngleFactorization {
    Word word;
    std::vector<double> thetas;
    double residual = 0;
};

inline AngleFactorization factor_angles(const Mat& q, const Word& w, double tol = 1e-9) {
    if (!is_reduced(w)) throw std::invalid_argument("factor_angles: word is not reduced");
    Peeled p = peel_word(q, w, tol);
    for (int v : p.d0)
        if (v != 1) throw std::runtime_error("factor_angles: Q is not in the image of Phi");
    AngleFactorization out{w, p.thetas, 0.0};
    out.residual = phi_so(w, p.thetas).dist(q);
    if (out.residual > 1e-9 * std::max(1.0, double(w.length())))
        throw std::runtime_error("factor_angles: residual too large");
    return out;
}

// The diagonal adjustment D and angles with q * D = Phi(theta'):
// push D0 through the letters, renormalizing negative angles by pi.
struct Normalized {
    std::vector<double> thetas;  // in (0,pi)
    std::vector<int> dadj;       // diagonal of D (and of D^{-1})
};

inline Normalized normalize_to_phi(const Mat& q, const Word& w, double tol = 1e-9) {
    Peeled p = peel_word(q, w, tol);
    std::vector<int> d = p.d0;
    Normalized out;
    out.thetas.assign(w.length(), 0.0);
    const double pi = 3.14159265358979323846;
    for (int k = 0; k < w.length(); ++k) {
        int i = w.letters[k];
        int e = d[i - 1] * d[i];
        double th = e * p.thetas[k];
        if (th < 0) {
            th += pi;
            d[i - 1] = -d[i - 1];
            d[i] = -d[i];
        }
        out.thetas[k] = th;
    }
    out.dadj = d;
    // verify: q * diag(d) = Phi(theta')
    Mat qd = q;
    for (int j = 0; j < q.m; ++j)
        if (d[j] < 0)
            for (int i = 0; i < q.m; ++i) qd(i, j) = -qd(i, j);
    if (qd.dist(phi_so(w, out.thetas)) > 1e-7)
        throw std::runtime_error("normalize_to_phi: adjustment verification failed");
    return out;
}

// ---------------------------------------------------------------------------
// The ancestry of a matrix L in BL_sigma (Section-12 procedure): normalize
// Q(L) into the Phi chart, then walk the word keeping the exact (rho_k, q_k)
// state; at descents the crossing angle decides xi(k), and eps(k) follows
// from the commutator rule.
// ---------------------------------------------------------------------------
struct Classified {
    Ancestry anc;
    GroupElem P;
};

inline Classified ancestry_of(const LowerTriangular& L, const Word& w, double tol = 1e-9) {
    if (!is_reduced(w)) throw std::invalid_argument("ancestry_of: word is not reduced");
    Permutation sigma = w.product();
    int m = w.n + 1;
    Mat q = q_of(L);
    Permutation got = bruhat_permutation(q, tol);
    if (!(got == sigma))
        throw std::invalid_argument("ancestry_of: L lies in the cell of " + got.oneline() +
                                    ", not " + sigma.oneline());
    Normalized nf = normalize_to_phi(q, w, tol);

    Mat heta = signed_perm_mat(acute(Permutation::top(m)).so);
    Mat cur = heta;  // H_eta * Z_k
    PermState rho(Permutation::top(m));
    Mono qk = Mono::unit();
    std::vector<int8_t> eps(w.length(), 0);
    for (int k = 0; k < w.length(); ++k) {
        int i = w.letters[k];
        int xi;
        if (rho.ascent(i)) {
            xi = 1;
        } else {
            double crit = critical_angle(cur, rho.perm(), i, tol);
            double diff = nf.thetas[k] - crit;
            xi = std::abs(diff) <= tol ? 1 : (diff < 0 ? 0 : 2);
        }
        if (xi == 1) {
            eps[k] = rho.ascent(i) ? int8_t(2) : int8_t(-2);
            rho.right_mul_gen(i);
        } else {
            int comm = commutator_gen(i, qk.mask);
            eps[k] = int8_t(xi == 0 ? comm : -comm);
        }
        qk = q_step(qk, i, eps[k] > 0 ? 1 : -1);
        cur.rot_right(i, nf.thetas[k]);
        // cross-check the tracked cell against the shifted partial product
        try {
            Permutation check = bruhat_permutation(cur, tol);
            if (!(check == rho.perm()))
                throw std::runtime_error("ancestry_of: cell tracking mismatch at step " +
                                         std::to_string(k + 1));
        } catch (const NearBoundary&) {
            // margin too small to audit this step; the recursion remains exact
        }
    }
    if (!rho.is(Permutation::top(m))) throw std::runtime_error("ancestry_of: rho_l != eta");
    Ancestry anc{eps, qk, 0};
    for (int8_t e : eps)
        if (e == -2) anc.dim++;
    Classified out{anc, P_of(w, acute(w), anc)};
    return out;
}

// ---------------------------------------------------------------------------
// Region checks: sample matrices in the explicitly described regions and
// confirm the classifier reproduces the stated case analysis.
// ---------------------------------------------------------------------------
struct RegionReport {
    bool ok = true;
    int samples = 0;
    std::string first_failure;
};

inline RegionReport region_checks(unsigned seed = 12345) {
    RegionReport rep;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    auto fail = [&](const std::string& msg) {
        if (rep.ok) rep.first_failure = msg;
        rep.ok = false;
    };

    // n = 2: z < min{0, xy} lies in the component of (1 + ha1 ha2)/sqrt2
    {
        Word aba = Word::parse("a1 a2 a1", 2);
        CliffElem comp(2);
        comp.c[0b00] = Scalar::pow2_half(-1);
        comp.c[0b11] = Scalar::pow2_half(-1);
        for (int r = 0; r < 50; ++r, ++rep.samples) {
            LowerTriangular L(3);
            double x = uni(rng), y = uni(rng);
            L(1, 0) = x;
            L(2, 1) = y;
            L(2, 0) = std::min(0.0, x * y) - 0.1 - std::abs(uni(rng));
            Classified c = ancestry_of(L, aba);
            if (c.anc.dim != 0 || !(c.P.z == comp)) fail("n=2 region z < min(0,xy)");
        }
    }

    // 4231: l32 = l42 = l43 = 0, l41 > 0 classifies to (-2,-2,+1,+2,+2);
    // with l42, l43 nonzero the four open strata appear, P unchanged
    {
        Word w = canonical_word(Permutation::from_oneline("4231"));
        GroupElem target_P;
        for (int r = 0; r < 25; ++r, ++rep.samples) {
            LowerTriangular L(4);
            L(1, 0) = uni(rng);
            L(2, 0) = uni(rng);
            L(3, 0) = 0.3 + std::abs(uni(rng));
            Classified c = ancestry_of(L, w);
            if (c.anc.str() != "(-2,-2,+1,+2,+2)") fail("4231 codimension-2 stratum");
            target_P = c.P;
        }
        for (int r = 0; r < 25; ++r, ++rep.samples) {
            double l42 = (rng() % 2 ? 1 : -1) * (0.2 + std::abs(uni(rng)));
            double l43 = (rng() % 2 ? 1 : -1) * (0.2 + std::abs(uni(rng)));
            double l21 = uni(rng), l31 = uni(rng);
            double l41 = std::max({0.0, l21 * l42, l31 * l43}) + 0.3 + std::abs(uni(rng));
            LowerTriangular L(4);
            L(1, 0) = l21;
            L(2, 0) = l31;
            L(3, 0) = l41;
            L(3, 1) = l42;
            L(3, 2) = l43;
            L(2, 1) = l31 * l42 / l41;
            Classified c = ancestry_of(L, w);
            if (c.anc.dim != 0 || !(c.P == target_P)) fail("4231 open strata");
        }
    }

    // the bcbabdcb witness pair
    {
        Word w = Word::parse("a2 a3 a2 a1 a2 a4 a3 a2", 4);
        const double pi = 3.14159265358979323846;
        auto make_L = [&](double th2) {
            std::vector<double> th{pi / 2, th2,    pi / 4, pi / 4,
                                   pi - std::atan(std::sqrt(2.0)), pi / 4, pi / 4, pi / 4};
            return lower_of(phi_so(w, th));
        };
        rep.samples += 2;
        if (ancestry_of(make_L(pi / 2), w).anc.str() != "(-2,-2,+1,-1,-1,+1,+2,+2)")
            fail("bcbabdcb witness eps0");
        if (ancestry_of(make_L(pi / 2 - 0.15), w).anc.str() != "(-2,-1,+2,-1,-2,+1,+1,+2)")
            fail("bcbabdcb witness eps1");
    }
    return rep;
}

}  // namespace blc
