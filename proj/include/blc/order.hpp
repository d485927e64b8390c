#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "blc/ancestry.hpp"
#include "blc/clifford.hpp"
#include "blc/perm.hpp"

namespace blc {

// ---------------------------------------------------------------------------
// The lifted Bruhat order on tilde B^+_{n+1}.
//
// Elements are kept in the normal form acute(pi) * q with q in Quat.  The
// closure of the cell of z1 is computed by a DP over a reduced word of
// Pi(z1): starting from S = {1}, each letter a_i replaces S by
// S u S*acute(a_i) u S*hat(a_i) — the three cells swept by right
// multiplication with alpha_i over [0, pi] — and finally S is translated by
// grave(Pi(z1)) z1 in Quat.  Then z0 <= z1 iff z0 lies in the closure set.
// Closure sets only depend on Pi(z1) up to that translation, so they are
// memoized per permutation.
// ---------------------------------------------------------------------------

struct BElem {  // acute(perm) * q
    Permutation perm;
    Mono q;

    friend bool operator==(const BElem& x, const BElem& y) { return x.perm == y.perm && x.q == y.q; }
    uint64_t key() const { return (uint64_t(perm.rank()) << 10) | q.code(); }

    // normal-form right multiplication by acute(a_i)
    BElem mul_acute(int i) const {
        bool comm = commutator_gen(i, q.mask) > 0;
        bool asc = !perm.right_descent(i);
        BElem r;
        r.perm = perm.right_mul_gen(i);
        if (comm) r.q = asc ? q : Mono::gen(i) * q;
        else r.q = asc ? -(Mono::gen(i) * q) : q;
        return r;
    }
    // right multiplication by hat(a_i)
    BElem mul_hat(int i) const { return BElem{perm, q * Mono::gen(i)}; }
    // right multiplication by q' in Quat
    BElem mul_mono(const Mono& m) const { return BElem{perm, q * m}; }

    GroupElem lift() const { return acute(perm).mul_mono(q); }
};

class ClosureCache {
  public:
    // set of elements w with Bru_w inside the closure of Bru_{acute(tau)}
    const std::unordered_set<uint64_t>& closure_of_acute(const Permutation& tau) {
        uint32_t r = tau.rank();
        {
            std::lock_guard<std::mutex> lk(mtx_);
            auto it = memo_.find(r);
            if (it != memo_.end()) return *it->second;
        }
        auto set = std::make_unique<std::unordered_set<uint64_t>>();
        std::vector<BElem> cur{BElem{Permutation::identity(tau.size()), Mono::unit()}};
        set->insert(cur[0].key());
        for (int l : canonical_word(tau).letters) {
            std::vector<BElem> next;
            next.reserve(cur.size() * 2);
            for (const BElem& e : cur) {
                BElem ea = e.mul_acute(l), eh = e.mul_hat(l);
                if (set->insert(ea.key()).second) next.push_back(ea);
                if (set->insert(eh.key()).second) next.push_back(eh);
            }
            cur.insert(cur.end(), next.begin(), next.end());
        }
        std::lock_guard<std::mutex> lk(mtx_);
        auto [it, fresh] = memo_.emplace(r, std::move(set));
        return *it->second;
    }

    bool lifted_leq(const BElem& z0, const BElem& z1) {
        if (z0.perm == z1.perm) return z0.q == z1.q;  // same Pi level: equality only
        const auto& S = closure_of_acute(z1.perm);
        return S.count(z0.mul_mono(z1.q.inverse()).key()) > 0;
    }

    std::vector<BElem> cell_closure(const BElem& z1) {
        const auto& S = closure_of_acute(z1.perm);
        std::vector<BElem> out;
        out.reserve(S.size());
        for (uint64_t k : S) {
            BElem e = from_key(k, z1.perm.size());
            out.push_back(e.mul_mono(z1.q));
        }
        return out;
    }

    static BElem from_key(uint64_t k, int m) {
        Mono q = Mono::from_code(uint32_t(k & 1023));
        uint32_t r = uint32_t(k >> 10);
        // unrank Lehmer code
        std::vector<uint8_t> img(m);
        std::vector<uint8_t> avail(m);
        std::iota(avail.begin(), avail.end(), 0);
        std::vector<uint32_t> fact(m + 1, 1);
        for (int i = 1; i <= m; ++i) fact[i] = fact[i - 1] * i;
        for (int i = 0; i < m; ++i) {
            uint32_t f = fact[m - 1 - i];
            uint32_t d = r / f;
            r %= f;
            img[i] = avail[d];
            avail.erase(avail.begin() + d);
        }
        return BElem{Permutation(std::move(img)), q};
    }

  private:
    std::mutex mtx_;
    std::unordered_map<uint32_t, std::unique_ptr<std::unordered_set<uint64_t>>> memo_;
};

// ---------------------------------------------------------------------------
// The ancestry partial order (for a fixed reduced word):
// eps <= teps  iff  rho_k <= trho_k for all k (lifted order componentwise).
// ---------------------------------------------------------------------------

// chain of (rho_k, q_k) in normal form
inline std::vector<BElem> belem_chain(const Word& w, const std::vector<int8_t>& eps) {
    AncestryChain ch = ancestry_chain(w, eps);
    std::vector<BElem> out(ch.rho.size());
    for (size_t k = 0; k < ch.rho.size(); ++k) out[k] = BElem{ch.rho[k], ch.q[k]};
    return out;
}

inline bool ancestry_leq(const std::vector<BElem>& a, const std::vector<BElem>& b, ClosureCache& cache) {
    if (a.size() != b.size()) throw std::invalid_argument("ancestry_leq: word mismatch");
    if (!(a.back() == b.back())) return false;  // <= implies P(eps) = P(teps)
    for (size_t k = 1; k + 1 < a.size(); ++k) {
        if (a[k] == b[k]) continue;
        if (!cache.lifted_leq(a[k], b[k])) return false;
    }
    return true;
}

// U*_eps within a candidate list (typically the ancestries with the same P).
// Returns indices of candidates teps with eps < teps (strictly).
template <typename GetChain>
std::vector<int> upper_set_strict(const std::vector<BElem>& chain, int self_index,
                                  int num_candidates, GetChain&& chain_of, ClosureCache& cache) {
    std::vector<int> out;
    for (int j = 0; j < num_candidates; ++j) {
        if (j == self_index) continue;
        if (ancestry_leq(chain, chain_of(j), cache)) out.push_back(j);
    }
    return out;
}

// U+-_eps: members teps of U*_eps with trho_k = rho_k for k < kdot and
// trho_kdot equal to rho_{kdot-1} (minus) or rho_{kdot-1} hat(a_{i_kdot})
// (plus), where kdot is the last position with eps(kdot) = -2.
struct UpmSplit {
    std::vector<int> minus, plus;
    int kdot = -1;
};

inline UpmSplit U_pm(const Word& w, const std::vector<int8_t>& eps, const std::vector<BElem>& chain,
                     const std::vector<int>& ustar,
                     const std::vector<std::vector<BElem>>& candidate_chains) {
    UpmSplit out;
    for (int k = w.length(); k >= 1; --k)
        if (eps[k - 1] == -2) { out.kdot = k; break; }
    if (out.kdot < 0) throw std::invalid_argument("U_pm: dimension-0 ancestry");
    BElem lo = chain[out.kdot - 1];
    BElem minus_target = lo;
    BElem plus_target = lo.mul_hat(w.letters[out.kdot - 1]);
    for (int j : ustar) {
        const auto& tch = candidate_chains[j];
        bool prefix = true;
        for (int k = 0; k < out.kdot && prefix; ++k) prefix = tch[k] == chain[k];
        if (!prefix) continue;
        if (tch[out.kdot] == minus_target) out.minus.push_back(j);
        else if (tch[out.kdot] == plus_target) out.plus.push_back(j);
    }
    return out;
}

}  // namespace blc
