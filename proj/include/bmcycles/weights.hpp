#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bmcycles/errors.hpp"

namespace bmc {

/// An integer vector (λ_1, ..., λ_d).
using Weight = std::vector<long>;

inline std::string weight_to_string(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

inline Weight rho(std::size_t d) {
  require(d >= 1, ErrorKind::PreconditionViolated, "rho needs d >= 1");
  Weight r(d);
  for (std::size_t i = 0; i < d; ++i) r[i] = static_cast<long>(d - 1 - i);
  return r;
}

inline bool is_dominant(const Weight& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] < w[i + 1]) return false;
  return true;
}

inline bool is_regular(const Weight& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] == w[j]) return false;
  return true;
}

inline long weight_total(const Weight& w) {
  long s = 0;
  for (long x : w) s += x;
  return s;
}

inline Weight weight_add(const Weight& a, const Weight& b) {
  require(a.size() == b.size(), ErrorKind::RankMismatch, "weight length mismatch");
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Weight weight_sub(const Weight& a, const Weight& b) {
  require(a.size() == b.size(), ErrorKind::RankMismatch, "weight length mismatch");
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Weight weight_scaled(const Weight& a, long n) {
  Weight r = a;
  for (auto& x : r) x *= n;
  return r;
}

/// Dominance order: a <= b iff every top partial sum of a is at most that of b,
/// with equal totals.
inline bool dominance_leq(const Weight& a, const Weight& b) {
  require(a.size() == b.size(), ErrorKind::RankMismatch, "dominance on weights of different length");
  long sa = 0, sb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    if (sa > sb) return false;
  }
  return sa == sb;
}

/// -w0 λ: negate and reverse.
inline Weight dual_weight(const Weight& w) {
  Weight r(w.rbegin(), w.rend());
  for (auto& x : r) x = -x;
  return r;
}

/// Number of pairs i < j with λ_i != λ_j, i.e. dim G/P_λ.
inline long flag_dim(const Weight& w) {
  long n = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] != w[j]) ++n;
  return n;
}

/// Field data. Embeddings are numbered kappa = i*e + j where i is the residue
/// embedding it restricts to and j in [0, e).
struct EmbeddingData {
  long p = 2;
  long e = 1;
  long f = 1;
  /// For each residue embedding i, the j of its distinguished lift.
  std::vector<long> distinguished_lift;

  EmbeddingData() = default;
  EmbeddingData(long p_, long e_, long f_, std::vector<long> lifts = {}) : p(p_), e(e_), f(f_) {
    require(p >= 2 && e >= 1 && f >= 1, ErrorKind::PreconditionViolated, "bad field data");
    if (lifts.empty()) lifts.assign(static_cast<std::size_t>(f), 0);
    require(lifts.size() == static_cast<std::size_t>(f), ErrorKind::RankMismatch,
            "need one distinguished lift per residue embedding");
    for (long j : lifts) require(j >= 0 && j < e, ErrorKind::PreconditionViolated, "distinguished lift out of range");
    distinguished_lift = std::move(lifts);
  }

  std::size_t embedding_count() const { return static_cast<std::size_t>(e * f); }
  std::size_t embedding_index(long i, long j) const { return static_cast<std::size_t>(i * e + j); }
  long restriction(std::size_t kappa) const { return static_cast<long>(kappa) / e; }
  bool is_distinguished(std::size_t kappa) const {
    return distinguished_lift[static_cast<std::size_t>(restriction(kappa))] == static_cast<long>(kappa) % e;
  }
  std::vector<std::size_t> embeddings_over(long i) const {
    std::vector<std::size_t> out;
    for (long j = 0; j < e; ++j) out.push_back(embedding_index(i, j));
    return out;
  }
};

/// A dominant weight for every embedding.
struct HodgeType {
  EmbeddingData emb;
  std::vector<Weight> weights;

  HodgeType() = default;
  HodgeType(EmbeddingData e, std::vector<Weight> w) : emb(std::move(e)), weights(std::move(w)) {
    require(weights.size() == emb.embedding_count(), ErrorKind::RankMismatch,
            "Hodge type needs e*f weights, got " + std::to_string(weights.size()));
    require(!weights.empty(), ErrorKind::RankMismatch, "empty Hodge type");
    for (const auto& w : weights) {
      require(w.size() == weights[0].size(), ErrorKind::RankMismatch, "weights of different length");
      require(is_dominant(w), ErrorKind::NonDominant, "non-dominant weight " + weight_to_string(w));
    }
  }

  std::size_t rank() const { return weights[0].size(); }
  bool regular() const {
    for (const auto& w : weights)
      if (!is_regular(w)) return false;
    return true;
  }
  long total_flag_dim() const {
    long s = 0;
    for (const auto& w : weights) s += flag_dim(w);
    return s;
  }
  std::vector<Weight> weights_over(long i) const {
    std::vector<Weight> out;
    for (auto k : emb.embeddings_over(i)) out.push_back(weights[k]);
    return out;
  }

  friend bool operator==(const HodgeType& a, const HodgeType& b) {
    return a.emb.p == b.emb.p && a.emb.e == b.emb.e && a.emb.f == b.emb.f &&
           a.emb.distinguished_lift == b.emb.distinguished_lift && a.weights == b.weights;
  }
};

/// λ_{κ0} + ρ at the distinguished lift of κ0, ρ at every other embedding.
inline HodgeType tilde_lift(const std::vector<Weight>& lambda, const EmbeddingData& emb) {
  require(lambda.size() == static_cast<std::size_t>(emb.f), ErrorKind::RankMismatch,
          "need one weight per residue embedding");
  const std::size_t d = lambda[0].size();
  std::vector<Weight> out(emb.embedding_count(), rho(d));
  for (long i = 0; i < emb.f; ++i) {
    const Weight& l = lambda[static_cast<std::size_t>(i)];
    require(l.size() == d, ErrorKind::RankMismatch, "weights of different length");
    require(is_dominant(l), ErrorKind::NonDominant, "non-dominant weight " + weight_to_string(l));
    out[emb.embedding_index(i, emb.distinguished_lift[static_cast<std::size_t>(i)])] = weight_add(l, rho(d));
  }
  return HodgeType(emb, std::move(out));
}

enum class BoundKind { natural, sharper };

struct BoundReport {
  bool pass = true;
  long limit = 0;
  std::vector<long> sums;  // per residue embedding
};

/// Per residue embedding, Σ (μ_{κ,1} − μ_{κ,d}) against e+p−1 (natural) or p (sharper).
inline BoundReport validate_hodge_bound(const HodgeType& mu, BoundKind kind) {
  BoundReport r;
  r.limit = kind == BoundKind::natural ? mu.emb.e + mu.emb.p - 1 : mu.emb.p;
  for (long i = 0; i < mu.emb.f; ++i) {
    long s = 0;
    for (const auto& w : mu.weights_over(i)) s += w.front() - w.back();
    r.sums.push_back(s);
    if (s > r.limit) r.pass = false;
  }
  return r;
}

}  // namespace bmc
