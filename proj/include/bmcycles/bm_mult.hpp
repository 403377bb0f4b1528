#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bmcycles/characters.hpp"
#include "bmcycles/errors.hpp"
#include "bmcycles/weights.hpp"

namespace bmc {

/// One dominant weight per residue embedding.
using SerreTuple = std::vector<Weight>;

inline std::string serre_tuple_to_string(const SerreTuple& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + weight_to_string(t[i]);
  return t.size() == 1 ? s : "(" + s + ")";
}

/// Σ_{κ|κ0} (μ_κ − ρ) for each residue embedding κ0.
inline std::vector<Weight> shifted_sums(const HodgeType& mu) {
  const std::size_t d = mu.rank();
  std::vector<Weight> out;
  for (long i = 0; i < mu.emb.f; ++i) {
    Weight s(d, 0);
    for (const auto& w : mu.weights_over(i)) {
      const Weight shifted = weight_sub(w, rho(d));
      require(is_dominant(shifted), ErrorKind::NonDominant,
              "mu - rho is not dominant for " + weight_to_string(w));
      s = weight_add(s, shifted);
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Dominant weights λ with λ <= top in dominance order.
inline std::vector<Weight> dominant_weights_below(const Weight& top) {
  const std::size_t d = top.size();
  const long total = weight_total(top);
  std::vector<Weight> out;
  Weight cur(d);
  // Entries of such λ lie between the last and first entries of top.
  std::function<void(std::size_t, long, long)> rec = [&](std::size_t i, long hi, long sum) {
    if (i + 1 == d) {
      const long last = total - sum;
      if (last <= hi && last >= top.back()) {
        cur[i] = last;
        if (dominance_leq(cur, top)) out.push_back(cur);
      }
      return;
    }
    for (long x = hi; x >= top.back(); --x) {
      cur[i] = x;
      rec(i + 1, x, sum + x);
    }
  };
  rec(0, top.front(), 0);
  return out;
}

inline std::vector<SerreTuple> candidate_support(const HodgeType& mu) {
  std::vector<SerreTuple> tuples{{}};
  for (const auto& top : shifted_sums(mu)) {
    std::vector<SerreTuple> next;
    for (const auto& t : tuples)
      for (const auto& w : dominant_weights_below(top)) {
        SerreTuple n = t;
        n.push_back(w);
        next.push_back(std::move(n));
      }
    tuples = std::move(next);
  }
  return tuples;
}

/// Multiplicities of the tensor product ⊗_{κ|κ0} H^0(μ_κ − ρ), one map per κ0.
inline std::vector<Multiplicities> per_residue_multiplicities(const HodgeType& mu) {
  const std::size_t d = mu.rank();
  std::vector<Multiplicities> out;
  for (long i = 0; i < mu.emb.f; ++i) {
    Character ch = LaurentPoly::one(d);
    for (const auto& w : mu.weights_over(i)) {
      const Weight shifted = weight_sub(w, rho(d));
      require(is_dominant(shifted), ErrorKind::NonDominant, "mu - rho is not dominant for " + weight_to_string(w));
      ch *= weyl_character(shifted);
    }
    out.push_back(decompose(ch));
  }
  return out;
}

/// m(λ, μ, 1) as the product over κ0 of tensor-product multiplicities.
/// Refuses outside the natural bound, where characteristic-zero counts stop being valid.
inline std::map<SerreTuple, Integer> bm_multiplicities(const HodgeType& mu, bool override_bounds = false) {
  const BoundReport b = validate_hodge_bound(mu, BoundKind::natural);
  if (!override_bounds && !b.pass) {
    std::string sums;
    for (long s : b.sums) sums += (sums.empty() ? "" : ",") + std::to_string(s);
    fail(ErrorKind::BoundViolated, "sum of gaps [" + sums + "] exceeds e+p-1 = " + std::to_string(b.limit));
  }
  std::map<SerreTuple, Integer> result{{SerreTuple{}, Integer(1)}};
  for (const auto& m : per_residue_multiplicities(mu)) {
    std::map<SerreTuple, Integer> next;
    for (const auto& [t, c] : result)
      for (const auto& [w, k] : m) {
        SerreTuple n = t;
        n.push_back(w);
        next[n] = c * k;
      }
    result = std::move(next);
  }
  return result;
}

/// Gap p−1 at every residue embedding.
inline bool is_steinberg(const SerreTuple& lambda, long p) {
  for (const auto& w : lambda)
    if (w.front() - w.back() != p - 1) return false;
  return !lambda.empty();
}

struct BMTerm {
  SerreTuple lambda;
  Integer multiplicity;
  HodgeType lift;
  bool steinberg = false;
};

struct BMIdentity {
  HodgeType mu;
  std::vector<BMTerm> terms;
  BoundReport bound;
  bool has_steinberg = false;
};

/// [X^{μ}] = Σ m(λ,μ,1) [X^{λ~}] for GL_2 under the sharper bound Σ gaps <= p.
inline BMIdentity bm_identity(const HodgeType& mu, bool override_bounds = false) {
  require(mu.rank() == 2, ErrorKind::UnsupportedRank, "the identity is computed for GL_2 only");
  require(mu.regular(), ErrorKind::IrregularHodgeType, "Hodge type must be regular");
  BMIdentity id;
  id.mu = mu;
  id.bound = validate_hodge_bound(mu, BoundKind::sharper);
  if (!override_bounds && !id.bound.pass) {
    std::string sums;
    for (long s : id.bound.sums) sums += (sums.empty() ? "" : ",") + std::to_string(s);
    fail(ErrorKind::BoundViolated, "sum of gaps [" + sums + "] exceeds p = " + std::to_string(id.bound.limit));
  }
  for (const auto& [lambda, m] : bm_multiplicities(mu, override_bounds)) {
    if (m == 0) continue;
    BMTerm t{lambda, m, tilde_lift(lambda, mu.emb), is_steinberg(lambda, mu.emb.p)};
    id.has_steinberg = id.has_steinberg || t.steinberg;
    id.terms.push_back(std::move(t));
  }
  return id;
}

}  // namespace bmc
