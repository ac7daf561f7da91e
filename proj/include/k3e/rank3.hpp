#pragma once

#include <optional>

#include "k3e/ns.hpp"

namespace k3e {

// NS = U ⊕ <-2k>.
NSLattice rank3_ns(Int k);

// Every r with r² < k divides k - 1.
bool rank3_condition_C(Int k);
// G_k = {x mod 2k : x² ≡ 1 mod 4k}, sorted.
std::vector<Int> rank3_Gk(Int k);
std::vector<Int> distinct_primes(Int k);
bool is_prime_power(Int k);

struct Genus1Census {
  Int count = 0;               // nef isotropic classes E != F over the scanned β
  std::vector<Int> betas;      // β values at which they occur
  Int beta_max = 0;            // scan range 2..beta_max
};
// Scans β in 2..beta_max (default 2k). Requires k in the zero-entropy list.
Genus1Census rank3_genus1_census(Int k, Int beta_max = 0);

struct Rank3Verdict {
  Int k = 0;
  bool condition_C = false;
  bool zero_entropy = false;
  bool prime_power = false;
  Int distinct_primes = 0;
  Int fibration_classes = 0;  // |G_k| / 2
  std::optional<Genus1Census> genus1;  // filled for zero-entropy k when requested
};
Rank3Verdict rank3_classify(Int k, bool with_census = false);

// F'_{q,γ'} = [q² + kγ'², q², qγ'] with 1 <= γ' <= q and
// F''_{q,γ'} = [q²k + γ'², q²k, qγ'] with 1 <= γ' <= qk, gcd(q,γ') = 1, primitive only.
struct CandidateFiber {
  DivisorClass e;
  bool second_family = false;
  Int q = 0, gamma_prime = 0;
};
std::vector<CandidateFiber> rank3_candidate_fibers(Int k, Int q_bound);

}  // namespace k3e
