#include "k3e/rank3.hpp"

#include <numeric>

namespace k3e {

namespace {

void require_k(Int k) {
  if (k < 2) throw PreconditionError("k must be at least 2");
}

}  // namespace

NSLattice rank3_ns(Int k) {
  require_k(k);
  return NSLattice(Lattice(Mat{{-2 * k}}, "<" + std::to_string(-2 * k) + ">"));
}

bool rank3_condition_C(Int k) {
  require_k(k);
  for (Int r = 1; r * r < k; ++r)
    if ((k - 1) % r != 0) return false;
  return true;
}

std::vector<Int> rank3_Gk(Int k) {
  require_k(k);
  std::vector<Int> out;
  for (Int x = 0; x < 2 * k; ++x)
    if ((x * x - 1) % (4 * k) == 0) out.push_back(x);
  return out;
}

std::vector<Int> distinct_primes(Int k) {
  std::vector<Int> ps;
  for (Int p = 2; p * p <= k; ++p)
    if (k % p == 0) {
      ps.push_back(p);
      while (k % p == 0) k /= p;
    }
  if (k > 1) ps.push_back(k);
  return ps;
}

bool is_prime_power(Int k) { return k >= 2 && distinct_primes(k).size() == 1; }

Genus1Census rank3_genus1_census(Int k, Int beta_max) {
  if (!rank3_condition_C(k)) throw PreconditionError("k is not in the zero-entropy list");
  NSLattice ns = rank3_ns(k);
  Genus1Census c;
  c.beta_max = beta_max > 0 ? beta_max : 2 * k;
  for (Int b = 2; b <= c.beta_max; ++b) {
    auto fs = find_fibrations(ns, b, false, true);
    if (fs.empty()) continue;
    c.count += static_cast<Int>(fs.size());
    c.betas.push_back(b);
  }
  return c;
}

Rank3Verdict rank3_classify(Int k, bool with_census) {
  require_k(k);
  Rank3Verdict v;
  v.k = k;
  v.condition_C = rank3_condition_C(k);
  v.zero_entropy = v.condition_C;
  v.distinct_primes = static_cast<Int>(distinct_primes(k).size());
  v.prime_power = v.distinct_primes == 1;
  v.fibration_classes = static_cast<Int>(rank3_Gk(k).size()) / 2;
  if (with_census && v.zero_entropy) v.genus1 = rank3_genus1_census(k);
  return v;
}

std::vector<CandidateFiber> rank3_candidate_fibers(Int k, Int q_bound) {
  if (!is_prime_power(k)) throw PreconditionError("k must be a prime power");
  NSLattice ns = rank3_ns(k);
  std::vector<CandidateFiber> out;
  auto emit = [&](DivisorClass e, bool second, Int q, Int g) {
    if (std::gcd(std::gcd(e.x, e.y), e.z[0]) != 1) return;
    if (ns.self(e) != 0) throw std::logic_error("candidate fiber is not isotropic");
    out.push_back({std::move(e), second, q, g});
  };
  for (Int q = 1; q <= q_bound; ++q) {
    for (Int g = 1; g <= q; ++g)
      if (std::gcd(q, g) == 1) emit({q * q + k * g * g, q * q, {q * g}}, false, q, g);
    for (Int g = 1; g <= q * k; ++g)
      if (std::gcd(q, g) == 1) emit({q * q * k + g * g, q * q * k, {q * g}}, true, q, g);
  }
  return out;
}

}  // namespace k3e
