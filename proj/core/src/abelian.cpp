#include "baerinv/abelian.hpp"

#include <algorithm>

#include "baerinv/errors.hpp"

namespace baerinv {

AbelianStructure::AbelianStructure(std::vector<mpz_class> invariant_factors, std::size_t free_rank)
    : factors_(std::move(invariant_factors)), free_rank_(free_rank) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw PreconditionError("invariant factors must be at least 2");
    if (i > 0 && !mpz_divisible_p(factors_[i].get_mpz_t(), factors_[i - 1].get_mpz_t())) {
      throw PreconditionError("invariant factors must form a divisibility chain");
    }
  }
}

AbelianStructure AbelianStructure::from_orders(std::span<const mpz_class> orders, std::size_t free_rank) {
  std::vector<mpz_class> a;
  for (const auto& o : orders) {
    if (sgn(o) == 0) {
      ++free_rank;
    } else if (abs(o) != 1) {
      a.push_back(abs(o));
    }
  }
  // Pairwise (gcd, lcm) replacement: after pass i, a[i] divides every later entry.
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      mpz_class g = gcd(a[i], a[j]);
      mpz_class l = lcm(a[i], a[j]);
      a[i] = std::move(g);
      a[j] = std::move(l);
    }
  }
  std::erase_if(a, [](const mpz_class& v) { return v == 1; });
  return AbelianStructure(std::move(a), free_rank);
}

AbelianStructure AbelianStructure::cyclic_power(const mpz_class& d, std::size_t copies) {
  if (sgn(d) == 0) return AbelianStructure({}, copies);
  if (abs(d) == 1) return {};
  return AbelianStructure(std::vector<mpz_class>(copies, abs(d)), 0);
}

AbelianStructure AbelianStructure::operator+(const AbelianStructure& other) const {
  std::vector<mpz_class> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return from_orders(all, free_rank_ + other.free_rank_);
}

std::string AbelianStructure::to_string() const {
  if (is_trivial()) return "trivial";
  std::string out;
  auto append = [&out](const std::string& term) {
    if (!out.empty()) out += " + ";
    out += term;
  };
  for (std::size_t i = 0; i < factors_.size();) {
    std::size_t j = i;
    while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
    std::string term = "Z_" + factors_[i].get_str();
    if (j - i > 1) term += "^" + std::to_string(j - i);
    append(term);
    i = j;
  }
  if (free_rank_ == 1) append("Z");
  if (free_rank_ > 1) append("Z^" + std::to_string(free_rank_));
  return out;
}

}  // namespace baerinv
