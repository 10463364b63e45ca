#include "baerinv/baer.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "baerinv/errors.hpp"
#include "baerinv/lyndon.hpp"
#include "baerinv/magnus.hpp"
#include "baerinv/nilform.hpp"

namespace baerinv {

void check_class_cap(int needed, int cap) {
  if (cap > kMaxSeriesCap) {
    throw ResourceError("cap " + std::to_string(cap) + " exceeds the hard limit " +
                        std::to_string(kMaxSeriesCap));
  }
  if (needed > cap) {
    throw ResourceError("total class " + std::to_string(needed) + " exceeds the cap " +
                        std::to_string(cap));
  }
}

void ProblemSpec::validate() const {
  if (r < 1 || s < 1) throw PreconditionError("r and s must be positive");
  if (n < 1 || c < 1) throw PreconditionError("n and c must be positive");
}

mpz_class ProblemSpec::d() const { return gcd(mpz_class(static_cast<long>(r)), mpz_class(static_cast<long>(s))); }

std::string ProblemSpec::to_string() const {
  std::ostringstream os;
  os << "(r=" << r << ", s=" << s << ", n=" << n << ", c=" << c << ')';
  return os.str();
}

namespace {

// Tails are sequences of basic commutators. `visit(path, weight)` is called
// for every prefix in depth-first order (children in basis order) whose total
// weight stays within `budget`; returning false prunes the subtree. Prefixes
// that cannot be extended to length >= min_len are never visited.
using Path = std::vector<const LyndonCommutator*>;

void walk_tails(std::span<const LyndonCommutator> basis, int budget, int min_len, Path& path,
                int weight, const std::function<bool(const Path&, int)>& visit) {
  for (const auto& b : basis) {
    const int w = weight + b.weight();
    if (w > budget) break;  // basis is weight-ascending
    const int len = static_cast<int>(path.size()) + 1;
    if (len + (budget - w) < min_len) continue;
    path.push_back(&b);
    if (visit(path, w)) walk_tails(basis, budget, min_len, path, w, visit);
    path.pop_back();
  }
}

std::vector<LyndonCommutator> tail_basis(int max_weight) {
  std::vector<LyndonCommutator> out;
  for (int w = 1; w <= max_weight; ++w) {
    auto blk = enumerate_basis(w, 2);
    out.insert(out.end(), blk.begin(), blk.end());
  }
  return out;
}

struct Head {
  Generator gen;
  std::int64_t exponent;
};

std::array<Head, 2> heads(const ProblemSpec& spec) {
  return {Head{Generator::x(), spec.r}, Head{Generator::y(), spec.s}};
}

}  // namespace

std::vector<CommutatorExpr> rho_generators(const ProblemSpec& spec, int cap) {
  spec.validate();
  const int bound = spec.c + spec.n;
  check_class_cap(bound, cap);
  const auto basis = tail_basis(bound - 1);
  std::vector<CommutatorExpr> out;
  for (const Head& h : heads(spec)) {
    const CommutatorExpr head = CommutatorExpr::leaf(Word::generator(h.gen), h.exponent);
    Path path;
    walk_tails(basis, bound - 1, spec.c, path, 0, [&](const Path& p, int) {
      if (static_cast<int>(p.size()) >= spec.c) {
        std::vector<CommutatorExpr> parts{head};
        for (const auto* b : p) parts.push_back(b->to_expr());
        out.push_back(CommutatorExpr::left_normed(parts));
      }
      return true;
    });
  }
  return out;
}

namespace {

using RowBlock = std::vector<std::vector<mpz_class>>;

// Nonzero coordinate rows of every [h^e, b1, ..., bm] with m >= c and
// 1 + sum weight(bi) <= high, in enumeration order without repeats.
RowBlock compute_head_rows(const Head& h, int c, int high) {
  const int low = c + 1;
  const NilBasis& nil = NilBasis::get(high);
  const auto basis = tail_basis(high - 1);
  // Magnus images of the tail basis in the same order as `basis`.
  std::vector<const TruncatedSeries*> tail_series;
  for (int w = 1; w <= high - 1; ++w) {
    for (const auto& e : nil.weight(w)) tail_series.push_back(&e.magnus);
  }
  auto series_of = [&](const LyndonCommutator* b) {
    return tail_series[static_cast<std::size_t>(b - basis.data())];
  };

  RowBlock rows;
  std::set<std::vector<mpz_class>> seen;
  std::vector<TruncatedSeries> stack{
      series_power(TruncatedSeries::generator(h.gen, high), h.exponent)};
  Path path;
  walk_tails(basis, high - 1, c, path, 0, [&](const Path& p, int) {
    while (stack.size() > p.size()) stack.pop_back();
    TruncatedSeries next = series_commutator(stack.back(), *series_of(p.back()));
    // Once trivial modulo gamma_{high+1}, every extension is trivial too.
    if (next.is_one()) return false;
    if (static_cast<int>(p.size()) >= c) {
      const auto coords = coordinates(next, low, high);
      std::vector<mpz_class> row(coords.entries().begin(), coords.entries().end());
      if (!coords.is_zero() && seen.insert(row).second) rows.push_back(std::move(row));
    }
    stack.push_back(std::move(next));
    return true;
  });
  return rows;
}

// The x^r block does not depend on s (and vice versa), so parameter sweeps
// reuse blocks across cells.
std::shared_ptr<const RowBlock> head_rows(const Head& h, int c, int high) {
  using Key = std::tuple<int, std::int64_t, int, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const RowBlock>> cache;
  constexpr std::size_t kMaxEntries = 512;
  const Key key{h.gen.index, h.exponent, c, high};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rows = std::make_shared<const RowBlock>(compute_head_rows(h, c, high));
  std::lock_guard lock(mutex);
  if (cache.size() >= kMaxEntries) cache.clear();
  cache.emplace(key, rows);
  return rows;
}

}  // namespace

IntMatrix rho_matrix(const ProblemSpec& spec, int high, int cap) {
  spec.validate();
  check_class_cap(high, cap);
  const int low = spec.c + 1;
  if (high < low) throw PreconditionError("weight range is empty");
  IntMatrix m(0, NilBasis::get(high).rank(low, high));
  std::set<std::vector<mpz_class>> seen;
  for (const Head& h : heads(spec)) {
    const auto rows = head_rows(h, spec.c, high);
    for (const auto& row : *rows) {
      if (seen.insert(row).second) m.append_row(row);
    }
  }
  return m;
}

bool SubgroupStructure::is_scalar(const mpz_class& d) const {
  if (rank != ambient_rank || diagonal.size() != rank) return false;
  for (const auto& v : diagonal) {
    if (v != abs(d)) return false;
  }
  return true;
}

std::string SubgroupStructure::to_string() const {
  std::ostringstream os;
  os << "diagonal (";
  for (std::size_t i = 0; i < diagonal.size(); ++i) os << (i ? ", " : "") << diagonal[i].get_str();
  os << "), rank " << rank << " of " << ambient_rank;
  return os.str();
}

SubgroupStructure rho_subgroup_structure(const ProblemSpec& spec, int j, int cap) {
  spec.validate();
  if (j < 2) throw PreconditionError("j must be at least 2");
  const int high = spec.c + j - 1;
  check_class_cap(high, cap);
  const IntMatrix m = rho_matrix(spec, high, cap);
  SmithForm snf = smith_normal_form(m);
  return {std::move(snf.diagonal), snf.rank, m.cols()};
}

AbelianStructure baer_invariant(const ProblemSpec& spec, int cap) {
  spec.validate();
  if (spec.c < spec.n) throw PreconditionError("unsupported: the quotient formula requires c >= n");
  check_class_cap(spec.c + spec.n, cap);
  return cokernel_structure(rho_matrix(spec, spec.c + spec.n, cap));
}

std::string_view closed_form_label(ClosedForm form) {
  switch (form) {
    case ClosedForm::kCoprime: return "Theorem 3.4";
    case ClosedForm::kDirectProduct: return "Theorem 3.1";
    case ClosedForm::kOddClassTwo: return "Theorem 3.5(i)";
    case ClosedForm::kCoprimeToSix: return "Theorem 3.5(ii)";
  }
  return "";
}

namespace {

std::size_t lcs_rank_sum(int c, int n) {
  std::size_t total = 0;
  for (int i = 1; i <= n; ++i) total += witt_rank(c + i, 2);
  return total;
}

bool coprime_to_six(std::int64_t v) { return std::gcd(v, std::int64_t{6}) == 1; }

}  // namespace

std::optional<Prediction> predict_closed_form(const ProblemSpec& spec) {
  spec.validate();
  const mpz_class d = spec.d();
  if (d == 1) return Prediction{AbelianStructure(), ClosedForm::kCoprime};
  if (spec.n == 1) {
    return Prediction{AbelianStructure::cyclic_power(d, lcs_rank_sum(spec.c, 1)),
                      ClosedForm::kDirectProduct};
  }
  if (spec.n == 2 && spec.c >= 2 && spec.r % 2 == 1 && spec.s % 2 == 1) {
    return Prediction{AbelianStructure::cyclic_power(d, lcs_rank_sum(spec.c, 2)),
                      ClosedForm::kOddClassTwo};
  }
  if ((spec.n == 3 || spec.n == 4) && spec.c >= spec.n && coprime_to_six(spec.r) &&
      coprime_to_six(spec.s)) {
    return Prediction{AbelianStructure::cyclic_power(d, lcs_rank_sum(spec.c, spec.n)),
                      ClosedForm::kCoprimeToSix};
  }
  return std::nullopt;
}

AbelianStructure abelian_multiplicator(std::span<const mpz_class> orders, int c) {
  if (c < 1) throw PreconditionError("c must be positive");
  for (const auto& o : orders) {
    if (sgn(o) <= 0) throw PreconditionError("orders must be positive integers");
  }
  // Invariant factors ascend (d1 | d2 | ...); the formula wants n1 >= n2 >= ...
  std::vector<mpz_class> desc = AbelianStructure::from_orders(orders).invariant_factors();
  std::reverse(desc.begin(), desc.end());
  std::vector<mpz_class> out;
  std::uint64_t prev = 0;  // b_1 = 0 for weight c + 1 >= 2
  for (std::size_t i = 2; i <= desc.size(); ++i) {
    const std::uint64_t b = witt_rank(c + 1, static_cast<int>(i));
    out.insert(out.end(), b - prev, desc[i - 1]);
    prev = b;
  }
  return AbelianStructure::from_orders(out);
}

// ---------------------------------------------------------------------------

CommutatorExpr congruence_rhs(std::span<const CongruenceTerm> terms) {
  std::vector<CommutatorExpr> factors;
  for (const auto& t : terms) factors.push_back(CommutatorExpr::power(t.base, t.exponent));
  return CommutatorExpr::product(std::move(factors));
}

namespace {

std::string leading_terms(const TruncatedSeries& residual, int weight) {
  const NilBasis& nil = NilBasis::get(residual.cap());
  const auto coords = weight_coordinates(residual.block(weight), weight, nil);
  const auto elems = nil.weight(weight);
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (sgn(coords[i]) == 0) continue;
    if (!out.empty()) out += ' ';
    const bool neg = sgn(coords[i]) < 0;
    if (!out.empty()) out += neg ? "- " : "+ ";
    else if (neg) out += '-';
    out += mpz_class(abs(coords[i])).get_str() + "*" + elems[i].commutator.bracket_string();
  }
  return out;
}

}  // namespace

CongruenceReport check_congruence(const CommutatorExpr& lhs, std::span<const CongruenceTerm> terms,
                                  int modulus_weight) {
  const int cap = modulus_weight - 1;
  check_series_cap(cap);
  const CommutatorExpr rhs = congruence_rhs(terms);
  const TruncatedSeries residual =
      magnus_expand(lhs, cap) * series_inverse(magnus_expand(rhs, cap));
  CongruenceReport report;
  report.residual_class = lcs_class(residual);
  report.holds = !report.residual_class.has_value();
  report.modulus_weight = modulus_weight;
  report.lhs = lhs.to_string();
  report.rhs = rhs.to_string();
  if (report.residual_class) report.residual_leading = leading_terms(residual, *report.residual_class);
  return report;
}

namespace {

CommutatorExpr letter(Generator g) { return CommutatorExpr::leaf(Word::generator(g)); }

std::int64_t binomial(std::int64_t n, unsigned long k) {
  if (n < 0) throw PreconditionError("binomial needs n >= 0");
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), k);
  if (!b.fits_slong_p()) throw ResourceError("binomial coefficient too large");
  return b.get_si();
}

// Left-normed bracket of `prefix` followed by the letters a[from..].
CommutatorExpr with_letters(std::vector<CommutatorExpr> prefix, std::span<const Generator> a,
                            std::size_t from) {
  for (std::size_t i = from; i < a.size(); ++i) prefix.push_back(letter(a[i]));
  return CommutatorExpr::left_normed(prefix);
}

}  // namespace

CommutatorExpr lemma21_lhs(std::int64_t r, std::span<const Generator> a) {
  return with_letters({CommutatorExpr::leaf(Word::generator(Generator::x()), r), letter(Generator::y())},
                      a, 0);
}

std::vector<CongruenceTerm> lemma21_terms(std::int64_t r, std::span<const Generator> a) {
  if (a.size() < 2) throw PreconditionError("the nine-term expansion needs at least two letters a_i");
  const CommutatorExpr x = letter(Generator::x());
  const CommutatorExpr y = letter(Generator::y());
  const CommutatorExpr a1 = letter(a[0]);
  const CommutatorExpr a2 = letter(a[1]);
  const CommutatorExpr xy = CommutatorExpr::bracket(x, y);
  const CommutatorExpr xyx = CommutatorExpr::bracket(xy, x);
  const CommutatorExpr xya1 = CommutatorExpr::bracket(xy, a1);
  const std::int64_t r2 = binomial(r, 2);
  const std::int64_t r3 = binomial(r, 3);
  const std::int64_t r1_3 = binomial(r + 1, 3);
  const std::int64_t r4 = binomial(r, 4);
  return {
      {with_letters({x, y}, a, 0), r},
      {with_letters({x, y, x}, a, 0), r2},
      {with_letters({x, y, a1, xy}, a, 1), r2},
      {with_letters({x, y, a1, a2, xya1}, a, 2), r2},
      {with_letters({x, y, x, a1, xy}, a, 1), r1_3},
      {with_letters({x, y, x, a1, xyx}, a, 1), r3 + r1_3},
      {with_letters({x, y, x, x}, a, 0), r3},
      {with_letters({x, y, x, xy}, a, 0), r3},
      {with_letters({x, y, x, x, x}, a, 0), r4},
  };
}

CongruenceReport lemma21_check(int c, std::int64_t r, std::span<const Generator> a, int cap) {
  if (c < 3) throw PreconditionError("the nine-term expansion requires c >= 3");
  if (r < 4) throw PreconditionError("the nine-term expansion requires r >= 4");
  if (a.size() != static_cast<std::size_t>(c - 1)) throw PreconditionError("expected c - 1 letters a_i");
  check_class_cap(c + 4, cap);
  CongruenceReport report = check_congruence(lemma21_lhs(r, a), lemma21_terms(r, a), c + 5);
  report.c = c;
  report.r = r;
  report.a = letters_to_string(a);
  return report;
}

CommutatorExpr prop22_lhs(std::int64_t r, std::span<const Generator> a) {
  return with_letters({CommutatorExpr::leaf(Word::generator(Generator::x()), r)}, a, 0);
}

std::vector<CongruenceTerm> prop22_terms(std::int64_t r, std::span<const Generator> a,
                                         int modulus_weight) {
  if (a.empty()) throw PreconditionError("expected at least one letter a_i");
  const int c = static_cast<int>(a.size());
  const CommutatorExpr x = letter(Generator::x());
  std::vector<CongruenceTerm> terms{{with_letters({x}, a, 0), r}};
  if (modulus_weight == c + 3) {
    terms.push_back({with_letters({x, letter(a[0]), x}, a, 1), binomial(r, 2)});
  } else if (modulus_weight != c + 2) {
    throw PreconditionError("modulus weight must be c + 2 or c + 3");
  }
  return terms;
}

CongruenceReport prop22_congruence_check(int c, std::int64_t r, std::span<const Generator> a,
                                         int modulus_weight, int cap) {
  if (c < 1) throw PreconditionError("c must be positive");
  if (r < 1) throw PreconditionError("r must be positive");
  if (a.size() != static_cast<std::size_t>(c)) throw PreconditionError("expected c letters a_i");
  if (modulus_weight != c + 2 && modulus_weight != c + 3) {
    throw PreconditionError("modulus weight must be c + 2 or c + 3");
  }
  check_class_cap(modulus_weight - 1, cap);
  CongruenceReport report = check_congruence(prop22_lhs(r, a), prop22_terms(r, a, modulus_weight),
                                             modulus_weight);
  report.c = c;
  report.r = r;
  report.a = letters_to_string(a);
  return report;
}

std::vector<Generator> parse_letters(std::string_view text) {
  std::vector<Generator> out;
  for (char ch : text) {
    if (ch == 'x') {
      out.push_back(Generator::x());
    } else if (ch == 'y') {
      out.push_back(Generator::y());
    } else if (ch != ',' && ch != ' ') {
      throw ParseError(std::string("letters must be x or y, got '") + ch + "'");
    }
  }
  return out;
}

std::string letters_to_string(std::span<const Generator> a) {
  std::string s;
  for (const auto& g : a) s += g.name();
  return s;
}

}  // namespace baerinv
