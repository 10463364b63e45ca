// baerinv: command-line front end for the Baer-invariant engine.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 resource-cap rejection, 4 internal error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "baerinv/baer.hpp"
#include "baerinv/errors.hpp"
#include "baerinv/lyndon.hpp"
#include "baerinv/magnus.hpp"
#include "baerinv/serialize.hpp"

namespace {

using namespace baerinv;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

struct GlobalOptions {
  std::string format = "text";
  int cap = kDefaultCap;
  bool json() const { return format == "json"; }
};

struct SpecOptions {
  std::int64_t r = 0, s = 0;
  int n = 0, c = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--r", r, "order of the first cyclic factor")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--s", s, "order of the second cyclic factor")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--n", n, "nilpotent-product class")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--c", c, "variety class")->required()->check(CLI::PositiveNumber);
  }
  ProblemSpec spec() const { return {r, s, n, c}; }
  Json json() const {
    return Json{{"r", std::to_string(r)}, {"s", std::to_string(s)},
                {"n", std::to_string(n)}, {"c", std::to_string(c)}};
  }
};

void emit(const GlobalOptions& g, std::string_view command, Json params, Json result,
          const std::string& text) {
  if (g.json()) {
    std::cout << render_json(make_envelope(command, std::move(params), std::move(result), g.cap)) << '\n';
  } else {
    std::cout << text;
  }
}

std::string factor_list(const AbelianStructure& a) {
  std::string s;
  for (const auto& f : a.invariant_factors()) s += (s.empty() ? "" : " ") + f.get_str();
  return s.empty() ? "(none)" : s;
}

// ---------------------------------------------------------------------------

int run_compute(const GlobalOptions& g, const SpecOptions& o) {
  const ProblemSpec spec = o.spec();
  if (spec.c < spec.n) {
    std::cerr << "error: requires c >= n\n";
    return kExitUsage;
  }
  const AbelianStructure result = baer_invariant(spec, g.cap);
  std::ostringstream text;
  text << result.to_string() << '\n'
       << "invariant factors: " << factor_list(result) << '\n'
       << "free rank: " << result.free_rank() << '\n';
  emit(g, "compute", o.json(), Json(result), text.str());
  return 0;
}

int run_predict(const GlobalOptions& g, const SpecOptions& o) {
  const auto p = predict_closed_form(o.spec());
  Json result;
  std::string text;
  if (p) {
    result = Json{{"applies", true}, {"structure", Json(p->structure)},
                  {"rule", std::string(closed_form_label(p->form))}};
    text = p->structure.to_string() + " (" + std::string(closed_form_label(p->form)) + ")\n";
  } else {
    result = Json{{"applies", false}};
    text = "no closed form applies\n";
  }
  emit(g, "predict", o.json(), std::move(result), text);
  return 0;
}

std::string report_text(std::string_view name, const CongruenceReport& r) {
  std::ostringstream os;
  os << name << " c=" << r.c << " r=" << r.r << " a=" << r.a << " modulus=gamma_"
     << r.modulus_weight << ": holds=" << (r.holds ? "true" : "false") << " residual_class="
     << (r.residual_class ? std::to_string(*r.residual_class) : std::string("beyond cap")) << '\n';
  if (!r.holds) os << "  leading residual: " << r.residual_leading << '\n';
  os << "  lhs: " << r.lhs << '\n' << "  rhs: " << r.rhs << '\n';
  return os.str();
}

std::vector<std::vector<Generator>> all_tuples(int length) {
  std::vector<std::vector<Generator>> out{{}};
  for (int i = 0; i < length; ++i) {
    std::vector<std::vector<Generator>> next;
    for (const auto& t : out) {
      for (Generator g : {Generator::x(), Generator::y()}) {
        auto u = t;
        u.push_back(g);
        next.push_back(std::move(u));
      }
    }
    out = std::move(next);
  }
  return out;
}

struct CongruenceOptions {
  int c = 0;
  std::int64_t r = 0;
  std::string a;  // empty: every tuple
  std::optional<int> modulus;
};

int run_prop22(const GlobalOptions& g, const CongruenceOptions& o, std::string_view command) {
  std::vector<std::vector<Generator>> tuples;
  if (o.a.empty()) {
    tuples = all_tuples(o.c);
  } else {
    tuples.push_back(parse_letters(o.a));
  }
  std::vector<int> moduli;
  if (o.modulus) {
    moduli.push_back(*o.modulus);
  } else {
    moduli = {o.c + 2, o.c + 3};
  }
  Json reports = Json::array();
  std::string text;
  bool all_hold = true;
  for (const auto& a : tuples) {
    for (int m : moduli) {
      const auto rep = prop22_congruence_check(o.c, o.r, a, m, g.cap);
      all_hold = all_hold && rep.holds;
      reports.push_back(Json(rep));
      text += report_text("prop22", rep);
    }
  }
  Json params{{"c", std::to_string(o.c)}, {"r", std::to_string(o.r)}, {"a", o.a}};
  if (o.modulus) params["modulus"] = std::to_string(*o.modulus);
  emit(g, command, std::move(params), Json{{"reports", reports}, {"all_hold", all_hold}}, text);
  return all_hold ? 0 : kExitVerifyFailed;
}

int run_lemma21(const GlobalOptions& g, const CongruenceOptions& o) {
  std::vector<std::vector<Generator>> tuples;
  if (o.a.empty()) {
    tuples = all_tuples(o.c - 1);
  } else {
    tuples.push_back(parse_letters(o.a));
  }
  Json reports = Json::array();
  std::string text;
  bool all_hold = true;
  for (const auto& a : tuples) {
    const auto rep = lemma21_check(o.c, o.r, a, g.cap);
    all_hold = all_hold && rep.holds;
    reports.push_back(Json(rep));
    text += report_text("lemma21", rep);
  }
  text += all_hold ? "all tuples hold\n" : "some tuples fail\n";
  emit(g, "verify", Json{{"target", "lemma21"}, {"c", std::to_string(o.c)}, {"r", std::to_string(o.r)}, {"a", o.a}},
       Json{{"reports", reports}, {"all_hold", all_hold}}, text);
  return all_hold ? 0 : kExitVerifyFailed;
}

struct GridOptions {
  std::int64_t min_rs = 2;
  std::int64_t max_rs = 9;
  int max_n = 4;
  int max_c = 5;
};

int run_theorems(const GlobalOptions& g, const GridOptions& o) {
  Json cells = Json::array();
  std::ostringstream text;
  int passed = 0, failed = 0, skipped = 0;
  for (std::int64_t r = o.min_rs; r <= o.max_rs; ++r) {
    for (std::int64_t s = o.min_rs; s <= o.max_rs; ++s) {
      for (int n = 1; n <= o.max_n; ++n) {
        for (int c = n; c <= o.max_c; ++c) {
          const ProblemSpec spec{r, s, n, c};
          const auto prediction = predict_closed_form(spec);
          if (!prediction) continue;
          Json cell{{"r", std::to_string(r)}, {"s", std::to_string(s)},
                    {"n", std::to_string(n)}, {"c", std::to_string(c)},
                    {"rule", std::string(closed_form_label(prediction->form))},
                    {"predicted", Json(prediction->structure)}};
          text << "r=" << r << " s=" << s << " n=" << n << " c=" << c << "  ";
          if (c + n > g.cap) {
            ++skipped;
            cell["verdict"] = "skipped (cap)";
            text << "skipped (cap)\n";
          } else {
            const AbelianStructure computed = baer_invariant(spec, g.cap);
            const bool ok = computed == prediction->structure;
            ok ? ++passed : ++failed;
            cell["computed"] = Json(computed);
            cell["verdict"] = ok ? "PASS" : "FAIL";
            text << "computed=" << computed.to_string()
                 << "  predicted=" << prediction->structure.to_string() << " ("
                 << closed_form_label(prediction->form) << ")  " << (ok ? "PASS" : "FAIL") << '\n';
          }
          cells.push_back(std::move(cell));
        }
      }
    }
  }
  text << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
  Json params{{"target", "theorems"}, {"min_rs", std::to_string(o.min_rs)},
              {"max_rs", std::to_string(o.max_rs)}, {"max_n", std::to_string(o.max_n)},
              {"max_c", std::to_string(o.max_c)}};
  Json result{{"cells", cells}, {"passed", std::to_string(passed)},
              {"failed", std::to_string(failed)}, {"skipped", std::to_string(skipped)}};
  emit(g, "verify", std::move(params), std::move(result), text.str());
  return failed == 0 ? 0 : kExitVerifyFailed;
}

int run_basis(const GlobalOptions& g, int weight, int letters) {
  Json rows = Json::array();
  std::ostringstream text;
  std::size_t index = 1;
  for (const auto& b : enumerate_basis(weight, letters)) {
    rows.push_back(Json{{"index", std::to_string(index)}, {"word", b.word_string()},
                        {"bracket", b.bracket_string()}, {"weight", std::to_string(b.weight())}});
    text << index << '\t' << b.word_string() << '\t' << b.bracket_string() << '\t' << b.weight() << '\n';
    ++index;
  }
  emit(g, "basis", Json{{"weight", std::to_string(weight)}, {"letters", std::to_string(letters)}},
       Json{{"basis", rows}}, text.str());
  return 0;
}

int run_witt(const GlobalOptions& g, int weight, int letters) {
  const std::uint64_t v = witt_rank(weight, letters);
  emit(g, "witt", Json{{"weight", std::to_string(weight)}, {"letters", std::to_string(letters)}},
       Json{{"rank", std::to_string(v)}}, std::to_string(v) + "\n");
  return 0;
}

int run_abelian(const GlobalOptions& g, const std::vector<std::int64_t>& orders, int c) {
  std::vector<mpz_class> z;
  Json echo = Json::array();
  for (auto o : orders) {
    z.emplace_back(static_cast<long>(o));
    echo.push_back(std::to_string(o));
  }
  const AbelianStructure result = abelian_multiplicator(z, c);
  emit(g, "abelian", Json{{"orders", echo}, {"c", std::to_string(c)}}, Json(result),
       result.to_string() + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Baer-invariants of nilpotent products of two cyclic groups"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--cap", global.cap, "bound on the total nilpotency class")->capture_default_str();

  SpecOptions compute_opts, predict_opts;
  auto* compute = app.add_subcommand("compute", "compute N_cM(G(r,s,n)) directly");
  compute_opts.add_to(compute);
  auto* predict = app.add_subcommand("predict", "closed-form prediction, if one applies");
  predict_opts.add_to(predict);

  auto* verify = app.add_subcommand("verify", "cross-check theorems or congruences");
  std::string target;
  verify->add_option("target", target, "theorems | prop22 | lemma21")
      ->required()
      ->check(CLI::IsMember({"theorems", "prop22", "lemma21"}));
  GridOptions grid;
  CongruenceOptions verify_cong;
  verify->add_option("--min-rs", grid.min_rs, "smallest r and s in the grid")->check(CLI::PositiveNumber);
  verify->add_option("--max-rs", grid.max_rs, "largest r and s in the grid")->check(CLI::PositiveNumber);
  verify->add_option("--max-n", grid.max_n, "largest n in the grid")->check(CLI::PositiveNumber);
  verify->add_option("--max-c", grid.max_c, "largest c in the grid")->check(CLI::PositiveNumber);
  verify->add_option("--c", verify_cong.c, "class c of the congruence")->check(CLI::PositiveNumber);
  verify->add_option("--r", verify_cong.r, "exponent r")->check(CLI::PositiveNumber);
  verify->add_option("--a", verify_cong.a, "letter tuple, e.g. xy (default: all tuples)");

  int weight = 0, letters = 2;
  auto* basis = app.add_subcommand("basis", "basic commutators of one weight");
  basis->add_option("--weight", weight)->required()->check(CLI::PositiveNumber);
  basis->add_option("--letters", letters)->capture_default_str()->check(CLI::PositiveNumber);
  auto* witt = app.add_subcommand("witt", "number of basic commutators of one weight");
  witt->add_option("--weight", weight)->required()->check(CLI::PositiveNumber);
  witt->add_option("--letters", letters)->capture_default_str()->check(CLI::PositiveNumber);

  std::vector<std::int64_t> orders;
  int abelian_c = 0;
  auto* abelian = app.add_subcommand("abelian", "N_cM of a finite abelian group");
  abelian->add_option("--orders", orders, "cyclic orders, comma separated")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  abelian->add_option("--c", abelian_c)->required()->check(CLI::PositiveNumber);

  CongruenceOptions prop22_opts;
  int prop22_modulus = 0;
  auto* prop22 = app.add_subcommand("prop22", "check the power expansion of [x^r, a1, ..., ac]");
  prop22->add_option("--c", prop22_opts.c)->required()->check(CLI::PositiveNumber);
  prop22->add_option("--r", prop22_opts.r)->required()->check(CLI::PositiveNumber);
  prop22->add_option("--a", prop22_opts.a, "letter tuple (default: all tuples)");
  prop22->add_option("--modulus", prop22_modulus, "c+2 or c+3 (default: both)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (global.cap < 1) {
    std::cerr << "error: --cap must be at least 1\n";
    return kExitUsage;
  }
  if (global.cap > kMaxSeriesCap) {
    std::cerr << "error: --cap " << global.cap << " exceeds the hard limit " << kMaxSeriesCap << '\n';
    return kExitResource;
  }
  if (global.cap > kDefaultCap) {
    std::cerr << "warning: cap " << global.cap << " above " << kDefaultCap
              << " may need a lot of memory and time\n";
  }

  try {
    if (*compute) return run_compute(global, compute_opts);
    if (*predict) return run_predict(global, predict_opts);
    if (*basis) return run_basis(global, weight, letters);
    if (*witt) return run_witt(global, weight, letters);
    if (*abelian) return run_abelian(global, orders, abelian_c);
    if (*prop22) {
      if (prop22->count("--modulus") > 0) prop22_opts.modulus = prop22_modulus;
      return run_prop22(global, prop22_opts, "prop22");
    }
    if (*verify) {
      if (target == "theorems") return run_theorems(global, grid);
      if (verify_cong.c == 0 || verify_cong.r == 0) {
        std::cerr << "error: verify " << target << " requires --c and --r\n";
        return kExitUsage;
      }
      if (target == "prop22") return run_prop22(global, verify_cong, "verify");
      return run_lemma21(global, verify_cong);
    }
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {  // PreconditionError, ParseError
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
