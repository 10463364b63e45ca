#include "baerinv/serialize.hpp"

#include "baerinv/errors.hpp"
#include "baerinv/version.hpp"

namespace baerinv {

namespace {

Json integer_list(const std::vector<mpz_class>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(v.get_str());
  return arr;
}

std::vector<mpz_class> parse_integer_list(const Json& arr) {
  std::vector<mpz_class> out;
  for (const auto& v : arr) out.emplace_back(v.get<std::string>());
  return out;
}

std::size_t parse_size(const Json& v) { return std::stoull(v.get<std::string>()); }

}  // namespace

void to_json(Json& j, const AbelianStructure& a) {
  j = Json{{"invariant_factors", integer_list(a.invariant_factors())},
           {"free_rank", std::to_string(a.free_rank())}};
}

void from_json(const Json& j, AbelianStructure& a) {
  a = AbelianStructure(parse_integer_list(j.at("invariant_factors")), parse_size(j.at("free_rank")));
}

void to_json(Json& j, const SubgroupStructure& s) {
  j = Json{{"diagonal", integer_list(s.diagonal)},
           {"rank", std::to_string(s.rank)},
           {"ambient_rank", std::to_string(s.ambient_rank)}};
}

void from_json(const Json& j, SubgroupStructure& s) {
  s.diagonal = parse_integer_list(j.at("diagonal"));
  s.rank = parse_size(j.at("rank"));
  s.ambient_rank = parse_size(j.at("ambient_rank"));
}

void to_json(Json& j, const CongruenceReport& r) {
  j = Json{{"holds", r.holds},
           {"residual_class", r.residual_class ? Json(std::to_string(*r.residual_class))
                                               : Json("beyond cap")},
           {"modulus_weight", std::to_string(r.modulus_weight)},
           {"lhs", r.lhs},
           {"rhs", r.rhs},
           {"residual_leading", r.residual_leading},
           {"parameters",
            Json{{"c", std::to_string(r.c)}, {"r", std::to_string(r.r)}, {"a", r.a}}}};
}

void from_json(const Json& j, CongruenceReport& r) {
  r.holds = j.at("holds").get<bool>();
  const auto cls = j.at("residual_class").get<std::string>();
  if (cls == "beyond cap") {
    r.residual_class.reset();
  } else {
    r.residual_class = std::stoi(cls);
  }
  r.modulus_weight = std::stoi(j.at("modulus_weight").get<std::string>());
  r.lhs = j.at("lhs").get<std::string>();
  r.rhs = j.at("rhs").get<std::string>();
  r.residual_leading = j.at("residual_leading").get<std::string>();
  const auto& p = j.at("parameters");
  r.c = std::stoi(p.at("c").get<std::string>());
  r.r = std::stoll(p.at("r").get<std::string>());
  r.a = p.at("a").get<std::string>();
}

Json make_envelope(std::string_view command, Json parameters, Json result, int cap) {
  return Json{{"command", std::string(command)},
              {"parameters", std::move(parameters)},
              {"result", std::move(result)},
              {"engine_version", std::string(kEngineVersion)},
              {"cap", std::to_string(cap)}};
}

std::string render_json(const Json& j) { return j.dump(); }

}  // namespace baerinv
