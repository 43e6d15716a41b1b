#ifndef MOMENTOPS_SPECFILE_HPP
#define MOMENTOPS_SPECFILE_HPP

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "momentops/christoffel.hpp"
#include "momentops/families.hpp"
#include "momentops/moments.hpp"
#include "momentops/uvarov.hpp"

namespace momentops {

struct SpecParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parsed functional specification file (JSON). Rational values are kept
// exact; the float backend converts on construction.
//
//   kind: "table" | "ball" | "bessel_laguerre" | "product"
//   d: dimension (defaulted per kind where unambiguous)
//   mu / g / gamma: family parameters, rational strings
//   moments: { "(i,j)": "p/q", ... }            (kind = table)
//   factors: [ ["1", "0", "1/3", ...], ... ]    (kind = product, per variable)
//   masses: [ { "point": ["p/q", ...], "lambda": "p/q" }, ... ]
//   lambda2 / lambda1 / lambda0: multiplier coefficient lists
struct FunctionalSpec {
  std::string kind;
  int d = 2;
  Rational mu = Rational(1) / Rational(2);
  Rational g = Rational(1);
  Rational gamma = Rational(2);
  std::map<MultiIndex, Rational> table;
  std::vector<std::vector<Rational>> factors;

  struct Mass {
    std::vector<Rational> point;
    Rational lambda;
  };
  std::vector<Mass> masses;

  std::optional<std::vector<Rational>> lambda2;
  std::vector<Rational> lambda1;
  Rational lambda0 = Rational(0);
};

namespace detail {

inline Rational parse_rational_field(const nlohmann::json& j,
                                     const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return rational_from_string(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SpecParseError(where + ": " + e.what());
    }
  }
  throw SpecParseError(where + ": expected integer or rational string");
}

inline std::vector<Rational> parse_rational_list(const nlohmann::json& j,
                                                 const std::string& where) {
  if (!j.is_array()) throw SpecParseError(where + ": expected a list");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(parse_rational_field(e, where));
  return out;
}

// "(i,j)" or "(i, j, k)" -> MultiIndex
inline MultiIndex parse_index_key(const std::string& key, int d) {
  std::string s = key;
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')')
    s = s.substr(1, s.size() - 2);
  std::vector<int> e;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos
                                        ? std::string::npos
                                        : comma - pos);
    try {
      e.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw SpecParseError("bad moment index key '" + key + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(e.size()) != d)
    throw SpecParseError("moment index '" + key + "' has wrong dimension");
  return MultiIndex(std::move(e));
}

}  // namespace detail

inline FunctionalSpec parse_spec(const nlohmann::json& j) {
  FunctionalSpec s;
  if (!j.contains("kind") || !j["kind"].is_string())
    throw SpecParseError("missing string field 'kind'");
  s.kind = j["kind"].get<std::string>();
  if (s.kind != "table" && s.kind != "ball" && s.kind != "bessel_laguerre" &&
      s.kind != "product")
    throw SpecParseError("unknown kind '" + s.kind + "'");

  if (j.contains("d")) s.d = j["d"].get<int>();
  if (s.kind == "bessel_laguerre") s.d = 2;
  if (s.d < 1) throw SpecParseError("d must be positive");

  if (j.contains("mu")) s.mu = detail::parse_rational_field(j["mu"], "mu");
  if (j.contains("g")) s.g = detail::parse_rational_field(j["g"], "g");
  if (j.contains("gamma"))
    s.gamma = detail::parse_rational_field(j["gamma"], "gamma");

  if (s.kind == "table") {
    if (!j.contains("moments") || !j["moments"].is_object())
      throw SpecParseError("kind=table requires a 'moments' object");
    for (const auto& [key, val] : j["moments"].items())
      s.table.emplace(detail::parse_index_key(key, s.d),
                      detail::parse_rational_field(val, "moments." + key));
  }
  if (s.kind == "product") {
    if (!j.contains("factors") || !j["factors"].is_array() ||
        static_cast<int>(j["factors"].size()) != s.d)
      throw SpecParseError("kind=product requires 'factors', one list per variable");
    for (const auto& f : j["factors"])
      s.factors.push_back(detail::parse_rational_list(f, "factors"));
  }

  if (j.contains("masses")) {
    if (!j["masses"].is_array()) throw SpecParseError("'masses' must be a list");
    for (const auto& m : j["masses"]) {
      FunctionalSpec::Mass mass;
      if (!m.contains("point") || !m.contains("lambda"))
        throw SpecParseError("each mass needs 'point' and 'lambda'");
      mass.point = detail::parse_rational_list(m["point"], "masses.point");
      if (static_cast<int>(mass.point.size()) != s.d)
        throw SpecParseError("mass point has wrong dimension");
      mass.lambda = detail::parse_rational_field(m["lambda"], "masses.lambda");
      s.masses.push_back(std::move(mass));
    }
  }

  if (j.contains("lambda2")) {
    s.lambda2 = detail::parse_rational_list(j["lambda2"], "lambda2");
    if (static_cast<int>(s.lambda2->size()) != rank_size(2, s.d))
      throw SpecParseError("lambda2 must have r_2^d entries");
    s.lambda1.assign(s.d, Rational(0));
    if (j.contains("lambda1")) {
      s.lambda1 = detail::parse_rational_list(j["lambda1"], "lambda1");
      if (static_cast<int>(s.lambda1.size()) != s.d)
        throw SpecParseError("lambda1 must have d entries");
    }
    if (j.contains("lambda0"))
      s.lambda0 = detail::parse_rational_field(j["lambda0"], "lambda0");
  }
  return s;
}

inline FunctionalSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open spec file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecParseError(std::string("spec file parse error: ") + e.what());
  }
  return parse_spec(j);
}

// Base functional (without masses); masses and multipliers are applied by the
// caller so each command can choose the route it is verifying.
template <typename T>
MomentFunctional<T> make_functional(const FunctionalSpec& s) {
  if (s.kind == "ball")
    return ball_functional<T>(s.d, scalar_from_rational<T>(s.mu));
  if (s.kind == "bessel_laguerre")
    return bessel_laguerre_functional<T>(scalar_from_rational<T>(s.g),
                                         scalar_from_rational<T>(s.gamma));
  if (s.kind == "table") {
    std::map<MultiIndex, T> tbl;
    for (const auto& [nu, v] : s.table)
      tbl.emplace(nu, scalar_from_rational<T>(v));
    return MomentFunctional<T>::from_table(s.d, std::move(tbl), "table");
  }
  // product of univariate moment sequences: mu_nu = prod_i factors[i][nu_i]
  auto factors = std::make_shared<std::vector<std::vector<T>>>();
  for (const auto& f : s.factors) {
    std::vector<T> seq;
    for (const auto& v : f) seq.push_back(scalar_from_rational<T>(v));
    factors->push_back(std::move(seq));
  }
  return MomentFunctional<T>(
      s.d,
      [factors](const MultiIndex& nu) {
        T p(1);
        for (int i = 0; i < nu.dimension(); ++i) {
          const auto& seq = (*factors)[i];
          if (nu[i] >= static_cast<int>(seq.size()))
            throw std::out_of_range("product factor sequence too short");
          p *= seq[nu[i]];
        }
        return p;
      },
      "product");
}

template <typename T>
std::optional<UvarovSpec<T>> make_uvarov_spec(const FunctionalSpec& s) {
  if (s.masses.empty()) return std::nullopt;
  std::vector<std::vector<T>> pts;
  std::vector<T> lam;
  for (const auto& m : s.masses) {
    std::vector<T> p;
    for (const auto& c : m.point) p.push_back(scalar_from_rational<T>(c));
    pts.push_back(std::move(p));
    lam.push_back(scalar_from_rational<T>(m.lambda));
  }
  return UvarovSpec<T>(std::move(pts), std::move(lam));
}

template <typename T>
std::optional<QuadraticMultiplier<T>> make_multiplier(const FunctionalSpec& s) {
  if (!s.lambda2) return std::nullopt;
  std::vector<T> a2, a1;
  for (const auto& c : *s.lambda2) a2.push_back(scalar_from_rational<T>(c));
  for (const auto& c : s.lambda1) a1.push_back(scalar_from_rational<T>(c));
  return QuadraticMultiplier<T>(s.d, std::move(a2), std::move(a1),
                                scalar_from_rational<T>(s.lambda0));
}

}  // namespace momentops

#endif
