#include "chtrace/scalar_json.hpp"

#include "chtrace/errors.hpp"

namespace chtrace {

json to_json(const Scalar& s) {
  switch (s.tag()) {
    case ScalarTag::Rat:
      return {{"tag", "rat"},
              {"n", s.rat().numerator().get_str()},
              {"d", s.rat().denominator().get_str()}};
    case ScalarTag::Cyc: {
      json coeffs = json::array();
      for (const auto& c : s.cyc().coeffs()) coeffs.push_back(c.to_string());
      return {{"tag", "cyc"}, {"ell", s.cyc().ell()}, {"coeffs", coeffs}};
    }
    case ScalarTag::C64:
      return {{"tag", "c64"}, {"re", s.c64().real()}, {"im", s.c64().imag()}};
  }
  return nullptr;
}

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  fail(ErrorKind::InvalidInput, "expected an exact rational, got " + j.dump());
}

}  // namespace

Scalar scalar_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tag"))
    fail(ErrorKind::InvalidInput, "expected a tagged scalar object, got " + j.dump());
  const auto tag = j.at("tag").get<std::string>();
  if (tag == "rat") {
    Rational r(mpz_class(j.at("n").get<std::string>(), 10), mpz_class(j.at("d").get<std::string>(), 10));
    return Scalar(r);
  }
  if (tag == "cyc") {
    const int ell = j.at("ell").get<int>();
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(rational_from_json(c));
    require(static_cast<int>(coeffs.size()) == euler_phi(ell), ErrorKind::InvalidInput,
            "cyc scalar needs exactly phi(ell) coefficients");
    return Scalar(CycloNum(ell, std::move(coeffs)));
  }
  if (tag == "c64") return Scalar(Complex(j.at("re").get<double>(), j.at("im").get<double>()));
  fail(ErrorKind::InvalidInput, "unknown scalar tag '" + tag + "'");
}

Scalar scalar_from_json(const json& j, const Field& target) {
  if (j.is_object()) return scalar_from_json(j).promote(target);
  if (j.is_number_integer() || j.is_string())
    return Scalar::from_rational(target, rational_from_json(j));
  if (target.tag == ScalarTag::C64) {
    if (j.is_number()) return Scalar(Complex(j.get<double>(), 0.0));
    if (j.is_array() && j.size() == 2) return Scalar(complex_from_json(j));
  }
  fail(ErrorKind::InvalidInput, "cannot read " + j.dump() + " as a scalar over " + target.name());
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {j.at("re").get<double>(), j.at("im").get<double>()};
  fail(ErrorKind::InvalidInput, "expected a complex number, got " + j.dump());
}

}  // namespace chtrace
