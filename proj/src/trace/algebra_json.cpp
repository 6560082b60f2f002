#include "chtrace/algebra_json.hpp"

#include <fstream>

#include "chtrace/errors.hpp"

namespace chtrace {

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

Vec vec_from_json(const json& j, const Field& f) {
  require(j.is_array(), ErrorKind::InvalidInput, "expected an array of scalars");
  Vec v;
  for (const auto& x : j) v.push_back(scalar_from_json(x, f));
  return v;
}

json algebra_to_json(const FiniteTraceAlgebra& a) {
  json structure = json::array();
  const std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& t : a.product(i, j)) structure.push_back(json::array({i, j, t.k, to_json(t.coeff)}));
  return json{{"dim", d},
              {"field", a.field().name()},
              {"labels", a.labels()},
              {"unit", vec_to_json(a.unit())},
              {"trace", vec_to_json(a.trace_vec())},
              {"ch_degree", a.ch_degree()},
              {"structure", structure}};
}

FiniteTraceAlgebra algebra_from_json(const json& j) {
  try {
    require(j.is_object(), ErrorKind::InvalidInput, "algebra document must be an object");
    const Field f = Field::parse(j.value("field", std::string("Q")));
    const long dim = j.at("dim").get<long>();
    require(dim > 0, ErrorKind::InvalidInput, "dim must be positive");
    const auto d = static_cast<std::size_t>(dim);
    std::vector<std::string> labels;
    if (j.contains("labels")) {
      labels = j.at("labels").get<std::vector<std::string>>();
    } else {
      for (std::size_t i = 0; i < d; ++i) labels.push_back("e" + std::to_string(i));
    }
    require(labels.size() == d, ErrorKind::InvalidInput, "labels must have dim entries");
    std::vector<std::vector<StructureTerm>> st(d * d);
    for (const auto& entry : j.at("structure")) {
      require(entry.is_array() && entry.size() == 4, ErrorKind::InvalidInput, "structure entries are [i,j,k,scalar]");
      const long i = entry[0].get<long>(), jj = entry[1].get<long>(), k = entry[2].get<long>();
      require(i >= 0 && jj >= 0 && k >= 0 && i < dim && jj < dim && k < dim, ErrorKind::InvalidInput,
              "structure index out of range");
      auto& terms = st[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(jj)];
      const Scalar c = scalar_from_json(entry[3], f);
      auto it = std::find_if(terms.begin(), terms.end(),
                             [k](const StructureTerm& t) { return t.k == static_cast<std::size_t>(k); });
      if (it == terms.end())
        terms.push_back({static_cast<std::size_t>(k), c});
      else
        it->coeff += c;
    }
    return FiniteTraceAlgebra(f, std::move(labels), std::move(st), vec_from_json(j.at("unit"), f),
                              vec_from_json(j.at("trace"), f), j.at("ch_degree").get<int>());
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed algebra document: ") + e.what());
  }
}

FiniteTraceAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidInput, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
  return algebra_from_json(j);
}

}  // namespace chtrace
