#include "wg/json_io.hpp"

#include "wg/error.hpp"

#include <fstream>

namespace wg {
namespace io {

json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Int(j.get<std::string>());
  throw Error(Errc::BAD_INPUT, "expected an integer (number or decimal string)");
}

json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return json{{"n", m.rows()}, {"rows", rows}};
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.contains("rows")) throw Error(Errc::BAD_INPUT, "matrix object needs a 'rows' field");
  const json& rows = j.at("rows");
  int n = j.contains("n") ? j.at("n").get<int>() : static_cast<int>(rows.size());
  if (static_cast<int>(rows.size()) != n) throw Error(Errc::BAD_INPUT, "matrix row count mismatch");
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows.at(static_cast<size_t>(i));
    if (static_cast<int>(row.size()) != n) throw Error(Errc::BAD_INPUT, "matrix must be square");
    for (int c = 0; c < n; ++c) m.at(i, c) = int_from_json(row.at(static_cast<size_t>(c)));
  }
  return m;
}

json poly_to_json(const IntPolynomial& p) {
  json coeffs = json::array();
  for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(int_to_json(p.coeff(i)));
  return json{{"coeffs", coeffs}, {"text", p.to_string()}};
}

json heis_to_json(const HeisElement& x) {
  return json{{"a", int_to_json(x.a)}, {"b", int_to_json(x.b)}, {"c", int_to_json(x.c)}};
}

HeisElement heis_from_json(const json& j) {
  return HeisElement{int_from_json(j.at("a")), int_from_json(j.at("b")), int_from_json(j.at("c"))};
}

json subgroup_to_json(const heis::HeisSubgroupData& s) {
  return json{{"zeta", json::array({int_to_json(s.a1), int_to_json(s.a2), int_to_json(s.a3)})},
              {"xi", json::array({int_to_json(s.b1), int_to_json(s.b2), int_to_json(s.b3)})},
              {"c", int_to_json(s.c)},
              {"r", int_to_json(s.r)}};
}

heis::HeisSubgroupData subgroup_from_json(const json& j) {
  heis::HeisSubgroupData s;
  const json& z = j.at("zeta");
  const json& x = j.at("xi");
  s.a1 = int_from_json(z.at(0));
  s.a2 = int_from_json(z.at(1));
  s.a3 = int_from_json(z.at(2));
  s.b1 = int_from_json(x.at(0));
  s.b2 = int_from_json(x.at(1));
  s.b3 = int_from_json(x.at(2));
  s.c = int_from_json(j.at("c"));
  s.r = int_from_json(j.at("r"));
  return s;
}

json descriptor_to_json(const WangDescriptor& d) {
  switch (d.shape) {
    case Shape::SM: return json{{"shape", "SM"}, {"M", matrix_to_json(d.m)}};
    case Shape::SPM:
      return json{{"shape", "SPM"},
                  {"M", matrix_to_json(d.m)},
                  {"r", int_to_json(d.r)},
                  {"p", json::array({int_to_json(d.p1), int_to_json(d.p2)})}};
    case Shape::KODAIRA: return json{{"shape", "KODAIRA"}, {"r", int_to_json(d.r)}};
  }
  throw Error(Errc::BAD_INPUT, "unreachable");
}

WangDescriptor descriptor_from_json(const json& j) {
  std::string shape = j.at("shape").get<std::string>();
  if (shape == "SM") return WangDescriptor::sm(matrix_from_json(j.at("M")));
  if (shape == "SPM") {
    Int r = int_from_json(j.at("r"));
    Int p1 = 0, p2 = 0;
    if (j.contains("p")) {
      p1 = int_from_json(j.at("p").at(0));
      p2 = int_from_json(j.at("p").at(1));
    }
    return WangDescriptor::spm(matrix_from_json(j.at("M")), r, p1, p2);
  }
  if (shape == "KODAIRA") return WangDescriptor::kodaira(int_from_json(j.at("r")));
  throw Error(Errc::BAD_INPUT, "unknown shape '" + shape + "'");
}

json element_to_json(const WangElement& x) {
  json h;
  if (std::holds_alternative<Vec3>(x.h)) {
    const Vec3& v = std::get<Vec3>(x.h);
    h = json::array({int_to_json(v[0]), int_to_json(v[1]), int_to_json(v[2])});
  } else {
    h = heis_to_json(std::get<HeisElement>(x.h));
  }
  return json{{"h", h}, {"t", int_to_json(x.t)}};
}

WangElement element_from_json(const json& j, Shape shape) {
  Int t = j.contains("t") ? int_from_json(j.at("t")) : Int(0);
  const json& h = j.contains("h") ? j.at("h") : j;
  if (shape == Shape::SM) {
    if (!h.is_array() || h.size() != 3) throw Error(Errc::BAD_INPUT, "SM element needs [x,y,z]");
    return WangElement::lattice(Vec3{int_from_json(h.at(0)), int_from_json(h.at(1)), int_from_json(h.at(2))},
                                t);
  }
  return WangElement::heis(heis_from_json(h), t);
}

json spec_to_json(const quot::NormalSubgroupSpec& s) {
  json gamma0;
  if (s.ambient.shape == Shape::SM)
    gamma0 = json{{"basis", matrix_to_json(*s.lattice)}};
  else
    gamma0 = subgroup_to_json(*s.sub);
  json delta;
  if (s.ambient.shape == Shape::SM) {
    const Vec3& v = s.delta.vec();
    delta = json::array({int_to_json(v[0]), int_to_json(v[1]), int_to_json(v[2])});
  } else {
    delta = heis_to_json(s.delta.triple());
  }
  return json{{"ambient", descriptor_to_json(s.ambient)}, {"gamma0", gamma0}, {"k", int_to_json(s.k)},
              {"delta", delta}};
}

quot::NormalSubgroupSpec spec_from_json(const json& j) {
  quot::NormalSubgroupSpec s;
  s.ambient = descriptor_from_json(j.at("ambient"));
  const json& g0 = j.at("gamma0");
  if (s.ambient.shape == Shape::SM) {
    s.lattice = matrix_from_json(g0.contains("basis") ? g0.at("basis") : g0);
  } else {
    heis::HeisSubgroupData sub;
    if (g0.contains("r")) {
      sub = subgroup_from_json(g0);
    } else {
      json with_r = g0;
      with_r["r"] = int_to_json(s.ambient.r);
      sub = subgroup_from_json(with_r);
    }
    s.sub = sub;
  }
  s.k = j.contains("k") ? int_from_json(j.at("k")) : Int(1);
  if (j.contains("delta")) {
    s.delta = element_from_json(json{{"h", j.at("delta")}, {"t", 0}}, s.ambient.shape);
  } else {
    s.delta = identity_element(s.ambient);
  }
  return s;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BAD_INPUT, "cannot open file '" + path + "'");
  json j;
  in >> j;
  return j;
}

} // namespace io
} // namespace wg
