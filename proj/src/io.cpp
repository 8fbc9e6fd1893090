#include "czreach/io.hpp"

#include <cmath>

namespace czreach {

json to_json(const Mat& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) r.push_back(M(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

json to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const Hyperbox& box) {
  return json{{"lower", to_json(box.lower())}, {"upper", to_json(box.upper())}};
}

json to_json(const Zonotope& Z) {
  return json{{"G", to_json(Z.generators())}, {"c", to_json(Z.center())}};
}

json to_json(const HPolytope& P) { return json{{"H", to_json(P.H())}, {"a", to_json(P.a())}}; }

json to_json(const CZ& S) {
  return json{{"G", to_json(S.generators())},
              {"c", to_json(S.center())},
              {"A", to_json(S.constraint_matrix())},
              {"b", to_json(S.constraint_vector())}};
}

namespace {

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw SchemaError(path, std::string("missing required key '") + key + "'");
  return j.at(key);
}

}  // namespace

Mat matrix_from_json(const json& j, const std::string& path, Eigen::Index cols_if_empty) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
  if (j.empty()) return Mat(0, cols_if_empty);
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw SchemaError(path + "/0", "expected a row array");
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Mat M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    std::string rp = path + "/" + std::to_string(i);
    const json& r = j[i];
    if (!r.is_array()) throw SchemaError(rp, "expected a row array");
    if (static_cast<Eigen::Index>(r.size()) != cols) throw SchemaError(rp, "ragged matrix row");
    for (Eigen::Index k = 0; k < cols; ++k) M(i, k) = number_at(r[k], rp + "/" + std::to_string(k));
  }
  return M;
}

Vec vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = number_at(j[i], path + "/" + std::to_string(i));
  return v;
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw SchemaError(path + "/" + it.key(), "unknown key");
  }
}

Hyperbox box_from_json(const json& j, const std::string& path) {
  check_keys(j, path, {"lower", "upper"});
  Vec lo = vector_from_json(field(j, path, "lower"), path + "/lower");
  Vec hi = vector_from_json(field(j, path, "upper"), path + "/upper");
  if (lo.size() != hi.size()) throw SchemaError(path, "lower and upper differ in length");
  for (Eigen::Index i = 0; i < lo.size(); ++i)
    if (lo(i) > hi(i)) throw SchemaError(path + "/lower/" + std::to_string(i), "lower bound exceeds upper bound");
  return Hyperbox(lo, hi);
}

Zonotope zonotope_from_json(const json& j, const std::string& path) {
  if (j.is_object() && j.contains("lower")) return Zonotope(box_from_json(j, path));
  check_keys(j, path, {"G", "c"});
  Vec c = vector_from_json(field(j, path, "c"), path + "/c");
  Mat G = matrix_from_json(field(j, path, "G"), path + "/G");
  if (G.rows() == 0) G.resize(c.size(), 0);
  if (G.rows() != c.size()) throw SchemaError(path + "/G", "row count does not match the center");
  return Zonotope(G, c);
}

HPolytope hpolytope_from_json(const json& j, const std::string& path) {
  if (j.is_object() && j.contains("lower")) return HPolytope(box_from_json(j, path));
  check_keys(j, path, {"H", "a"});
  Vec a = vector_from_json(field(j, path, "a"), path + "/a");
  Mat H = matrix_from_json(field(j, path, "H"), path + "/H");
  if (H.rows() != a.size()) throw SchemaError(path + "/H", "row count does not match a");
  return HPolytope(H, a);
}

CZ cz_from_json(const json& j, const std::string& path) {
  if (j.is_object() && j.contains("lower")) return CZ(box_from_json(j, path));
  check_keys(j, path, {"G", "c", "A", "b"});
  Vec c = vector_from_json(field(j, path, "c"), path + "/c");
  Mat G = matrix_from_json(field(j, path, "G"), path + "/G");
  if (G.rows() == 0) G.resize(c.size(), 0);
  if (G.rows() != c.size()) throw SchemaError(path + "/G", "row count does not match the center");
  Mat A(0, G.cols());
  Vec b(0);
  if (j.contains("A") || j.contains("b")) {
    A = matrix_from_json(field(j, path, "A"), path + "/A", G.cols());
    b = vector_from_json(field(j, path, "b"), path + "/b");
  }
  if (A.rows() != b.size()) throw SchemaError(path + "/A", "row count does not match b");
  if (A.cols() != G.cols()) throw SchemaError(path + "/A", "column count does not match G");
  return CZ(G, c, A, b);
}

}  // namespace czreach
