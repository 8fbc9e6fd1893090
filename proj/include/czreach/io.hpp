#pragma once

#include "czreach/sets.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace czreach {

using json = nlohmann::json;

// malformed document; path is a JSON pointer to the offending field
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

json to_json(const Mat& M);
json to_json(const Vec& v);
json to_json(const Hyperbox& box);
json to_json(const Zonotope& Z);
json to_json(const HPolytope& P);
json to_json(const CZ& S);

// rows are JSON arrays; an empty array yields a 0 x cols matrix
Mat matrix_from_json(const json& j, const std::string& path, Eigen::Index cols_if_empty = 0);
Vec vector_from_json(const json& j, const std::string& path);

// reject keys outside the allowed list
void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed);

Hyperbox box_from_json(const json& j, const std::string& path);
Zonotope zonotope_from_json(const json& j, const std::string& path);
HPolytope hpolytope_from_json(const json& j, const std::string& path);
// accepts {G,c,A,b}, {G,c} or the box shorthand {lower,upper}
CZ cz_from_json(const json& j, const std::string& path);

}  // namespace czreach
