#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "condsense/distribution.hpp"

namespace condsense {

// Instance generators: the hard families from the lower-bound constructions
// plus simple shapes for coverage. Everything is deterministic given the
// spec, including its seed fields.

struct FamilySpec {
  std::string kind;                      // lowercase family tag
  std::map<std::string, double> params;  // numeric parameters
  std::string path;                      // only for kind == "file"

  // "zipf:n=200;s=1.2" (',' accepted as separator on input)
  static FamilySpec parse(const std::string& text);
  std::string name() const;  // canonical, comma-free, usable as a CSV field
};

struct Instance {
  Distribution dist;
  std::optional<Distribution> dstar;  // companion reference when defined
  std::string name;
};

Instance generate(const FamilySpec& spec);

// direct constructors, exposed so tests can pin the random bits
Distribution paninski(std::size_t m, double eps, const std::vector<int>& bits);
// returns (member, reference); domain size K + K^2 + ... + K^(2R)
std::pair<Distribution, Distribution> appendix_a(std::size_t R, std::size_t K,
                                                 double eps,
                                                 const std::vector<int>& bits);

}  // namespace condsense
