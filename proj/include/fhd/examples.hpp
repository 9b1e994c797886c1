#ifndef FHD_EXAMPLES_HPP
#define FHD_EXAMPLES_HPP

#include <string>
#include <vector>

#include "fhd/henon.hpp"
#include "fhd/pk.hpp"

namespace fhd {

// Built-in example systems:
//   classical        p(y) = y^2, a = 1, sigma = id
//   disc-contraction p(y) = y^2 + lambda, a = 1, sigma(l) = l/2 on |l| <= 0.25
//   degree4          two quadratic factors, sigma = id
//   pk-squares       F = (x0^2, x1^2)
//   pk-perturbed     F = (x0^2 + l x1^2, x1^2 + l x0^2) on |l| <= 0.2
SkewHenonSystem make_henon_example(const std::string& name);
PkSkewSystem make_pk_example(const std::string& name);

bool is_pk_example(const std::string& name);
std::vector<std::string> example_names();

}  // namespace fhd

#endif
