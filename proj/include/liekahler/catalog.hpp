// Built-in example catalog: flat tori, real-hyperbolic planes and their
// products, polydisks, complex hyperbolic space, and the tube domain over
// the Lorentz cone.  Each entry comes back as a fully enriched
// StructureContext (split / flip / jbar attached where they exist).

#ifndef LIEKAHLER_CATALOG_HPP
#define LIEKAHLER_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "liekahler/identities.hpp"

namespace liekahler {

struct ExampleParams {
  std::optional<int> n;             // complex dimension / factor count
  std::vector<double> curvatures;   // per-factor sectional curvatures
};

// The catalog names, in canonical order.
const std::vector<std::string>& example_names();

// Builds a named example.  Throws InputError for unknown names or unusable
// parameters.
StructureContext make_example(const std::string& name, const ExampleParams& params = {});

}  // namespace liekahler

#endif  // LIEKAHLER_CATALOG_HPP
