// JSON documents describing a Lie algebra with either an explicit inner
// product or a (j, omega) pair that induces one.  Brackets are stored as
// sparse entries [i, j, k, value] (0-based: coefficient of e_k in
// [e_i, e_j]).  Mirrored entries (j, i, k) are filled in automatically with
// the opposite sign unless the document states them explicitly; explicit
// contradictions are left in place so that validation can reject them.

#ifndef LIEKAHLER_DOCUMENT_HPP
#define LIEKAHLER_DOCUMENT_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liekahler/catalog.hpp"
#include "liekahler/identities.hpp"

namespace liekahler {

inline constexpr const char* kSchemaVersion = "1.0";

struct BracketEntry {
  int i = 0, j = 0, k = 0;
  double value = 0.0;
};

struct AlgebraDocument {
  std::string schema_version = kSchemaVersion;
  int dim = 0;
  std::vector<std::string> basis_labels;       // optional; empty = default labels
  std::vector<BracketEntry> brackets;          // sparse, as stored
  std::optional<Mat> metric;                   // exactly one of metric / omega
  std::optional<Mat> j;                        // optional with metric, required with omega
  std::optional<Vec> omega;                    // 1-form components
  std::map<std::string, std::string> metadata; // free-form, round-tripped
};

// Parse / shape errors throw InputError with a diagnostic message.
AlgebraDocument load_document(const std::string& path);
void save_document(const AlgebraDocument& doc, const std::string& path);

// Dense structure constants with the mirror-completion semantics above.
// Exact duplicate (i,j,k) entries are an InputError.
LieAlgebraData document_algebra(const AlgebraDocument& doc);

// Effective metric: the explicit one, or the (j, omega)-induced inner
// product.  Throws InputError when neither or both are present.
MetricData document_metric(const AlgebraDocument& doc, const LieAlgebraData& alg);

// Full enriched context (split / flip attached best-effort).  Does NOT
// gate on validation; callers run validate_algebra / axiom_suite themselves.
StructureContext document_context(const AlgebraDocument& doc, const std::string& name);

// Document form of a catalog example (used by the export command).
AlgebraDocument document_of_example(const std::string& name, const ExampleParams& params);

}  // namespace liekahler

#endif  // LIEKAHLER_DOCUMENT_HPP
