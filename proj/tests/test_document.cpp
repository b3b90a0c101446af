// Unit tests for the JSON document layer: round-trips, deterministic
// serialization, mirror-completion semantics, and input validation errors.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "liekahler/document.hpp"

using namespace liekahler;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("doc_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("save / load round-trips every field") {
  AlgebraDocument doc;
  doc.dim = 2;
  doc.basis_labels = {"x", "y"};
  doc.brackets.push_back({0, 1, 1, 1.5});
  Mat g = Mat::identity(2);
  g(0, 0) = 2.0;
  doc.metric = g;
  doc.metadata["origin"] = "round-trip test";

  TempFile tmp("roundtrip.json");
  save_document(doc, tmp.path);
  const AlgebraDocument back = load_document(tmp.path);

  CHECK(back.schema_version == kSchemaVersion);
  CHECK(back.dim == 2);
  REQUIRE(back.basis_labels.size() == 2);
  CHECK(back.basis_labels[1] == "y");
  REQUIRE(back.brackets.size() == 1);
  CHECK(back.brackets[0].i == 0);
  CHECK(back.brackets[0].j == 1);
  CHECK(back.brackets[0].k == 1);
  CHECK(back.brackets[0].value == doctest::Approx(1.5));
  REQUIRE(back.metric.has_value());
  CHECK(max_abs(*back.metric - g) == 0.0);
  CHECK_FALSE(back.j.has_value());
  CHECK_FALSE(back.omega.has_value());
  CHECK(back.metadata.at("origin") == "round-trip test");
}

TEST_CASE("serialization is deterministic: save(load(save(x))) is byte-identical") {
  const AlgebraDocument doc = document_of_example("lorentz_tube", {});
  TempFile a("det_a.json"), b("det_b.json");
  save_document(doc, a.path);
  save_document(load_document(a.path), b.path);
  CHECK(read_file(a.path) == read_file(b.path));
}

TEST_CASE("mirror completion fills (j,i,k) entries; explicit values win") {
  AlgebraDocument doc;
  doc.dim = 2;
  doc.brackets.push_back({0, 1, 1, 2.0});
  const LieAlgebraData alg = document_algebra(doc);
  CHECK(alg.brackets(0, 1, 1) == doctest::Approx(2.0));
  CHECK(alg.brackets(1, 0, 1) == doctest::Approx(-2.0));

  // An explicit contradicting mirror entry is preserved, and validation
  // rejects the resulting non-antisymmetric brackets.
  doc.brackets.push_back({1, 0, 1, 2.0});
  const LieAlgebraData bad = document_algebra(doc);
  CHECK(bad.brackets(1, 0, 1) == doctest::Approx(2.0));
  const ValidationReport rep = validate_algebra(bad);
  const CheckResult* anti = rep.find("bracket_antisymmetry");
  REQUIRE(anti != nullptr);
  CHECK_FALSE(anti->pass);
}

TEST_CASE("duplicate bracket entries are rejected") {
  AlgebraDocument doc;
  doc.dim = 2;
  doc.brackets.push_back({0, 1, 1, 1.0});
  doc.brackets.push_back({0, 1, 1, 1.0});
  CHECK_THROWS_AS((void)document_algebra(doc), InputError);
}

TEST_CASE("metric XOR (j, omega) is enforced") {
  AlgebraDocument doc;
  doc.dim = 2;
  doc.brackets.push_back({0, 1, 1, 1.0});
  const LieAlgebraData alg = document_algebra(doc);

  // Neither present.
  CHECK_THROWS_AS((void)document_metric(doc, alg), InputError);

  // Omega without j: rejected at load time as well as here.
  doc.omega = Vec{0.0, -1.0};
  CHECK_THROWS_AS((void)document_metric(doc, alg), InputError);

  // j + omega: the induced inner product (here the identity).
  Mat j(2, 2);
  j(1, 0) = 1.0;
  j(0, 1) = -1.0;
  doc.j = j;
  const MetricData g = document_metric(doc, alg);
  CHECK(max_abs(g.gram - Mat::identity(2)) <= 1e-12);
}

TEST_CASE("load rejects a document with both metric and omega") {
  TempFile tmp("both.json");
  write_file(tmp.path,
             R"({"schema_version":"1.0","dim":2,"brackets":[[0,1,1,1.0]],)"
             R"("metric":[[1,0],[0,1]],"j":[[0,-1],[1,0]],"omega":[0,-1]})");
  CHECK_THROWS_AS((void)load_document(tmp.path), InputError);
}

TEST_CASE("load rejects malformed documents") {
  TempFile tmp("bad.json");

  write_file(tmp.path, "{ not json");
  CHECK_THROWS_AS((void)load_document(tmp.path), InputError);

  write_file(tmp.path, R"({"schema_version":"9.9","dim":2,"brackets":[]})");
  CHECK_THROWS_AS((void)load_document(tmp.path), InputError);

  // Bracket index out of range.
  write_file(tmp.path,
             R"({"schema_version":"1.0","dim":2,"brackets":[[0,5,1,1.0]],)"
             R"("metric":[[1,0],[0,1]]})");
  CHECK_THROWS_AS((void)load_document(tmp.path), InputError);

  // Wrong label count.
  write_file(tmp.path,
             R"({"schema_version":"1.0","dim":2,"basis_labels":["x"],"brackets":[],)"
             R"("metric":[[1,0],[0,1]]})");
  CHECK_THROWS_AS((void)load_document(tmp.path), InputError);

  // Missing file.
  CHECK_THROWS_AS((void)load_document("does_not_exist_12345.json"), InputError);
}

TEST_CASE("document_context enriches a j-algebra document like the catalog") {
  const AlgebraDocument doc = document_of_example("lorentz_tube", {});
  REQUIRE(doc.j.has_value());
  REQUIRE(doc.omega.has_value());
  CHECK_FALSE(doc.metric.has_value());

  const StructureContext ctx = document_context(doc, "tube_doc");
  const StructureContext ref = make_example("lorentz_tube");
  CHECK(ctx.alg.dim == ref.alg.dim);
  CHECK(max_abs(ctx.metric.gram - ref.metric.gram) <= 1e-12);
  REQUIRE(ctx.j);
  REQUIRE(ctx.jbar);
  REQUIRE(ctx.flip);
  CHECK(max_abs(ctx.jbar->j - ref.jbar->j) <= 1e-12);
  CHECK(ctx.curv.scal == doctest::Approx(ref.curv.scal).epsilon(1e-12));
}

TEST_CASE("document_of_example stores sorted i<j brackets and metadata") {
  const AlgebraDocument doc = document_of_example("product", {});
  CHECK(doc.dim == 4);
  CHECK(doc.metadata.at("example") == "product");
  for (size_t idx = 0; idx < doc.brackets.size(); ++idx) {
    const BracketEntry& e = doc.brackets[idx];
    CHECK(e.i < e.j);  // only the upper triangle is stored
    if (idx > 0) {
      const BracketEntry& p = doc.brackets[idx - 1];
      const bool ordered = (p.i < e.i) || (p.i == e.i && p.j < e.j) ||
                           (p.i == e.i && p.j == e.j && p.k < e.k);
      CHECK(ordered);
    }
  }
}
