// Built-in example constructions.

#include "liekahler/catalog.hpp"

#include <cmath>
#include <string>

#include "liekahler/jalgebra.hpp"

namespace liekahler {

namespace {

// Block-diagonal J pairing consecutive basis vectors: J e_{2k} = e_{2k+1}.
Mat standard_j(int dim) {
  Mat j(dim, dim);
  for (int k = 0; 2 * k + 1 < dim; ++k) {
    j(2 * k + 1, 2 * k) = 1.0;
    j(2 * k, 2 * k + 1) = -1.0;
  }
  return j;
}

void set_bracket(LieAlgebraData& alg, int i, int j, int k, double v) {
  alg.brackets(i, j, k) = v;
  alg.brackets(j, i, k) = -v;
}

StructureContext plain_context(const std::string& name, const LieAlgebraData& alg,
                               const MetricData& g, const Mat& j) {
  StructureContext ctx = make_context(name, alg, g, AlmostComplexData{j});
  attach_split(ctx);
  return ctx;
}

// Validation + enrichment shared by the j-algebra models.
StructureContext jalgebra_context(const std::string& name, JAlgebraData jd) {
  const ValidationReport vr = validate_jalgebra(jd);
  if (!vr.pass()) {
    std::string bad;
    for (const CheckResult& c : vr.checks)
      if (!c.pass) bad += (bad.empty() ? "" : ", ") + c.name;
    throw StructuralError("example '" + name + "' failed validation: " + bad);
  }
  const MetricData g = jalgebra_metric(jd);
  StructureContext ctx = make_context(name, jd.alg, g, jd.j);
  ctx.jdata = std::move(jd);
  attach_split(ctx);
  try {
    const RootDecomposition dec = root_decompose(*ctx.jdata);
    const FlipStructure flip = flip_construction(*ctx.jdata, dec);
    ctx.flip = flip;
    if (!ctx.jbar) ctx.jbar = flip.jbar;
  } catch (const HypothesisFailedError&) {
    // No admissible flip (e.g. rank one): the context stays Kähler-only.
  }
  return ctx;
}

StructureContext make_abelian(const ExampleParams& p) {
  const int n = p.n.value_or(1);
  if (n < 1 || 2 * n > tols::kMaxDim) throw InputError("abelian: need 1 <= n <= 16");
  LieAlgebraData alg;
  alg.dim = 2 * n;
  alg.brackets = Tensor3(alg.dim);
  MetricData g{Mat::identity(alg.dim)};
  return plain_context("abelian", alg, g, standard_j(alg.dim));
}

// One real-hyperbolic factor [e1, e2] = c e2 with the flat metric; constant
// sectional curvature -c^2.
void add_surface_factor(LieAlgebraData& alg, int offset, double curvature) {
  if (curvature > 0.0)
    throw InputError("surface factor: positive curvature is not realizable here");
  if (curvature < 0.0)
    set_bracket(alg, offset, offset + 1, offset + 1, std::sqrt(-curvature));
}

StructureContext make_hyperbolic(const ExampleParams& p) {
  const double k = p.curvatures.empty() ? -1.0 : p.curvatures[0];
  if (!(k < 0.0)) throw InputError("hyperbolic: curvature must be negative");
  LieAlgebraData alg;
  alg.dim = 2;
  alg.basis_labels = {"a", "b"};
  alg.brackets = Tensor3(2);
  add_surface_factor(alg, 0, k);
  MetricData g{Mat::identity(2)};
  return plain_context("hyperbolic", alg, g, standard_j(2));
}

StructureContext make_product(const ExampleParams& p) {
  std::vector<double> ks = p.curvatures;
  if (ks.empty()) ks = {-1.0, -2.0};
  const int r = static_cast<int>(ks.size());
  if (r < 1 || 2 * r > tols::kMaxDim) throw InputError("product: need 1..16 factors");
  LieAlgebraData alg;
  alg.dim = 2 * r;
  alg.brackets = Tensor3(alg.dim);
  for (int i = 0; i < r; ++i) add_surface_factor(alg, 2 * i, ks[i]);
  MetricData g{Mat::identity(alg.dim)};
  return plain_context("product", alg, g, standard_j(alg.dim));
}

// r-fold product of unit disks as a normal j-algebra: factors (a_i, b_i)
// with [a_i, b_i] = b_i, j a_i = b_i, omega = -sum b_i^*.  The induced
// metric is the identity and every factor has curvature -1.
StructureContext make_polydisk(const ExampleParams& p) {
  const int r = p.n.value_or(2);
  if (r < 1 || 2 * r > tols::kMaxDim) throw InputError("polydisk: need 1 <= n <= 16");
  JAlgebraData jd;
  jd.alg.dim = 2 * r;
  jd.alg.brackets = Tensor3(jd.alg.dim);
  jd.j.j = standard_j(jd.alg.dim);
  jd.omega.assign(jd.alg.dim, 0.0);
  for (int i = 0; i < r; ++i) {
    const int a = 2 * i, b = 2 * i + 1;
    jd.alg.basis_labels.push_back("a" + std::to_string(i + 1));
    jd.alg.basis_labels.push_back("b" + std::to_string(i + 1));
    set_bracket(jd.alg, a, b, b, 1.0);
    jd.omega[b] = -1.0;
  }
  return jalgebra_context("polydisk", std::move(jd));
}

}  // namespace

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {"abelian",  "hyperbolic", "product",
                                                 "polydisk", "chn",        "lorentz_tube"};
  return names;
}

StructureContext make_example(const std::string& name, const ExampleParams& params) {
  if (name == "abelian") return make_abelian(params);
  if (name == "hyperbolic") return make_hyperbolic(params);
  if (name == "product") return make_product(params);
  if (name == "polydisk") return make_polydisk(params);
  if (name == "chn") return jalgebra_context("chn", construct_chn(params.n.value_or(2)));
  if (name == "lorentz_tube")
    return jalgebra_context("lorentz_tube", construct_lorentz_tube(params.n.value_or(3)));
  throw InputError("unknown example '" + name + "'");
}

}  // namespace liekahler
