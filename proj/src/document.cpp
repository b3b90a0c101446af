// JSON document I/O.

#include "liekahler/document.hpp"

#include <fstream>
#include <set>
#include <tuple>

#include "json.hpp"

#include "liekahler/jalgebra.hpp"

namespace liekahler {

namespace {

using json = nlohmann::ordered_json;

Mat mat_from_json(const json& v, const std::string& key, int dim) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim)
    throw InputError("'" + key + "' must be a " + std::to_string(dim) + "x" +
                     std::to_string(dim) + " array of numbers");
  Mat m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = v[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw InputError("'" + key + "' row " + std::to_string(r) + " has wrong length");
    for (int c = 0; c < dim; ++c) {
      if (!row[c].is_number()) throw InputError("'" + key + "' has a non-numeric entry");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

AlgebraDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("JSON parse error in '" + path + "': " + e.what());
  }
  if (!root.is_object()) throw InputError("document root must be a JSON object");

  AlgebraDocument doc;
  doc.schema_version = root.value("schema_version", std::string{});
  if (doc.schema_version != kSchemaVersion)
    throw InputError("unsupported schema_version '" + doc.schema_version + "' (expected " +
                     std::string(kSchemaVersion) + ")");
  if (!root.contains("dim") || !root["dim"].is_number_integer())
    throw InputError("'dim' must be an integer");
  doc.dim = root["dim"].get<int>();
  if (doc.dim < 1 || doc.dim > tols::kMaxDim)
    throw InputError("'dim' out of range 1.." + std::to_string(tols::kMaxDim));

  if (root.contains("basis_labels")) {
    const json& labels = root["basis_labels"];
    if (!labels.is_array() || static_cast<int>(labels.size()) != doc.dim)
      throw InputError("'basis_labels' must list exactly dim strings");
    for (const json& l : labels) {
      if (!l.is_string()) throw InputError("'basis_labels' entries must be strings");
      doc.basis_labels.push_back(l.get<std::string>());
    }
  }

  if (root.contains("brackets")) {
    const json& br = root["brackets"];
    if (!br.is_array()) throw InputError("'brackets' must be an array of [i,j,k,value]");
    for (const json& e : br) {
      if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() ||
          !e[1].is_number_integer() || !e[2].is_number_integer() || !e[3].is_number())
        throw InputError("bracket entries must be [i, j, k, value]");
      BracketEntry b{e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<double>()};
      for (int idx : {b.i, b.j, b.k})
        if (idx < 0 || idx >= doc.dim) throw InputError("bracket index out of range");
      doc.brackets.push_back(b);
    }
  }

  const bool has_metric = root.contains("metric");
  const bool has_omega = root.contains("omega");
  if (has_metric == has_omega)
    throw InputError("document must contain exactly one of 'metric' or 'omega'");
  if (has_metric) doc.metric = mat_from_json(root["metric"], "metric", doc.dim);
  if (root.contains("j")) doc.j = mat_from_json(root["j"], "j", doc.dim);
  if (has_omega) {
    if (!doc.j) throw InputError("'omega' requires 'j'");
    const json& w = root["omega"];
    if (!w.is_array() || static_cast<int>(w.size()) != doc.dim)
      throw InputError("'omega' must list exactly dim numbers");
    Vec v(doc.dim);
    for (int i = 0; i < doc.dim; ++i) {
      if (!w[i].is_number()) throw InputError("'omega' has a non-numeric entry");
      v[i] = w[i].get<double>();
    }
    doc.omega = std::move(v);
  }

  if (root.contains("metadata")) {
    const json& md = root["metadata"];
    if (!md.is_object()) throw InputError("'metadata' must be an object of strings");
    for (const auto& [key, val] : md.items()) {
      if (!val.is_string()) throw InputError("'metadata' values must be strings");
      doc.metadata[key] = val.get<std::string>();
    }
  }
  return doc;
}

void save_document(const AlgebraDocument& doc, const std::string& path) {
  json root;
  root["schema_version"] = doc.schema_version;
  root["dim"] = doc.dim;
  if (!doc.basis_labels.empty()) root["basis_labels"] = doc.basis_labels;
  json br = json::array();
  for (const BracketEntry& b : doc.brackets) br.push_back(json::array({b.i, b.j, b.k, b.value}));
  root["brackets"] = std::move(br);
  if (doc.metric) root["metric"] = mat_to_json(*doc.metric);
  if (doc.j) root["j"] = mat_to_json(*doc.j);
  if (doc.omega) root["omega"] = *doc.omega;
  if (!doc.metadata.empty()) {
    json md = json::object();
    for (const auto& [key, val] : doc.metadata) md[key] = val;
    root["metadata"] = std::move(md);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << root.dump(2) << "\n";
}

LieAlgebraData document_algebra(const AlgebraDocument& doc) {
  LieAlgebraData alg;
  alg.dim = doc.dim;
  alg.basis_labels = doc.basis_labels;
  alg.brackets = Tensor3(doc.dim);
  std::set<std::tuple<int, int, int>> written;
  for (const BracketEntry& b : doc.brackets) {
    if (!written.insert({b.i, b.j, b.k}).second)
      throw InputError("duplicate bracket entry [" + std::to_string(b.i) + "," +
                       std::to_string(b.j) + "," + std::to_string(b.k) + "]");
    alg.brackets(b.i, b.j, b.k) = b.value;
  }
  // Mirror completion; explicitly stated mirrors are left for validation.
  for (const BracketEntry& b : doc.brackets)
    if (!written.count({b.j, b.i, b.k})) alg.brackets(b.j, b.i, b.k) = -b.value;
  return alg;
}

MetricData document_metric(const AlgebraDocument& doc, const LieAlgebraData& alg) {
  if (doc.metric) return MetricData{*doc.metric};
  if (doc.omega && doc.j)
    return jalgebra_metric(JAlgebraData{alg, AlmostComplexData{*doc.j}, *doc.omega});
  throw InputError("document carries neither a metric nor a (j, omega) pair");
}

StructureContext document_context(const AlgebraDocument& doc, const std::string& name) {
  const LieAlgebraData alg = document_algebra(doc);
  const MetricData g = document_metric(doc, alg);
  std::optional<AlmostComplexData> j;
  if (doc.j) j = AlmostComplexData{*doc.j};
  StructureContext ctx = make_context(name, alg, g, j);
  if (doc.omega && doc.j) {
    ctx.jdata = JAlgebraData{alg, *j, *doc.omega};
    attach_split(ctx);
    try {
      const RootDecomposition dec = root_decompose(*ctx.jdata);
      const FlipStructure flip = flip_construction(*ctx.jdata, dec);
      ctx.flip = flip;
      if (!ctx.jbar) ctx.jbar = flip.jbar;
    } catch (const HypothesisFailedError&) {
    } catch (const StructuralError&) {
      // Not a normal j-algebra: fine, the context just has no flip data.
    }
  } else if (ctx.j) {
    attach_split(ctx);
  }
  return ctx;
}

AlgebraDocument document_of_example(const std::string& name, const ExampleParams& params) {
  const StructureContext ctx = make_example(name, params);
  AlgebraDocument doc;
  doc.dim = ctx.alg.dim;
  doc.basis_labels = ctx.alg.basis_labels;
  for (int i = 0; i < doc.dim; ++i)
    for (int j = i + 1; j < doc.dim; ++j)
      for (int k = 0; k < doc.dim; ++k)
        if (ctx.alg.brackets(i, j, k) != 0.0)
          doc.brackets.push_back({i, j, k, ctx.alg.brackets(i, j, k)});
  if (ctx.jdata) {
    doc.j = ctx.jdata->j.j;
    doc.omega = ctx.jdata->omega;
  } else {
    doc.metric = ctx.metric.gram;
    if (ctx.j) doc.j = ctx.j->j;
  }
  doc.metadata["example"] = name;
  if (params.n) doc.metadata["n"] = std::to_string(*params.n);
  if (!params.curvatures.empty()) {
    std::string cs;
    for (double c : params.curvatures) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%g", c);
      cs += (cs.empty() ? "" : ",") + std::string(buf);
    }
    doc.metadata["curvatures"] = cs;
  }
  return doc;
}

}  // namespace liekahler
