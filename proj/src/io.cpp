#include "jsr/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "jsr/errors.hpp"
#include "jsr/lift.hpp"

namespace jsr {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double require_number(const json& j, const std::string& where) {
  if (!j.is_number())
    throw InputError("expected a number at " + where);
  const double v = j.get<double>();
  if (!std::isfinite(v))
    throw InputError("non-finite value at " + where);
  return v;
}

Cplx parse_complex_entry(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw InputError("expected a two-element [re, im] array at " + where);
  return Cplx(require_number(j[0], where + "[0]"),
              require_number(j[1], where + "[1]"));
}

json tolerances_to_json(const ToleranceSnapshot& t) {
  return json{{"tol_B", t.tol_B},
              {"tol_member", t.tol_member},
              {"tol_interior", t.tol_interior},
              {"tol_cert", t.tol_cert},
              {"tol_gap", t.tol_gap},
              {"tol_feas", t.tol_feas},
              {"tol_psd", t.tol_psd}};
}

ToleranceSnapshot tolerances_from_json(const json& j) {
  ToleranceSnapshot t;
  if (!j.is_object()) throw InputError("tolerances must be an object");
  t.tol_B = require_number(j.at("tol_B"), "tolerances.tol_B");
  t.tol_member = require_number(j.at("tol_member"), "tolerances.tol_member");
  t.tol_interior =
      require_number(j.at("tol_interior"), "tolerances.tol_interior");
  t.tol_cert = require_number(j.at("tol_cert"), "tolerances.tol_cert");
  t.tol_gap = require_number(j.at("tol_gap"), "tolerances.tol_gap");
  t.tol_feas = require_number(j.at("tol_feas"), "tolerances.tol_feas");
  t.tol_psd = require_number(j.at("tol_psd"), "tolerances.tol_psd");
  return t;
}

json word_to_json(const ProductWord& w) { return json(w.indices); }

ProductWord word_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError("expected an index array at " + where);
  std::vector<int> idx;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer())
      throw InputError("expected an integer at " + where + "[" +
                       std::to_string(i) + "]");
    idx.push_back(j[i].get<int>());
  }
  return ProductWord(std::move(idx));
}

json certificate_to_json(const Certificate& cert) {
  json verts = json::array();
  for (const auto& v : cert.vertices) {
    const RealVec coords = svec(v.point);
    std::vector<double> c(coords.data(), coords.data() + coords.size());
    verts.push_back(json{{"coords", c},
                         {"word", word_to_json(v.word)},
                         {"origin", v.origin},
                         {"scale_log", v.scale_log}});
  }
  return json{
      {"smp_word", word_to_json(cert.smp.word)},
      {"smp_value", cert.smp.value},
      {"scale", cert.scale},
      {"cone", cert.cone_kind == ConeKind::kRealSymmetric ? "real_symmetric"
                                                          : "hermitian"},
      {"n", cert.n},
      {"initial_rule", cert.initial_rule == InitialPointRule::kSmpEigenvectors
                           ? "smp_eigenvectors"
                           : "identity"},
      {"lower", cert.lower},
      {"upper", cert.upper},
      {"vertices", verts},
      {"tolerances", tolerances_to_json(cert.tolerances)}};
}

Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw InputError("certificate must be a JSON object");
  Certificate cert;
  cert.smp.word = word_from_json(j.at("smp_word"), "smp_word");
  cert.smp.value = require_number(j.at("smp_value"), "smp_value");
  cert.scale = require_number(j.at("scale"), "scale");
  const std::string cone = j.at("cone").get<std::string>();
  if (cone == "real_symmetric") {
    cert.cone_kind = ConeKind::kRealSymmetric;
  } else if (cone == "hermitian") {
    cert.cone_kind = ConeKind::kHermitian;
  } else {
    throw InputError("unknown cone kind: " + cone);
  }
  if (!j.at("n").is_number_integer() || j.at("n").get<int>() <= 0)
    throw InputError("field n must be a positive integer");
  cert.n = j.at("n").get<int>();
  const std::string rule = j.at("initial_rule").get<std::string>();
  if (rule == "smp_eigenvectors") {
    cert.initial_rule = InitialPointRule::kSmpEigenvectors;
  } else if (rule == "identity") {
    cert.initial_rule = InitialPointRule::kIdentity;
  } else {
    throw InputError("unknown initial rule: " + rule);
  }
  cert.lower = require_number(j.at("lower"), "lower");
  cert.upper = require_number(j.at("upper"), "upper");
  const json& verts = j.at("vertices");
  if (!verts.is_array() || verts.empty())
    throw InputError("certificate needs a nonempty vertices array");
  const int d = svec_dim(cert.cone_kind, cert.n);
  for (size_t i = 0; i < verts.size(); ++i) {
    const json& vj = verts[i];
    const std::string where = "vertices[" + std::to_string(i) + "]";
    const json& cj = vj.at("coords");
    if (!cj.is_array() || static_cast<int>(cj.size()) != d)
      throw InputError(where + ".coords must have length " +
                       std::to_string(d));
    RealVec coords(d);
    for (int k = 0; k < d; ++k)
      coords[k] = require_number(cj[k], where + ".coords");
    Vertex v;
    v.point = smat(cert.cone_kind, cert.n, coords);
    v.word = word_from_json(vj.at("word"), where + ".word");
    if (!vj.at("origin").is_number_integer())
      throw InputError(where + ".origin must be an integer");
    v.origin = vj.at("origin").get<int>();
    v.scale_log = require_number(vj.at("scale_log"), where + ".scale_log");
    cert.vertices.push_back(std::move(v));
  }
  cert.tolerances = tolerances_from_json(j.at("tolerances"));
  return cert;
}

json parse_json_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON input");
  return j;
}

}  // namespace

MatrixSet parse_problem(const std::string& path) {
  try {
    return parse_problem_text(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

MatrixSet parse_problem_text(const std::string& json_text) {
  const json j = parse_json_or_throw(json_text);
  if (!j.is_object()) throw InputError("problem file must be a JSON object");
  if (!j.contains("scalar") || !j.at("scalar").is_string())
    throw InputError("missing or non-string field: scalar");
  const std::string scalar = j.at("scalar").get<std::string>();
  if (scalar != "real" && scalar != "complex")
    throw InputError("field scalar must be \"real\" or \"complex\", got \"" +
                     scalar + "\"");
  if (!j.contains("n") || !j.at("n").is_number_integer() ||
      j.at("n").get<int>() <= 0)
    throw InputError("field n must be a positive integer");
  const int n = j.at("n").get<int>();
  if (!j.contains("matrices") || !j.at("matrices").is_array() ||
      j.at("matrices").empty())
    throw InputError("field matrices must be a nonempty array");

  const json& ms = j.at("matrices");
  std::vector<Mat> mats;
  for (size_t m = 0; m < ms.size(); ++m) {
    const std::string wm = "matrices[" + std::to_string(m) + "]";
    const json& rows = ms[m];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw InputError(wm + ": inconsistent dimension (expected " +
                       std::to_string(n) + " rows)");
    Mat a(n, n);
    for (int r = 0; r < n; ++r) {
      const json& row = rows[r];
      const std::string wr = wm + "[" + std::to_string(r) + "]";
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw InputError(wr + ": inconsistent dimension (expected " +
                         std::to_string(n) + " entries)");
      for (int c = 0; c < n; ++c) {
        const std::string we = wr + "[" + std::to_string(c) + "]";
        if (scalar == "real") {
          a(r, c) = Cplx(require_number(row[c], we), 0.0);
        } else {
          a(r, c) = parse_complex_entry(row[c], we);
        }
      }
    }
    mats.push_back(std::move(a));
  }

  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const json& lj = j.at("labels");
    if (!lj.is_array() || lj.size() != ms.size())
      throw InputError("field labels must list one name per matrix");
    for (const auto& l : lj) {
      if (!l.is_string()) throw InputError("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }

  if (scalar == "real") {
    std::vector<RealMat> rmats;
    for (const auto& a : mats) rmats.push_back(a.real());
    return MatrixSet::FromReal(rmats, labels);
  }
  return MatrixSet::FromComplex(mats, labels);
}

std::string emit_problem(const MatrixSet& set) {
  json ms = json::array();
  for (const auto& a : set.matrices) {
    json rows = json::array();
    for (int r = 0; r < set.n; ++r) {
      json row = json::array();
      for (int c = 0; c < set.n; ++c) {
        if (set.scalar_kind == ScalarKind::kReal) {
          row.push_back(a(r, c).real());
        } else {
          row.push_back(json::array({a(r, c).real(), a(r, c).imag()}));
        }
      }
      rows.push_back(std::move(row));
    }
    ms.push_back(std::move(rows));
  }
  json j{{"scalar", set.scalar_kind == ScalarKind::kReal ? "real" : "complex"},
         {"n", set.n},
         {"matrices", std::move(ms)}};
  if (!set.labels.empty()) j["labels"] = set.labels;
  return j.dump(2) + "\n";
}

std::string emit_report(const RunResult& result, double runtime_ms) {
  json iters = json::array();
  for (const auto& it : result.iterations) {
    iters.push_back(json{{"C", it.C},
                         {"Y", it.Y},
                         {"B", it.B},
                         {"vertices", it.vertices}});
  }
  json j{{"lower", result.lower},
         {"upper", result.upper},
         {"exact", result.exact},
         {"smp_word", word_to_json(result.smp.word)},
         {"smp_value", result.smp.value},
         {"iterations", std::move(iters)},
         {"steps", result.steps},
         {"restarts", result.restarts},
         {"note", result.note},
         {"tolerances", tolerances_to_json(result.tolerances)},
         {"runtime_ms", runtime_ms}};
  if (result.certificate.has_value()) {
    j["certificate"] = certificate_to_json(*result.certificate);
  } else {
    j["certificate"] = nullptr;
  }
  if (!std::isfinite(result.upper)) j["upper"] = nullptr;
  return j.dump(2) + "\n";
}

std::string emit_certificate(const Certificate& cert) {
  return certificate_to_json(cert).dump(2) + "\n";
}

Certificate parse_certificate(const std::string& path) {
  try {
    return parse_certificate_text(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Certificate parse_certificate_text(const std::string& json_text) {
  return certificate_from_json(parse_json_or_throw(json_text));
}

std::string emit_lifted_operators(const MatrixSet& set) {
  const ConeKind kind = cone_for(set.scalar_kind);
  json ops = json::array();
  for (int i = 0; i < set.size(); ++i) {
    const LiftedOperator op = lift_operator(set.matrices[i], kind);
    json rows = json::array();
    for (int r = 0; r < op.dim(); ++r) {
      json row = json::array();
      for (int c = 0; c < op.dim(); ++c) row.push_back(op.rep(r, c));
      rows.push_back(std::move(row));
    }
    json entry{{"rep", std::move(rows)}};
    entry["label"] = i < static_cast<int>(set.labels.size())
                         ? set.labels[i]
                         : "A" + std::to_string(i + 1);
    ops.push_back(std::move(entry));
  }
  json j{{"cone", kind == ConeKind::kRealSymmetric ? "real_symmetric"
                                                   : "hermitian"},
         {"n", set.n},
         {"dim", svec_dim(kind, set.n)},
         {"operators", std::move(ops)}};
  return j.dump(2) + "\n";
}

std::string summary_line(const RunResult& result) {
  std::ostringstream ss;
  ss.precision(17);
  ss << "JSR in [" << result.lower << ", ";
  if (std::isfinite(result.upper)) {
    ss << result.upper;
  } else {
    ss << "inf";
  }
  ss << "] exact=" << (result.exact ? "true" : "false") << " smp=";
  if (result.smp.word.empty()) {
    ss << "-";
  } else {
    for (size_t i = 0; i < result.smp.word.indices.size(); ++i) {
      if (i > 0) ss << ".";
      ss << result.smp.word.indices[i];
    }
  }
  ss << " steps=" << result.steps;
  return ss.str();
}

}  // namespace jsr
