#pragma once

// Flat-file formats (code, scheme, system, data) and JSON reports.
// Node indices in every file and report are 1-based. Every document carries
// "schema": 1. Extension-field elements are packed integers sum c_i p^i.

#include <msrlab/bounds.hpp>
#include <msrlab/certificates.hpp>
#include <msrlab/json_matrix.hpp>
#include <msrlab/search.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace msrlab {

inline constexpr int kSchemaVersion = 1;

/// Two-space indented JSON with arrays of scalars kept on one line.
inline void write_json(std::ostream& os, const Json& j, int indent = 0) {
  auto scalar = [](const Json& x) { return !x.is_array() && !x.is_object(); };
  const std::string pad(indent + 2, ' '), close(indent, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << pad << Json(it.key()).dump() << ": ";
      write_json(os, it.value(), indent + 2);
    }
    os << "\n" << close << "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      os << "[]";
      return;
    }
    if (std::all_of(j.begin(), j.end(), scalar)) {
      os << "[";
      for (std::size_t x = 0; x < j.size(); ++x) os << (x ? ", " : "") << j[x].dump();
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t x = 0; x < j.size(); ++x) {
      os << pad;
      write_json(os, j[x], indent + 2);
      os << (x + 1 < j.size() ? ",\n" : "\n");
    }
    os << close << "]";
  } else {
    os << j.dump();
  }
}

inline std::string to_text(const Json& j) {
  std::ostringstream os;
  write_json(os, j);
  os << "\n";
  return os.str();
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

namespace detail {

inline void check_schema(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "document must be a JSON object");
  if (j.contains("schema") && j.at("schema") != kSchemaVersion)
    throw Error(ErrorKind::ParseError, "unsupported schema " + j.at("schema").dump());
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string(key) + ": " + e.what());
  }
}

inline std::size_t node_from_json(const Json& j, std::size_t n) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 1 || j.get<std::uint64_t>() > n)
    throw Error(ErrorKind::ParseError, "node index " + j.dump() + " outside 1.." + std::to_string(n));
  return j.get<std::size_t>() - 1;
}

}  // namespace detail

// --- code files -------------------------------------------------------------

inline Json code_to_json(const ArrayCode& code) {
  const auto& p = code.params();
  Json j;
  j["schema"] = kSchemaVersion;
  j["field"] = field_to_json(code.field());
  j["ell"] = p.ell;
  j["k"] = p.k;
  j["r"] = p.r;
  Json enc = Json::array();
  for (std::size_t t = 0; t < p.r; ++t) {
    Json row = Json::array();
    for (std::size_t c = 0; c < p.k; ++c) row.push_back(matrix_to_json(code.a(t, c)));
    enc.push_back(std::move(row));
  }
  j["encoding"] = std::move(enc);
  return j;
}

inline ArrayCode code_from_json(const Json& j) {
  detail::check_schema(j);
  const Field f = field_from_json(j.contains("field") ? j.at("field") : Json());
  CodeParams p{detail::get<std::size_t>(j, "ell"), detail::get<std::size_t>(j, "k"), detail::get<std::size_t>(j, "r")};
  const Json& enc = j.contains("encoding") ? j.at("encoding") : Json();
  if (!enc.is_array() || enc.size() != p.r) throw Error(ErrorKind::ParseError, "encoding must have r rows");
  std::vector<std::vector<Matrix>> grid(p.r);
  for (std::size_t t = 0; t < p.r; ++t) {
    if (!enc[t].is_array() || enc[t].size() != p.k) throw Error(ErrorKind::ParseError, "encoding rows must have k matrices");
    for (const auto& m : enc[t]) {
      auto mat = matrix_from_json(m, f, p.ell);
      if (mat.rows() != p.ell) throw Error(ErrorKind::ParseError, "encoding matrices must be ell x ell");
      grid[t].push_back(std::move(mat));
    }
  }
  try {
    return ArrayCode(p, f, std::move(grid));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

// --- scheme files -----------------------------------------------------------

inline Json scheme_to_json(const RepairScheme& scheme) {
  Json j;
  j["schema"] = kSchemaVersion;
  Json nodes = Json::array();
  for (const auto& [i, nr] : scheme.nodes()) {
    Json node;
    node["failed"] = i + 1;
    Json helpers = Json::array();
    for (std::size_t h = 0; h < nr.helpers.size(); ++h) {
      if (!nr.helpers[h]) continue;
      Json e;
      e["node"] = h + 1;
      e["basis"] = matrix_to_json(*nr.helpers[h]);
      helpers.push_back(std::move(e));
    }
    node["helpers"] = std::move(helpers);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

/// The companion code fixes the field and dimensions.
inline RepairScheme scheme_from_json(const Json& j, const ArrayCode& code) {
  detail::check_schema(j);
  const auto& p = code.params();
  if (!j.contains("nodes") || !j.at("nodes").is_array()) throw Error(ErrorKind::ParseError, "scheme needs a nodes array");
  RepairScheme scheme;
  for (const auto& node : j.at("nodes")) {
    NodeRepair nr;
    nr.failed = detail::node_from_json(node.contains("failed") ? node.at("failed") : Json(), p.k);
    nr.helpers.resize(p.n());
    if (!node.contains("helpers") || !node.at("helpers").is_array()) throw Error(ErrorKind::ParseError, "node needs a helpers array");
    for (const auto& h : node.at("helpers")) {
      const auto idx = detail::node_from_json(h.contains("node") ? h.at("node") : Json(), p.n());
      if (idx == nr.failed) throw Error(ErrorKind::ParseError, "a node cannot help itself");
      if (nr.helpers[idx]) throw Error(ErrorKind::ParseError, "duplicate helper " + std::to_string(idx + 1));
      nr.helpers[idx] = matrix_from_json(h.contains("basis") ? h.at("basis") : Json(), code.field(), p.ell);
    }
    if (scheme.has(nr.failed)) throw Error(ErrorKind::ParseError, "duplicate failed node " + std::to_string(nr.failed + 1));
    try {
      check_node_shape(code, nr);
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
    scheme.set(std::move(nr));
  }
  return scheme;
}

// --- system files -----------------------------------------------------------

inline Json system_to_json(const PhiSystem& sys) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["field"] = field_to_json(sys.field);
  j["ell"] = sys.ell;
  j["r"] = sys.r;
  Json pairs = Json::array();
  for (const auto& pp : sys.pairs) {
    Json e;
    e["phi"] = matrix_to_json(pp.phi);
    e["s"] = matrix_to_json(pp.s.basis());
    pairs.push_back(std::move(e));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

inline PhiSystem system_from_json(const Json& j) {
  detail::check_schema(j);
  PhiSystem sys;
  sys.field = field_from_json(j.contains("field") ? j.at("field") : Json());
  sys.ell = detail::get<std::size_t>(j, "ell");
  sys.r = detail::get<std::size_t>(j, "r");
  if (!j.contains("pairs") || !j.at("pairs").is_array()) throw Error(ErrorKind::ParseError, "system needs a pairs array");
  for (const auto& e : j.at("pairs")) {
    if (!e.is_object() || !e.contains("phi") || !e.contains("s")) throw Error(ErrorKind::ParseError, "pair needs phi and s");
    auto phi = matrix_from_json(e.at("phi"), sys.field, sys.ell);
    auto basis = matrix_from_json(e.at("s"), sys.field, sys.ell);
    sys.pairs.push_back({std::move(phi), Subspace::span(basis)});
  }
  try {
    sys.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return sys;
}

// --- data files -------------------------------------------------------------

inline Json data_to_json(const DataFill& data) {
  Json j;
  j["schema"] = kSchemaVersion;
  Json d = Json::array();
  for (const auto& v : data.systematic) d.push_back(vector_to_json(v));
  j["data"] = std::move(d);
  return j;
}

inline DataFill data_from_json(const Json& j, const ArrayCode& code) {
  detail::check_schema(j);
  if (!j.contains("data") || !j.at("data").is_array()) throw Error(ErrorKind::ParseError, "data file needs a data array");
  DataFill fill;
  for (const auto& v : j.at("data")) fill.systematic.push_back(vector_from_json(v, code.field()));
  try {
    check_data(code, fill);
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return fill;
}

inline DataFill random_fill(const ArrayCode& code, std::mt19937_64& rng) {
  std::uniform_int_distribution<FieldElem> dist(0, code.field().order() - 1);
  DataFill fill;
  for (std::size_t j = 0; j < code.params().k; ++j) {
    std::vector<FieldElem> v(code.params().ell);
    for (auto& x : v) x = dist(rng);
    fill.systematic.push_back(Matrix::column_vector(code.field(), std::move(v)));
  }
  return fill;
}

// --- reports ----------------------------------------------------------------

inline Json report_header(const char* kind) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["report"] = kind;
  return j;
}

inline Json index_list(const std::vector<std::size_t>& idx) {
  Json a = Json::array();
  for (auto i : idx) a.push_back(i + 1);
  return a;
}

inline Json mds_report_json(const MdsReport& rep) {
  Json j = report_header("verify-mds");
  j["mds"] = rep.mds;
  j["subsets_checked"] = rep.subsets_checked;
  Json f = Json::array();
  for (const auto& s : rep.failing) f.push_back(index_list(s));
  j["failing"] = std::move(f);
  return j;
}

inline Json scheme_check_json(std::size_t node, const SchemeCheck& chk) {
  Json j;
  j["failed"] = node + 1;
  j["ok"] = chk.ok;
  Json v = Json::array();
  for (const auto& x : chk.violations) {
    Json e;
    if (x.kind == SchemeViolation::Kind::Alignment) {
      e["kind"] = "alignment";
      e["helper"] = x.helper + 1;
      e["parity"] = x.parity + 1;
    } else {
      e["kind"] = "deficient_sum";
      e["sum_dim"] = x.sum_dim;
    }
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  return j;
}

inline Json transcript_json(const RepairTranscript& tr) {
  Json j = report_header("repair");
  j["failed"] = tr.failed + 1;
  Json tx = Json::array();
  for (std::size_t h = 0; h < tr.transmitted.size(); ++h) {
    if (!tr.transmitted[h]) continue;
    Json e;
    e["node"] = h + 1;
    e["symbols"] = vector_to_json(*tr.transmitted[h]);
    tx.push_back(std::move(e));
  }
  j["transmitted"] = std::move(tx);
  j["recovered"] = vector_to_json(tr.recovered);
  j["symbols"] = tr.symbols;
  return j;
}

inline Json condition_check_json(const ConditionCheck& chk) {
  Json j;
  j["ok"] = chk.ok;
  Json v = Json::array();
  for (const auto& x : chk.violations) {
    Json e;
    switch (x.kind) {
      case ConditionViolation::Kind::Invariance:
        e["kind"] = "invariance";
        e["i"] = x.i + 1;
        e["j"] = x.j + 1;
        break;
      case ConditionViolation::Kind::Intersection:
        e["kind"] = "intersection";
        e["i"] = x.i + 1;
        e["dim"] = x.dim;
        break;
      case ConditionViolation::Kind::DeficientSum:
        e["kind"] = "deficient_sum";
        e["i"] = x.i + 1;
        e["dim"] = x.dim;
        break;
    }
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  return j;
}

inline Json scheme_search_json(const SchemeSearchResult& res) {
  Json j = report_header("search-scheme");
  j["exhaustive"] = res.exhaustive;
  j["expansions"] = res.expansions;
  Json nodes = Json::array();
  for (const auto& ns : res.nodes) {
    Json e;
    e["failed"] = ns.failed + 1;
    e["exhaustive"] = ns.exhaustive;
    Json sols = Json::array();
    for (const auto& sol : ns.solutions) {
      Json s = Json::array();
      for (const auto& sub : sol) s.push_back(matrix_to_json(sub.basis()));
      sols.push_back(std::move(s));
    }
    e["solutions"] = std::move(sols);
    nodes.push_back(std::move(e));
  }
  j["nodes"] = std::move(nodes);
  j["scheme"] = scheme_to_json(res.scheme);
  return j;
}

inline Json search_result_json(const SearchResult& res) {
  Json j = report_header("search-maxk");
  j["kmax"] = res.kmax;
  j["exhaustive"] = res.exhaustive;
  j["expansions"] = res.expansions;
  j["witness"] = system_to_json(res.witness);
  return j;
}

inline Json theta_json(const ThetaReduction& red) {
  Json j = report_header("reduce-theta");
  j["anchor"] = red.anchor + 1;
  j["labels"] = index_list(red.labels);
  j["system"] = system_to_json(red.system);
  return j;
}

inline Json bound_report_json(const BoundReport& rep) {
  Json j = report_header("bounds");
  j["ell"] = rep.ell;
  j["r"] = rep.r;
  j["quadratic"] = rep.quadratic;
  j["linear_r2"] = rep.linear_r2 ? Json(*rep.linear_r2) : Json();
  j["logsq"] = rep.logsq ? Json(*rep.logsq) : Json();
  j["known_achievable"] = rep.known_achievable ? Json(*rep.known_achievable) : Json();
  j["bandwidth"] = rep.bandwidth ? Json(*rep.bandwidth) : Json();
  return j;
}

inline Json family_report_json(const CertificateFamily& fam) {
  Json j = report_header("certify");
  j["family"] = family_to_json(fam);
  j["size"] = fam.members.size();
  j["rank"] = fam.rank();
  j["independent"] = fam.independent();
  return j;
}

}  // namespace msrlab
