#include "liftlab/serialize.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace liftlab::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::InvalidInput, where + ": " + what);
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& required,
                const std::set<std::string>& optional) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const auto& k : required)
    if (!j.contains(k)) bad(where, "missing field '" + k + "'");
  for (const auto& [k, v] : j.items())
    if (!required.count(k) && !optional.count(k)) bad(where, "unknown field '" + k + "'");
}

void check_schema(const json& j, const char* schema, const std::string& where) {
  if (!j.at("schema").is_string() || j.at("schema").get<std::string>() != schema)
    bad(where, std::string("schema must be \"") + schema + "\"");
}

long long get_int(const json& j, const std::string& key, const std::string& where, long long lo) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) bad(where, "'" + key + "' must be an integer");
  const long long x = v.get<long long>();
  if (x < lo) bad(where, "'" + key + "' must be >= " + std::to_string(lo));
  return x;
}

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) bad(where, "complex parts must be numbers");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(where, "non-finite entry");
  return x;
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols, const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    bad(where, "matrix must have " + std::to_string(rows) + " rows");
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      bad(where, "row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2) bad(where, "entries are [re, im] pairs");
      m(r, c) = cplx(finite_number(e[0], where), finite_number(e[1], where));
    }
  }
  return m;
}

json to_json(const SymbolFile& s) {
  json j;
  j["schema"] = kSymbolSchema;
  j["d"] = s.symbol.d;
  j["dimD"] = s.symbol.dimD;
  j["dimL"] = s.symbol.dimL;
  json coeffs = json::array();
  for (const auto& [w, m] : s.symbol.coeffs) coeffs.push_back(json{{"word", w.letters}, {"matrix", matrix_to_json(m)}});
  j["coeffs"] = std::move(coeffs);
  if (s.provenance) j["provenance"] = *s.provenance;
  if (s.identificationRecord) j["identificationRecord"] = *s.identificationRecord;
  return j;
}

SymbolFile symbol_from_json(const json& j) {
  const std::string where = "symbol";
  check_keys(j, where, {"schema", "d", "dimD", "dimL", "coeffs"}, {"provenance", "identificationRecord"});
  check_schema(j, kSymbolSchema, where);
  SymbolFile out;
  const int d = static_cast<int>(get_int(j, "d", where, 1));
  const int dimD = static_cast<int>(get_int(j, "dimD", where, 0));
  const int dimL = static_cast<int>(get_int(j, "dimL", where, 0));
  out.symbol = Symbol(d, dimD, dimL);
  if (!j.at("coeffs").is_array()) bad(where, "'coeffs' must be an array");
  std::size_t idx = 0;
  for (const json& c : j.at("coeffs")) {
    const std::string cw = where + ".coeffs[" + std::to_string(idx++) + "]";
    check_keys(c, cw, {"word", "matrix"}, {});
    if (!c.at("word").is_array()) bad(cw, "'word' must be an array");
    Word w;
    for (const json& l : c.at("word")) {
      if (!l.is_number_integer()) bad(cw, "letters must be integers");
      const int x = l.get<int>();
      if (x < 1 || x > d) bad(cw, "letter outside 1..d");
      w.letters.push_back(x);
    }
    if (out.symbol.coeffs.count(w)) bad(cw, "duplicate word");
    out.symbol.set(w, matrix_from_json(c.at("matrix"), dimL, dimD, cw));
  }
  if (j.contains("provenance")) out.provenance = j.at("provenance");
  if (j.contains("identificationRecord")) out.identificationRecord = j.at("identificationRecord");
  return out;
}

json to_json(const RowTuple& t) {
  json j;
  j["schema"] = kRowTupleSchema;
  j["d"] = t.d;
  j["dim"] = t.dim;
  json blocks = json::array();
  for (const auto& b : t.blocks) blocks.push_back(matrix_to_json(b));
  j["blocks"] = std::move(blocks);
  if (!t.spaceTag.empty()) j["spaceTag"] = t.spaceTag;
  return j;
}

RowTuple rowtuple_from_json(const json& j) {
  const std::string where = "rowtuple";
  check_keys(j, where, {"schema", "d", "dim", "blocks"}, {"spaceTag"});
  check_schema(j, kRowTupleSchema, where);
  const int d = static_cast<int>(get_int(j, "d", where, 1));
  const Eigen::Index dim = get_int(j, "dim", where, 0);
  const json& blocks = j.at("blocks");
  if (!blocks.is_array() || static_cast<int>(blocks.size()) != d) bad(where, "block count must equal d");
  std::vector<CMatrix> bm;
  for (int k = 0; k < d; ++k)
    bm.push_back(matrix_from_json(blocks[static_cast<std::size_t>(k)], dim, dim, where + ".blocks[" + std::to_string(k) + "]"));
  std::string tag;
  if (j.contains("spaceTag")) {
    if (!j.at("spaceTag").is_string()) bad(where, "'spaceTag' must be a string");
    tag = j.at("spaceTag").get<std::string>();
  }
  if (d > 0 && dim == 0) {
    RowTuple t = RowTuple::zero(d, 0, tag);
    return t;
  }
  return RowTuple(bm, tag);
}

json to_json(const Lifting& e) {
  json j;
  j["schema"] = kLiftingSchema;
  j["C"] = to_json(e.C);
  json b = json::array();
  for (const auto& m : e.B) b.push_back(matrix_to_json(m));
  j["B"] = std::move(b);
  j["A"] = to_json(e.A);
  if (!e.finite()) j["exactDim"] = e.exactDim;
  return j;
}

Lifting lifting_from_json(const json& j) {
  const std::string where = "lifting";
  check_keys(j, where, {"schema", "C", "B", "A"}, {"exactDim"});
  check_schema(j, kLiftingSchema, where);
  RowTuple c = rowtuple_from_json(j.at("C"));
  RowTuple a = rowtuple_from_json(j.at("A"));
  if (c.d != a.d) bad(where, "C and A disagree on d");
  const json& bj = j.at("B");
  if (!bj.is_array() || static_cast<int>(bj.size()) != c.d) bad(where, "'B' must hold d blocks");
  std::vector<CMatrix> b;
  for (int k = 0; k < c.d; ++k)
    b.push_back(matrix_from_json(bj[static_cast<std::size_t>(k)], a.dim, c.dim, where + ".B[" + std::to_string(k) + "]"));
  const Eigen::Index exact = j.contains("exactDim") ? get_int(j, "exactDim", where, 0) : -1;
  return Lifting(std::move(c), std::move(b), std::move(a), exact);
}

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (const auto p = msg.find("] "); p != std::string::npos) msg = msg.substr(p + 2);
    fail(ErrorKind::InvalidInput, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidInput, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidInput, path + ": cannot write");
  out << dump(j);
}

}  // namespace liftlab::io
