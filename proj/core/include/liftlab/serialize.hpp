#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "liftlab/lifting.hpp"
#include "liftlab/multianalytic.hpp"
#include "liftlab/rowop.hpp"

namespace liftlab::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSymbolSchema = "liftlab/symbol/v1";
inline constexpr const char* kRowTupleSchema = "liftlab/rowtuple/v1";
inline constexpr const char* kLiftingSchema = "liftlab/lifting/v1";

struct SymbolFile {
  Symbol symbol;
  std::optional<json> provenance;
  std::optional<json> identificationRecord;
};

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols, const std::string& where);

json to_json(const SymbolFile& s);
json to_json(const RowTuple& t);
json to_json(const Lifting& e);

SymbolFile symbol_from_json(const json& j);
RowTuple rowtuple_from_json(const json& j);
Lifting lifting_from_json(const json& j);

/// Parses JSON text; syntax errors become InvalidInput with a line number.
json parse(const std::string& text, const std::string& source = "<input>");
json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);
std::string dump(const json& j);

}  // namespace liftlab::io
