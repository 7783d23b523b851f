#include "reachmod/system_file.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "reachmod/errors.hpp"

namespace reachmod {

namespace {

std::string where(const YAML::Node& node, const std::string& field) {
  const YAML::Mark mark = node.Mark();
  std::string loc = mark.line >= 0 ? "line " + std::to_string(mark.line + 1) : "";
  if (!field.empty()) loc += (loc.empty() ? "" : ", ") + std::string("field ") + field;
  return loc;
}

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Polynomial> entries;
};

Matrix read_matrix(const YAML::Node& node, const std::string& name, const RingPtr& ring,
                   bool require_y_free) {
  if (!node.IsSequence()) throw ParseError("expected a list of rows", where(node, name));
  Matrix out;
  out.rows = node.size();
  for (std::size_t i = 0; i < node.size(); ++i) {
    const YAML::Node row = node[i];
    const std::string row_name = name + "[" + std::to_string(i + 1) + "]";
    if (!row.IsSequence()) throw ParseError("expected a list of entries", where(row, row_name));
    if (i == 0) out.cols = row.size();
    else if (row.size() != out.cols)
      throw DimensionError(where(row, row_name) + ": row has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(out.cols));
    for (std::size_t j = 0; j < row.size(); ++j) {
      const YAML::Node cell = row[j];
      const std::string cell_name = row_name + "[" + std::to_string(j + 1) + "]";
      if (!cell.IsScalar()) throw ParseError("expected a polynomial", where(cell, cell_name));
      Polynomial p(ring);
      try {
        p = parse_polynomial(cell.as<std::string>(), ring);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), where(cell, cell_name));
      }
      if (require_y_free && !p.is_y_free())
        throw ParseError("pencil variable not allowed in system matrices", where(cell, cell_name));
      out.entries.push_back(std::move(p));
    }
  }
  return out;
}

PolyMatrix to_poly_matrix(Matrix m, const RingPtr& ring) {
  return PolyMatrix(ring, m.rows, m.cols, std::move(m.entries));
}

RingPtr read_ring(const YAML::Node& root, MonomialOrder order) {
  const YAML::Node node = root["ring"];
  std::vector<std::string> variables;
  std::uint32_t characteristic = 0;
  if (node) {
    if (!node.IsMap()) throw ParseError("expected a mapping", where(node, "ring"));
    if (const YAML::Node vars = node["variables"]) {
      if (!vars.IsSequence()) throw ParseError("expected a list", where(vars, "ring.variables"));
      for (const auto& v : vars) variables.push_back(v.as<std::string>());
    }
    if (const YAML::Node ch = node["characteristic"]) {
      try {
        characteristic = ch.as<std::uint32_t>();
      } catch (const YAML::Exception&) {
        throw ParseError("expected a non-negative integer", where(ch, "ring.characteristic"));
      }
    }
  }
  try {
    return Ring::create(std::move(variables), characteristic, order);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), where(node ? node : root, "ring"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), where(node ? node : root, "ring"));
  }
}

}  // namespace

SystemFile parse_system_text(std::string_view text, MonomialOrder order,
                             const EngineOptions& options) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, "line " + std::to_string(e.mark.line + 1));
  }
  if (!root.IsMap()) throw ParseError("system file must be a mapping", "line 1");
  for (const char* key : {"A", "B", "M"})
    if (!root[key]) throw ParseError(std::string("missing field ") + key, "line 1");

  try {
    RingPtr ring = read_ring(root, order);
    Matrix a = read_matrix(root["A"], "A", ring, true);
    Matrix b = read_matrix(root["B"], "B", ring, true);
    const std::size_t n = a.rows;
    if (a.cols != n)
      throw DimensionError(where(root["A"], "A") + ": A must be square, got " +
                           std::to_string(a.rows) + "x" + std::to_string(a.cols));
    if (b.rows != n)
      throw DimensionError(where(root["B"], "B") + ": B has " + std::to_string(b.rows) +
                           " rows, expected " + std::to_string(n));
    SystemPair sys(to_poly_matrix(std::move(a), ring), to_poly_matrix(std::move(b), ring));

    const YAML::Node mnode = root["M"];
    if (mnode.IsScalar()) {
      const std::string kind = mnode.as<std::string>();
      if (kind == "zero") return {ring, sys, StateSubmodule::zero(ring, n), "zero"};
      if (kind == "full") return {ring, sys, StateSubmodule::full(ring, n), "full"};
      throw ParseError("expected 'zero', 'full' or a mapping", where(mnode, "M"));
    }
    if (!mnode.IsMap() || mnode.size() != 1)
      throw ParseError("M needs exactly one of 'image' or 'kernel'", where(mnode, "M"));
    if (const YAML::Node img = mnode["image"]) {
      Matrix g = read_matrix(img, "M.image", ring, true);
      if (g.rows == 0) return {ring, sys, StateSubmodule::zero(ring, n), "image"};
      if (g.rows != n)
        throw DimensionError(where(img, "M.image") + ": columns have length " +
                             std::to_string(g.rows) + ", expected " + std::to_string(n));
      return {ring, sys, StateSubmodule::from_image(to_poly_matrix(std::move(g), ring)), "image"};
    }
    if (const YAML::Node ker = mnode["kernel"]) {
      Matrix c = read_matrix(ker, "M.kernel", ring, true);
      if (c.rows == 0) return {ring, sys, StateSubmodule::full(ring, n), "kernel"};
      if (c.cols != n)
        throw DimensionError(where(ker, "M.kernel") + ": C has " + std::to_string(c.cols) +
                             " columns, expected " + std::to_string(n));
      return {ring, sys,
              StateSubmodule::from_kernel(to_poly_matrix(std::move(c), ring), options), "kernel"};
    }
    throw ParseError("M needs exactly one of 'image' or 'kernel'", where(mnode, "M"));
  } catch (const YAML::Exception& e) {
    throw ParseError(e.msg, "line " + std::to_string(e.mark.line + 1));
  }
}

SystemFile parse_system_file(const std::filesystem::path& path, MonomialOrder order,
                             const EngineOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_system_text(buffer.str(), order, options);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), path.string());
  }
}

}  // namespace reachmod
