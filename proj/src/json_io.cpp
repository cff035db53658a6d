// Copyright 2026 The lindblad-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lindblad/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace lindblad {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::InputError, std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorKind::InputError, std::string(what) + " must be a number");
  return j.get<double>();
}

Index count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw Error(ErrorKind::InputError, std::string(what) + " must be a non-negative integer");
  return static_cast<Index>(j.get<long long>());
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["re"] = re;
  out["im"] = im;
  return out;
}

Matrix matrix_from_json(const Json& j) {
  Index rows = count(field(j, "rows"), "rows");
  Index cols = count(field(j, "cols"), "cols");
  const Json& re = field(j, "re");
  if (!re.is_array() || static_cast<Index>(re.size()) != rows * cols)
    throw Error(ErrorKind::InputError, "matrix 're' must hold rows*cols entries");
  bool has_im = j.contains("im");
  if (has_im && (!j["im"].is_array() || static_cast<Index>(j["im"].size()) != rows * cols))
    throw Error(ErrorKind::InputError, "matrix 'im' must hold rows*cols entries");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) {
      std::size_t idx = static_cast<std::size_t>(i * cols + k);
      double im = has_im ? number(j["im"][idx], "matrix entry") : 0.0;
      m(i, k) = Complex(number(re[idx], "matrix entry"), im);
    }
  return m;
}

Json generator_to_json(const LindbladGenerator& g) {
  Json out;
  out["dim"] = g.dim;
  out["convention"] = g.convention == Convention::Half ? "half" : "double";
  out["H"] = matrix_to_json(g.hamiltonian);
  Json jumps = Json::array();
  for (const Jump& j : g.jumps) jumps.push_back(Json{{"V", matrix_to_json(j.op)}, {"c", j.weight}});
  out["jumps"] = jumps;
  return out;
}

LindbladGenerator generator_from_json(const Json& j) {
  LindbladGenerator g;
  g.dim = count(field(j, "dim"), "dim");
  std::string conv = j.value("convention", std::string("half"));
  if (conv == "half")
    g.convention = Convention::Half;
  else if (conv == "double")
    g.convention = Convention::Double;
  else
    throw Error(ErrorKind::InputError, "convention must be 'half' or 'double'");
  g.hamiltonian = j.contains("H") ? matrix_from_json(j["H"]) : Matrix::Zero(g.dim, g.dim);
  if (j.contains("jumps")) {
    if (!j["jumps"].is_array()) throw Error(ErrorKind::InputError, "'jumps' must be an array");
    for (const Json& e : j["jumps"])
      g.jumps.push_back({matrix_from_json(field(e, "V")), e.contains("c") ? number(e["c"], "c") : 1.0});
  }
  g.validate();
  return g;
}

GksForm gks_from_json(const Json& j) {
  GksForm g;
  const Json& basis = field(j, "basis");
  if (!basis.is_array()) throw Error(ErrorKind::InputError, "'basis' must be an array");
  for (const Json& b : basis) g.basis.push_back(matrix_from_json(b));
  g.coeff = matrix_from_json(field(j, "coeff"));
  if (j.contains("H")) g.hamiltonian = matrix_from_json(j["H"]);
  std::string conv = j.value("convention", std::string("half"));
  if (conv != "half" && conv != "double")
    throw Error(ErrorKind::InputError, "convention must be 'half' or 'double'");
  g.convention = conv == "half" ? Convention::Half : Convention::Double;
  return g;
}

Json gks_to_json(const GksForm& g) {
  Json out;
  Json basis = Json::array();
  for (const Matrix& b : g.basis) basis.push_back(matrix_to_json(b));
  out["basis"] = basis;
  out["coeff"] = matrix_to_json(g.coeff);
  if (g.hamiltonian.size()) out["H"] = matrix_to_json(g.hamiltonian);
  out["convention"] = g.convention == Convention::Half ? "half" : "double";
  return out;
}

Json spec_to_json(const SubalgebraSpec& s) {
  Json out;
  Json blocks = Json::array();
  for (const Block& b : s.blocks) blocks.push_back(Json::array({b.factor_dim, b.multiplicity}));
  out["blocks"] = blocks;
  if (s.unitary) out["U"] = matrix_to_json(*s.unitary);
  if (!s.block_states.empty()) {
    Json states = Json::array();
    for (const Matrix& m : s.block_states) states.push_back(matrix_to_json(m));
    out["tau_k"] = states;
  }
  return out;
}

SubalgebraSpec spec_from_json(const Json& j) {
  SubalgebraSpec s;
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array()) throw Error(ErrorKind::InputError, "'blocks' must be an array");
  for (const Json& b : blocks) {
    if (!b.is_array() || b.size() != 2) throw Error(ErrorKind::InputError, "each block is [n_k, r_k]");
    s.blocks.push_back({count(b[0], "n_k"), count(b[1], "r_k")});
  }
  if (j.contains("U")) s.unitary = matrix_from_json(j["U"]);
  if (j.contains("tau_k"))
    for (const Json& m : j["tau_k"]) s.block_states.push_back(matrix_from_json(m));
  s.validate();
  return s;
}

namespace {

void write(const Json& j, int indent, int depth, std::string& out) {
  // negative indent: compact single-line output
  const bool compact = indent < 0;
  const char* nl = compact ? "" : "\n";
  auto pad = [&](int d) {
    if (!compact) out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) (out += ",") += nl;
        first = false;
        pad(depth + 1);
        out += Json(it.key()).dump();
        out += compact ? ":" : ": ";
        write(it.value(), indent, depth + 1, out);
      }
      out += nl;
      pad(depth);
      out += "}";
      return;
    }
    case Json::value_t::array: {
      bool flat = true;
      for (const Json& e : j) flat = flat && e.is_primitive();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += compact ? "," : ", ";
          write(j[i], indent, depth, out);
        }
        out += "]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) (out += ",") += nl;
        pad(depth + 1);
        write(j[i], indent, depth + 1, out);
      }
      out += nl;
      pad(depth);
      out += "]";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  out += "\n";
  return out;
}

}  // namespace lindblad
