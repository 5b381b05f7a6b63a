// Copyright 2026 The eymflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eym/snapshot.hpp"

#include <bit>
#include <fstream>
#include <vector>

#include <json.hpp>

namespace eym::cli {

using nlohmann::json;
using forms::GForm;

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot payload is defined little-endian");

struct FieldRef {
  const char* name;
  const GForm* form;
};

std::vector<FieldRef> field_table(const fluid::CoupledState& st) {
  return {{"rho", &st.rho}, {"s", &st.s}, {"v", &st.v},
          {"Q", &st.Q},     {"A", &st.A}, {"E", &st.E}};
}

}  // namespace

void write_snapshot(const std::string& path, const fluid::CoupledState& st) {
  json header;
  header["schema"] = 1;
  header["time"] = st.t;
  const auto& g = st.rho.grid();
  header["grid"]["d"] = g.dim();
  std::vector<int> n;
  std::vector<double> l;
  for (int a = 0; a < g.dim(); ++a) {
    n.push_back(g.n(a));
    l.push_back(g.length(a));
  }
  header["grid"]["n"] = n;
  header["grid"]["l"] = l;
  header["algebra"] = st.Q.algebra().name();
  header["byte_order"] = "little";
  header["element"] = "f64";
  json fields = json::array();
  for (const auto& f : field_table(st))
    fields.push_back({{"name", f.name},
                      {"degree", f.form->degree()},
                      {"lie_dim", f.form->nlie()}});
  header["fields"] = fields;

  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open snapshot for writing: " + path);
  os << header.dump() << "\n";
  for (const auto& f : field_table(st)) {
    const auto& raw = f.form->raw();
    os.write(reinterpret_cast<const char*>(raw.data()),
             static_cast<std::streamsize>(raw.size() * sizeof(double)));
  }
  if (!os) throw IoError("short write on snapshot: " + path);
}

fluid::CoupledState read_snapshot(const std::string& path, bool dealias) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open snapshot: " + path);
  std::string line;
  if (!std::getline(is, line)) throw IoError("snapshot missing header: " + path);
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw IoError(std::string("snapshot header is not JSON: ") + e.what());
  }
  if (header.value("schema", 0) != 1) throw IoError("unsupported snapshot schema");
  if (header.value("byte_order", "") != "little" ||
      header.value("element", "") != "f64")
    throw IoError("unsupported snapshot payload encoding");

  int d = header["grid"]["d"].get<int>();
  auto nvec = header["grid"]["n"].get<std::vector<int>>();
  auto lvec = header["grid"]["l"].get<std::vector<double>>();
  std::array<int, 3> n{8, 8, 8};
  std::array<double, 3> l{1, 1, 1};
  for (int a = 0; a < d; ++a) {
    n[a] = nvec.at(a);
    l[a] = lvec.at(a);
  }
  auto grid = forms::Grid::make(d, n, l, dealias);
  auto alg = lie::LieAlgebra::make(header["algebra"].get<std::string>());
  auto u1 = lie::LieAlgebra::make("u1");

  fluid::CoupledState st{GForm(grid, 0, u1), GForm(grid, 0, u1),
                         GForm(grid, 1, u1), GForm(grid, 0, alg),
                         GForm(grid, 1, alg), GForm(grid, 1, alg),
                         header["time"].get<double>()};

  auto fields = field_table(st);
  const json& jfields = header["fields"];
  if (jfields.size() != fields.size()) throw IoError("unexpected snapshot field list");
  for (size_t i = 0; i < fields.size(); ++i) {
    const json& jf = jfields[i];
    GForm* f = const_cast<GForm*>(fields[i].form);
    if (jf["name"] != fields[i].name || jf["degree"] != f->degree() ||
        jf["lie_dim"] != f->nlie())
      throw IoError("snapshot field mismatch at " + std::string(fields[i].name));
    auto& raw = f->raw();
    is.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(double)));
    if (!is) throw IoError("snapshot payload truncated at " + std::string(fields[i].name));
  }
  return st;
}

}  // namespace eym::cli
