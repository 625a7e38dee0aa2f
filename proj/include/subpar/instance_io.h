// Copyright 2026 The subpar Authors.
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

#ifndef SUBPAR_INSTANCE_IO_H_
#define SUBPAR_INSTANCE_IO_H_

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "subpar/error.h"
#include "subpar/instances.h"

namespace subpar {

using Json = nlohmann::json;

// Instance files:
//   {"kind":"cut","n":8,"edges":[[0,1,1.0],...]}
//   {"kind":"coverage","n":3,"universe":4,"covers":{"0":[0,1],...},
//    "weights":[...],"costs":[...]}
//   {"kind":"quadratic","n":2,"c":0.0,"h":[1,1],"H":[[0,-1],[-1,0]],
//    "lower":[0,0],"upper":[1,1]}            (lower/upper optional)
inline Instance InstanceFromJson(const Json& j, bool validate = true) {
  try {
    const InstanceKind kind = ParseKind(j.at("kind").get<std::string>());
    const int n = j.at("n").get<int>();
    switch (kind) {
      case InstanceKind::kCut: {
        std::vector<CutEdge> edges;
        for (const auto& e : j.at("edges")) {
          if (!e.is_array() || e.size() != 3) {
            throw Error(ErrorCode::kInvalidInstance, "cut edge must be [u, v, w]");
          }
          edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
        }
        return CutInstance(n, std::move(edges));
      }
      case InstanceKind::kCoverage: {
        const int universe = j.at("universe").get<int>();
        std::vector<std::vector<int>> covers(static_cast<std::size_t>(std::max(n, 0)));
        for (const auto& [key, items] : j.at("covers").items()) {
          const int u = std::stoi(key);
          if (u < 0 || u >= n) {
            throw Error(ErrorCode::kInvalidElement, "covers key " + key + " outside ground set");
          }
          covers[u] = items.get<std::vector<int>>();
        }
        return CoverageInstance(n, universe, std::move(covers),
                                j.at("weights").get<std::vector<double>>(),
                                j.at("costs").get<std::vector<double>>(), validate);
      }
      case InstanceKind::kQuadratic: {
        std::vector<double> lower, upper;
        if (j.contains("lower")) lower = j.at("lower").get<std::vector<double>>();
        if (j.contains("upper")) upper = j.at("upper").get<std::vector<double>>();
        return QuadraticInstance(n, j.value("c", 0.0), j.at("h").get<std::vector<double>>(),
                                 j.at("H").get<std::vector<std::vector<double>>>(),
                                 std::move(lower), std::move(upper), validate);
      }
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidInstance, std::string("malformed instance: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::kInvalidInstance, "malformed covers key");
  }
  throw Error(ErrorCode::kInvalidInstance, "unreachable");
}

inline Json InstanceToJson(const Instance& instance) {
  Json j;
  if (const auto* cut = std::get_if<CutInstance>(&instance)) {
    j["kind"] = "cut";
    j["n"] = cut->n();
    j["edges"] = Json::array();
    for (const auto& e : cut->edges()) j["edges"].push_back({e.u, e.v, e.w});
  } else if (const auto* cov = std::get_if<CoverageInstance>(&instance)) {
    j["kind"] = "coverage";
    j["n"] = cov->n();
    j["universe"] = cov->universe_size();
    j["covers"] = Json::object();
    for (int u = 0; u < cov->n(); ++u) j["covers"][std::to_string(u)] = cov->covers()[u];
    j["weights"] = cov->weights();
    j["costs"] = cov->costs();
  } else {
    const auto& q = std::get<QuadraticInstance>(instance);
    j["kind"] = "quadratic";
    j["n"] = q.n();
    j["c"] = q.c();
    j["h"] = q.h();
    j["H"] = q.H();
    j["lower"] = q.lower();
    j["upper"] = q.upper();
  }
  return j;
}

inline Instance LoadInstance(const std::string& path, bool validate = true) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInstance, "cannot open instance file " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidInstance, path + ": " + e.what());
  }
  return InstanceFromJson(j, validate);
}

inline void SaveInstance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << InstanceToJson(instance).dump(2) << "\n";
}

}  // namespace subpar

#endif  // SUBPAR_INSTANCE_IO_H_
