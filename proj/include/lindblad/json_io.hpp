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

#pragma once

#include <string>

#include <json.hpp>

#include "lindblad/generator.hpp"
#include "lindblad/subalgebra.hpp"

namespace lindblad {

using Json = nlohmann::ordered_json;

// {"rows", "cols", "re": [...], "im": [...]}, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json generator_to_json(const LindbladGenerator& g);
LindbladGenerator generator_from_json(const Json& j);

GksForm gks_from_json(const Json& j);
Json gks_to_json(const GksForm& g);

Json spec_to_json(const SubalgebraSpec& s);
SubalgebraSpec spec_from_json(const Json& j);

// Serializer with 17 significant digits for every floating-point value and
// `null` for non-finite ones. A negative indent gives compact one-line output.
std::string dump(const Json& j, int indent = 2);

}  // namespace lindblad
