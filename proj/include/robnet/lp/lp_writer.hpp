// Copyright 2026 The robnet Authors
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

#include <iosfwd>
#include <string>

#include "robnet/lp/linear_program.hpp"

namespace robnet::lp {

// Writes `lp` in the CPLEX LP text format (grammar in docs/lp_format.md).
// Variable and constraint names must already be valid LP-format
// identifiers; ValidationError otherwise.
void write_lp_format(const LinearProgram& lp, std::ostream& out);
std::string to_lp_format(const LinearProgram& lp);

bool is_lp_identifier(std::string_view name);

}  // namespace robnet::lp
