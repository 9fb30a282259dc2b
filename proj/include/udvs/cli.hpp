// Copyright 2026 The udvs-toolkit Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace udvs::cli {

// Exit codes: 0 success/accept, 1 verification reject, 2 usage/format error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitUsage = 2;

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace udvs::cli

#include "udvs/cli_impl.hpp"
