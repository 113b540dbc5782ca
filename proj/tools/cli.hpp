// SPDX-License-Identifier: Apache-2.0
//
// physec - channel based message authentication toolkit
// Copyright (C) 2026 The physec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace physec::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1; // run started but could not complete (I/O, bad trace, ...)
inline constexpr int kUsage = 2;   // rejected command line or configuration

inline constexpr const char *kResultsHeader = "detector,M,snr_db,target_fa,realized_fa,p_d,p_md,blocks,seed";
inline constexpr const char *kRocHeader = "detector,M,p_fa,p_d";

/// Parses `args` (without the program name) and runs the selected subcommand.
/// Help and usage text go to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

int main(int argc, char **argv);

} // namespace physec::cli
