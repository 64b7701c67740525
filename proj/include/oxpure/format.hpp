// Copyright 2026 The OxPure Authors
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

// Deterministic number formatting for emitted files.  All floating-point
// output goes through g17, which round-trips doubles exactly and never
// depends on locale or stream state.

#ifndef OXPURE_FORMAT_HPP_
#define OXPURE_FORMAT_HPP_

#include <cstdio>
#include <string>

namespace oxpure {

inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace oxpure

#endif  // OXPURE_FORMAT_HPP_
