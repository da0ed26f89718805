// Copyright 2026 The shvis Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shvis/errors.hpp"

namespace shvis {

FormatError::FormatError(const std::string& what, std::size_t offset)
    : Error(offset == npos ? what
                           : what + " (at byte offset " +
                                 std::to_string(offset) + ")"),
      offset_(offset) {}

int ExitCodeFor(const Error& error) {
  if (dynamic_cast<const IoError*>(&error) != nullptr) return 1;
  if (dynamic_cast<const NumericalError*>(&error) != nullptr) return 3;
  return 2;
}

}  // namespace shvis
