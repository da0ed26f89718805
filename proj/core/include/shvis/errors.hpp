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

#ifndef SHVIS_ERRORS_HPP_
#define SHVIS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace shvis {

// Every error thrown by the library derives from Error. The subclasses map
// one-to-one onto the CLI exit codes (see ExitCodeFor).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument: out-of-range index, non-finite angle, bad count,
// mismatched map dimensions.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents. Carries the byte offset where parsing stopped
// when it is known, or npos.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset = npos);

  std::size_t offset() const { return offset_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t offset_;
};

// Inputs are well formed but describe a degenerate problem (empty mask,
// all-zero render, zero normal inside the mask).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Numerical failure: rank-deficient least squares, non-finite intermediate.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// 0 success, 1 I/O, 2 validation, 3 numerical failure.
int ExitCodeFor(const Error& error);

}  // namespace shvis

#endif  // SHVIS_ERRORS_HPP_
