// Copyright 2026 The abpir authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace abpir {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Division by zero or an otherwise undefined arithmetic operation.
class ArithmeticError : public Error {
 public:
  explicit ArithmeticError(const std::string& what) : Error(what) {}
};

/// Invalid problem parameters or malformed input.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

/// The plan builder ran out of side information or failed its self-check.
/// Always indicates a builder bug or an unbuildable parameter set, never a
/// silently degraded plan.
class BuildError : public Error {
 public:
  explicit BuildError(const std::string& what) : Error(what) {}
};

}  // namespace abpir
