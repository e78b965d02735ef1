// Copyright 2026 The sifc Authors
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

#ifndef SIFC_ERROR_HPP_
#define SIFC_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sifc {

enum class ErrorKind {
  // lattice
  DuplicateClass,
  UnknownClass,
  CycleError,
  NotALattice,
  // maps and connections
  PartialMap,
  NotMonotone,
  AdjointError,
  NotClosure,
  NotIso,
  ComposeError,
  LatticeMismatch,
  CoarsenError,
  NotSemiInverse,
  NotLagois,
  // flowlang
  UndeclaredVariable,
  KindMismatch,
  TypeError,
  IllTyped,
  GenerationStall,
  // dlm
  UnknownPrincipal,
  AuthorityMismatch,
  // input handling
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this type. `witness` carries the
// class/variable/principal names that exhibit the failure, `tag` a short
// sub-reason such as the failed law or the violated typing rule.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::vector<std::string> witness = {},
        std::string tag = {})
      : std::runtime_error(std::move(message)),
        kind_(kind),
        witness_(std::move(witness)),
        tag_(std::move(tag)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }
  const std::string& tag() const noexcept { return tag_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witness_;
  std::string tag_;
};

}  // namespace sifc

#endif  // SIFC_ERROR_HPP_
