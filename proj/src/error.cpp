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

#include "sifc/error.hpp"

namespace sifc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateClass: return "DuplicateClass";
    case ErrorKind::UnknownClass: return "UnknownClass";
    case ErrorKind::CycleError: return "CycleError";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::PartialMap: return "PartialMap";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::AdjointError: return "AdjointError";
    case ErrorKind::NotClosure: return "NotClosure";
    case ErrorKind::NotIso: return "NotIso";
    case ErrorKind::ComposeError: return "ComposeError";
    case ErrorKind::LatticeMismatch: return "LatticeMismatch";
    case ErrorKind::CoarsenError: return "CoarsenError";
    case ErrorKind::NotSemiInverse: return "NotSemiInverse";
    case ErrorKind::NotLagois: return "NotLagois";
    case ErrorKind::UndeclaredVariable: return "UndeclaredVariable";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::TypeError: return "TypeError";
    case ErrorKind::IllTyped: return "IllTyped";
    case ErrorKind::GenerationStall: return "GenerationStall";
    case ErrorKind::UnknownPrincipal: return "UnknownPrincipal";
    case ErrorKind::AuthorityMismatch: return "AuthorityMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace sifc
