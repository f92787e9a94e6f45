// Copyright 2026 The mapinfer Authors
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

#ifndef MAPINFER_ERROR_H_
#define MAPINFER_ERROR_H_

#include <stdexcept>
#include <string>

namespace mapinfer {

// Base class for all errors raised by the library. The CLI maps kind() onto
// process exit codes.
class Error : public std::runtime_error {
 public:
  enum class Kind { kIo, kEmptyInput, kInvalidArgument, kFormat, kRuntime };

  Error(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline Error IoError(const std::string& what) {
  return Error(Error::Kind::kIo, what);
}
inline Error EmptyInputError(const std::string& what) {
  return Error(Error::Kind::kEmptyInput, what);
}
inline Error InvalidArgumentError(const std::string& what) {
  return Error(Error::Kind::kInvalidArgument, what);
}
inline Error FormatError(const std::string& what) {
  return Error(Error::Kind::kFormat, what);
}
inline Error RuntimeError(const std::string& what) {
  return Error(Error::Kind::kRuntime, what);
}

}  // namespace mapinfer

#endif  // MAPINFER_ERROR_H_
