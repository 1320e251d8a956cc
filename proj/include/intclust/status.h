// Copyright 2026 The intclust Authors.
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

#ifndef INTCLUST_STATUS_H_
#define INTCLUST_STATUS_H_

#include <stdexcept>
#include <string>

namespace intclust {

// Failure categories shared by every module. The C API maps these one to one
// onto intclust_status values.
enum class ErrorCode {
  kInvalidArgument = 1,
  kOutOfRange,
  kOutOfDomain,
  kRefused,       // resource guard or term budget exceeded
  kInconsistent,  // stale or incomplete tallies
  kUnsupported,
  kNotFound,
  kDegenerate,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace intclust

#endif  // INTCLUST_STATUS_H_
