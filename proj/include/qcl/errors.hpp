// Copyright 2026 The QCL Authors
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

#include <stdexcept>
#include <string>

namespace qcl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QCL_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

QCL_DEFINE_ERROR(DimensionMismatch);
QCL_DEFINE_ERROR(NonSquare);
QCL_DEFINE_ERROR(NotHermitian);
QCL_DEFINE_ERROR(NegativeEigenvalue);
QCL_DEFINE_ERROR(NotUnitary);
QCL_DEFINE_ERROR(InvalidState);
QCL_DEFINE_ERROR(InvalidChannel);
QCL_DEFINE_ERROR(DomainError);
QCL_DEFINE_ERROR(CheckFailed);
QCL_DEFINE_ERROR(OptimizerDiverged);
QCL_DEFINE_ERROR(NumericalBreakdown);
QCL_DEFINE_ERROR(NotADistribution);
QCL_DEFINE_ERROR(ClosedFormMismatch);
QCL_DEFINE_ERROR(NoSignChange);

#undef QCL_DEFINE_ERROR

}  // namespace qcl
