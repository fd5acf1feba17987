// Copyright 2026 The qactl Authors
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

namespace qactl {

// Base class for every error raised by the library. The CLI prints what()
// verbatim, so messages name the offending value.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QACTL_DEFINE_ERROR(Name)                    \
    class Name : public Error {                     \
    public:                                         \
        using Error::Error;                         \
    }

QACTL_DEFINE_ERROR(RangeError);
QACTL_DEFINE_ERROR(LookupError);
QACTL_DEFINE_ERROR(CapacityError);
QACTL_DEFINE_ERROR(ParameterError);
QACTL_DEFINE_ERROR(StateError);
QACTL_DEFINE_ERROR(DesignError);
QACTL_DEFINE_ERROR(ConfigError);
QACTL_DEFINE_ERROR(MarginError);
QACTL_DEFINE_ERROR(ResetError);
QACTL_DEFINE_ERROR(QuantizationError);
QACTL_DEFINE_ERROR(TopologyError);
QACTL_DEFINE_ERROR(FormatError);

#undef QACTL_DEFINE_ERROR

}  // namespace qactl
