// Copyright 2026 The cvclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace cvclone {

/// Raised when a numerical routine detects that its result would be
/// corrupted by discretization (grid truncation, undersampling).
class precision_error : public std::runtime_error {
   public:
    explicit precision_error(const std::string &what) : std::runtime_error(what) {
    }
};

}  // namespace cvclone
