// Copyright 2026 The QMetric Authors.
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

#ifndef QMETRIC_PORTER_HPP_
#define QMETRIC_PORTER_HPP_

#include <string>
#include <string_view>

namespace qmetric {

// Porter's English suffix stripper (Porter 1980), matching the author's
// reference implementation including its two departures from the published
// algorithm (bli->ble, logi->log). Input is lowercased first; words shorter
// than three letters or containing non a-z characters are returned as-is
// (lowercased).
std::string porter_stem(std::string_view word);

}  // namespace qmetric

#endif  // QMETRIC_PORTER_HPP_
