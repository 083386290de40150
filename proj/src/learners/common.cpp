/*
 * Copyright 2026 The crickpred Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "crickpred/learners/common.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace crickpred::learn {

void require_trainable(const Dataset& d) {
  if (d.rows.empty()) throw EmptyDataset("cannot train on an empty dataset");
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    const auto& r = d.rows[i];
    if (r.values.size() != d.schema.size()) {
      throw PreconditionError(fmt::format("row {} has {} values, schema has {}", i,
                                          r.values.size(), d.schema.size()));
    }
    if (std::any_of(r.values.begin(), r.values.end(), is_missing)) {
      throw PreconditionError(fmt::format("row {} has a missing value; impute first", i));
    }
    if (r.label < 1 || r.label > d.schema.num_classes) {
      throw PreconditionError(fmt::format("row {} has label {} outside 1..{}", i, r.label,
                                          d.schema.num_classes));
    }
  }
}

void require_row(const Schema& s, const std::vector<double>& values) {
  if (values.size() != s.size()) {
    throw SchemaMismatch(
        fmt::format("row has {} values but the model expects {}", values.size(), s.size()));
  }
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace crickpred::learn
