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

#pragma once

#include <string_view>
#include <vector>

#include "crickpred/dataset.hpp"
#include "crickpred/error.hpp"

namespace crickpred::learn {

class EmptyDataset : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SchemaMismatch : public DataError {
 public:
  using DataError::DataError;
};

/// Throws EmptyDataset for no rows and PreconditionError if any value is
/// missing or any label is outside 1..m.
void require_trainable(const Dataset& d);

/// Throws SchemaMismatch unless the row has one value per schema feature.
void require_row(const Schema& s, const std::vector<double>& values);

/// Index (0-based) of the largest entry; the first one on ties.
std::size_t argmax(const std::vector<double>& v);

}  // namespace crickpred::learn
