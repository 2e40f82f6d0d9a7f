// Copyright 2026 The dfsqec Authors
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

#ifndef DFSQEC_EXCHANGE_H
#define DFSQEC_EXCHANGE_H

#include <json.hpp>

#include "dfsqec/dfs.h"
#include "dfsqec/harness.h"
#include "dfsqec/qecc.h"
#include "dfsqec/quantum_channel.h"

namespace dfsqec {

using Json = nlohmann::ordered_json;

/// {"rows", "cols", "re", "im"} with row-major entry arrays.
Json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const Json &j);

/// {"dim", "label", "kraus": [matrix...]}
Json channel_to_json(const QuantumChannel &ch);
QuantumChannel channel_from_json(const Json &j);

/// {"phys_dim", "code_dim", "isometry": matrix}
Json code_to_json(const CodeSpace &code);
CodeSpace code_from_json(const Json &j);

Json dfs_report_to_json(const DfsReport &r);
Json kl_report_to_json(const KlReport &r);
Json sweep_to_json(const SweepResult &r);

}  // namespace dfsqec

#endif
