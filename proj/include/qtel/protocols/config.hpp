// Copyright 2026 The qtel Authors
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

#include <string>

#include "qtel/core.hpp"

namespace qtel {

enum class Variant { CnotSequence, ParityFeedForward };

/// How ancilla-loss events enter the Fisher accounting. Flagged keeps the
/// loss branch distinguishable (the supplier reports a missing pair); Blind
/// merges coinciding records, as a detector-only observer would.
enum class LossAccounting { Flagged, Blind };

struct ProtocolConfig {
    double delta = 0.0;
    double eta = 1.0;
    Variant variant = Variant::CnotSequence;
    /// Memory and direct protocols: measure lab L in Rotated(delta) and lab R
    /// in X instead of the default L -> X, R -> Rotated(delta).
    bool swap_lab_bases = false;

    void validate() const {
        if (!std::isfinite(delta)) throw InvalidArgument("ProtocolConfig: delta must be finite");
        if (!(eta >= 0.0 && eta <= 1.0))
            throw InvalidArgument("ProtocolConfig: eta must lie in [0, 1], got " + std::to_string(eta));
    }

    friend bool operator==(const ProtocolConfig &, const ProtocolConfig &) = default;
};

inline const char *to_string(Variant v) {
    return v == Variant::CnotSequence ? "cnot_sequence" : "parity_feed_forward";
}

} // namespace qtel
