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


/**
 * @file
 * Detection records and heralding for the six-mode protocol.
 */

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "qtel/core.hpp"

namespace qtel {

enum class Herald { PhotonArrived, Vacuum, Invalid };

inline const char *to_string(Herald h) {
    switch (h) {
    case Herald::PhotonArrived:
        return "PhotonArrived";
    case Herald::Vacuum:
        return "Vacuum";
    case Herald::Invalid:
        return "Invalid";
    }
    return "?";
}

/// Photon counts on modes 0..5 plus the herald derived from them.
struct DetectionRecord {
    std::vector<int> counts;
    Herald herald = Herald::Invalid;

    friend bool operator==(const DetectionRecord &, const DetectionRecord &) = default;
};

/**
 * Modes 0 and 5 hold the extra ancilla photons. Agreement heralds a stellar
 * photon, disagreement heralds vacuum. Records with a multiply occupied mode
 * or without exactly two photons on modes 1..4 cannot come from the ideal
 * circuit and are Invalid.
 */
inline Herald classify_six_mode(const std::vector<int> &counts) {
    if (counts.size() != 6) throw InvalidArgument("six-mode record must have 6 counts");
    int middle = 0;
    for (std::size_t m = 0; m < counts.size(); ++m) {
        if (counts[m] < 0 || counts[m] > 1) return Herald::Invalid;
        if (m >= 1 && m <= 4) middle += counts[m];
    }
    if (middle != 2) return Herald::Invalid;
    return counts[0] == counts[5] ? Herald::PhotonArrived : Herald::Vacuum;
}

inline DetectionRecord make_record(const std::vector<int> &counts) { return {counts, classify_six_mode(counts)}; }

/// "1_0 1_1 0_2 1_3 0_4 1_5" style label.
inline std::string occupation_label(const std::vector<int> &counts, int first_mode = 0) {
    std::ostringstream os;
    for (std::size_t m = 0; m < counts.size(); ++m) {
        if (m) os << ' ';
        os << counts[m] << '_' << (first_mode + static_cast<int>(m));
    }
    return os.str();
}

} // namespace qtel
