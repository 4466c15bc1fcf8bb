/*
   Copyright 2026 The Airdrop Gas Toolkit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include "airdrop/calibration.hpp"

namespace test_helpers {

inline const airdrop::TargetTable& fig7_targets() {
    static const airdrop::TargetTable targets = [] {
        std::ifstream in(std::string(FIXTURES_DIR) + "/fig7.csv");
        if (!in) throw std::runtime_error("missing fixture fig7.csv");
        return airdrop::load_targets_csv(in);
    }();
    return targets;
}

inline const airdrop::CalibrationTable& calibration() {
    static const airdrop::CalibrationTable table = airdrop::calibrate_targets(fig7_targets());
    return table;
}

}  // namespace test_helpers
