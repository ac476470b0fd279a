// Copyright 2026 The donorqca Authors
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


#ifndef DONORQCA_DEVICE_IO_HPP
#define DONORQCA_DEVICE_IO_HPP

#include <filesystem>

#include <json.hpp>

#include "donorqca/device_params.hpp"

namespace donorqca {

// Device files are JSON objects whose physical values are strings with
// units ("12 meV", "1e17 cm^-3"). Every key except "pattern" is optional and
// defaults to the ZnO device. Nearest-neighbour couplings may be given either
// as relay couplings {"A": "...", ...} or as pair couplings {"AB", "BC", "CA",
// optional "CD"} at the file's linear-laser operating point. Unknown keys are
// rejected so that typos surface. The "noise", "name" and "comment" keys are
// left to other readers.
DeviceSpec device_from_json(const nlohmann::json& j);
nlohmann::json device_to_json(const DeviceSpec& spec);

DeviceSpec load_device(const std::filesystem::path& path);
void save_device(const DeviceSpec& spec, const std::filesystem::path& path);

// Reads a whole file; throws SpecError when it cannot be opened and
// ParseError when it is not JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace donorqca

#endif  // DONORQCA_DEVICE_IO_HPP
