// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "apirec/pipeline/ingest.hpp"

namespace apirec::testing {

std::filesystem::path data_dir();
std::filesystem::path sample_path(const std::string& file);

const ApiCatalog& jdk_catalog();
const TokenVocabulary& english_vocab();

/// Parses, resolves and builds a single method given as source text.
pipeline::LoadedMethod load_text(const std::string& source);
pipeline::LoadedMethod load_sample(const std::string& file, const pipeline::MethodSelector& sel = {});

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

}  // namespace apirec::testing
