#pragma once

#include "harness/document.hpp"
#include "starforge/star.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace starforge::harness {

enum class Format { Json, Text };

struct CommandOptions {
    std::optional<std::uint64_t> seed;
    int trials = -1;
    int threads = 0;
    Format format = Format::Json;
    std::optional<std::filesystem::path> out_dir;
};

// Exit codes: 0 pass, 1 mathematical failure, 2 usage or parse error.
struct Outcome {
    int exit_code = 0;
    json report;
    std::string text;
};

// Invariant section of an analyze report; failed checks are appended to `checks`.
json analyze_presentation(const Presentation& p, std::vector<CheckEntry>& checks);

Outcome cmd_analyze(const std::vector<std::string>& files, const CommandOptions& o);
Outcome cmd_build(const std::vector<std::string>& files, const CommandOptions& o);
Outcome cmd_compare(const std::vector<std::string>& files, const CommandOptions& o);
Outcome cmd_verify(const std::vector<std::string>& suite_names, const CommandOptions& o);

// The report with its timing field removed, for determinism checks.
json without_timing(json report);

}  // namespace starforge::harness
