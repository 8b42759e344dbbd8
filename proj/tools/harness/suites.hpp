#pragma once

#include "harness/document.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace starforge::harness {

struct TrialFailure {
    int trial = 0;
    std::string message;
    json reproducer;  // builder script or instance document; null if none
};

// Named sub-checks that are not trial-based (fixtures, worked values).
struct FixtureCheck {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct SuiteResult {
    std::string name;
    int trials = 0;
    int passed = 0;
    std::vector<TrialFailure> failures;  // sorted by trial
    std::vector<FixtureCheck> fixtures;
    json stats = json::object();         // suite-specific counters
    bool ok() const;
};

struct SuiteOptions {
    std::uint64_t seed = 0;
    int trials = -1;  // -1: the suite default
    int threads = 0;  // 0: hardware concurrency
};

struct Suite {
    std::string name;
    std::string description;
    int default_trials = 0;
    std::function<SuiteResult(const SuiteOptions&)> run;
};

const std::vector<Suite>& suites();
const Suite* find_suite(std::string_view name);

// Per-trial seed, independent of scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::string_view salt, int trial);

// Runs fn for every trial index, possibly in parallel; failures come back
// sorted by index.
std::vector<TrialFailure> run_trials(int trials, int threads,
                                     const std::function<std::optional<TrialFailure>(int)>& fn);

// Greedy shrink of a failing tower script: drop trailing steps, lower the
// base p, then lower each step's new levels, keeping a change only while
// `still_fails` holds and the script still builds.
BuilderScript shrink_script(BuilderScript s, const std::function<bool(const Presentation&)>& still_fails);

json to_json(const SuiteResult& r);

}  // namespace starforge::harness
