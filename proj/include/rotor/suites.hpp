#pragma once

#include "rotor/theorems.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rotor {

enum class Suite { PropA, PropB, Lemma1, Theorem1, Theorem2, Corollary, AuxEquiv, CwInternal };

const std::vector<Suite>& all_suites();
std::string_view suite_name(Suite s);
std::optional<Suite> parse_suite(std::string_view name);

struct SuiteOptions {
    int trials = 500;
    std::uint64_t seed = 1;
    int max_width = 14;
    int max_height = 14;
    unsigned threads = 1;
};

struct SuiteResult {
    Suite suite = Suite::PropA;
    int trials = 0;
    std::vector<std::uint64_t> seeds; // per trial, derive_seed(options.seed, i)
    std::vector<TheoremReport> failed;
    std::map<std::int64_t, std::int64_t> turn_multiplicity;
    std::int64_t steps = 0;

    int failures() const { return static_cast<int>(failed.size()); }
};

/// One randomized trial; the instance depends only on (suite, trial_seed, grid bounds).
TheoremReport run_trial(Suite suite, std::uint64_t trial_seed, int max_width, int max_height);

SuiteResult run_suite(Suite suite, const SuiteOptions& options);

} // namespace rotor
