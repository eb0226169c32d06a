#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "valkey/report.hpp"

namespace valkey {

struct SuiteOptions {
    std::uint64_t seed = 1;
    unsigned samples = 200;
    unsigned window = 8;
    int degree_bound = 2;
    std::size_t budget = 20000;
    std::optional<std::string> grid; ///< overrides each fixture's default grid
};

/// A valuation together with the keys certified for it in a run.
struct KeyFixture {
    std::string descriptor;
    XValuation V;
    SearchConfig cfg;
    std::vector<std::pair<Poly, KeyStatus>> keys; ///< certified only
};

/// The standard fixtures (Gauss, augmented and root valuations over qp:3, qp:7
/// and fpt:3) and their certified keys: chain keys, sampled linear keys, Ψ
/// samples, the Hensel family and the root polynomial.
std::vector<KeyFixture> key_fixtures(const SuiteOptions &opts);

struct SuiteResult {
    std::string name;
    bool passed = false;
    /// The suite demonstrates a failure by design; it succeeds when that failure is found.
    bool expected_failure = false;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    json details = json::object();

    bool ok() const { return expected_failure ? !passed && details.contains("witness") : passed; }
};

const std::vector<std::string> &suite_names();

/// Throws InputError for unknown names. "all" runs every suite and aggregates.
SuiteResult run_suite(const std::string &name, const SuiteOptions &opts);
SuiteResult run_suite(const std::string &name, const SuiteOptions &opts, const std::vector<KeyFixture> &fixtures);

json to_json(const SuiteResult &r);

} // namespace valkey
