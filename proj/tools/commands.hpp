#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cohomolab/bar.hpp"

namespace coho::cli {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

enum Exit : int { pass = 0, expectation_failed = 1, input_error = 2, resource_limit = 3 };

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Globals {
    Limits limits = Limits::from_env();
    std::string json_out;
};

struct Result {
    int code = Exit::pass;
    json report;
};

// argv without the program name, e.g. {"chern", "pc", "--group", "..."}.
Result run(const std::vector<std::string>& args, Globals globals = {});

// Scenario file: {"name", "budget": {"seconds", "memory_mb"}, "steps": [{"name", "args", "expect"}]}
Result run_scenario(const std::string& path, const Globals& globals);

// Helpers shared with tests.
json load_json_arg(const std::string& text_or_path);
GroupPtr group_from_json(const json& j);

} // namespace coho::cli
