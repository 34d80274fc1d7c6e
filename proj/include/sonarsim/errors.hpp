#pragma once

#include <stdexcept>
#include <string>

namespace sonarsim {

// Invalid configuration: bad search-space lists, bad profile, budget too
// small for at least one resource unit per architecture in round 0.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation called outside its contract (empty input set, negative budget,
// unknown subgraph key, mismatched ranking lengths).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Result/benchmark files whose embedded config hashes do not match; mixing
// them would silently compare runs against the wrong ground truth.
class ProvenanceError : public std::runtime_error {
public:
    explicit ProvenanceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (unparseable JSON, missing fields, wrong version).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sonarsim
