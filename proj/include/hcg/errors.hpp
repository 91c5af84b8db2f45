#pragma once

#include <stdexcept>
#include <string>

namespace hcg {

// Invalid parameters, mismatched dimensions, malformed config files.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A metric or distribution that is not defined for the given input
// (too few agents, all-zero posterior normaliser, ...).
class UndefinedError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hcg
