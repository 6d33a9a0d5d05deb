#pragma once

#include <stdexcept>
#include <string>

namespace codo {

// All module-level failures carry a machine-readable kind tag
// ("unresolved-prefix", "syntax", "cycle", ...) plus a human message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

} // namespace codo
