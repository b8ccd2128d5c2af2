#pragma once

#include <stdexcept>
#include <string>

namespace proxima {

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct CorruptIndexError : std::runtime_error {
    explicit CorruptIndexError(const std::string& what) : std::runtime_error(what) {}
};

struct StoreError : std::runtime_error {
    explicit StoreError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace proxima
