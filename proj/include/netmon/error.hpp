#pragma once

#include <stdexcept>
#include <string>

namespace netmon {

// Exit-code classes used by the CLI: 1 usage, 2 data, 3 numerical.
enum class ErrorClass { Usage = 1, Data = 2, Numerical = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& module, const std::string& what)
        : std::runtime_error(module + ": " + what), class_(cls), module_(module) {}

    ErrorClass error_class() const noexcept { return class_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorClass class_;
    std::string module_;
};

struct UsageError : Error {
    UsageError(const std::string& module, const std::string& what)
        : Error(ErrorClass::Usage, module, what) {}
};

struct DataError : Error {
    DataError(const std::string& module, const std::string& what)
        : Error(ErrorClass::Data, module, what) {}
};

struct NumericalError : Error {
    NumericalError(const std::string& module, const std::string& what)
        : Error(ErrorClass::Numerical, module, what) {}
};

}  // namespace netmon
