#pragma once

#include <stdexcept>
#include <string>

namespace phonodetect {

// Exit-code contract: 0 success, 1 validation, 2 usage, 3 internal.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FormatError : ValidationError {
    explicit FormatError(const std::string& msg) : ValidationError(msg) {}
};

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

// A phoneme sequence with no vowel nucleus; callers fall back to a
// single-syllable parse (see syllabify.hpp).
struct NoNucleusError : std::runtime_error {
    explicit NoNucleusError(const std::string& form)
        : std::runtime_error("no syllable nucleus in form: " + form), form(form) {}
    std::string form;
};

}  // namespace phonodetect
