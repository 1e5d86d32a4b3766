#pragma once

#include <stdexcept>
#include <string>

namespace mucrit {

// Precondition and domain failures surface as this exception.
// The command-line tool maps it to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw Error(msg);
}

}  // namespace mucrit
