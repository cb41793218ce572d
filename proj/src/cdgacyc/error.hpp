#pragma once
#include <stdexcept>
#include <string>

namespace cdgacyc {

enum class ErrorKind { Parse, Domain, Precondition, Unsupported, Usage, Io, Internal, InvalidArgument };

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace cdgacyc
