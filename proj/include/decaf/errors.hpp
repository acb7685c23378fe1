#ifndef DECAF_ERRORS_HPP
#define DECAF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace decaf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotConverged : Error {
    using Error::Error;
};

struct DegenerateInPlane : Error {
    using Error::Error;
};

struct EmptyNeighborhood : Error {
    using Error::Error;
};

struct UnsupportedOrder : Error {
    using Error::Error;
};

struct UnknownSpecies : Error {
    using Error::Error;
};

struct UnknownElement : Error {
    using Error::Error;
};

struct GridMismatch : Error {
    using Error::Error;
};

struct ZeroFingerprint : Error {
    using Error::Error;
};

struct SingularCovariance : Error {
    using Error::Error;
};

struct OracleFailure : Error {
    using Error::Error;
};

struct AllDisconnected : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct SchemaError : Error {
    SchemaError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path(path) {}
    std::string path;
};

}  // namespace decaf

#endif
