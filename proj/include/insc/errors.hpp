#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace insc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class FieldMismatch : public Error {
public:
    using Error::Error;
};

class NotSkewSymmetric : public Error {
public:
    NotSkewSymmetric() : Error("matrix is not skew-symmetric") {}
};

class ZeroNormal : public Error {
public:
    explicit ZeroNormal(std::size_t i) : Error("normal " + std::to_string(i + 1) + " is zero"), index(i) {}
    std::size_t index;
};

class ParallelPair : public Error {
public:
    ParallelPair(std::size_t i, std::size_t j)
        : Error("normals " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are parallel"),
          first(i), second(j) {}
    std::size_t first;
    std::size_t second;
};

class NotEssential : public Error {
public:
    NotEssential(std::size_t rank, std::size_t dim)
        : Error("normals span a " + std::to_string(rank) + "-dimensional subspace of a " +
                std::to_string(dim) + "-dimensional space; essentialize first") {}
};

class RegionCapExceeded : public Error {
public:
    explicit RegionCapExceeded(std::size_t cap)
        : Error("region count exceeds the cap of " + std::to_string(cap)), cap(cap) {}
    std::size_t cap;
};

class DegenerateForm : public Error {
public:
    using Error::Error;
};

class InvalidProfile : public Error {
public:
    using Error::Error;
};

class InvalidAngles : public Error {
public:
    using Error::Error;
};

class VirtualNotRenderable : public Error {
public:
    VirtualNotRenderable() : Error("mesh export needs a strictly positive lambda") {}
};

class UnknownName : public Error {
public:
    explicit UnknownName(const std::string& name) : Error("unknown catalog name '" + name + "'") {}
};

class NotRank2 : public Error {
public:
    NotRank2() : Error("operation needs a rank-2 arrangement") {}
};

}  // namespace insc
