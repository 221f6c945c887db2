#pragma once

#include <stdexcept>
#include <string>

namespace lneg {

enum class ErrorKind {
    InvalidArgument,
    RoundingAmbiguous,
    NotFundamental,
    VariantInapplicable,
    KTooSmall,
    GcdViolation,
    RankDeficient,
    Inconsistent,
    DeadLevel,
    InadmissiblePair,
    NoUsableRatio,
    CacheCorrupt,
    Mismatch,
    ParseError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// position is a 0-based offset into the parsed text
class ParseError : public Error {
public:
    ParseError(std::size_t pos, const std::string& what)
        : Error(ErrorKind::ParseError, what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

}  // namespace lneg
