#pragma once

#include <stdexcept>
#include <string>

namespace chowkit {

// Every failure mode the engine can report. Callers that care about the
// category switch on the code; the message carries the witness text.
enum class errc {
    NotBounded,
    NotGraded,
    NotComparable,
    RankZeroInterval,
    SizeLimitExceeded,
    NotPalindromic,
    DegreeTooHigh,
    ZeroPolynomial,
    NotRealRooted,
    DegreeGap,
    NotACover,
    MissingCover,
    TopElement,
    NotEL,
    NotUMEL,
    NotALattice,
    InvalidChain,
    NotRankUniform,
    NotSupersolvable,
    NotLowerRankUniform,
    SchemaError,
    UnknownFamily,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

} // namespace chowkit
