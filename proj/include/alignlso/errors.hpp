#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace alignlso {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// expr_core
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(std::size_t pos, const std::string& msg)
        : Error("syntax error at " + std::to_string(pos) + ": " + msg), position(pos) {}
};
struct UnknownSymbol : Error {
    explicit UnknownSymbol(const std::string& sym) : Error("unknown symbol '" + sym + "'") {}
};
struct MalformedSequence : Error {
    using Error::Error;
};
struct UnknownToken : Error {
    explicit UnknownToken(const std::string& tok) : Error("token not in vocabulary: '" + tok + "'") {}
};

// data_io
struct FormatError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct DimensionError : Error {
    using Error::Error;
};
struct DegenerateColumn : Error {
    int column;
    explicit DegenerateColumn(int col)
        : Error("column x" + std::to_string(col) + " has (near-)zero variance"), column(col) {}
};
struct GenerationFailed : Error {
    using Error::Error;
};

// perturbation
struct NotApplicable : Error {
    using Error::Error;
};
struct NoValidVariant : Error {
    using Error::Error;
};

// bimodal_encoder
struct NotStandardized : Error {
    NotStandardized() : Error("dataset must be standardized before numeric encoding") {}
};
struct ZeroVector : Error {
    ZeroVector() : Error("cannot normalize or compare a zero vector") {}
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct NonFiniteLoss : Error {
    long step;
    explicit NonFiniteLoss(long s) : Error("non-finite loss at step " + std::to_string(s)), step(s) {}
};

// alignment_eval
struct CountMismatch : Error {
    using Error::Error;
};
struct EmptyCorpus : Error {
    using Error::Error;
};

}  // namespace alignlso
