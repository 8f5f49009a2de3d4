#pragma once

#include <stdexcept>
#include <string>

namespace edittag {

// Base class for everything this library throws. Subcommands map these to
// exit code 2; anything else escaping is a bug.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct MalformedTag : Error {
    explicit MalformedTag(const std::string& msg) : Error("malformed tag: " + msg) {}
};

struct UnknownGTransformation : Error {
    explicit UnknownGTransformation(const std::string& msg)
        : Error("unknown g-transformation: " + msg) {}
};

struct SizeTooSmall : Error {
    explicit SizeTooSmall(const std::string& msg) : Error("vocabulary size too small: " + msg) {}
};

// Bad line in a data file (verb dictionary, noun table, counts, model, ...).
struct MalformedEntry : Error {
    explicit MalformedEntry(const std::string& msg) : Error("malformed entry: " + msg) {}
};

struct EmptyCorpus : Error {
    explicit EmptyCorpus(const std::string& msg) : Error("empty corpus: " + msg) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& msg) : Error("length mismatch: " + msg) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg) : Error("shape mismatch: " + msg) {}
};

struct MissingReference : Error {
    explicit MissingReference(const std::string& msg) : Error("missing reference: " + msg) {}
};

struct ChecksumMismatch : Error {
    explicit ChecksumMismatch(const std::string& msg) : Error("vocab checksum mismatch: " + msg) {}
};

struct MalformedRecord : Error {
    explicit MalformedRecord(const std::string& msg) : Error("malformed record: " + msg) {}
};

struct ExhaustedStream : Error {
    explicit ExhaustedStream(const std::string& msg) : Error("prediction stream exhausted: " + msg) {}
};

// Raised by the correction loop when the tagger fails mid-run; carries the
// 1-based iteration index so batch drivers can report where.
struct TaggerFailure : Error {
    int iteration;
    TaggerFailure(int iteration_, const std::string& msg)
        : Error("tagger failure at iteration " + std::to_string(iteration_) + ": " + msg),
          iteration(iteration_) {}
};

}  // namespace edittag
