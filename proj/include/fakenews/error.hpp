#pragma once

#include <stdexcept>
#include <string>

namespace fakenews {

enum class ErrorKind {
    // usage errors (CLI exit 1)
    UsageError,
    // data errors (CLI exit 2)
    UnknownModelKind,
    FileNotFound,
    MalformedCsv,
    MissingColumn,
    UnknownLabel,
    EmptyCorpus,
    UnlabeledDocument,
    EmptyVocabulary,
    EmptyInput,
    EmptyMatrix,
    LengthMismatch,
    ConfigError,
    UnsupportedVersion,
    ChecksumMismatch,
    // runtime failures (CLI exit 3)
    DimensionMismatch,
    SingleClassTraining,
    WrongModelKind,
    EmptyNode,
    StaleCache,
    DivergedTraining,
    IoError,
    PartialFailure,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    // Exit-code class per the CLI contract: 1 usage, 2 data, 3 runtime.
    int exit_code() const {
        switch (kind_) {
            case ErrorKind::UsageError:
                return 1;
            case ErrorKind::UnknownModelKind:
            case ErrorKind::FileNotFound:
            case ErrorKind::MalformedCsv:
            case ErrorKind::MissingColumn:
            case ErrorKind::UnknownLabel:
            case ErrorKind::EmptyCorpus:
            case ErrorKind::UnlabeledDocument:
            case ErrorKind::EmptyVocabulary:
            case ErrorKind::EmptyInput:
            case ErrorKind::EmptyMatrix:
            case ErrorKind::LengthMismatch:
            case ErrorKind::ConfigError:
            case ErrorKind::UnsupportedVersion:
            case ErrorKind::ChecksumMismatch:
                return 2;
            default:
                return 3;
        }
    }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace fakenews
