#pragma once

#include <stdexcept>
#include <string>

namespace brancov {

enum class Errc {
    MissingFace,
    DuplicateSimplex,
    NonpositiveLength,
    UnknownSimplex,
    NotSimplicial,
    DegenerateFibers,
    NotSurjective,
    NotACover,
    NotACovering,
    SubdivisionLimitExceeded,
    PreconditionViolated,
    NotOneDimensional,
    MalformedInput,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::MissingFace: return "MissingFace";
        case Errc::DuplicateSimplex: return "DuplicateSimplex";
        case Errc::NonpositiveLength: return "NonpositiveLength";
        case Errc::UnknownSimplex: return "UnknownSimplex";
        case Errc::NotSimplicial: return "NotSimplicial";
        case Errc::DegenerateFibers: return "DegenerateFibers";
        case Errc::NotSurjective: return "NotSurjective";
        case Errc::NotACover: return "NotACover";
        case Errc::NotACovering: return "NotACovering";
        case Errc::SubdivisionLimitExceeded: return "SubdivisionLimitExceeded";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::NotOneDimensional: return "NotOneDimensional";
        case Errc::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace brancov
