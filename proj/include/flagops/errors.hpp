#ifndef FLAGOPS_ERRORS_HPP
#define FLAGOPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flagops {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidExponent : Error { using Error::Error; };
struct UnmappedGenerator : Error { using Error::Error; };
struct ContextMismatch : Error { using Error::Error; };
struct NotTopologicallyNilpotent : Error { using Error::Error; };
struct NotReversible : Error { using Error::Error; };
struct NotAGroupLaw : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct NotInvariant : Error { using Error::Error; };
struct AmbiguousDegree : Error { using Error::Error; };
struct NotAdditiveType : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
/// Tracked precision ran out mid-pipeline; callers may retry with more headroom.
struct PrecisionExhausted : Error { using Error::Error; };

struct NotDivisible : Error {
    explicit NotDivisible(const std::string& what, std::string where = {})
        : Error(what), context(std::move(where)) {}
    std::string context;
};

struct RegularityFailure : Error {
    explicit RegularityFailure(const std::string& what, std::string root_name)
        : Error(what), root(std::move(root_name)) {}
    std::string root;
};

} // namespace flagops

#endif
