#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ltp {

/// Base class of every domain error raised by the library. `kind()` is the
/// stable machine-readable tag used by the CLI error records.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define LTP_DEFINE_ERROR(Name)                                                \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    }

LTP_DEFINE_ERROR(SpecMismatch);
LTP_DEFINE_ERROR(InvalidArgument);
LTP_DEFINE_ERROR(IndeterminateValuation);
LTP_DEFINE_ERROR(PrecisionExhausted);
LTP_DEFINE_ERROR(TruncationOverflow);
LTP_DEFINE_ERROR(DecompositionFailure);
LTP_DEFINE_ERROR(NotFlat);
LTP_DEFINE_ERROR(Unsupported);

#undef LTP_DEFINE_ERROR

} // namespace ltp
