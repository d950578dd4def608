#ifndef KWSEL_ERROR_HPP_
#define KWSEL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace kwsel {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: missing/malformed files, invalid parameters, violated
// preconditions. The CLI maps these to exit code 2; everything else is 1.
struct InputError : Error {
    using Error::Error;
};

} // namespace kwsel

#endif // KWSEL_ERROR_HPP_
