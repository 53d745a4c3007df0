#pragma once

#include <stdexcept>
#include <string>

namespace ftm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad user input: polynomial, interval, translations, probabilities, config
struct InputError : Error {
    using Error::Error;
};

// a requested point is not in the attractor
struct NotInAttractor : Error {
    using Error::Error;
};

// structure exploration hit a limit before saturating
struct NotProvenFiniteType : Error {
    using Error::Error;
};

// a path or cycle that does not exist in the structure
struct PathError : Error {
    using Error::Error;
};

}  // namespace ftm
