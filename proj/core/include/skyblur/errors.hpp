#pragma once

#include <stdexcept>

namespace skyblur {

/// Base class for every failure the library reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedImage : public Error {
public:
    using Error::Error;
};

class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

class RoiOutOfBounds : public Error {
public:
    using Error::Error;
};

class ImageTooSmall : public Error {
public:
    using Error::Error;
};

class EmptyCalibrationSet : public Error {
public:
    using Error::Error;
};

class EmptyEvaluationSet : public Error {
public:
    using Error::Error;
};

class ConfigParseError : public Error {
public:
    using Error::Error;
};

class ConfigInvalid : public Error {
public:
    using Error::Error;
};

class ManifestParseError : public Error {
public:
    using Error::Error;
};

class DuplicatePath : public Error {
public:
    using Error::Error;
};

class DirectoryNotFound : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace skyblur
