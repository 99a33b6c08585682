#ifndef TOM_ERRORS_HPP
#define TOM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tom {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable files and streams.
struct IoError : Error {
    using Error::Error;
};

/// Invalid configuration: unknown format tags, out-of-range parameters,
/// malformed config files.
struct ConfigError : Error {
    using Error::Error;
};

/// Input data that cannot support the requested operation: empty corpus,
/// empty vocabulary, edgeless graph, degenerate basemap, zero overlays.
struct DataError : Error {
    using Error::Error;
};

/// Dimension mismatch between overlays, matrices and partitions.
struct ShapeError : Error {
    using Error::Error;
};

} // namespace tom

#endif
