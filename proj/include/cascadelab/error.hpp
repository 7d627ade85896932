#pragma once

#include <stdexcept>
#include <string>

namespace cascadelab {

/// Malformed case / artifact file; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error("parse error at line " + std::to_string(line_no) + ": " + msg),
          line_no_(line_no) {}
    int line_no() const noexcept { return line_no_; }

private:
    int line_no_;
};

/// A domain invariant does not hold; the message names the offending element.
class InvariantError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An island's injections do not sum to zero within tolerance.
class UnbalancedIslandError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Removing the requested line disconnects the network.
class BridgeRemovalError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// LODF is undefined when the outaged line carries no flow.
class ZeroFlowError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A correlation target has no variance in the sample.
class ZeroVarianceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Conditioning subsample too small for a meaningful estimate.
class InsufficientSampleError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The grid (or a required subgraph) is disconnected where connectivity is assumed.
class DisconnectedError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A cluster never co-fails in the data, so the conditional mean is undefined.
class ClusterNeverFailsError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A required input artifact is absent (CLI exit code 2).
class MissingInputError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cascadelab
