#pragma once

#include <stdexcept>
#include <string>

namespace modq {

// Graph text-format violations, one kind per rejection reason.
class ParseError : public std::runtime_error {
public:
    enum class Kind {
        BadHeader,
        BadEdgeLine,
        VertexOutOfRange,
        Loop,
        DuplicateEdge,
        WrongEdgeCount,
        BadPartition,
        BadCsv,
    };
    ParseError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Enumeration caps (subset scan, set-partition scan) are hard refusals,
// never silent approximations.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A lemma hypothesis did not hold for the given input (e.g. too few
// isolated vertices for the balanced-bipartition construction).
class HypothesisFailed : public std::runtime_error {
public:
    explicit HypothesisFailed(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace modq
