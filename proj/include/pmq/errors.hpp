#pragma once

#include <stdexcept>
#include <string>

namespace pmq {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two stored points share an x- or y-coordinate.
class GeneralPositionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A depth, size or grid cap was exceeded.
class CapError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Operation needs a non-empty tree.
class EmptyTreeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// 2-d tree cost flavour requested on a tree whose root splits the other way.
class AxisMismatchError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace pmq
