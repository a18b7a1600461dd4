#pragma once

#include <stdexcept>
#include <string>

namespace emostrat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or schema-violating input documents.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Partition construction, merging, or coverage failures.
class PartitionError : public Error {
 public:
  using Error::Error;
};

// A diagnostic needs per-annotator labels or resolution flags that the
// corpus does not carry.
class ProvenanceUnavailable : public Error {
 public:
  explicit ProvenanceUnavailable(const std::string& what)
      : Error("annotation provenance unavailable: " + what) {}
};

}  // namespace emostrat
