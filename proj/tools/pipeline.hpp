#pragma once

#include <map>
#include <string>
#include <vector>

#include "gerbekit/error.hpp"
#include "io.hpp"

namespace gerbekit::cli {

using io::json;

struct Options {
  std::uint32_t prime = 2;
  std::size_t degree = 2;
  std::size_t max_dim = 3;
  std::size_t budget = kDefaultNat2Budget;
  /// Index into characters(G, prime); 1 is the first nontrivial one.
  std::size_t character = 1;
};

struct Result {
  json report;
  std::map<std::string, json> artifacts;
  std::map<std::string, std::string> texts;
};

const std::vector<std::string>& pipeline_names();

/// Runs one named pipeline on parsed input documents. Errors propagate as
/// gerbekit::Error.
Result run_pipeline(const std::string& name, const std::vector<json>& inputs, const Options& opt);

/// Full invariant scan for whatever the document holds.
json validate_document(const json& doc);

/// A file path, or corpus:<extension>, cyclic:<n>, symmetric:<k>.
json load_input(const std::string& arg);

/// 0 ok, 1 invariant or construction failure, 2 parse or I/O, 3 budget or cap.
int exit_code(ErrorKind kind);

}  // namespace gerbekit::cli
