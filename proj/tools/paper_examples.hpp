#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace gpt::cli {

/// One reproduced landmark: a number or a verdict with where it comes from.
struct Example {
  std::string id;
  std::string source;
  std::string quantity;
  nlohmann::json expected;
  nlohmann::json actual;
  double tolerance = 0.0;
  bool match = false;
};

std::vector<Example> run_paper_examples();

nlohmann::json to_json(const Example& e);

}  // namespace gpt::cli
