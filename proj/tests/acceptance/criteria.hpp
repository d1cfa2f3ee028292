#pragma once

#include <functional>
#include <string>
#include <vector>

namespace gricci::acceptance {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria();

}  // namespace gricci::acceptance
