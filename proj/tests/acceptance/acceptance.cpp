// Acceptance criteria 1-11. Usage: acceptance [tag-or-id ...], default "full".
#include <iostream>
#include <string>
#include <vector>

#include "tailent/error.hpp"
#include "tailent/verify.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> tags(argv + 1, argv + argc);
  if (tags.empty()) tags.push_back("full");
  bool ok = true;
  try {
    for (const auto& t : tags)
      for (const auto& r : tailent::verify_all(t, std::cout)) ok = ok && r.pass;
  } catch (const tailent::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return ok ? 0 : 1;
}
