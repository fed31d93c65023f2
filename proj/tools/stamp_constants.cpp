// Recomputes the checksum of a constants file in place after a deliberate edit.
#include <fstream>
#include <iostream>

#include "loopforge/paper_suite.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: stamp_constants FILE\n";
    return 2;
  }
  std::ifstream in(argv[1]);
  nlohmann::json j;
  in >> j;
  j["checksum"] = loopforge::Constants::checksum_of(j["values"]);
  std::ofstream(argv[1]) << j.dump(2) << "\n";
  std::cout << j["checksum"].get<std::string>() << "\n";
  return 0;
}
