#include "parallel.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace hubo {

int physical_core_count() {
  std::ifstream cpuinfo("/proc/cpuinfo");
  if (cpuinfo) {
    std::set<std::pair<int, int>> cores;
    int physical_id = -1;
    int core_id = -1;
    std::string line;
    while (std::getline(cpuinfo, line)) {
      const auto colon = line.find(':');
      if (colon == std::string::npos) {
        if (physical_id >= 0 && core_id >= 0) {
          cores.emplace(physical_id, core_id);
        }
        physical_id = core_id = -1;
        continue;
      }
      const std::string key = line.substr(0, line.find('\t'));
      if (key.rfind("physical id", 0) == 0) {
        physical_id = std::stoi(line.substr(colon + 1));
      } else if (key.rfind("core id", 0) == 0) {
        core_id = std::stoi(line.substr(colon + 1));
      }
    }
    if (physical_id >= 0 && core_id >= 0) cores.emplace(physical_id, core_id);
    if (!cores.empty()) return static_cast<int>(cores.size());
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace hubo
