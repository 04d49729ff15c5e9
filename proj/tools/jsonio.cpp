#include "jsonio.hpp"

#include <fstream>
#include <stdexcept>

namespace refrabill::tools {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

} // namespace refrabill::tools
