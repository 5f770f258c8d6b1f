#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace treeitp::testing {

inline std::string read_data(const std::string& name) {
    std::ifstream in(std::string(TREEITP_TEST_DATA) + "/" + name);
    if (!in)
        throw std::runtime_error("missing test data " + name);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace treeitp::testing
