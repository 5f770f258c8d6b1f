#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "treeitp/terms.hpp"

namespace treeitp {

std::string to_string(const Rational& q);
std::string to_string(Sort s);
std::string to_string(Term t);
std::string to_string(Literal l);
std::string to_string(Formula f);
std::string to_string(const std::vector<Literal>& clause);

}  // namespace treeitp
