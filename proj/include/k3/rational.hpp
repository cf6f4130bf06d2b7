#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace k3 {

// Parses "p", "p/q", "-p/q" (surrounding blanks allowed). Throws ParseError.
mpq_class parse_rational(const std::string& s);

// Comma-separated list of rationals.
std::vector<mpq_class> parse_rational_list(const std::string& s);

// "p" or "p/q".
std::string rat_str(const mpq_class& q);

// a/b in lowest terms.
mpq_class ratio(long a, long b);

}  // namespace k3
