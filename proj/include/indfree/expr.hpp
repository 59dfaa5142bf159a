#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "indfree/cyclotomic.hpp"

namespace indfree {

/// Parses a scalar in the text syntax (`p/q`, `z`, `+ - * / ^`, parentheses) with z = zeta_n.
/// The result has order n. Throws FormatError.
Cyclotomic parse_scalar(std::string_view text, int n);

/// Parses a homogeneous linear form in `dim` variables. Variables are `a`..`h`
/// (first eight coordinates) or `x1`..`x<dim>`. Throws FormatError.
std::vector<Cyclotomic> parse_form(std::string_view text, int n, int dim);

/// Renders a covector as a linear form using the same variable names parse_form reads.
std::string format_form(const std::vector<Cyclotomic>& coeffs);

/// Variable name for coordinate i (0-based) in a space of dimension dim.
std::string variable_name(int i, int dim);

}  // namespace indfree
