#pragma once

#include <map>
#include <string>
#include <vector>

#include "hhlab/families.hpp"
#include "hhlab/quad_algebra.hpp"

namespace hhlab {

// "a0.b0" or "e[v]".
Path parse_path(const Quiver& q, const std::string& text);

// Terms "[-][coeff*]path" joined by + and -; coefficients are scalar
// expressions, parenthesized when they contain operators.
LinCombo parse_lincombo(const Quiver& q, const FieldSpec& f, const std::string& text);

// Quiver block: "vertex: v" lines and "name: src -> tgt" lines.
std::string write_quiver(const Quiver& q);
Quiver parse_quiver(const std::string& text);

// Presentation file: "field: F", the quiver block, "rel: ..." lines, an
// optional "order: x < y < ..." line and optional "degree: x=w" lines.
// Lines starting with '#' are comments.
std::string write_presentation(const QuadraticPresentation& p);
QuadraticPresentation parse_presentation(const std::string& text);

// Family config: "family:", "m:", "n:", "field:", "q:" lines.
std::map<std::string, std::string> parse_key_values(const std::string& text);
FamilyParams parse_family_config(const std::string& text);
std::vector<std::string> split_list(const std::string& text, char sep = ',');

std::string read_file(const std::string& path);

}  // namespace hhlab
