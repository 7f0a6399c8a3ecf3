#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "onewave/imaging.hpp"

namespace onewave {

/// Locale-independent shortest-round-trip-safe text with 15 significant digits.
std::string format_number(double v);
double parse_number(std::string_view text);
/// Accepts "a", "bi", "a+bi", "a-bi", "i" (whitespace ignored).
cplx parse_complex(std::string_view text);
std::string format_complex(cplx v);

/// Flat `key=value` lines; '#' starts a comment. Errors name the offending line.
std::map<std::string, std::string> read_key_values(std::istream& in);

/// Scene description: keys type, points | vertices, center, radius, bc, eta, density, normalization.
Scene parse_scene(std::istream& in);
Scene load_scene(const std::string& path);

void write_far_field(std::ostream& out, const FarFieldPattern& u);
FarFieldPattern read_far_field(std::istream& in);

void write_multistatic(std::ostream& out, const ComplexMatrix& f);
ComplexMatrix read_multistatic(std::istream& in);

void write_field_csv(std::ostream& out, const IndicatorField& f, double k);
/// P2 greyscale of the normalized field, top row (largest y) first.
void write_field_pgm(std::ostream& out, const IndicatorField& f);
void write_scheme_one_csv(std::ostream& out, const SchemeOneResult& r);
void write_mask_pgm(std::ostream& out, const SchemeOneResult& r);

}  // namespace onewave
