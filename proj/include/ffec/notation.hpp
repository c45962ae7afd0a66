#pragma once

// Textual notation: prime-field elements are decimal integers, extension
// elements are g^k (g = class of t) or coefficient lists [c0,c1,...];
// polynomials are expressions in t (or u); rational functions num/den.

#include <string>
#include <string_view>

#include "ffec/ratfunc.hpp"

namespace ffec {

std::string format_elem(const FqElem& a);
std::string format_poly(const Poly& f, char var = 't');
std::string format_ratfunc(const RatFunc& r, char var = 't');

FqElem parse_elem(Fq f, std::string_view s);
Poly parse_poly(Fq f, std::string_view s);
RatFunc parse_ratfunc(Fq f, std::string_view s);

}  // namespace ffec
