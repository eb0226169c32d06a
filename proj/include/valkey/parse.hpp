#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "valkey/errors.hpp"
#include "valkey/ext_value.hpp"
#include "valkey/poly.hpp"

namespace valkey {

/// InputError carrying the byte offset of the failure inside the parsed text.
class ParseError : public InputError {
public:
    ParseError(std::string_view text, std::size_t pos, const std::string &what);
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// `qp:<prime>` or `fpt:<prime>`.
ValuedField parse_field(std::string_view s);

/// `-?digits(/digits)?` or `inf`.
ExtValue parse_value(std::string_view s);

/// Polynomial in x over F. Accepts the canonical printed form and, more generally,
/// `+ - * / ^` with parentheses, integer literals, `x`, and (over F_p(t)) `t`.
/// Division is only allowed by nonzero constants.
Poly parse_poly(const ValuedField &F, std::string_view s);

/// A constant of F: a rational literal over Q, a rational function in t over F_p(t).
FieldElem parse_elem(const ValuedField &F, std::string_view s);

/// Splits on `sep` at parenthesis depth zero.
std::vector<std::string> split_top_level(std::string_view s, char sep);

} // namespace valkey
