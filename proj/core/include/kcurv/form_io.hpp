#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "kcurv/form.hpp"

namespace kcurv {

/// {"degree": d, "dim": r, "terms": [{"exps": [...], "num": "...", "den": "..."}]}
/// Terms are written in canonical (lexicographic) order.
std::string form_to_json(const Form& f, int indent = -1);
Form form_from_json(std::string_view text);

Form read_form_file(const std::filesystem::path& path);
void write_form_file(const Form& f, const std::filesystem::path& path);

/// Human-readable polynomial, e.g. "x0^3 - x0*x1^2".
std::string to_string(const Form& f);

/// FNV-1a over the canonical compact JSON; stable across runs and platforms.
std::uint64_t form_hash(const Form& f);
/// form_hash as 16 lowercase hex digits, the form used in every JSON report.
std::string form_hash_hex(const Form& f);

}  // namespace kcurv
