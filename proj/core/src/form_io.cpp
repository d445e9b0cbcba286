#include "kcurv/form_io.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "kcurv/error.hpp"

namespace kcurv {

using nlohmann::json;

namespace {

json to_json_value(const Form& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) {
    terms.push_back({{"exps", e}, {"num", c.numerator()}, {"den", c.denominator()}});
  }
  return {{"degree", f.degree()}, {"dim", f.dim()}, {"terms", std::move(terms)}};
}

}  // namespace

std::string form_to_json(const Form& f, int indent) { return to_json_value(f).dump(indent); }

Form form_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("form JSON: ") + e.what());
  }
  try {
    const int degree = j.at("degree").get<int>();
    const int dim = j.at("dim").get<int>();
    Form f(degree, dim);
    for (const auto& t : j.at("terms")) {
      const auto exps = t.at("exps").get<Form::Exponent>();
      auto text_of = [](const json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
      };
      const std::string num = text_of(t.at("num"));
      const std::string den = t.contains("den") ? text_of(t.at("den")) : std::string("1");
      f.add_term(exps, Rational::from_parts(num, den));
    }
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("form JSON: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::parse_error, std::string("form JSON: ") + e.what());
  }
}

Form read_form_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return form_from_json(buffer.str());
}

void write_form_file(const Form& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + path.string());
  out << form_to_json(f, 2) << '\n';
}

std::string to_string(const Form& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  // highest lexicographic exponent first reads more naturally
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += mag.str();
    } else if (mag == Rational(1)) {
      out += mono;
    } else {
      out += mag.str() + "*" + mono;
    }
  }
  return out;
}

std::uint64_t form_hash(const Form& f) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : form_to_json(f)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string form_hash_hex(const Form& f) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << form_hash(f);
  return s.str();
}

}  // namespace kcurv
