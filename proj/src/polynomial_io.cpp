#include "hpoly/polynomial_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "hpoly/errors.hpp"

namespace hpoly {

std::string format_exact(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_17g(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ParseError(0, "invalid number '" + std::string(text) + "'");
  }
  return value;
}

std::string format_polynomial(const HomogeneousPolynomial& p) {
  std::ostringstream out;
  out << "field = " << to_string(p.field()) << '\n'
      << "m = " << p.degree() << '\n'
      << "n = " << p.variables() << '\n';
  for (const auto& [alpha, a] : p.coefficients()) {
    for (int j = 0; j < alpha.variables(); ++j) {
      if (j) out << ' ';
      out << alpha[j];
    }
    out << " : " << format_exact(a.real());
    if (p.field() == ScalarField::Complex) out << ',' << format_exact(a.imag());
    out << '\n';
  }
  return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(std::string_view text, std::size_t line) {
  int value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ParseError(line, "invalid integer '" + std::string(text) + "'");
  }
  return value;
}

double parse_number(std::string_view text, std::size_t line) {
  try {
    return parse_double(trim(text));
  } catch (const ParseError& e) {
    throw ParseError(line, e.what());
  }
}

}  // namespace

HomogeneousPolynomial parse_polynomial(std::string_view text) {
  std::optional<ScalarField> field;
  std::optional<int> m;
  std::optional<int> n;
  CoefficientMap coefficients;

  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (const auto eq = line.find('='); eq != std::string_view::npos) {
      if (!coefficients.empty()) throw ParseError(line_no, "header key after coefficient lines");
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      if (key == "field") {
        try {
          field = parse_field(value);
        } catch (const DomainError& e) {
          throw ParseError(line_no, e.what());
        }
      } else if (key == "m") {
        m = parse_int(value, line_no);
      } else if (key == "n") {
        n = parse_int(value, line_no);
      } else {
        throw ParseError(line_no, "unknown header key '" + std::string(key) + "'");
      }
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'exponents : coefficient'");
    if (!field || !m || !n) throw ParseError(line_no, "coefficient line before complete header (field, m, n)");

    std::vector<int> exponents;
    std::istringstream exps{std::string(line.substr(0, colon))};
    std::string token;
    while (exps >> token) exponents.push_back(parse_int(token, line_no));
    if (static_cast<int>(exponents.size()) != *n) {
      throw ParseError(line_no, "expected " + std::to_string(*n) + " exponents, got " +
                                    std::to_string(exponents.size()));
    }

    const auto value = trim(line.substr(colon + 1));
    Scalar a;
    const auto comma = value.find(',');
    if (comma == std::string_view::npos) {
      a = {parse_number(value, line_no), 0.0};
    } else {
      if (*field == ScalarField::Real) throw ParseError(line_no, "complex coefficient in a real polynomial");
      a = {parse_number(value.substr(0, comma), line_no), parse_number(value.substr(comma + 1), line_no)};
    }

    try {
      MultiIndex alpha(std::move(exponents));
      if (alpha.degree() != *m) {
        throw ParseError(line_no, "exponents sum to " + std::to_string(alpha.degree()) + ", expected m = " +
                                      std::to_string(*m));
      }
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw ParseError(line_no, "non-finite coefficient");
      if (!coefficients.emplace(std::move(alpha), a).second) throw ParseError(line_no, "duplicate exponent vector");
    } catch (const DomainError& e) {
      throw ParseError(line_no, e.what());
    }
  }

  if (!field || !m || !n) throw ParseError(0, "missing header (field, m, n)");
  if (coefficients.empty()) throw ParseError(line_no, "no coefficient lines");
  try {
    return HomogeneousPolynomial(*field, *m, *n, std::move(coefficients));
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
}

HomogeneousPolynomial read_polynomial(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_polynomial(buf.str());
}

void write_polynomial(const std::filesystem::path& path, const HomogeneousPolynomial& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_polynomial(p);
}

}  // namespace hpoly
