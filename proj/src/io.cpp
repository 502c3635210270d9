#include "qcrw/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "qcrw/angle.hpp"

namespace qcrw {

double round_sig(double x, int digits) {
  if (x == 0 || !std::isfinite(x)) return x == 0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  double r = std::strtod(buf, nullptr);
  return r == 0 ? 0.0 : r;
}

ordered_json unitary_to_json(const Unitary& u, int digits) {
  ordered_json re = ordered_json::array(), im = ordered_json::array();
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    ordered_json r = ordered_json::array(), m = ordered_json::array();
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      r.push_back(round_sig(u(i, j).real(), digits));
      m.push_back(round_sig(u(i, j).imag(), digits));
    }
    re.push_back(std::move(r));
    im.push_back(std::move(m));
  }
  ordered_json out;
  out["rows"] = u.rows();
  out["cols"] = u.cols();
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw SyntaxError("matrix JSON: " + what, 1, 1); }

double number(const nlohmann::json& v) {
  if (!v.is_number()) bad("expected a number");
  return v.get<double>();
}

}  // namespace

Unitary unitary_from_json(const nlohmann::json& j) {
  if (j.is_object()) {
    if (!j.contains("re")) bad("missing \"re\"");
    const auto& re = j.at("re");
    const nlohmann::json im = j.contains("im") ? j.at("im") : nlohmann::json();
    if (!re.is_array() || re.empty()) bad("\"re\" must be a non-empty list of rows");
    const auto rows = static_cast<Eigen::Index>(re.size());
    const auto cols = static_cast<Eigen::Index>(re[0].size());
    Unitary u(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto& row = re[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) bad("ragged rows");
      for (Eigen::Index k = 0; k < cols; ++k) {
        double y = 0;
        if (!im.is_null()) {
          if (!im.is_array() || im.size() != re.size() || im[static_cast<std::size_t>(i)].size() != row.size())
            bad("\"im\" does not match \"re\"");
          y = number(im[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
        }
        u(i, k) = cplx(number(row[static_cast<std::size_t>(k)]), y);
      }
    }
    return u;
  }
  if (j.is_array() && !j.empty()) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Unitary u(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto& row = j[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) bad("ragged rows");
      for (Eigen::Index k = 0; k < cols; ++k) {
        const auto& e = row[static_cast<std::size_t>(k)];
        if (e.is_number())
          u(i, k) = number(e);
        else if (e.is_array() && e.size() == 2)
          u(i, k) = cplx(number(e[0]), number(e[1]));
        else
          bad("entries must be numbers or [re, im] pairs");
      }
    }
    return u;
  }
  bad("expected an object with \"re\"/\"im\" or a list of rows");
}

Unitary unitary_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("matrix JSON: ") + e.what(), 1, 1);
  }
  return unitary_from_json(j);
}

}  // namespace qcrw
