#include "hopfkit/gf.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace hopfkit {

GFSeries::GFSeries(int order) {
  if (order < 0) throw std::invalid_argument("series order must be >= 0");
  c_.assign(static_cast<std::size_t>(order) + 1, Rat(0));
}

GFSeries::GFSeries(int order, std::vector<Rat> coeffs) : GFSeries(order) {
  if (coeffs.size() > c_.size()) throw std::invalid_argument("too many coefficients");
  for (std::size_t i = 0; i < coeffs.size(); ++i) c_[i] = std::move(coeffs[i]);
}

GFSeries GFSeries::constant(int order, const Rat& c) {
  GFSeries s(order);
  s.c_[0] = c;
  return s;
}

const Rat& GFSeries::coeff(int n) const {
  if (n < 0 || n > order()) throw std::out_of_range("coefficient degree out of range");
  return c_[static_cast<std::size_t>(n)];
}

void GFSeries::set_coeff(int n, const Rat& v) {
  if (n < 0 || n > order()) throw std::out_of_range("coefficient degree out of range");
  c_[static_cast<std::size_t>(n)] = v;
}

GFSeries GFSeries::truncate(int m) const {
  if (m < 0 || m > order()) throw std::invalid_argument("bad truncation order");
  GFSeries s(m);
  for (int i = 0; i <= m; ++i) s.c_[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)];
  return s;
}

namespace {

int common_order(const GFSeries& a, const GFSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("series orders differ: " + std::to_string(a.order()) +
                                " vs " + std::to_string(b.order()));
  return a.order();
}

}  // namespace

GFSeries GFSeries::operator+(const GFSeries& o) const {
  int n = common_order(*this, o);
  GFSeries s(n);
  for (int i = 0; i <= n; ++i) s.c_[i] = c_[i] + o.c_[i];
  return s;
}

GFSeries GFSeries::operator-(const GFSeries& o) const {
  int n = common_order(*this, o);
  GFSeries s(n);
  for (int i = 0; i <= n; ++i) s.c_[i] = c_[i] - o.c_[i];
  return s;
}

GFSeries GFSeries::operator*(const GFSeries& o) const {
  int n = common_order(*this, o);
  GFSeries s(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) s.c_[i + j] += c_[i] * o.c_[j];
  return s;
}

GFSeries GFSeries::reciprocal() const {
  if (c_[0] == 0) throw std::domain_error("reciprocal of series with zero constant term");
  int n = order();
  GFSeries s(n);
  s.c_[0] = Rat(1) / c_[0];
  for (int m = 1; m <= n; ++m) {
    Rat acc = 0;
    for (int k = 1; k <= m; ++k) acc += c_[k] * s.c_[m - k];
    s.c_[m] = -acc / c_[0];
  }
  return s;
}

GFSeries GFSeries::hadamard(const GFSeries& o) const {
  int n = common_order(*this, o);
  GFSeries s(n);
  for (int i = 0; i <= n; ++i) s.c_[i] = c_[i] * o.c_[i];
  return s;
}

nlohmann::json GFSeries::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Rat& r : c_) coeffs.push_back(rat_str(r));
  return nlohmann::json{{"order", order()}, {"coeffs", coeffs}};
}

GFSeries GFSeries::from_json(const nlohmann::json& j) {
  int order = j.at("order").get<int>();
  std::vector<Rat> coeffs;
  for (const auto& s : j.at("coeffs")) coeffs.push_back(parse_rat(s.get<std::string>()));
  if (static_cast<int>(coeffs.size()) != order + 1)
    throw std::invalid_argument("coefficient count does not match order");
  return GFSeries(order, std::move(coeffs));
}

std::string GFSeries::render() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += rat_str(c_[i]);
  }
  return s;
}

}  // namespace hopfkit
