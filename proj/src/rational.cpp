#include "hopfkit/rational.hpp"

#include <cctype>
#include <vector>

namespace hopfkit {

Rat rat_pow(const Rat& base, unsigned exp) {
  Rat r = 1;
  Rat b = base;
  while (exp > 0) {
    if (exp & 1u) r *= b;
    b *= b;
    exp >>= 1u;
  }
  return r;
}

Rat parse_rat(const std::string& s) {
  auto is_int_token = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  auto slash = t.find('/');
  if (slash == std::string::npos) {
    if (!is_int_token(t)) throw std::invalid_argument("malformed rational: '" + s + "'");
    return Rat(Int(t));
  }
  std::string num = t.substr(0, slash), den = t.substr(slash + 1);
  if (!is_int_token(num) || !is_int_token(den))
    throw std::invalid_argument("malformed rational: '" + s + "'");
  Int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  return Rat(Int(num), d);
}

std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

bool is_integer(const Rat& r) { return denominator(r) == 1; }

Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

Int bell_number(unsigned n) {
  // Bell triangle.
  std::vector<Int> row{1};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<Int> next(i + 1);
    next[0] = row.back();
    for (unsigned j = 1; j <= i; ++j) next[j] = next[j - 1] + row[j - 1];
    row = std::move(next);
  }
  return row[0];
}

Int ordered_bell_number(unsigned n) {
  // a(n) = sum_{k=1..n} C(n,k) a(n-k), a(0) = 1.
  std::vector<Int> a(n + 1);
  a[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    Int s = 0;
    for (unsigned k = 1; k <= m; ++k) s += binomial(m, k) * a[m - k];
    a[m] = s;
  }
  return a[n];
}

}  // namespace hopfkit
