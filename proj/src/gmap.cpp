#include "l96x/gmap.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

#include "l96x/errors.hpp"

namespace l96x {

GMap::GMap(std::vector<Monomial> terms) {
  for (Monomial& t : terms) {
    if (!std::isfinite(t.coeff)) throw std::invalid_argument("non-finite monomial coefficient");
    if (t.a > t.b) std::swap(t.a, t.b);
  }
  std::sort(terms.begin(), terms.end(),
            [](const Monomial& u, const Monomial& v) { return std::tie(u.a, u.b) < std::tie(v.a, v.b); });
  for (const Monomial& t : terms) {
    if (!terms_.empty() && terms_.back().a == t.a && terms_.back().b == t.b)
      terms_.back().coeff += t.coeff;
    else
      terms_.push_back(t);
  }
  std::erase_if(terms_, [](const Monomial& t) { return t.coeff == 0.0; });
  for (const Monomial& t : terms_) k_ = std::max({k_, std::abs(t.a), std::abs(t.b)});
}

bool GMap::operator==(const GMap& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].a != other.terms_[i].a || terms_[i].b != other.terms_[i].b ||
        terms_[i].coeff != other.terms_[i].coeff)
      return false;
  return true;
}

GMap operator+(const GMap& g, const GMap& h) {
  std::vector<Monomial> t = g.terms_;
  t.insert(t.end(), h.terms_.begin(), h.terms_.end());
  return GMap(std::move(t));
}

GMap operator-(const GMap& g, const GMap& h) { return g + (-1.0 * h); }

GMap operator*(double c, const GMap& g) {
  std::vector<Monomial> t = g.terms_;
  for (Monomial& m : t) m.coeff *= c;
  return GMap(std::move(t));
}

namespace detail {
void require_sites(const GMap& g, Eigen::Index n) {
  const int need = std::max(1, g.localization() + 1);
  if (n < need)
    throw std::invalid_argument(
        "advection map with localization " + std::to_string(g.localization()) + " needs at least " +
        std::to_string(need) + " sites (classification requires " + std::to_string(g.min_sites()) +
        "); got " + std::to_string(n));
}
}  // namespace detail

std::map<std::pair<int, int>, double> q_coefficients(const GMap& g) {
  std::map<std::pair<int, int>, double> q;
  for (const Monomial& t : g.terms()) {
    if (t.a == t.b) {
      q[{t.a, t.a}] += 2.0 * t.coeff;
    } else {
      q[{t.a, t.b}] += t.coeff;
      q[{t.b, t.a}] += t.coeff;
    }
  }
  std::erase_if(q, [](const auto& kv) { return kv.second == 0.0; });
  return q;
}

Eigen::MatrixXd linearize_at(const GMap& g, const Eigen::VectorXd& x0) {
  detail::require_sites(g, x0.size());
  const int n = static_cast<int>(x0.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Monomial& t : g.terms())
    for (int i = 0; i < n; ++i) {
      const int ia = detail::wrap(i + t.a, n), ib = detail::wrap(i + t.b, n);
      a(i, ib) += t.coeff * x0[ia];
      a(i, ia) += t.coeff * x0[ib];
    }
  return a;
}

namespace {

// Lookup wrapper over q_coefficients (zero outside the stored window).
class QTable {
 public:
  explicit QTable(const GMap& g) : q_(q_coefficients(g)) {
    for (const auto& [ij, v] : q_) scale_ = std::max(scale_, std::abs(v));
  }
  double operator()(int i, int j) const {
    auto it = q_.find({i, j});
    return it == q_.end() ? 0.0 : it->second;
  }
  double scale() const { return std::max(1.0, scale_); }

 private:
  std::map<std::pair<int, int>, double> q_;
  double scale_ = 0.0;
};

}  // namespace

EnergyCertificate is_energy_preserving(const GMap& g) {
  const QTable q(g);
  const int w = 2 * g.localization();
  EnergyCertificate cert;
  cert.preserving = true;
  for (int i = -w; i <= w; ++i)
    for (int j = i; j <= w; ++j) {
      const double s = q(i, j) + q(i - j, -j) + q(j - i, -i);
      if (std::abs(s) > 1e-12 * q.scale()) {
        cert.preserving = false;
        if (cert.violations.size() < 32) cert.violations.push_back({i, j, s});
      }
    }
  return cert;
}

GMap tilde(const GMap& g) {
  std::vector<Monomial> t = g.terms();
  for (Monomial& m : t) {
    m.a = -m.a;
    m.b = -m.b;
  }
  return GMap(std::move(t));
}

GMap standard_gmap(int index, bool reflected) {
  GMap g;
  switch (index) {
    case 1: g = GMap({{1, 1, 1.0}, {-1, 0, -1.0}}); break;
    case 2: g = GMap({{2, 2, 1.0}, {-2, 0, -1.0}}); break;
    case 3: g = GMap({{-1, 1, 1.0}, {-2, -1, -1.0}}); break;
    case 4: g = GMap({{3, 3, 1.0}, {-3, 0, -1.0}}); break;
    case 5: g = GMap({{2, 3, 1.0}, {-2, 1, -1.0}}); break;
    case 6: g = GMap({{1, 3, 1.0}, {-1, 2, -1.0}}); break;
    case 7: g = standard_gmap(3) - tilde(standard_gmap(3)); break;
    case 8: g = standard_gmap(5) - tilde(standard_gmap(6)); break;
    case 0:
      // distinguished element with vanishing linearization at the all-ones state
      g = standard_gmap(3) - 2.0 * tilde(standard_gmap(3)) + tilde(standard_gmap(1)) -
          standard_gmap(2);
      break;
    default:
      throw std::invalid_argument("standard_gmap: index must be 0..8");
  }
  return reflected ? tilde(g) : g;
}

std::vector<GMap> basis(int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("basis: localization must be 1, 2 or 3");
  std::vector<GMap> out;
  for (int i = 1; i <= (k == 1 ? 1 : k == 2 ? 3 : 6); ++i) {
    out.push_back(standard_gmap(i));
    out.push_back(standard_gmap(i, /*reflected=*/true));
  }
  return out;
}

int linearization_kernel_dim(int k) {
  const std::vector<GMap> b = basis(k);
  // Laurent coefficients d_j of the linearization at the all-ones state,
  // one row per basis element; kernel dimension = #basis - rank.
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(b.size()), 2 * k + 1);
  rows.setZero();
  for (std::size_t r = 0; r < b.size(); ++r)
    for (const Monomial& t : b[r].terms()) {
      rows(static_cast<Eigen::Index>(r), t.a + k) += t.coeff;
      rows(static_cast<Eigen::Index>(r), t.b + k) += t.coeff;
    }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(rows);
  return static_cast<int>(b.size()) - static_cast<int>(lu.rank());
}

namespace {

struct Parser {
  std::string_view src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() { return src[pos]; }

  // [real '*'] ['~'] 'G' digit
  GMap term() {
    skip_ws();
    double coeff = 1.0;
    if (pos < src.size() && (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.')) {
      const char* begin = src.data() + pos;
      const char* end = src.data() + src.size();
      auto [ptr, ec] = std::from_chars(begin, end, coeff);
      if (ec != std::errc()) throw ParseError("malformed coefficient", pos);
      pos = static_cast<std::size_t>(ptr - src.data());
      skip_ws();
      if (pos >= src.size() || src[pos] != '*')
        throw ParseError("expected '*' after coefficient", pos);
      ++pos;
      skip_ws();
    }
    bool reflected = false;
    if (pos < src.size() && src[pos] == '~') {
      reflected = true;
      ++pos;
      skip_ws();
    }
    if (pos >= src.size() || src[pos] != 'G')
      throw ParseError("expected map name 'G<digit>'", pos);
    const std::size_t name_pos = pos;
    ++pos;
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
      throw ParseError("expected map name 'G<digit>'", name_pos);
    const int digit = src[pos] - '0';
    if (digit > 8)
      throw ParseError("unknown map name 'G" + std::string(1, src[pos]) + "'", name_pos);
    ++pos;
    return coeff * standard_gmap(digit, reflected);
  }

  GMap expr() {
    if (done()) throw ParseError("empty expression", 0);
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      if (peek() == '-') sign = -1.0;
      ++pos;
    }
    GMap acc = sign * term();
    while (!done()) {
      const char op = peek();
      if (op != '+' && op != '-') throw ParseError("expected '+' or '-'", pos);
      ++pos;
      acc = (op == '+') ? acc + term() : acc - term();
    }
    return acc;
  }
};

}  // namespace

GMapExpr parse_gmap(std::string_view source) {
  Parser p{source};
  return GMapExpr{std::string(source), p.expr()};
}

}  // namespace l96x
