#include "dpz/forms.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dpz/error.hpp"

namespace dpz {

PointP1::PointP1(FieldPtr field, Elem x, Elem y) : field_(std::move(field)), x_(x), y_(y) {
  if (x >= field_->q() || y >= field_->q()) fail_model("point coordinate outside the field");
  if (y != 0) {
    x_ = field_->div(x, y);
    y_ = 1;
  } else if (x != 0) {
    x_ = 1;
  } else {
    fail_model("[0:0] is not a point of P^1");
  }
}

std::string PointP1::to_string() const { return "[" + std::to_string(x_) + ":" + std::to_string(y_) + "]"; }

std::vector<PointP1> rational_points(const FieldPtr& field) {
  std::vector<PointP1> out;
  for (Elem e = 0; e < field->q(); ++e) out.emplace_back(field, e, 1);
  out.emplace_back(field, 1, 0);
  return out;
}

BinaryForm::BinaryForm(FieldPtr field, std::size_t degree, std::vector<Elem> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  if (c_.size() != degree + 1) fail_config("binary form coefficient count must be degree + 1");
}

BinaryForm BinaryForm::zero(FieldPtr field, std::size_t degree) {
  return BinaryForm(std::move(field), degree, std::vector<Elem>(degree + 1, 0));
}

BinaryForm BinaryForm::from_index(FieldPtr field, std::size_t degree, std::uint64_t index) {
  std::vector<Elem> c(degree + 1);
  const std::uint64_t q = field->q();
  for (auto& x : c) {
    x = static_cast<Elem>(index % q);
    index /= q;
  }
  return BinaryForm(std::move(field), degree, std::move(c));
}

std::uint64_t BinaryForm::index() const {
  std::uint64_t idx = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) idx = idx * field_->q() + *it;
  return idx;
}

bool BinaryForm::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](Elem e) { return e == 0; });
}

Elem BinaryForm::eval(const PointP1& p) const {
  // Points are normalized, so y is 1 (Horner in x) or the point is [1:0].
  if (p.y() == 0) return c_.back();
  return dehomogenized().eval(p.x());
}

Poly BinaryForm::dehomogenized() const { return Poly(field_, c_); }

std::size_t BinaryForm::order_at_infinity() const {
  std::size_t e = 0;
  for (auto it = c_.rbegin(); it != c_.rend() && *it == 0; ++it) ++e;
  if (e == c_.size()) fail_config("order at infinity of the zero form");
  return e;
}

std::string BinaryForm::to_string() const {
  std::string s;
  const std::size_t d = degree();
  for (std::size_t j = c_.size(); j-- > 0;) {
    if (c_[j] == 0) continue;
    if (!s.empty()) s += " + ";
    std::string mono;
    if (j > 0) mono += j == 1 ? "x" : "x^" + std::to_string(j);
    if (d - j > 0) mono += (d - j) == 1 ? "y" : "y^" + std::to_string(d - j);
    if (c_[j] != 1 || mono.empty()) s += std::to_string(c_[j]);
    s += mono;
  }
  return s.empty() ? "0" : s;
}

BinaryForm form_from_factor(std::size_t y_power, const Poly& monic) {
  const std::size_t deg = monic.degree().value_or(0);
  std::vector<Elem> c(deg + y_power + 1, 0);
  for (std::size_t j = 0; j <= deg; ++j) c[j] = monic.coeff(j);
  return BinaryForm(monic.field(), deg + y_power, std::move(c));
}

std::optional<BinaryForm> form_gcd(const BinaryForm& f, const BinaryForm& g) {
  if (!f.field()->same_as(*g.field())) fail_config("forms over different fields");
  const bool fz = f.is_zero();
  const bool gz = g.is_zero();
  if (fz && gz) return std::nullopt;
  if (fz || gz) {
    const BinaryForm& h = fz ? g : f;
    Poly m = h.dehomogenized().monic();
    return form_from_factor(h.degree() - *m.degree(), m);
  }
  const std::size_t e = std::min(f.order_at_infinity(), g.order_at_infinity());
  return form_from_factor(e, poly_gcd(f.dehomogenized(), g.dehomogenized()));
}

bool is_basepoint_free(const BinaryForm& u, const BinaryForm& v) {
  if (u.degree() != v.degree()) fail_config("basepoint test needs forms of equal degree");
  auto g = form_gcd(u, v);
  return g.has_value() && g->degree() == 0;
}

BinaryForm apply_functional(const PointP1& p, const BinaryForm& u, const BinaryForm& v) {
  if (u.degree() != v.degree()) fail_config("functional needs forms of equal degree");
  const Field& F = *u.field();
  std::vector<Elem> c(u.coeffs().size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = F.sub(F.mul(p.y(), u.coeffs()[j]), F.mul(p.x(), v.coeffs()[j]));
  return BinaryForm(u.field(), u.degree(), std::move(c));
}

// ---------------------------------------------------------------------------

namespace {

std::size_t matrix_rank(const Field& F, std::vector<std::vector<Elem>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const Elem inv = F.inv(m[rank][c]);
    for (auto& x : m[rank]) x = F.mul(x, inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][c] == 0) continue;
      const Elem f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

Elem power(const Field& F, Elem b, std::size_t e) {
  Elem r = 1;
  for (std::size_t i = 0; i < e; ++i) r = F.mul(r, b);
  return r;
}

// Monomial x^i y^(d1-i) x'^j y'^(d2-j) evaluated at a center, with optional
// partial derivative: which = 0 none, 1 d/dx, 2 d/dy, 3 d/dx', 4 d/dy'.
Elem monomial_value(const Field& F, const SurfaceModel::Center& c, std::size_t d1, std::size_t i, std::size_t d2,
                    std::size_t j, int which) {
  std::size_t ex[4] = {i, d1 - i, j, d2 - j};
  const Elem base[4] = {c.first.x(), c.first.y(), c.second.x(), c.second.y()};
  Elem coef = 1;
  if (which > 0) {
    auto& e = ex[which - 1];
    if (e == 0) return 0;
    coef = F.from_int(static_cast<long>(e));
    --e;
  }
  Elem v = coef;
  for (int t = 0; t < 4; ++t) v = F.mul(v, power(F, base[t], ex[t]));
  return v;
}

std::vector<Elem> bidegree_row(const Field& F, const SurfaceModel::Center& c, std::size_t d1, std::size_t d2,
                               int which = 0) {
  std::vector<Elem> row;
  for (std::size_t i = 0; i <= d1; ++i)
    for (std::size_t j = 0; j <= d2; ++j) row.push_back(monomial_value(F, c, d1, i, d2, j, which));
  return row;
}

// True when some nonzero form of bidegree (d1, d2) passes through all centers.
bool form_through(const Field& F, const std::vector<SurfaceModel::Center>& pts, std::size_t d1, std::size_t d2) {
  std::vector<std::vector<Elem>> m;
  for (const auto& c : pts) m.push_back(bidegree_row(F, c, d1, d2));
  return matrix_rank(F, m) < (d1 + 1) * (d2 + 1);
}

template <typename Fn>
bool any_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return false;
  while (true) {
    if (fn(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

ModelCertificate SurfaceModel::certify(const FieldPtr& field, const std::vector<Center>& points) {
  const Field& F = *field;
  ModelCertificate cert;
  cert.distinct = true;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first || points[i].second == points[j].second) cert.distinct = false;
  const std::size_t r = points.size();
  auto pick = [&](const std::vector<std::size_t>& idx) {
    std::vector<Center> sub;
    for (auto i : idx) sub.push_back(points[i]);
    return sub;
  };
  if (r >= 4) cert.no_11_through_4 = !any_subset(r, 4, [&](const auto& idx) { return form_through(F, pick(idx), 1, 1); });
  if (r >= 6)
    cert.no_12_21_through_6 = !any_subset(r, 6, [&](const auto& idx) {
      auto sub = pick(idx);
      return form_through(F, sub, 1, 2) || form_through(F, sub, 2, 1);
    });
  if (r == 7) {
    cert.no_nodal_22_through_7 = true;
    for (std::size_t l = 0; l < r && cert.no_nodal_22_through_7; ++l) {
      std::vector<std::vector<Elem>> m;
      for (const auto& c : points) m.push_back(bidegree_row(F, c, 2, 2));
      for (int which = 1; which <= 4; ++which) m.push_back(bidegree_row(F, points[l], 2, 2, which));
      if (matrix_rank(F, m) < 9) cert.no_nodal_22_through_7 = false;
    }
  }
  return cert;
}

SurfaceModel::SurfaceModel(FieldPtr field, std::vector<Center> points)
    : field_(std::move(field)), points_(std::move(points)) {
  if (points_.empty() || points_.size() > 7) fail_model("model needs 1 <= r <= 7 centers");
  for (const auto& c : points_)
    if (!c.first.field()->same_as(*field_) || !c.second.field()->same_as(*field_))
      fail_model("center over a different field");
  cert_ = certify(field_, points_);
  if (!cert_.distinct) fail_model("blow-up centers must have distinct coordinates on each factor");
  if (!cert_.no_11_through_4) fail_model("a (1,1) form passes through four centers");
  if (!cert_.no_12_21_through_6) fail_model("a (1,2) or (2,1) form passes through six centers");
  if (!cert_.no_nodal_22_through_7) fail_model("a (2,2) form through all centers is singular at one of them");
}

namespace {

bool search_centers(const FieldPtr& field, const std::vector<PointP1>& pts, std::size_t r,
                    std::vector<SurfaceModel::Center>& cur) {
  if (cur.size() == r) return true;
  for (const auto& p : pts) {
    for (const auto& pp : pts) {
      cur.emplace_back(p, pp);
      // Checks on a prefix are monotone: any failure persists as points are added.
      if (SurfaceModel::certify(field, cur).ok() && search_centers(field, pts, r, cur)) return true;
      cur.pop_back();
    }
  }
  return false;
}

}  // namespace

SurfaceModel SurfaceModel::canonical(std::uint64_t q, int r) {
  if (r < 1 || r > 7) fail_config("model r must be in 1..7");
  FieldPtr field = Field::from_q(q);
  std::vector<Center> pts;
  if (r <= 3) {
    const PointP1 base[3] = {PointP1(field, 0, 1), PointP1(field, 1, 1), PointP1(field, 1, 0)};
    for (int i = 0; i < r; ++i) pts.emplace_back(base[i], base[i]);
    return SurfaceModel(field, std::move(pts));
  }
  if (q + 1 < static_cast<std::uint64_t>(r)) fail_model("F_" + std::to_string(q) + " has too few points for r = " + std::to_string(r));
  if (!search_centers(field, rational_points(field), static_cast<std::size_t>(r), pts))
    fail_model("no centers in general position over F_" + std::to_string(q) + " for r = " + std::to_string(r));
  return SurfaceModel(field, std::move(pts));
}

SurfaceModel SurfaceModel::parse(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  if (lines.size() < 2) fail_model("model text needs 'q p n' and 'r' lines");
  std::uint64_t q = 0, p = 0, n = 0;
  {
    std::istringstream h(lines[0]);
    std::string extra;
    if (!(h >> q >> p >> n) || (h >> extra)) fail_model("malformed model header '" + lines[0] + "'");
  }
  if (!is_prime(p) || n == 0) fail_model("model characteristic must be prime and n >= 1");
  auto pw = prime_power(q);
  if (!pw || pw->first != p || pw->second != n) fail_model("model q does not equal p^n");
  FieldPtr field;
  try {
    field = Field::make(p, n);
  } catch (const Error& e) {
    fail_model(e.what());
  }
  int r = 0;
  {
    std::istringstream h(lines[1]);
    std::string extra;
    if (!(h >> r) || (h >> extra)) fail_model("malformed r line '" + lines[1] + "'");
  }
  if (r < 1 || r > 7 || lines.size() != static_cast<std::size_t>(r) + 2)
    fail_model("model must list exactly r centers with 1 <= r <= 7");
  std::vector<Center> pts;
  for (int i = 0; i < r; ++i) {
    std::istringstream h(lines[static_cast<std::size_t>(i) + 2]);
    long long c[4];
    std::string extra;
    if (!(h >> c[0] >> c[1] >> c[2] >> c[3]) || (h >> extra)) fail_model("malformed center line " + std::to_string(i + 1));
    for (auto v : c)
      if (v < 0 || static_cast<std::uint64_t>(v) >= q) fail_model("center coordinate outside the field");
    pts.emplace_back(PointP1(field, static_cast<Elem>(c[0]), static_cast<Elem>(c[1])),
                     PointP1(field, static_cast<Elem>(c[2]), static_cast<Elem>(c[3])));
  }
  return SurfaceModel(field, std::move(pts));
}

SurfaceModel SurfaceModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_config("cannot read model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string SurfaceModel::to_text() const {
  std::ostringstream os;
  os << q() << ' ' << field_->p() << ' ' << field_->n() << '\n' << r() << '\n';
  for (const auto& [p, pp] : points_) os << p.x() << ' ' << p.y() << ' ' << pp.x() << ' ' << pp.y() << '\n';
  return os.str();
}

SurfaceModel SurfaceModel::swapped() const {
  std::vector<Center> pts;
  for (const auto& [p, pp] : points_) pts.emplace_back(pp, p);
  return SurfaceModel(field_, std::move(pts));
}

// ---------------------------------------------------------------------------

std::optional<std::vector<std::size_t>> multiplicity_profile(const SectionPair& sp, const SurfaceModel& model) {
  if (!is_basepoint_free(sp.u, sp.v) || !is_basepoint_free(sp.w, sp.z))
    fail_config("multiplicity profile needs basepoint-free sections");
  std::vector<std::size_t> d;
  for (const auto& [p, pp] : model.points()) {
    auto g = form_gcd(apply_functional(p, sp.u, sp.v), apply_functional(pp, sp.w, sp.z));
    if (!g) return std::nullopt;
    d.push_back(g->degree());
  }
  return d;
}

CurveInvariants class_of(const SectionPair& sp, const SurfaceModel& model) {
  auto prof = multiplicity_profile(sp, model);
  if (!prof) fail_config("section pair maps constantly to a blow-up center");
  CurveInvariants inv;
  inv.a = sp.u.degree();
  inv.a_prime = sp.w.degree();
  inv.profile = *prof;
  inv.h = 2 * static_cast<std::int64_t>(inv.a + inv.a_prime);
  for (auto k : inv.profile) inv.h -= static_cast<std::int64_t>(k);
  return inv;
}

HomogeneousFactorization factor_form(const BinaryForm& f, const IrreducibleTable& table) {
  HomogeneousFactorization fac;
  fac.y_power = f.order_at_infinity();
  Poly hat = f.dehomogenized();
  if (*hat.degree() >= 1) fac.affine = table.factor(hat);
  return fac;
}

std::uint64_t count_divisors_of_degree(const HomogeneousFactorization& fac, std::size_t k) {
  std::vector<std::uint64_t> ways(k + 1, 0);
  ways[0] = 1;
  auto absorb = [&](std::size_t deg, unsigned mult) {
    std::vector<std::uint64_t> next(k + 1, 0);
    for (std::size_t s = 0; s <= k; ++s) {
      if (!ways[s]) continue;
      for (unsigned e = 0; e <= mult && s + e * deg <= k; ++e) next[s + e * deg] += ways[s];
    }
    ways = std::move(next);
  };
  absorb(1, static_cast<unsigned>(fac.y_power));
  for (const auto& [g, m] : fac.affine) absorb(*g.degree(), m);
  return ways[k];
}

}  // namespace dpz
