#include "ahmass/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ahmass/error.hpp"
#include "jets.hpp"

namespace ahmass {

namespace {

Sym2Field::Packed pack(const Mat3& m) {
  return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), 0.5 * (m(0, 2) + m(2, 0)),
          m(1, 1), 0.5 * (m(1, 2) + m(2, 1)), m(2, 2)};
}

Mat3 unpack(const Sym2Field::Packed& p) {
  Mat3 m;
  m << p[0], p[1], p[2], p[1], p[3], p[4], p[2], p[4], p[5];
  return m;
}

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* what) {
  if (a != b) throw DomainError(std::string(what) + ": fields live on different grids");
}

}  // namespace

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) {
    throw DomainError("ScalarField: value count does not match node count");
  }
}

ScalarField::ScalarField(GridPtr grid, double value)
    : grid_(std::move(grid)), values_(grid_->size(), value) {}

ScalarField ScalarField::from_function(GridPtr grid,
                                       const std::function<double(const Vec3&)>& f) {
  std::vector<double> v(grid->size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(grid->node(k));
  return ScalarField(std::move(grid), std::move(v));
}

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Sym2Field::Sym2Field(GridPtr grid, std::vector<Packed> components)
    : grid_(std::move(grid)), comps_(std::move(components)) {
  if (comps_.size() != grid_->size()) {
    throw DomainError("Sym2Field: component count does not match node count");
  }
}

Sym2Field Sym2Field::from_ambient(GridPtr grid, const std::vector<Mat3>& tensors) {
  std::vector<Packed> c(grid->size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Vec3& x = grid->node(k);
    const Mat3 proj = Mat3::Identity() - x * x.transpose();
    c[k] = pack(proj * tensors[k] * proj);
  }
  return Sym2Field(std::move(grid), std::move(c));
}

Sym2Field Sym2Field::round(GridPtr grid, double c) {
  std::vector<Packed> p(grid->size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Vec3& x = grid->node(k);
    p[k] = pack(c * (Mat3::Identity() - x * x.transpose()));
  }
  return Sym2Field(std::move(grid), std::move(p));
}

Sym2Field Sym2Field::conformal(const ScalarField& f) {
  return round(f.grid(), 1.0).scaled(f);
}

Sym2Field Sym2Field::zero(GridPtr grid) {
  std::vector<Packed> p(grid->size(), Packed{0, 0, 0, 0, 0, 0});
  return Sym2Field(std::move(grid), std::move(p));
}

Mat3 Sym2Field::ambient(std::size_t k) const { return unpack(comps_[k]); }

std::vector<double> Sym2Field::ambient_component(int a, int b) const {
  static constexpr int kSlot[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  const int slot = kSlot[a][b];
  std::vector<double> out(comps_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = comps_[k][slot];
  return out;
}

Mat2 Sym2Field::frame(std::size_t k) const {
  const Mat3 t = ambient(k);
  const Vec3& et = grid_->e_theta(k);
  const Vec3& ep = grid_->e_phi(k);
  Mat2 m;
  m(0, 0) = et.dot(t * et);
  m(0, 1) = et.dot(t * ep);
  m(1, 0) = m(0, 1);
  m(1, 1) = ep.dot(t * ep);
  return m;
}

Mat2 Sym2Field::chart(std::size_t k, Chart c) const {
  const ChartPoint cp = chart_point(grid_->node(k), c);
  const Mat3 t = ambient(k);
  Mat2 m;
  m(0, 0) = cp.jac[0].dot(t * cp.jac[0]);
  m(0, 1) = cp.jac[0].dot(t * cp.jac[1]);
  m(1, 0) = m(0, 1);
  m(1, 1) = cp.jac[1].dot(t * cp.jac[1]);
  return m;
}

ScalarField Sym2Field::trace() const {
  std::vector<double> v(comps_.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = comps_[k][0] + comps_[k][3] + comps_[k][5];
  return ScalarField(grid_, std::move(v));
}

Sym2Field& Sym2Field::operator+=(const Sym2Field& o) {
  require_same_grid(grid_, o.grid_, "Sym2Field::operator+=");
  for (std::size_t k = 0; k < comps_.size(); ++k) {
    for (int s = 0; s < 6; ++s) comps_[k][s] += o.comps_[k][s];
  }
  return *this;
}

Sym2Field& Sym2Field::operator*=(double s) {
  for (auto& p : comps_) {
    for (double& v : p) v *= s;
  }
  return *this;
}

Sym2Field Sym2Field::scaled(const ScalarField& f) const {
  require_same_grid(grid_, f.grid(), "Sym2Field::scaled");
  Sym2Field out = *this;
  for (std::size_t k = 0; k < comps_.size(); ++k) {
    for (double& v : out.comps_[k]) v *= f[k];
  }
  return out;
}

Sym2Field operator+(Sym2Field a, const Sym2Field& b) {
  a += b;
  return a;
}

Sym2Field operator*(double s, Sym2Field a) {
  a *= s;
  return a;
}

UnitVectorField::UnitVectorField(GridPtr grid, std::vector<Vec3> directions)
    : grid_(std::move(grid)), dirs_(std::move(directions)) {
  if (dirs_.size() != grid_->size()) {
    throw DomainError("UnitVectorField: direction count does not match node count");
  }
  for (std::size_t k = 0; k < dirs_.size(); ++k) {
    if (std::abs(dirs_[k].squaredNorm() - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "UnitVectorField: direction at node " << k << " is not unit length (|v|^2 = "
         << dirs_[k].squaredNorm() << ")";
      throw DomainError(os.str());
    }
  }
}

UnitVectorField UnitVectorField::identity(GridPtr grid) {
  std::vector<Vec3> d = grid->nodes();
  return UnitVectorField(std::move(grid), std::move(d));
}

Vec3 UnitVectorField::interpolate(const Vec3& point) const {
  Vec3 out;
  std::vector<double> comp(dirs_.size());
  for (int a = 0; a < 3; ++a) {
    for (std::size_t k = 0; k < dirs_.size(); ++k) comp[k] = dirs_[k][a];
    out[a] = grid_->evaluate(grid_->analyze(comp), point);
  }
  return out.normalized();
}

Vec2 sym2_eigenvalues(const Mat2& m) {
  const double mean = 0.5 * (m(0, 0) + m(1, 1));
  const double rad = std::hypot(0.5 * (m(0, 0) - m(1, 1)), 0.5 * (m(0, 1) + m(1, 0)));
  return Vec2(mean - rad, mean + rad);
}

ChartPoint chart_point(const Vec3& x, Chart c) {
  const double denom = (c == Chart::North) ? 1.0 - x.z() : 1.0 + x.z();
  ChartPoint cp;
  cp.y = Vec2(x.x() / denom, x.y() / denom);
  const auto jac = detail::stereo_jacobian(cp.y.x(), cp.y.y(), c);
  for (int i = 0; i < 2; ++i) cp.jac[i] = Vec3(jac[i][0], jac[i][1], jac[i][2]);
  return cp;
}

Vec3 chart_inverse(const Vec2& y, Chart c) {
  const double rho = 1.0 + y.squaredNorm();
  const double z = (y.squaredNorm() - 1.0) / rho;
  return Vec3(2.0 * y.x() / rho, 2.0 * y.y() / rho, c == Chart::North ? z : -z);
}

}  // namespace ahmass
