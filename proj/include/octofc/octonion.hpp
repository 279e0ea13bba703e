#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>

namespace octofc {

enum class Side { Left, Right };

// x = c[0] + c[1] e1 + ... + c[7] e7
struct Octonion {
  std::array<double, 8> c{};

  Octonion() = default;
  explicit Octonion(double re) { c[0] = re; }
  explicit Octonion(const std::array<double, 8>& coords) : c(coords) {}

  static Octonion unit(int i) {
    Octonion e;
    e.c[i] = 1.0;
    return e;
  }

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }

  double re() const { return c[0]; }
  Octonion im() const {
    Octonion r = *this;
    r.c[0] = 0.0;
    return r;
  }
  Octonion conj() const;
  double norm2() const;
  double norm() const;
  Octonion inv() const;  // throws DomainError on zero

  Octonion& operator+=(const Octonion& o);
  Octonion& operator-=(const Octonion& o);
  Octonion& operator*=(double s);
};

Octonion operator+(Octonion a, const Octonion& b);
Octonion operator-(Octonion a, const Octonion& b);
Octonion operator-(Octonion a);
Octonion operator*(const Octonion& a, const Octonion& b);
Octonion operator*(double s, Octonion a);
Octonion operator*(Octonion a, double s);
Octonion operator/(Octonion a, double s);
bool operator==(const Octonion& a, const Octonion& b);
std::ostream& operator<<(std::ostream& os, const Octonion& x);

double dot(const Octonion& a, const Octonion& b);  // Euclidean inner product on R^8
double distance(const Octonion& a, const Octonion& b);

// Multiplication table of the imaginary units, e_i e_j = sign * e_index.
struct FanoEntry {
  int sign;
  int index;
};

class FanoTable {
public:
  // oriented triples (a, b, c) with e_a e_b = e_c
  static constexpr std::array<std::array<int, 3>, 7> triples{{
      {1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5}}};

  static const FanoTable& instance();
  FanoEntry product(int i, int j) const { return table_[i][j]; }
  // max deviation of the table from the defining relations; 0 when exact
  int closure_defects() const;

private:
  FanoTable();
  std::array<std::array<FanoEntry, 8>, 8> table_{};
};

Octonion associator(const Octonion& x, const Octonion& y, const Octonion& z);
Octonion commutator(const Octonion& x, const Octonion& y);
Octonion pow(const Octonion& x, int k);  // k may be negative for nonzero x
Octonion exp(const Octonion& x);

struct IdentityReport {
  double moufang_left = 0.0;
  double moufang_right = 0.0;
  double moufang_middle = 0.0;
  double five_term = 0.0;
  double artin = 0.0;       // [x,x,y], [x,y,y] and flexibility
  double max_scaled = 0.0;  // worst residual divided by the product of norms
  int samples = 0;
  int table_defects = 0;
};

Octonion random_octonion(std::mt19937_64& rng, double scale = 1.0);
Octonion random_unit_imaginary(std::mt19937_64& rng);

IdentityReport identity_residuals(int samples, std::uint64_t seed);

// Orthonormal basis {1, J1, ..., J7} with J4 = J, multiplying like the standard one.
struct SliceFrame {
  std::array<Octonion, 8> units;
  const Octonion& operator[](int i) const { return units[i]; }
  const Octonion& J() const { return units[4]; }
};

bool is_unit_imaginary(const Octonion& J, double tol = 1e-12);
SliceFrame make_slice_frame(const Octonion& J);
std::array<double, 8> frame_coords(const Octonion& x, const SliceFrame& f);
Octonion from_frame_coords(const std::array<double, 8>& a, const SliceFrame& f);
// largest deviation of the frame's product table from the standard one
double frame_table_defect(const SliceFrame& f);

// x + yJ
inline Octonion slice_point(double x, double y, const Octonion& J) { return Octonion(x) + y * J; }

}  // namespace octofc
