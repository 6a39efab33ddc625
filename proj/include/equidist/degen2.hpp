#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "equidist/classify.hpp"
#include "equidist/linalg.hpp"
#include "equidist/root_field.hpp"
#include "equidist/roots.hpp"
#include "equidist/surfaces.hpp"

namespace equidist {

class MoreDegenerate : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DenominatorDegenerate : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// s1u1 + s1^3 + s2^2u2 + s2u2^2 + b s1^2s2 + c s1^2u2 + d s1s2^2 + e s2^3 + s1^4 + (p s2 + q s1^2)
struct DegenNormalForm {
  Rational b, c, d, e;
  bool s1cubed_nonzero = true;
  bool s1fourth_nonzero = true;
  bool T_nondegenerate = true;  // d^2 - b(3e - 1) != 0
  bool e_admissible = true;     // e not in {0, 1/3}

  // false when b, c, d carry a rounded cube root; then `precision` bits were used
  bool exact = true;
  int precision = 0;
  Rational lambda;
  // quotient coordinates of the unscaled 4-jet along {s1^4, s2^4}
  Rational s1fourth, s2fourth;

  static DegenNormalForm from_coefficients(const Rational& b, const Rational& c, const Rational& d, const Rational& e);
  void refresh_flags();
  bool classifiable() const;
  std::vector<std::string> failed_flags() const;
  Rational t_value() const { return d * d + b - 3 * b * e; }  // d^2 + b - 3be
};

// The germ h in (s1, s2, u1, u2, p, q).
Poly normal_form_poly(const DegenNormalForm& nf, int order = 6);

// Reduction without flag enforcement.
DegenNormalForm reduce_degenerate_raw(const SurfacePair& p, int precision = 128);
// Throws MoreDegenerate naming the failed flags.
DegenNormalForm reduce_degenerate(const SurfacePair& p, int precision = 128);
Rational degenerate_lambda(const SurfacePair& p);

enum class ConeRegime { PointOnly, ParamX1X2, ParamX1S2, ParamX2S2, RealCone };
std::string regime_name(ConeRegime r);
struct ConeInfo {
  ConeRegime regime;
  std::optional<Rational> k;  // (3be - b - d^2)/b, absent when b = 0
};
ConeInfo cone_regime(const DegenNormalForm& nf);

// The cone with the extra -p on the right-hand side.
enum class QuadricShape { OneSheet, TwoSheets, Ellipsoid, Empty };
std::string shape_name(QuadricShape s);
QuadricShape unfolded_quadric(const DegenNormalForm& nf, const Rational& p);

// Symmetric 3x3 matrices in (s1, s2, u2).
RatMatrix cone_matrix(const DegenNormalForm& nf);
RatMatrix cusp_conic_matrix(const DegenNormalForm& nf);

struct CuspCount {
  int count = 0;
  bool tangential = false;
};
// Real intersection points of two projective conics in (s1 : s2 : u2).
CuspCount conic_intersections(const RatMatrix& cone, const RatMatrix& conic);
CuspCount cusp_edge_count(const DegenNormalForm& nf);

UniPoly sheet_cubic(const DegenNormalForm& nf);  // e k^3 + d k^2 + b k + 1
Rational sheet_discriminant(const DegenNormalForm& nf);
struct SheetInfo {
  int count = 0;
  Rational discriminant;
  std::vector<CertifiedRoot> roots;
};
SheetInfo sheet_count(const DegenNormalForm& nf);

// Elimination chain for pairs of domain points with the same image.
// Variables of every polynomial: chain_vars().
const VarList& chain_vars();  // x1 y1 x2 y2 u2 p q k
struct SIChain {
  Poly u1;                 // in (s1, s2, u2, q) rewritten through chain_vars at the s-point
  Poly u2_num, u2_den;     // from SI3' - SI4'
  Poly x2_num, x2_den;     // from SI1' after u2
  Poly si5;                // b y1^2 y2 + d y1 y2^2 + e y2^3 + 4 x1 y1^3 + y1^3
  Poly si5_residual;       // (SI2' - y2 (SI3' + SI4')) with u2, x2 cleared of denominators
  Poly param_x1;           // -(e k^3 + d k^2 + b k + 1)/4
  Poly l_full;             // L as a polynomial in (y1, k, p, q)
};
SIChain si_chain(const DegenNormalForm& nf);

using LPoly = TruncPoly<FieldElem>;
const VarList& l_vars();  // y1 z p q
// L(k0) in (y1, z, p, q) truncated at `order`; coefficients live in Q[k]/(cubic).
LPoly compute_L(const DegenNormalForm& nf, const CertifiedRoot& k0, int order);
LPoly compute_L(const SIChain& chain, const DegenNormalForm& nf, const CertifiedRoot& k0, int order);

struct BranchRoot {
  double k0 = 0;
  FieldElem c0, c2;
  int sign_c0 = 0, sign_c2 = 0;
  bool branch() const { return sign_c0 * sign_c2 < 0; }
};
struct BranchInfo {
  int count = 0;
  std::vector<BranchRoot> roots;
};
BranchInfo branch_count(const DegenNormalForm& nf);

Subcase nearby_subcase(const DegenNormalForm& nf);

std::string e_interval(const Rational& e);  // "e<0", "0<e<1/3", "e>1/3"

struct DegenInvariants {
  int cusp_edges = 0;
  bool cusp_tangential = false;
  int sheets = 0;
  int branches = 0;
  Subcase nearby = Subcase::Indef;
  std::string table_class;  // I..X or Unlisted
  ConeInfo cone;
  std::string e_range;
  bool operator==(const DegenInvariants& o) const {
    return cusp_edges == o.cusp_edges && sheets == o.sheets && branches == o.branches && nearby == o.nearby &&
           table_class == o.table_class;
  }
};

// Class name for (cusp edges, self-intersections, subcase), or "Unlisted".
std::string table_class_of(int cusp_edges, int branches, Subcase s);
DegenInvariants classify_class(const DegenNormalForm& nf);

// Full pipeline with precision escalation: stops when two consecutive precisions agree.
struct DegenResult {
  DegenNormalForm nf;
  DegenInvariants inv;
};
DegenResult degenerate_invariants(const SurfacePair& p, int start_bits = 128);

struct Table1Row {
  std::string name;
  Rational b, c, d, e;
  int cusp_edges, self_int;
  Subcase subcase;
};
const std::vector<Table1Row>& table1_rows();

struct Table1Result {
  Table1Row row;
  DegenInvariants computed;
  bool cusp_ok, self_int_ok, subcase_ok;
  bool pass() const { return cusp_ok && self_int_ok && subcase_ok; }
};
std::vector<Table1Result> table1();
std::vector<Table1Result> table1(const std::vector<Table1Row>& rows);

}  // namespace equidist
