#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torushh/rational.hpp"

namespace torushh {

enum class ChartKind { NodalU, TorusV, EndLine };
enum class Side { Left, Right };

// Coordinate ring of one chart of the finite nodal chain.
//   NodalU(i):  Q[X_i, Y_{i+1}]/(X_i Y_{i+1})      (deformed: X_i Y_{i+1} = q, q^K = 0)
//   TorusV(i):  Q[X_i, X_i^{-1}]
//   EndLine:    Q[Y_1] (Left) or Q[X_N] (Right)
struct ChartRing {
  ChartKind kind = ChartKind::NodalU;
  int index = 0;
  Side side = Side::Left;  // EndLine only
  bool deformed = false;
  int K = 1;  // q-order; 1 when undeformed

  static ChartRing nodal(int i, bool deformed = false, int K = 1);
  static ChartRing torus(int i, bool deformed = false, int K = 1);
  static ChartRing end_left(int i = 1, bool deformed = false, int K = 1);
  static ChartRing end_right(int i, bool deformed = false, int K = 1);

  int q_order() const { return deformed ? K : 1; }
  std::string token() const;
  static ChartRing parse(const std::string& token);  // throws ConfigError
  std::string x_name() const;
  std::string y_name() const;
  bool operator==(const ChartRing& o) const = default;
};

// X^x Y^y q^q. On TorusV only x is used (negative allowed); Y is X^{-1} there.
struct Monomial {
  int x = 0, y = 0, q = 0;
  auto operator<=>(const Monomial&) const = default;
};

int weight(const Monomial& m);        // y - x
int total_degree(const Monomial& m);  // |x| + y + q

// Normal form, or nullopt when the monomial is zero in the ring.
std::optional<Monomial> normal_form(const ChartRing& r, Monomial m);

std::vector<Monomial> mono_basis(const ChartRing& r, int weight, int degree_bound);

class RingElement {
 public:
  RingElement() = default;
  explicit RingElement(ChartRing r) : ring_(r) {}
  RingElement(ChartRing r, const Monomial& m, const Rational& c = 1);
  static RingElement constant(ChartRing r, const Rational& c);

  const ChartRing& ring() const { return ring_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Monomial& m, const Rational& c);  // normalizes

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  RingElement scaled(const Rational& c) const;
  bool operator==(const RingElement& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
  std::optional<int> homogeneous_weight() const;
  std::string str() const;

 private:
  ChartRing ring_;
  std::map<Monomial, Rational> terms_;
};

// Restriction from a nodal or end chart to the torus overlap on `side`:
//   NodalU(i), Right -> TorusV(i):   X^a Y^b q^m  |->  X^{a-b} q^{m+b}
//   NodalU(i), Left  -> TorusV(i+1): X^a Y^b q^m  |->  X^{a-b} q^{m+a}
//   EndLine Left  Q[Y_1] -> TorusV(1): Y |-> X^{-1};  EndLine Right -> TorusV(N): identity
ChartRing localized_chart(const ChartRing& r, Side side);
RingElement localize_to_V(const RingElement& e, Side side);
Monomial localize_monomial(const ChartRing& r, Side side, const Monomial& m, bool& vanishes);

// Translation automorphism: chart index i -> i - steps (tr(X_1) = X_0).
ChartRing translate(const ChartRing& r, int steps);
RingElement translate(const RingElement& e, int steps);

// Charts of the finite chain with N components.
struct ChainCharts {
  int N = 3;
  bool deformed = false;
  int K = 1;
  std::vector<ChartRing> opens;     // EndL, NodalU(1..N-1), EndR
  std::vector<ChartRing> overlaps;  // TorusV(1..N)
  // neighbours of overlap V_i: (open index, side used to localize)
  struct Incidence {
    std::size_t left_open, right_open;
    Side left_side, right_side;
  };
  std::vector<Incidence> incidence;
};
ChainCharts chain_charts(int N, bool deformed = false, int K = 1);

}  // namespace torushh
