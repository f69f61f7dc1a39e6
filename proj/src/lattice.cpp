#include "bohr/lattice.hpp"

#include <cmath>
#include <vector>

namespace bohr {

namespace {

struct EnumState {
  const Mat& mu;
  const Vec& bnorm2;
  const Vec& tcoord;
  double radius2;
  long budget;
  int branch_cap;
  long nodes = 0;
  std::vector<long> c;
  const std::function<bool(const long*, Eigen::Index, double)>& visit;

  bool rec(Eigen::Index i, double d2) {
    const Eigen::Index n = bnorm2.size();
    if (i < 0) return visit(c.data(), n, d2);
    if (++nodes > budget) return true;
    double center = tcoord[i];
    for (Eigen::Index j = i + 1; j < n; ++j)
      center -= static_cast<double>(c[j]) * mu(j, i);
    const long c0 = std::llround(center);
    // zig-zag around the center; each side stops once it exceeds the radius
    bool lo_open = true, hi_open = true;
    for (int step = 0; step < branch_cap && (lo_open || hi_open); ++step) {
      long cand;
      if (step == 0)
        cand = c0;
      else if (step % 2 == 1)
        cand = c0 + (step + 1) / 2;
      else
        cand = c0 - step / 2;
      bool hi_side = (step == 0) ? true : (step % 2 == 1);
      if (step != 0 && ((hi_side && !hi_open) || (!hi_side && !lo_open)))
        continue;
      double diff = static_cast<double>(cand) - center;
      double nd2 = d2 + diff * diff * bnorm2[i];
      if (nd2 > radius2) {
        if (step == 0) return false;  // nearest choice already out: all are
        if (hi_side)
          hi_open = false;
        else
          lo_open = false;
        continue;
      }
      c[i] = cand;
      if (rec(i - 1, nd2)) return true;
    }
    return false;
  }
};

}  // namespace

long enumerate_close_vectors(
    const Mat& rows, const Gso<double>& gso, const Vec& target,
    const EnumOptions& opt,
    const std::function<bool(const long*, Eigen::Index, double)>& visit) {
  const Eigen::Index n = rows.rows();
  Vec tcoord(n);
  for (Eigen::Index i = 0; i < n; ++i)
    tcoord[i] = target.dot(gso.bstar.row(i)) / gso.bnorm2[i];
  EnumState st{gso.mu,          gso.bnorm2,     tcoord, opt.radius * opt.radius,
               opt.node_budget, opt.branch_cap, 0,      {},
               visit};
  st.c.assign(static_cast<size_t>(n), 0);
  st.rec(n - 1, 0.0);
  return st.nodes;
}

}  // namespace bohr
