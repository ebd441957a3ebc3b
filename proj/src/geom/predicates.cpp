#include "ncp/geom/predicates.hpp"

#include <cfloat>
#include <cmath>

namespace ncp::geom {
namespace {

// --- exact expansion arithmetic -------------------------------------------
// An expansion is a sum of doubles with nonoverlapping bits, stored by
// increasing magnitude. The routines below follow Shewchuk's construction;
// sizes stay small (<= a few hundred components) so fixed buffers suffice.

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  double bv = x - a;
  double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void two_diff(double a, double b, double& x, double& y) {
  x = a - b;
  double bv = a - x;
  double av = x + bv;
  y = (a - av) - (b - bv);
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

// h = e + b. h may not alias e. Returns the length of h (>= 1).
int grow_expansion(int elen, const double* e, double b, double* h) {
  double q = b;
  int hn = 0;
  for (int i = 0; i < elen; ++i) {
    double qn, hh;
    two_sum(q, e[i], qn, hh);
    q = qn;
    if (hh != 0.0) h[hn++] = hh;
  }
  if (q != 0.0 || hn == 0) h[hn++] = q;
  return hn;
}

// h = e + f. h may not alias either input.
int expansion_sum(int elen, const double* e, int flen, const double* f, double* h) {
  double tmp[1536];
  int n = elen;
  const double* cur = e;
  double* bufs[2] = {tmp, h};
  int which = 0;
  for (int j = 0; j < flen; ++j) {
    double* out = bufs[which];
    n = grow_expansion(n, cur, f[j], out);
    cur = out;
    which ^= 1;
  }
  if (cur != h) {
    for (int i = 0; i < n; ++i) h[i] = cur[i];
  }
  if (n == 0) {
    h[0] = 0.0;
    n = 1;
  }
  return n;
}

// h = e * b.
int scale_expansion(int elen, const double* e, double b, double* h) {
  double q, hh;
  two_product(e[0], b, q, hh);
  int hn = 0;
  if (hh != 0.0) h[hn++] = hh;
  for (int i = 1; i < elen; ++i) {
    double p1, p0, sum;
    two_product(e[i], b, p1, p0);
    two_sum(q, p0, sum, hh);
    if (hh != 0.0) h[hn++] = hh;
    two_sum(p1, sum, q, hh);
    if (hh != 0.0) h[hn++] = hh;
  }
  if (q != 0.0 || hn == 0) h[hn++] = q;
  return hn;
}

// Sign of an expansion: the component of largest magnitude is last.
int expansion_sign(int elen, const double* e) {
  double top = e[elen - 1];
  if (top > 0.0) return 1;
  if (top < 0.0) return -1;
  return 0;
}

// 4-component expansion of the cross product px*qy - py*qx.
int cross_expansion(const Point2& p, const Point2& q, double* h) {
  double a1, a0, b1, b0;
  two_product(p.x, q.y, a1, a0);
  two_product(p.y, q.x, b1, b0);
  double neg[2] = {-b0, -b1};
  double lo[4];
  int n = expansion_sum(2, neg, 0, nullptr, lo);  // normalize neg into expansion order
  (void)n;
  double ab[2] = {a0, a1};
  return expansion_sum(2, ab, 2, neg, h);
}

// Expansion of x^2 + y^2 - w (<= 5 components).
int lift_expansion(const Point2& p, double w, double* h) {
  double xx1, xx0, yy1, yy0;
  two_product(p.x, p.x, xx1, xx0);
  two_product(p.y, p.y, yy1, yy0);
  double xs[2] = {xx0, xx1};
  double ys[2] = {yy0, yy1};
  double t[4];
  int tn = expansion_sum(2, xs, 2, ys, t);
  return grow_expansion(tn, t, -w, h);
}

// h = e * f, f short (<= 8 components).
int expansion_mul(int elen, const double* e, int flen, const double* f, double* h) {
  double acc[640];
  double piece[64];
  double tmp[640];
  int an = 1;
  acc[0] = 0.0;
  for (int j = 0; j < flen; ++j) {
    int pn = scale_expansion(elen, e, f[j], piece);
    int tn = expansion_sum(an, acc, pn, piece, tmp);
    for (int i = 0; i < tn; ++i) acc[i] = tmp[i];
    an = tn;
  }
  for (int i = 0; i < an; ++i) h[i] = acc[i];
  return an;
}

// Exact sign of orient2d via [ab] + [bc] - [ac].
int orient2d_exact(const Point2& a, const Point2& b, const Point2& c) {
  double ab[4], bc[4], ac[4];
  int abn = cross_expansion(a, b, ab);
  int bcn = cross_expansion(b, c, bc);
  int acn = cross_expansion(a, c, ac);
  for (int i = 0; i < acn; ++i) ac[i] = -ac[i];
  double t[8], r[12];
  int tn = expansion_sum(abn, ab, bcn, bc, t);
  int rn = expansion_sum(tn, t, acn, ac, r);
  return expansion_sign(rn, r);
}

// Exact sign of the 4x4 lifted determinant with rows a,b,c,d and
// z_i = x_i^2 + y_i^2 - w_i:  det = za*O(bcd) - zb*O(acd) + zc*O(abd) - zd*O(abc)
// where O(pqr) is the orientation expansion of the row triple.
int incircle_power_exact(const Point2& a, double wa, const Point2& b, double wb, const Point2& c,
                         double wc, const Point2& d, double wd) {
  double ab[4], bc[4], cd[4], da[4], ac[4], bd[4];
  int abn = cross_expansion(a, b, ab);
  int bcn = cross_expansion(b, c, bc);
  int cdn = cross_expansion(c, d, cd);
  int dan = cross_expansion(d, a, da);
  int acn = cross_expansion(a, c, ac);
  int bdn = cross_expansion(b, d, bd);

  auto tri = [&](int xn, const double* x, int yn, const double* y, int zn, const double* z,
                 double* out) {
    double t[16];
    int tn = expansion_sum(xn, x, yn, y, t);
    return expansion_sum(tn, t, zn, z, out);
  };

  double nac[4], nbd[4], nab[4], ncd[4];
  for (int i = 0; i < acn; ++i) nac[i] = -ac[i];
  for (int i = 0; i < bdn; ++i) nbd[i] = -bd[i];
  for (int i = 0; i < abn; ++i) nab[i] = -ab[i];
  for (int i = 0; i < cdn; ++i) ncd[i] = -cd[i];

  // O(bcd) = [bc] + [cd] - [bd];  O(acd) = [ac] + [cd] - [ad] = [ac] + [cd] + [da]
  // O(abd) = [ab] + [bd] + [da];  O(abc) = [ab] + [bc] - [ac]
  double obcd[24], oacd[24], oabd[24], oabc[24];
  int obcdn = tri(bcn, bc, cdn, cd, bdn, nbd, obcd);
  int oacdn = tri(acn, ac, cdn, cd, dan, da, oacd);
  int oabdn = tri(abn, ab, bdn, bd, dan, da, oabd);
  int oabcn = tri(abn, ab, bcn, bc, acn, nac, oabc);
  (void)nab;
  (void)ncd;

  double za[5], zb[5], zc[5], zd[5];
  int zan = lift_expansion(a, wa, za);
  int zbn = lift_expansion(b, wb, zb);
  int zcn = lift_expansion(c, wc, zc);
  int zdn = lift_expansion(d, wd, zd);

  double ta[640], tb[640], tc[640], td[640];
  int tan = expansion_mul(obcdn, obcd, zan, za, ta);
  int tbn = expansion_mul(oacdn, oacd, zbn, zb, tb);
  int tcn = expansion_mul(oabdn, oabd, zcn, zc, tc);
  int tdn = expansion_mul(oabcn, oabc, zdn, zd, td);
  for (int i = 0; i < tbn; ++i) tb[i] = -tb[i];
  for (int i = 0; i < tdn; ++i) td[i] = -td[i];

  double s1[1280], s2[1280], res[1536];
  int s1n = expansion_sum(tan, ta, tbn, tb, s1);
  int s2n = expansion_sum(tcn, tc, tdn, td, s2);
  int rn = expansion_sum(s1n, s1, s2n, s2, res);
  return expansion_sign(rn, res);
}

// Filter constants. eps is half an ulp of 1 (2^-53).
const double kEps = DBL_EPSILON / 2.0;
const double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
// 4x Shewchuk's incircle A-bound; the slack covers the extra |wa-wd| terms in
// the lifted rows.
const double kIncircleBound = 4.0 * (10.0 + 96.0 * kEps) * kEps;

}  // namespace

double orient2d(const Point2& a, const Point2& b, const Point2& c) {
  double detleft = (a.x - c.x) * (b.y - c.y);
  double detright = (a.y - c.y) * (b.x - c.x);
  double det = detleft - detright;
  double detsum;
  if (detleft > 0.0) {
    if (detright <= 0.0) return det;
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return det;
    detsum = -detleft - detright;
  } else {
    return det;
  }
  double errbound = kOrientBound * detsum;
  if (det >= errbound || -det >= errbound) return det;
  return static_cast<double>(orient2d_exact(a, b, c));
}

double incircle_power(const Point2& a, double wa, const Point2& b, double wb, const Point2& c,
                      double wc, const Point2& d, double wd) {
  double adx = a.x - d.x, ady = a.y - d.y;
  double bdx = b.x - d.x, bdy = b.y - d.y;
  double cdx = c.x - d.x, cdy = c.y - d.y;

  double alift = adx * adx + ady * ady - (wa - wd);
  double blift = bdx * bdx + bdy * bdy - (wb - wd);
  double clift = cdx * cdx + cdy * cdy - (wc - wd);

  double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  double cdxady = cdx * ady, adxcdy = adx * cdy;
  double adxbdy = adx * bdy, bdxady = bdx * ady;

  double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);

  double alift_mag = adx * adx + ady * ady + std::fabs(wa - wd);
  double blift_mag = bdx * bdx + bdy * bdy + std::fabs(wb - wd);
  double clift_mag = cdx * cdx + cdy * cdy + std::fabs(wc - wd);
  double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift_mag +
                     (std::fabs(cdxady) + std::fabs(adxcdy)) * blift_mag +
                     (std::fabs(adxbdy) + std::fabs(bdxady)) * clift_mag;
  double errbound = kIncircleBound * permanent;
  if (det > errbound || -det > errbound) return det;
  return static_cast<double>(incircle_power_exact(a, wa, b, wb, c, wc, d, wd));
}

double incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  return incircle_power(a, 0.0, b, 0.0, c, 0.0, d, 0.0);
}

int incircle_power_perturbed(const Point2& a, double wa, int ia, const Point2& b, double wb, int ib,
                             const Point2& c, double wc, int ic, const Point2& d, double wd,
                             int id) {
  double det = incircle_power(a, wa, b, wb, c, wc, d, wd);
  if (det > 0.0) return 1;
  if (det < 0.0) return -1;

  // det == 0 exactly. Perturb z_i -> z_i - eps_i with eps ordered so the
  // smallest original index dominates. d(det)/d(z_row) are the signed
  // orientation cofactors, so det(eps) picks up -eps_j * cof_j for the first
  // row (by index) with a nonzero cofactor. cof(abc) is nonzero whenever abc
  // is a real triangle, so this terminates.
  struct Row {
    int index;
    int which;  // 0=a 1=b 2=c 3=d
  };
  Row rows[4] = {{ia, 0}, {ib, 1}, {ic, 2}, {id, 3}};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (rows[j].index < rows[i].index) std::swap(rows[i], rows[j]);
    }
  }
  for (const Row& row : rows) {
    double cof = 0.0;
    switch (row.which) {
      case 0:
        cof = orient2d(b, c, d);
        break;
      case 1:
        cof = -orient2d(a, c, d);
        break;
      case 2:
        cof = orient2d(a, b, d);
        break;
      case 3:
        cof = -orient2d(a, b, c);
        break;
    }
    if (cof > 0.0) return -1;
    if (cof < 0.0) return 1;
  }
  return 1;  // unreachable for valid triangles
}

}  // namespace ncp::geom
