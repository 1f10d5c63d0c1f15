#include "cmwork/verma.hpp"

#include <complex>
#include <map>
#include <sstream>

#include "cmwork/errors.hpp"

namespace cmwork {

bool GramMatrix::symmetric() const {
  for (size_t i = 0; i < entry.size(); ++i)
    for (size_t j = i + 1; j < entry.size(); ++j)
      if (entry[i][j] != entry[j][i]) return false;
  return true;
}

SMat GramMatrix::eval(const std::vector<Scalar>& cvals) const {
  int n = int(entry.size());
  SMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = entry[size_t(i)][size_t(j)].eval(cvals);
  return m;
}

int GramMatrix::rank_at(const std::vector<Scalar>& cvals) const { return eval(cvals).rank(); }

std::string VermaCharacter::str() const {
  std::ostringstream os;
  os << chi.str() << "*t^(" << lowest_exponent.str() << ") / (";
  for (size_t k = 0; k < den.size(); ++k) {
    if (den[size_t(k)].is_zero()) continue;
    std::string c = den[size_t(k)].str();
    if (k == 0) {
      os << c;
      continue;
    }
    if (!c.empty() && c[0] == '-') {
      os << " - " << c.substr(1);
    } else {
      os << " + " << c;
    }
    os << "*t";
    if (k > 1) os << "^" << k;
  }
  os << ")";
  return os.str();
}

VermaModule::VermaModule(const ReflectionGroup& g) : g_(&g), ctx_(g) {}

GradedPiece VermaModule::piece(int d) const {
  GradedPiece p;
  p.degree = d;
  p.nvars = g_->dim();
  p.nparams = ctx_.nparams();
  p.basis = monomials_of_degree(p.nvars, d);
  return p;
}

ParamScalar VermaModule::pair(const MPoly& p, const MPoly& q) const {
  ParamScalar out(ctx_.nparams());
  for (const auto& [key, cq] : q.terms()) {
    MPoly cur = p;
    for (int i = 0; i < g_->dim() && !cur.is_zero(); ++i)
      for (unsigned e = 0; e < key.exp(i); ++e) cur = ctx_.apply_dir(i, cur);
    ParamScalar constant_term = cur.coefficient(MonoKey{});
    if (!constant_term.is_zero()) out += cq * constant_term;
  }
  return out;
}

GramMatrix VermaModule::gram(int d) const {
  GramMatrix gm;
  gm.degree = d;
  gm.basis = monomials_of_degree(g_->dim(), d);
  int n = int(gm.basis.size());
  gm.entry.assign(size_t(n), std::vector<ParamScalar>(size_t(n), ParamScalar(ctx_.nparams())));
  for (int i = 0; i < n; ++i) {
    MPoly pi = MPoly::monomial(gm.basis[size_t(i)], ParamScalar::constant(Scalar(1), ctx_.nparams()),
                               g_->dim());
    for (int j = i; j < n; ++j) {
      MPoly pj = MPoly::monomial(gm.basis[size_t(j)],
                                 ParamScalar::constant(Scalar(1), ctx_.nparams()), g_->dim());
      ParamScalar v = pair(pi, pj);
      gm.entry[size_t(i)][size_t(j)] = v;
      gm.entry[size_t(j)][size_t(i)] = v;
    }
  }
  return gm;
}

std::vector<MPoly> VermaModule::singular_vectors(const std::vector<Scalar>& cvals, int d) const {
  std::vector<MPoly> out;
  if (d <= 0) return out;
  int nv = g_->dim(), np = ctx_.nparams();
  std::vector<MonoKey> basis = monomials_of_degree(nv, d);
  std::vector<MonoKey> low = monomials_of_degree(nv, d - 1);
  std::map<MonoKey, int> lowid;
  for (size_t i = 0; i < low.size(); ++i) lowid[low[i]] = int(i);

  SMat m(nv * int(low.size()), int(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) {
    MPoly f = MPoly::monomial(basis[j], ParamScalar::constant(Scalar(1), np), nv);
    for (int dir = 0; dir < nv; ++dir) {
      MPoly img = ctx_.apply_dir(dir, f).eval_params(cvals);
      for (const auto& [key, coef] : img.terms())
        m.at(dir * int(low.size()) + lowid.at(key), int(j)) = coef.constant_value();
    }
  }
  for (const std::vector<Scalar>& v : m.nullspace()) {
    MPoly f = MPoly::zero(nv, np);
    for (size_t j = 0; j < basis.size(); ++j)
      if (!v[j].is_zero()) f.add_term(basis[j], ParamScalar::constant(v[j], np));
    out.push_back(std::move(f));
  }
  return out;
}

int VermaModule::submodule_dimension(const std::vector<Scalar>& cvals, int d) const {
  int nv = g_->dim();
  std::vector<MonoKey> basis = monomials_of_degree(nv, d);
  std::map<MonoKey, int> id;
  for (size_t i = 0; i < basis.size(); ++i) id[basis[i]] = int(i);
  std::vector<std::vector<Scalar>> rows;
  for (int dp = 1; dp <= d; ++dp) {
    std::vector<MPoly> sing = singular_vectors(cvals, dp);
    for (const MPoly& s : sing) {
      MPoly sv = s.eval_params(cvals);
      for (const MonoKey& mk : monomials_of_degree(nv, d - dp)) {
        std::vector<Scalar> row(basis.size(), Scalar(0));
        for (const auto& [key, coef] : sv.terms())
          row[size_t(id.at(key.times(mk)))] = coef.constant_value();
        rows.push_back(std::move(row));
      }
    }
  }
  if (rows.empty()) return 0;
  SMat m(int(rows.size()), int(basis.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) m.at(int(i), int(j)) = rows[i][j];
  return m.rank();
}

VermaCharacter VermaModule::character(bool sign_rep, int elem) const {
  VermaCharacter ch;
  int np = ctx_.nparams();
  Rational half_dim(g_->dim());
  half_dim /= 2;
  ParamScalar ex = ParamScalar::constant(Scalar(half_dim), np);
  for (const Reflection& r : g_->reflections()) {
    if (sign_rep)
      ex += ParamScalar::param(r.cls, np);
    else
      ex -= ParamScalar::param(r.cls, np);
  }
  ch.lowest_exponent = ex;
  const SMat& m = g_->matrix(elem);
  std::vector<Scalar> e = m.elementary_symmetric_eigen();
  ch.chi = sign_rep ? e.back() : Scalar(1);  // e_n = det
  ch.den.resize(e.size());
  for (size_t k = 0; k < e.size(); ++k)
    ch.den[k] = (k % 2 == 0) ? e[k] : -e[k];
  return ch;
}

Rank1Spectrum rank1_spectrum(int m, const Rational& c, int n_max) {
  if (m < 2) throw ConfigError("cyclic order must be at least 2");
  Rank1Spectrum sp;
  sp.m = m;
  sp.c = c;
  sp.b.resize(size_t(n_max) + 1, Rational(0));
  sp.a.resize(size_t(n_max) + 1, Rational(1));
  for (int n = 1; n <= n_max; ++n) {
    long ceil_nm = (n + m - 1) / m;
    sp.b[size_t(n)] = Rational(2) * c * Rational(long(m) * ceil_nm - n);
    sp.a[size_t(n)] = sp.a[size_t(n) - 1] * (Rational(n) - sp.b[size_t(n)]);
    if (sp.r < 0 && sp.b[size_t(n)] == Rational(n)) {
      sp.r = n;
      if (n % m == 0)
        throw MathError("kernel degree divisible by the cyclic order; spectrum inconsistent");
    }
  }
  return sp;
}

std::vector<long> essential_quotient_hilbert(const VermaModule& vm,
                                             const std::vector<Scalar>& cvals, int degree_cap) {
  const ReflectionGroup& g = vm.group();
  int nv = g.dim();

  // Dimension of the subspace fixed by the whole group.
  SMat fixed(nv * g.num_generators(), nv);
  for (int i = 0; i < g.num_generators(); ++i) {
    const SMat& m = g.matrix(g.generator(i));
    for (int r = 0; r < nv; ++r)
      for (int c = 0; c < nv; ++c)
        fixed.at(i * nv + r, c) = m.at(r, c) - (r == c ? Scalar(1) : Scalar(0));
  }
  int nfixed = nv - fixed.rank();

  // Ambient quotient dimensions, with singular vectors computed once per
  // degree and reused for every higher degree.
  std::vector<std::vector<MPoly>> sing(size_t(degree_cap) + 1);
  std::vector<long> ambient = {1};
  std::vector<long> essential = {1};
  for (int d = 1; d <= degree_cap && essential.back() != 0; ++d) {
    sing[size_t(d)] = vm.singular_vectors(cvals, d);
    std::vector<MonoKey> basis = monomials_of_degree(nv, d);
    std::map<MonoKey, int> id;
    for (size_t i = 0; i < basis.size(); ++i) id[basis[i]] = int(i);
    std::vector<std::vector<Scalar>> rows;
    for (int dp = 1; dp <= d; ++dp)
      for (const MPoly& s : sing[size_t(dp)])
        for (const MonoKey& mk : monomials_of_degree(nv, d - dp)) {
          std::vector<Scalar> row(basis.size(), Scalar(0));
          for (const auto& [key, coef] : s.terms())
            row[size_t(id.at(key.times(mk)))] = coef.constant_value();
          rows.push_back(std::move(row));
        }
    int rank = 0;
    if (!rows.empty()) {
      SMat m(int(rows.size()), int(basis.size()));
      for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) m.at(int(i), int(j)) = rows[i][j];
      rank = m.rank();
    }
    ambient.push_back(long(basis.size()) - rank);

    // Divide out the free fixed directions: multiply by (1 - t)^nfixed.
    long h = 0;
    for (int j = 0; j <= nfixed && j <= d; ++j) {
      long binom = 1;
      for (int t = 0; t < j; ++t) binom = binom * (nfixed - t) / (t + 1);
      h += (j % 2 == 0 ? 1 : -1) * binom * ambient[size_t(d - j)];
    }
    if (h < 0)
      throw MathError("essential quotient dimension went negative; pairing did not split");
    essential.push_back(h);
  }
  return essential;
}

double rank1_b_float(int m, const std::vector<double>& cj, int n) {
  if (int(cj.size()) != m - 1) throw ConfigError("need one coupling per nontrivial character");
  std::complex<double> sum = 0.0;
  const double tau = 6.283185307179586476925286766559;
  for (int j = 1; j < m; ++j) {
    std::complex<double> lam_j = std::polar(1.0, tau * j / m);
    std::complex<double> lam_jn = std::polar(1.0, tau * double(long(j) * n % m) / m);
    sum += cj[size_t(j - 1)] * (1.0 - lam_jn) / (1.0 - lam_j);
  }
  return 2.0 * sum.real();
}

}  // namespace cmwork
