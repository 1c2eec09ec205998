#include "bergman/symbol.hpp"

#include <cmath>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/quad.hpp"

namespace bergman {

using cd = std::complex<double>;

namespace {

cd ipow(cd x, int e) {
  cd out = 1.0;
  if (e < 0) {
    x = 1.0 / x;
    e = -e;
  }
  while (e > 0) {
    if (e & 1) out *= x;
    x *= x;
    e >>= 1;
  }
  return out;
}

double ipow(double x, int e) {
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

Eigen::VectorXd block_radii(const Eigen::VectorXcd& z, const Partition& p) {
  Eigen::VectorXd r(p.m());
  for (int j = 0; j < p.m(); ++j) r(j) = z.segment(p.offset(j), p.block_size(j)).norm();
  return r;
}

Eigen::VectorXcd block_direction(const Eigen::VectorXcd& z, const Partition& p, int j, double rj) {
  if (rj > 0.0) return z.segment(p.offset(j), p.block_size(j)) / rj;
  Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(p.block_size(j));
  xi(0) = 1.0;
  return xi;
}

std::string format_point(const Eigen::VectorXcd& z) {
  std::ostringstream os;
  os.precision(6);
  os << '[';
  for (Eigen::Index i = 0; i < z.size(); ++i) os << (i ? ", " : "") << z(i).real() << (z(i).imag() < 0 ? "-" : "+") << std::abs(z(i).imag()) << 'i';
  os << ']';
  return os.str();
}

// Sup estimate and realness on validation samples; throws on non-finite values.
struct SampleSummary {
  double sup = 0.0;
  bool real = true;
};

SampleSummary summarize(const Evaluator& eval, const Partition& p, const ValidationOptions& opts, const std::string& name) {
  RandomStream rng(opts.seed, 0xB0B);
  BallSampler sample(p.n(), 0.0);
  SampleSummary s;
  const int count = std::max(opts.samples, 1);
  for (int i = 0; i < count; ++i) {
    const Eigen::VectorXcd z = sample(rng);
    const cd v = eval(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InputError("symbol '" + name + "' is not finite at z = " + format_point(z));
    s.sup = std::max(s.sup, std::abs(v));
    if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v))) s.real = false;
  }
  return s;
}

void check_block(const Partition& p, int j) {
  if (j < 0 || j >= p.m()) throw InputError("block index out of range");
}

cd radial_poly_value(const std::vector<RadialTerm>& terms, const Eigen::VectorXd& r) {
  if (terms.empty()) return 1.0;
  cd acc = 0.0;
  for (const auto& t : terms) {
    cd v = t.coef;
    for (std::size_t i = 0; i < t.powers.size(); ++i) v *= ipow(r(static_cast<Eigen::Index>(i)), t.powers[i]);
    acc += v;
  }
  return acc;
}

void check_powers(const std::vector<int>& e, int size, const char* what) {
  if (static_cast<int>(e.size()) != size) throw InputError(std::string(what) + ": exponent vector has the wrong length");
  for (int v : e)
    if (v < 0) throw InputError(std::string(what) + ": exponents must be non-negative");
}

}  // namespace

std::string to_string(const InvarianceClass& c) {
  switch (c.kind) {
    case InvarianceKind::General: return "General";
    case InvarianceKind::TmInvariant: return "TmInvariant";
    case InvarianceKind::KJQuasiHomogeneous: return "KJQuasiHomogeneous(" + std::to_string(c.block) + ")";
    case InvarianceKind::QuasiRadial: return "QuasiRadial";
    case InvarianceKind::SeparatelyRadial: return "SeparatelyRadial";
    case InvarianceKind::Radial: return "Radial";
  }
  return "?";
}

std::string to_string(const Group& g) {
  switch (g.kind) {
    case GroupKind::Tm: return "T^m";
    case GroupKind::UkjT: return "U(k," + std::to_string(g.block) + ",T)";
    case GroupKind::Uk: return "U(k)";
    case GroupKind::Tn: return "T^n";
    case GroupKind::Un: return "U(n)";
  }
  return "?";
}

bool guarantees(const InvarianceClass& c, const Group& g) {
  switch (c.kind) {
    case InvarianceKind::Radial: return true;
    case InvarianceKind::QuasiRadial: return g.kind != GroupKind::Un;
    case InvarianceKind::KJQuasiHomogeneous:
      return g.kind == GroupKind::Tm || (g.kind == GroupKind::UkjT && g.block == c.block);
    case InvarianceKind::SeparatelyRadial: return g.kind == GroupKind::Tn || g.kind == GroupKind::Tm;
    case InvarianceKind::TmInvariant: return g.kind == GroupKind::Tm;
    case InvarianceKind::General: return false;
  }
  return false;
}

std::optional<Group> defining_group(const InvarianceClass& c) {
  switch (c.kind) {
    case InvarianceKind::Radial: return Group::un();
    case InvarianceKind::QuasiRadial: return Group::uk();
    case InvarianceKind::KJQuasiHomogeneous: return Group::ukjt(c.block);
    case InvarianceKind::SeparatelyRadial: return Group::tn();
    case InvarianceKind::TmInvariant: return Group::tm();
    case InvarianceKind::General: return std::nullopt;
  }
  return std::nullopt;
}

Symbol::Symbol(Partition p, Evaluator eval, InvarianceClass cls, double bound, std::string name,
               SymbolPayloads payloads, bool real_valued)
    : partition_(std::move(p)),
      eval_(std::move(eval)),
      class_(cls),
      bound_(bound),
      name_(std::move(name)),
      payloads_(std::move(payloads)),
      real_(real_valued) {
  if (!eval_) throw InputError("symbol needs an evaluator");
  if (class_.kind == InvarianceKind::KJQuasiHomogeneous) check_block(partition_, class_.block);
}

Symbol from_radial_profile(const Partition& p, RadialProfile profile, std::string name, const ValidationOptions& opts) {
  if (!profile) throw InputError("empty radial profile");
  Evaluator eval = [p, profile](const Eigen::VectorXcd& z) { return profile(block_radii(z, p)); };
  const auto s = summarize(eval, p, opts, name);
  const InvarianceClass cls{p.m() == 1 ? InvarianceKind::Radial : InvarianceKind::QuasiRadial, -1};
  SymbolPayloads payloads;
  payloads.profile = std::move(profile);
  return Symbol(p, std::move(eval), cls, s.sup, std::move(name), std::move(payloads), s.real);
}

Symbol from_f(const Partition& p, int j, FFunction f, std::string name, const ValidationOptions& opts) {
  check_block(p, j);
  if (!f) throw InputError("empty f");
  RandomStream rng(opts.seed, 0xF);
  BallSampler sample(p.n(), 0.0);
  for (int i = 0; i < opts.samples; ++i) {
    const auto z = sample(rng);
    const Eigen::VectorXd r = block_radii(z, p);
    const Eigen::VectorXcd xi = block_direction(z, p, j, r(j));
    const cd eta = rng.phase();
    const cd base = f(r, xi);
    const cd rotated = f(r, (eta * xi).eval());
    if (std::abs(rotated - base) > opts.tol * (1.0 + std::abs(base)))
      throw InputError("f of symbol '" + name + "' is not invariant under a common phase: witness xi = " +
                       format_point(xi) + ", eta = " + format_point(Eigen::VectorXcd::Constant(1, eta)) +
                       ", deviation " + std::to_string(std::abs(rotated - base)));
  }
  Evaluator eval = [p, j, f](const Eigen::VectorXcd& z) {
    const Eigen::VectorXd r = block_radii(z, p);
    return f(r, block_direction(z, p, j, r(j)));
  };
  const auto s = summarize(eval, p, opts, name);
  SymbolPayloads payloads;
  InvarianceClass cls{InvarianceKind::KJQuasiHomogeneous, j};
  if (p.block_size(j) == 1) {
    cls = {p.m() == 1 ? InvarianceKind::Radial : InvarianceKind::QuasiRadial, -1};
    payloads.profile = [f](const Eigen::VectorXd& r) { return f(r, Eigen::VectorXcd::Ones(1)); };
  }
  payloads.f = FForm{j, std::move(f)};
  return Symbol(p, std::move(eval), cls, s.sup, std::move(name), std::move(payloads), s.real);
}

Symbol from_g(const Partition& p, int j, GFunction g, std::string name, const ValidationOptions& opts) {
  check_block(p, j);
  if (!g) throw InputError("empty g");
  RandomStream rng(opts.seed, 0x6);
  BallSampler sample(p.n(), 0.0);
  for (int i = 0; i < opts.samples; ++i) {
    const auto z = sample(rng);
    const Eigen::VectorXd r = block_radii(z, p);
    Eigen::VectorXd s;
    Eigen::VectorXcd t;
    split_direction(block_direction(z, p, j, r(j)), s, t);
    const cd eta = rng.phase();
    const cd base = g(r, s, t);
    const cd rotated = g(r, s, (eta * t).eval());
    if (std::abs(rotated - base) > opts.tol * (1.0 + std::abs(base)))
      throw InputError("g of symbol '" + name + "' is not invariant under a common phase of t: witness t = " +
                       format_point(t) + ", deviation " + std::to_string(std::abs(rotated - base)));
  }
  FFunction f = [g](const Eigen::VectorXd& r, const Eigen::VectorXcd& xi) {
    Eigen::VectorXd s;
    Eigen::VectorXcd t;
    split_direction(xi, s, t);
    return g(r, s, t);
  };
  Symbol out = from_f(p, j, f, name, opts);
  SymbolPayloads payloads = out.payloads();
  payloads.g = GForm{j, std::move(g)};
  return Symbol(p, out.evaluator(), out.invariance(), out.bound(), std::move(name), std::move(payloads),
                out.real_valued());
}

bool is_unitary(const Eigen::MatrixXcd& A, double tol) {
  if (A.rows() != A.cols()) return false;
  return (A.adjoint() * A - Eigen::MatrixXcd::Identity(A.rows(), A.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_block_diagonal(const Eigen::MatrixXcd& A, const Partition& p) {
  if (A.rows() != p.n() || A.cols() != p.n()) return false;
  for (int r = 0; r < p.n(); ++r)
    for (int c = 0; c < p.n(); ++c)
      if (p.block_of(r) != p.block_of(c) && std::abs(A(r, c)) > 1e-14) return false;
  return true;
}

namespace {

bool is_diagonal(const Eigen::MatrixXcd& A) {
  for (Eigen::Index r = 0; r < A.rows(); ++r)
    for (Eigen::Index c = 0; c < A.cols(); ++c)
      if (r != c && std::abs(A(r, c)) > 1e-14) return false;
  return true;
}

}  // namespace

Symbol act(const Eigen::MatrixXcd& A, const Symbol& a) {
  const Partition& p = a.partition();
  if (A.rows() != p.n() || !is_unitary(A)) throw InputError("act: A must be a unitary n x n matrix");
  const Eigen::MatrixXcd Ainv = A.adjoint();
  const Evaluator base = a.evaluator();
  Evaluator eval = [base, Ainv](const Eigen::VectorXcd& z) { return base((Ainv * z).eval()); };

  const InvarianceClass c = a.invariance();
  InvarianceClass out{InvarianceKind::General, -1};
  SymbolPayloads payloads;
  if (c.kind == InvarianceKind::Radial) {
    out = c;
    payloads.profile = a.payloads().profile;
  } else if (is_block_diagonal(A, p)) {
    const bool diagonal = is_diagonal(A);
    out = c;
    if (c.kind == InvarianceKind::SeparatelyRadial && !diagonal) out = {InvarianceKind::TmInvariant, -1};
    payloads.profile = a.payloads().profile;
    if (const auto& f = a.payloads().f) {
      const int j = f->block;
      const Eigen::MatrixXcd Aj = Ainv.block(p.offset(j), p.offset(j), p.block_size(j), p.block_size(j));
      const FFunction fj = f->f;
      payloads.f = FForm{j, [fj, Aj](const Eigen::VectorXd& r, const Eigen::VectorXcd& xi) { return fj(r, (Aj * xi).eval()); }};
    }
    if (const auto& g = a.payloads().g) {
      const int j = g->block;
      const Eigen::MatrixXcd Aj = Ainv.block(p.offset(j), p.offset(j), p.block_size(j), p.block_size(j));
      if (is_diagonal(Aj)) {
        const Eigen::VectorXcd d = Aj.diagonal();
        const GFunction gj = g->g;
        payloads.g = GForm{j, [gj, d](const Eigen::VectorXd& r, const Eigen::VectorXd& s, const Eigen::VectorXcd& t) {
                             return gj(r, s, d.cwiseProduct(t).eval());
                           }};
      }
    }
  }
  return Symbol(p, std::move(eval), out, a.bound(), "A." + a.name(), std::move(payloads), a.real_valued());
}

Eigen::MatrixXcd sample_group(const Group& g, const Partition& p, RandomStream& rng) {
  switch (g.kind) {
    case GroupKind::Tm: {
      Eigen::VectorXcd d(p.n());
      for (int j = 0; j < p.m(); ++j) d.segment(p.offset(j), p.block_size(j)).setConstant(rng.phase());
      return d.asDiagonal();
    }
    case GroupKind::UkjT: {
      check_block(p, g.block);
      Eigen::MatrixXcd A = haar_uk_sample(p, rng);
      const int j = g.block;
      A.block(p.offset(j), p.offset(j), p.block_size(j), p.block_size(j)) =
          rng.phase() * Eigen::MatrixXcd::Identity(p.block_size(j), p.block_size(j));
      return A;
    }
    case GroupKind::Uk: return haar_uk_sample(p, rng);
    case GroupKind::Tn: {
      Eigen::VectorXcd d(p.n());
      for (int i = 0; i < p.n(); ++i) d(i) = rng.phase();
      return d.asDiagonal();
    }
    case GroupKind::Un: return haar_unitary(p.n(), rng);
  }
  throw InputError("unknown group");
}

InvarianceReport check_invariance(const Symbol& a, const Group& g, int samples, double tol, RandomStream& rng) {
  const Partition& p = a.partition();
  BallSampler sample(p.n(), 0.0);
  InvarianceReport rep;
  rep.group = g;
  rep.samples = samples;
  rep.tol = tol;
  for (int i = 0; i < samples; ++i) {
    const auto z = sample(rng);
    const auto A = sample_group(g, p, rng);
    const double dev = std::abs(a((A.adjoint() * z).eval()) - a(z));
    if (i == 0 || dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.witness_z = z;
      rep.witness_A = A;
    }
  }
  rep.passed = rep.max_deviation <= tol;
  return rep;
}

Eigen::VectorXcd canonical_point(const Eigen::VectorXd& r, const Partition& p) {
  if (r.size() != p.m()) throw InputError("radius vector does not match the partition");
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(p.n());
  for (int j = 0; j < p.m(); ++j) z(p.offset(j)) = r(j);
  return z;
}

double QuasiRadialized::standard_error(const Eigen::VectorXcd& z) const {
  const auto& us = *unitaries;
  const auto N = static_cast<double>(us.size());
  cd s = 0.0;
  double s2 = 0.0;
  for (const auto& A : us) {
    const cd v = (*source)((A.adjoint() * z).eval());
    s += v;
    s2 += std::norm(v);
  }
  const double var = std::max(0.0, s2 / N - std::norm(s / N));
  return std::sqrt(var / (N - 1.0));
}

QuasiRadialized quasi_radialize(const Symbol& a, int samples, RandomStream& rng) {
  if (samples < 2) throw InputError("quasi_radialize needs at least two samples");
  const Partition& p = a.partition();
  auto us = std::make_shared<std::vector<Eigen::MatrixXcd>>();
  us->reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) us->push_back(haar_uk_sample(p, rng).adjoint());
  auto inverses = std::shared_ptr<const std::vector<Eigen::MatrixXcd>>(us);
  auto source = std::make_shared<const Symbol>(a);
  Evaluator eval = [inverses, source](const Eigen::VectorXcd& z) {
    cd acc = 0.0;
    for (const auto& Ainv : *inverses) acc += (*source)((Ainv * z).eval());
    return acc / static_cast<double>(inverses->size());
  };
  SymbolPayloads payloads;
  payloads.profile = [eval, p](const Eigen::VectorXd& r) { return eval(canonical_point(r, p)); };
  const InvarianceClass cls{p.m() == 1 ? InvarianceKind::Radial : InvarianceKind::QuasiRadial, -1};
  Symbol avg(p, eval, cls, a.bound(), "avg(" + a.name() + ")", std::move(payloads), a.real_valued());
  auto unitaries = std::make_shared<std::vector<Eigen::MatrixXcd>>();
  unitaries->reserve(inverses->size());
  for (const auto& Ainv : *inverses) unitaries->push_back(Ainv.adjoint());
  return QuasiRadialized{std::move(avg), std::move(unitaries), std::move(source)};
}

Symbol constant_symbol(const Partition& p, cd c) {
  SymbolPayloads payloads;
  payloads.profile = [c](const Eigen::VectorXd&) { return c; };
  return Symbol(p, [c](const Eigen::VectorXcd&) { return c; }, {InvarianceKind::Radial, -1}, std::abs(c), "constant",
                std::move(payloads), c.imag() == 0.0);
}

Symbol radial_polynomial(const Partition& p, std::vector<RadialTerm> terms, std::string name) {
  for (const auto& t : terms) check_powers(t.powers, p.m(), "radial polynomial");
  return from_radial_profile(
      p, [terms](const Eigen::VectorXd& r) { return radial_poly_value(terms, r); }, std::move(name));
}

namespace {

cd xi_power(const Eigen::VectorXcd& xi, const std::vector<int>& pe, const std::vector<int>& qe, std::size_t offset) {
  cd v = 1.0;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    const std::size_t k = offset + static_cast<std::size_t>(i);
    v *= ipow(xi(i), pe[k]) * ipow(std::conj(xi(i)), qe[k]);
  }
  return v;
}

cd xi_power_all(const Eigen::VectorXcd& z, const Partition& p, const std::vector<int>& pe, const std::vector<int>& qe,
                const Eigen::VectorXd& r) {
  cd v = 1.0;
  for (int j = 0; j < p.m(); ++j)
    v *= xi_power(block_direction(z, p, j, r(j)), pe, qe, static_cast<std::size_t>(p.offset(j)));
  return v;
}

}  // namespace

Symbol phi_symbol(const Partition& p, std::vector<int> pexp, std::vector<int> qexp, std::vector<RadialTerm> profile,
                  std::string name) {
  check_powers(pexp, p.n(), "phi");
  check_powers(qexp, p.n(), "phi");
  for (const auto& t : profile) check_powers(t.powers, p.m(), "phi profile");
  std::vector<int> support;
  for (int j = 0; j < p.m(); ++j) {
    int sp = 0, sq = 0;
    bool used = false;
    for (int i = p.offset(j); i < p.offset(j) + p.block_size(j); ++i) {
      sp += pexp[static_cast<std::size_t>(i)];
      sq += qexp[static_cast<std::size_t>(i)];
      used = used || pexp[static_cast<std::size_t>(i)] != 0 || qexp[static_cast<std::size_t>(i)] != 0;
    }
    if (sp != sq) throw InputError("phi: |p_(j)| must equal |q_(j)| on every block");
    if (used) support.push_back(j);
  }
  auto prof = [profile](const Eigen::VectorXd& r) { return radial_poly_value(profile, r); };
  if (support.empty()) return from_radial_profile(p, prof, std::move(name));
  if (support.size() == 1) {
    const int j = support.front();
    std::vector<int> pj(pexp.begin() + p.offset(j), pexp.begin() + p.offset(j) + p.block_size(j));
    std::vector<int> qj(qexp.begin() + p.offset(j), qexp.begin() + p.offset(j) + p.block_size(j));
    return from_f(
        p, j,
        [prof, pj, qj](const Eigen::VectorXd& r, const Eigen::VectorXcd& xi) { return prof(r) * xi_power(xi, pj, qj, 0); },
        std::move(name));
  }
  Evaluator eval = [p, pexp, qexp, prof](const Eigen::VectorXcd& z) {
    const Eigen::VectorXd r = block_radii(z, p);
    return prof(r) * xi_power_all(z, p, pexp, qexp, r);
  };
  const auto s = summarize(eval, p, {}, name);
  return Symbol(p, std::move(eval), {InvarianceKind::TmInvariant, -1}, s.sup, std::move(name), {}, s.real);
}

Symbol pseudo_homogeneous(const Partition& p, int j, std::vector<SphereTerm> b, std::vector<int> texp, std::string name) {
  check_block(p, j);
  const int k = p.block_size(j);
  for (const auto& t : b) check_powers(t.powers, k, "pseudo-homogeneous b");
  if (static_cast<int>(texp.size()) != k) throw InputError("pseudo-homogeneous: t exponent has the wrong length");
  int total = 0;
  for (int e : texp) total += e;
  if (total != 0) throw InputError("pseudo-homogeneous: t exponents must sum to zero");
  return from_g(
      p, j,
      [b, texp](const Eigen::VectorXd&, const Eigen::VectorXd& s, const Eigen::VectorXcd& t) {
        cd bv = b.empty() ? cd(1.0) : cd(0.0);
        for (const auto& term : b) {
          cd v = term.coef;
          for (std::size_t i = 0; i < term.powers.size(); ++i) v *= ipow(s(static_cast<Eigen::Index>(i)), term.powers[i]);
          bv += v;
        }
        cd tv = 1.0;
        for (std::size_t i = 0; i < texp.size(); ++i) tv *= ipow(t(static_cast<Eigen::Index>(i)), texp[i]);
        return bv * tv;
      },
      std::move(name));
}

Symbol xi_monomial(const Partition& p, std::vector<int> pexp, std::vector<int> qexp, std::string name) {
  check_powers(pexp, p.n(), "xi monomial");
  check_powers(qexp, p.n(), "xi monomial");
  Evaluator eval = [p, pexp, qexp](const Eigen::VectorXcd& z) { return xi_power_all(z, p, pexp, qexp, block_radii(z, p)); };
  const auto s = summarize(eval, p, {}, name);
  return Symbol(p, std::move(eval), {InvarianceKind::General, -1}, s.sup, std::move(name), {}, s.real);
}

Symbol polynomial_symbol(const Partition& p, std::vector<PolynomialTerm> terms, InvarianceClass declared,
                         std::string name, const ValidationOptions& opts) {
  for (const auto& t : terms) {
    check_powers(t.p, p.n(), "polynomial");
    check_powers(t.q, p.n(), "polynomial");
  }
  if (declared.kind == InvarianceKind::KJQuasiHomogeneous) {
    check_block(p, declared.block);
    if (p.block_size(declared.block) == 1) declared = {InvarianceKind::QuasiRadial, -1};
  }
  if (declared.kind == InvarianceKind::QuasiRadial && p.m() == 1) declared = {InvarianceKind::Radial, -1};
  Evaluator eval = [terms](const Eigen::VectorXcd& z) {
    cd acc = 0.0;
    for (const auto& t : terms) {
      cd v = t.coef;
      for (std::size_t i = 0; i < t.p.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        v *= ipow(z(ii), t.p[i]) * ipow(std::conj(z(ii)), t.q[i]);
      }
      acc += v;
    }
    return acc;
  };
  const auto s = summarize(eval, p, opts, name);
  Symbol raw(p, eval, declared, s.sup, name, {}, s.real);
  if (const auto g = defining_group(declared)) {
    RandomStream rng(opts.seed, 0x1A);
    const auto rep = check_invariance(raw, *g, opts.samples, opts.tol * (1.0 + s.sup), rng);
    if (!rep.passed)
      throw InputError("polynomial symbol '" + name + "' is not " + to_string(*g) + "-invariant: witness z = " +
                       format_point(rep.witness_z) + ", deviation " + std::to_string(rep.max_deviation));
  }
  SymbolPayloads payloads;
  if (declared.kind == InvarianceKind::QuasiRadial || declared.kind == InvarianceKind::Radial) {
    payloads.profile = [eval, p](const Eigen::VectorXd& r) { return eval(canonical_point(r, p)); };
  } else if (declared.kind == InvarianceKind::KJQuasiHomogeneous) {
    const int j = declared.block;
    payloads.f = FForm{j, [eval, p, j](const Eigen::VectorXd& r, const Eigen::VectorXcd& xi) {
                         Eigen::VectorXcd z = canonical_point(r, p);
                         z.segment(p.offset(j), p.block_size(j)) = r(j) * xi;
                         return eval(z);
                       }};
  }
  return Symbol(p, std::move(eval), declared, s.sup, std::move(name), std::move(payloads), s.real);
}

}  // namespace bergman
