#include "wf/witness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wf/random.hpp"

namespace wf {

namespace {

constexpr double kPsdTol = 1e-10;

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

void require_psd_nonzero(const HermitianOperator& p, const char* name) {
  if (min_eigenvalue(p) < -kPsdTol) throw std::invalid_argument(std::string(name) + " must be positive semidefinite");
  if (p.matrix().cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument(std::string(name) + " must be nonzero");
}

void require_same_dims(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dims() != b.dims()) throw DimensionError("operators act on different spaces");
}

// Orthonormal basis of the eigenspace below -tol.
CMatrix negative_eigenspace(const HermitianOperator& w, double tol) {
  const Spectrum s = eig_hermitian(w);
  Index k = 0;
  while (k < s.eigenvalues.size() && s.eigenvalues(k) < -tol) ++k;
  return s.eigenvectors.leftCols(k);
}

}  // namespace

ClassificationReport classify(const HermitianOperator& x, const OptimizerConfig& cfg) {
  cfg.validate();
  ClassificationReport r;
  r.tol_zero = cfg.tol_zero;
  const Spectrum s = eig_hermitian(x);
  r.min_eigenvalue = s.min();
  r.is_psd = r.min_eigenvalue >= -cfg.tol_zero;
  if (!r.is_psd) r.negative_eigenvector = s.eigenvectors.col(0);
  r.minprod = min_product_expectation(x, cfg);
  r.is_witness = r.minprod.value >= -cfg.tol_zero && !r.is_psd;
  r.weakly_optimal = r.is_witness && std::abs(r.minprod.value) <= cfg.tol_zero;
  if (r.weakly_optimal) r.zero_product = r.minprod.argmin;
  return r;
}

const char* to_string(SeparabilityEvidence e) {
  switch (e) {
    case SeparabilityEvidence::PptVerified: return "ppt-verified";
    case SeparabilityEvidence::CallerAsserted: return "caller-asserted";
    case SeparabilityEvidence::BallCriterion: return "ball-criterion";
  }
  return "unknown";
}

SeparabilityEvidence separability_evidence(const HermitianOperator& sigma, bool caller_asserts_separable) {
  using R = WitnessWindowError::Reason;
  if (min_eigenvalue(sigma) < -kPsdTol) throw WitnessWindowError(R::NotPsd, "sigma is not positive semidefinite");
  const double tr = sigma.trace();
  if (!(tr > 0.0)) throw WitnessWindowError(R::NotPsd, "sigma has zero trace");
  const Index d = sigma.dim();
  if (sigma.dims().size() == 2 && d <= 6) {
    if (min_eigenvalue(partial_transpose(sigma, 1)) < -kPsdTol) {
      throw WitnessWindowError(R::NotSeparable, "sigma has a non-positive partial transpose, so it is entangled");
    }
    return SeparabilityEvidence::PptVerified;
  }
  const double radius = 1.0 / std::sqrt(static_cast<double>(d) * static_cast<double>(d - 1));
  const CMatrix offset = sigma.matrix() / tr - CMatrix::Identity(d, d) / static_cast<double>(d);
  if (offset.norm() <= radius * (1.0 + 1e-12)) return SeparabilityEvidence::BallCriterion;
  if (caller_asserts_separable) return SeparabilityEvidence::CallerAsserted;
  throw WitnessWindowError(R::NotSeparable,
                           "separability of sigma cannot be verified above 6 dimensions; assert it explicitly");
}

CanonicalWitness witness_from_separable(const HermitianOperator& sigma, double c, const OptimizerConfig& cfg,
                                        bool caller_asserts_separable) {
  using R = WitnessWindowError::Reason;
  cfg.validate();
  const SeparabilityEvidence evidence = separability_evidence(sigma, caller_asserts_separable);
  const double lam = min_eigenvalue(sigma);
  if (c <= lam) {
    throw WitnessWindowError(R::NoWitness, "not a witness: sigma - cI is PSD (c = " + fmt(c) +
                                               " <= lambda_min = " + fmt(lam) + ")");
  }
  const MinProdResult mp = min_product_expectation(sigma, cfg);
  if (c > mp.value + cfg.tol_zero) {
    throw WitnessWindowError(R::NegativeOnProduct,
                             "negative on a product vector: c = " + fmt(c) + " exceeds minprod = " + fmt(mp.value),
                             mp.argmin);
  }
  return {sigma, c, sigma.shifted(-c), evidence, false, lam, mp.value};
}

CanonicalWitness dual_witness_from_separable(const HermitianOperator& sigma, double c, const OptimizerConfig& cfg,
                                             bool caller_asserts_separable) {
  using R = WitnessWindowError::Reason;
  cfg.validate();
  const SeparabilityEvidence evidence = separability_evidence(sigma, caller_asserts_separable);
  const double lam = max_eigenvalue(sigma);
  if (c >= lam) {
    throw WitnessWindowError(R::NoWitness, "not a witness: cI - sigma is PSD (c = " + fmt(c) +
                                               " >= lambda_max = " + fmt(lam) + ")");
  }
  const MinProdResult mp = max_product_expectation(sigma, cfg);
  if (c < mp.value - cfg.tol_zero) {
    throw WitnessWindowError(R::NegativeOnProduct,
                             "negative on a product vector: c = " + fmt(c) + " is below maxprod = " + fmt(mp.value),
                             mp.argmin);
  }
  HermitianOperator op = (-sigma).shifted(c);
  return {sigma, c, std::move(op), evidence, true, lam, mp.value};
}

Theorem1Report check_theorem1(const HermitianOperator& sigma, const OptimizerConfig& cfg) {
  Theorem1Report r;
  const HermitianOperator pt = partial_transpose(sigma, 1);
  const Spectrum spt = eig_hermitian(pt);
  r.cmax = min_product_expectation(sigma, cfg).value;
  r.lambda_min_pt = spt.min();
  r.agree = std::abs(r.cmax - r.lambda_min_pt) <= kTheoremTol;
  r.cmin = max_product_expectation(sigma, cfg).value;
  r.lambda_max_pt = spt.max();
  r.dual_agree = std::abs(r.cmin - r.lambda_max_pt) <= kTheoremTol;
  r.lambda_min_sigma = min_eigenvalue(sigma);
  r.witness_pt_psd = r.lambda_min_pt - r.cmax >= -cfg.tol_zero;
  r.window_lo = std::max(r.lambda_min_sigma, r.lambda_min_pt);
  r.window_hi = r.cmax;
  return r;
}

Corollary3Report check_corollary3(const HermitianOperator& sigma, const OptimizerConfig& cfg) {
  Corollary3Report r;
  r.minprod_sigma = min_product_expectation(sigma, cfg).value;
  r.minprod_pt = min_product_expectation(partial_transpose(sigma, 1), cfg).value;
  r.gap = std::abs(r.minprod_sigma - r.minprod_pt);
  r.pass = r.gap <= kTheoremTol;
  return r;
}

const char* to_string(Fineness f) {
  switch (f) {
    case Fineness::Finer: return "finer";
    case Fineness::NotFiner: return "not-finer";
    case Fineness::Undetermined: return "undetermined";
  }
  return "unknown";
}

FinenessResult is_finer(const CanonicalWitness& w1, const CanonicalWitness& w2) {
  require_same_dims(w1.op, w2.op);
  if (w1.dual != w2.dual || w1.sigma.max_abs_diff(w2.sigma) > 1e-12) {
    throw std::invalid_argument("exact fineness needs canonical witnesses over the same sigma and orientation");
  }
  FinenessResult r;
  // tr(W2 rho) - tr(W1 rho) = c1 - c2 (or c2 - c1 for the dual form) on unit-trace rho.
  const bool finer = w1.dual ? w2.c <= w1.c : w2.c >= w1.c;
  r.verdict = finer ? Fineness::Finer : Fineness::NotFiner;
  if (!finer) {
    // A unit-trace state between the two thresholds: detected by W1 only.
    const CMatrix e = negative_eigenspace(w1.op, 0.0).leftCols(1);
    if (e.cols() == 1) {
      const double d = static_cast<double>(w1.op.dim());
      const double neg = w1.op.trace_product(HermitianOperator::projector(w1.op.dims(), e.col(0)));
      const double mixed = w1.op.trace() / d;
      const double gap = std::abs(w1.c - w2.c);
      // rho_t = (1-t) |e><e| + t I/d with tr(W1 rho_t) in (-gap, 0)
      if (mixed > 0.0) {
        const double t_zero = -neg / (mixed - neg);
        const double t = std::max(0.0, t_zero - 0.5 * gap / (mixed - neg));
        HermitianOperator rho = HermitianOperator::projector(w1.op.dims(), e.col(0)).scaled(1.0 - t) +
                                HermitianOperator::identity(w1.op.dims()).scaled(t / d);
        if (w1.op.trace_product(rho) < 0.0 && w2.op.trace_product(rho) >= 0.0) r.counterexample = rho;
      }
    }
  }
  return r;
}

FinenessResult is_finer(const HermitianOperator& w1, const HermitianOperator& w2, const OptimizerConfig& cfg,
                        int samples) {
  require_same_dims(w1, w2);
  cfg.validate();
  FinenessResult r;
  const double t1 = w1.trace(), t2 = w2.trace();
  if (t1 != 0.0 && t2 != 0.0 && (t1 > 0.0) == (t2 > 0.0) &&
      w1.scaled(1.0 / t1).max_abs_diff(w2.scaled(1.0 / t2)) <= 1e-12) {
    r.verdict = Fineness::Finer;
    return r;
  }
  if (min_eigenvalue(w1 - w2) >= -1e-12) {
    r.verdict = Fineness::Finer;
    return r;
  }
  const CMatrix neg = negative_eigenspace(w1, 0.0);
  Rng rng = make_stream(cfg.seed, 0x5eedf00dULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& dims = w1.dims();
  for (int s = 0; s < samples; ++s) {
    HermitianOperator rho = random_density_matrix(dims, rng);
    if (neg.cols() > 0) {
      const CVector mix = neg * random_unit_vector(neg.cols(), rng);
      const double t = unit(rng);
      rho = HermitianOperator::projector(dims, mix).scaled(1.0 - t) + rho.scaled(t);
    }
    if (w1.trace_product(rho) >= 0.0) continue;
    ++r.detected_samples;
    if (w2.trace_product(rho) >= 0.0) {
      r.verdict = Fineness::NotFiner;
      r.counterexample = rho;
      return r;
    }
  }
  r.verdict = Fineness::Undetermined;
  return r;
}

const char* to_string(PerturbationClass c) {
  switch (c) {
    case PerturbationClass::InZeroSpan: return "i";
    case PerturbationClass::OutsideNotCovering: return "ii";
    case PerturbationClass::OutsideCovering: return "iii";
  }
  return "unknown";
}

namespace {

PerturbationReport perturb(const HermitianOperator& w, const HermitianOperator& p, double sign,
                           const OptimizerConfig& cfg) {
  PerturbationReport rep;
  rep.base = classify(w, cfg);
  rep.result = classify(sign > 0.0 ? w + p : w - p, cfg);
  rep.witness_survives = rep.base.is_witness && rep.result.is_witness;
  rep.weak_optimality_survives = rep.base.weakly_optimal && rep.result.weakly_optimal;
  if (rep.base.zero_product) {
    rep.vanishes_at_zero_product = product_expectation(p, *rep.base.zero_product) <= cfg.tol_zero;
  }

  const CMatrix neg = negative_eigenspace(w, cfg.tol_zero);
  const Spectrum sp = eig_hermitian(p);
  Index first = 0;
  while (first < sp.eigenvalues.size() && sp.eigenvalues(first) <= 1e-10 * std::max(1.0, sp.max())) ++first;
  const CMatrix support = sp.eigenvectors.rightCols(sp.eigenvalues.size() - first);
  if (neg.cols() > 0) {
    const CMatrix inside = support.adjoint() * neg;
    rep.orthogonal_to_negative_space = inside.cwiseAbs().maxCoeff() <= 1e-8;
    const CMatrix outside = neg - support * inside;
    rep.covers_negative_space = outside.cwiseAbs().maxCoeff() <= 1e-8;
  }

  if (rep.base.minprod.value >= -cfg.tol_zero) {
    std::vector<ProductVector> zeros = collect_zero_products(w, cfg);
    if (rep.result.zero_product && std::abs(product_expectation(w, *rep.result.zero_product)) <= cfg.tol_zero) {
      zeros.push_back(*rep.result.zero_product);
    }
    if (!zeros.empty()) {
      const bool in_span = std::any_of(zeros.begin(), zeros.end(), [&](const ProductVector& z) {
        return product_expectation(p, z) <= cfg.tol_zero;
      });
      if (in_span) {
        rep.zero_set_class = PerturbationClass::InZeroSpan;
      } else {
        rep.zero_set_class =
            rep.covers_negative_space ? PerturbationClass::OutsideCovering : PerturbationClass::OutsideNotCovering;
      }
    }
  }
  return rep;
}

}  // namespace

PerturbationReport perturb_add_positive(const HermitianOperator& w, const HermitianOperator& p,
                                        const OptimizerConfig& cfg) {
  require_same_dims(w, p);
  require_psd_nonzero(p, "P");
  return perturb(w, p, 1.0, cfg);
}

PerturbationReport perturb_subtract_positive(const HermitianOperator& w, const HermitianOperator& q,
                                             const OptimizerConfig& cfg) {
  require_same_dims(w, q);
  require_psd_nonzero(q, "Q");
  return perturb(w, q, -1.0, cfg);
}

double quantify_over_set(const HermitianOperator& rho, const std::vector<HermitianOperator>& witnesses) {
  if (witnesses.empty()) throw std::invalid_argument("witness set is empty");
  if (std::abs(rho.trace() - 1.0) > 1e-10 || min_eigenvalue(rho) < -kPsdTol) {
    throw std::invalid_argument("rho must be a unit-trace PSD state");
  }
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& w : witnesses) {
    require_same_dims(rho, w);
    lowest = std::min(lowest, w.trace_product(rho));
  }
  return std::max(0.0, -lowest);
}

HyperplaneForm to_hyperplane_form(const CanonicalWitness& cw) {
  if (cw.dual) throw std::invalid_argument("hyperplane form applies to sigma - cI witnesses");
  return {cw.sigma, cw.c * static_cast<double>(cw.sigma.dim())};
}

HermitianOperator from_hyperplane_form(const HyperplaneForm& h) {
  return h.sigma.shifted(-h.c_prime / static_cast<double>(h.sigma.dim()));
}

}  // namespace wf
