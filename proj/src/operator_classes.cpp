#include "gcsi/operator_classes.hpp"

#include <cmath>
#include <stdexcept>

#include "search.hpp"

namespace gcsi {

namespace {

void require_square(const ComplexMatrix& a, const char* who) {
  if (!a.is_square() || a.rows() == 0)
    throw std::invalid_argument(std::string(who) + ": square operator required");
}

ModuleElement column_as_element(const ComplexMatrix& v) {
  return ModuleElement(ModuleSpace{v.rows(), 1}, v);
}

}  // namespace

ClassVerdict is_normal(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "is_normal");
  const ComplexMatrix adj = a.adjoint();
  const ComplexMatrix comm = a * adj - adj * a;
  const HermEigen he = herm_eig(comm, tol);
  const double hi = he.values.front(), lo = he.values.back();
  const double nrm = op_norm(a, tol);
  ClassVerdict out;
  out.defect = std::max(std::abs(hi), std::abs(lo)) / std::max(1.0, nrm * nrm);
  out.holds = out.defect <= tol.ineq_tol;
  if (!out.holds) {
    const std::size_t idx = std::abs(hi) >= std::abs(lo) ? 0 : a.rows() - 1;
    out.witness = column_as_element(he.vectors.column(idx));
  }
  return out;
}

ClassVerdict is_cohyponormal(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "is_cohyponormal");
  const ComplexMatrix adj = a.adjoint();
  const LoewnerResult lo = loewner_leq(gram(a), a * adj, tol);
  const double nrm = op_norm(a, tol);
  ClassVerdict out;
  out.defect = std::max(0.0, -lo.min_eigenvalue) / std::max(1.0, nrm * nrm);
  out.holds = out.defect <= tol.ineq_tol;
  if (!out.holds) out.witness = column_as_element(lo.witness);
  return out;
}

ClassVerdict is_semi_hyponormal(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "is_semi_hyponormal");
  const LoewnerResult lo =
      loewner_leq(abs_op(a.adjoint(), tol), abs_op(a, tol), tol);
  ClassVerdict out;
  out.defect = std::max(0.0, -lo.min_eigenvalue) / std::max(1.0, op_norm(a, tol));
  out.holds = out.defect <= tol.ineq_tol;
  if (!out.holds) out.witness = column_as_element(lo.witness);
  return out;
}

ClassVerdict paranormal_defect(const ComplexMatrix& a, const ModuleSpace& space,
                               const SearchConfig& cfg, const Tolerances& tol) {
  require_square(a, "paranormal_defect");
  if (a.rows() != space.n)
    throw std::invalid_argument("paranormal_defect: operator does not match space");
  validate(cfg);
  const ComplexMatrix a2 = a * a;

  auto objective = [&](const ModuleElement& x) {
    const double nax = op_norm(a * x.value(), tol);
    return nax * nax - op_norm(a2 * x.value(), tol);
  };

  std::vector<ModuleElement> seeds;
  for (std::size_t i = 0; i < space.n; ++i)
    for (std::size_t c = 0; c < space.k; ++c)
      seeds.push_back(basis_element(space, i, c));
  for (const ComplexMatrix& nb :
       {rank_nullspace(a2, tol).null_basis, rank_nullspace(a, tol).null_basis})
    for (std::size_t j = 0; j < nb.cols(); ++j)
      seeds.push_back(embed_vector(space, nb.column(j)));

  auto best = detail::maximize_single(space, objective, seeds, cfg, tol);
  const double nrm = op_norm(a, tol);
  ClassVerdict out;
  const double raw = best.found ? std::max(0.0, best.value) : 0.0;
  out.defect = raw / std::max(1.0, nrm * nrm);
  out.holds = out.defect <= tol.ineq_tol;
  if (!out.holds) out.witness = best.x;
  return out;
}

bool kernel_equality(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "kernel_equality");
  return rank_nullspace(a, tol).rank == rank_nullspace(a * a, tol).rank;
}

bool kernel_containment(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "kernel_containment");
  const RankNullspace rn = rank_nullspace(a, tol);
  if (rn.null_basis.cols() == 0) return true;
  const ComplexMatrix image = a.adjoint() * rn.null_basis;
  return op_norm(image, tol) <= tol.ineq_tol * std::max(1.0, op_norm(a, tol));
}

bool lattice_consistent(const ClassificationReport& r) {
  if (r.normal.holds && !r.semi_hyponormal.holds) return false;
  if (r.semi_hyponormal.holds && !r.paranormal.holds) return false;
  if (r.semi_hyponormal.holds && r.gcsi.membership == Membership::non_member)
    return false;
  if (r.gcsi.membership == Membership::member) {
    if (!r.kernel_eq || !r.kernel_cont) return false;
    if (!r.paranormal.holds) return false;
  }
  return true;
}

ClassificationReport classify(const ComplexMatrix& a, const ModuleSpace& space,
                              const SearchConfig& cfg, const Tolerances& tol) {
  ClassificationReport report;
  report.normal = is_normal(a, tol);
  report.cohyponormal = is_cohyponormal(a, tol);
  report.semi_hyponormal = is_semi_hyponormal(a, tol);
  report.paranormal = paranormal_defect(a, space, cfg, tol);
  report.gcsi = gcsi_index(a, space, cfg, tol);
  report.kernel_eq = kernel_equality(a, tol);
  report.kernel_cont = kernel_containment(a, tol);
  report.rank = rank_nullspace(a, tol).rank;
  report.rank_squared = rank_nullspace(a * a, tol).rank;
  report.lattice_ok = lattice_consistent(report);
  return report;
}

}  // namespace gcsi
