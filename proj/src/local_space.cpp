#include "gcife/local_space.hpp"

#include "gcife/errors.hpp"

namespace gcife {

LocalSpace build_local_space(const Quad& corners, const Curve& curve, double xi_guess, int element,
                             const BasisTables& tables, const LocalSpaceOptions& opts) {
  const int m = opts.degree;
  if (tables.degree != m) throw Error(ErrorKind::InvalidArgument, "basis tables were built for another degree");
  const int n_qp = opts.n_qp > 0 ? opts.n_qp : m + 1;
  LocalSpace ls;
  ls.element = element;
  ls.corners = corners;
  try {
    ls.info = interface_elem_info(corners, curve, xi_guess, element, opts.newton);
    ls.topology = find_edge_intersections(corners, curve, ls.info.xi_mid);
    ls.quadrature = cut_quadrature(corners, curve, ls.topology, n_qp, ls.info.xi_mid, opts.newton);
    ls.vandermonde = vandermonde_set(ls.quadrature, m, ls.info, opts.with_derivatives);
    ls.line = line_system(curve, ls.info, tables);
    ls.atilde = assemble_atilde(ls.line, tables);

    if (opts.initial == InitialBasis::Special) {
      const SpecialSystem sys = special_system(ls.line, tables);
      ls.initial = special_initial_basis(m, solve_special_coeffs(m, sys, opts.betas, opts.preconditioner), opts.betas);
    } else {
      const int dim = (m + 1) * (m + 1);
      ls.initial = extend_basis(ls.atilde, jump_scaling(m, opts.betas), Eigen::MatrixXd::Identity(dim, dim),
                                identity_side(ls.quadrature));
    }
    ls.initial.degree = m;
    ls.initial.element = element;
    ls.coeffs = reconstruct(ls.initial, ls.quadrature, ls.vandermonde, opts.reconstruction);
    ls.coeffs.element = element;
  } catch (const Error& e) {
    if (e.element() >= 0 || element < 0) throw;
    throw Error(e.kind(), e.what(), element);
  }
  return ls;
}

}  // namespace gcife
