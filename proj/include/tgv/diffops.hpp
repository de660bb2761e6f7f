#pragma once

#include "tgv/grid.hpp"

// Forward-difference operators D, E, D^2 = E D and their adjoints, with
// Neumann handling: a difference whose staggered position does not exist is
// a structural zero. Tensor channels are stored position-aligned, so the
// x/y second-difference channels carry their values at the pixel centers
// the stencil is centered on.
//
// Adjoint conventions:
//   grad_adjoint / sym_grad_adjoint / second_order_adjoint are the exact
//   matrix transposes of the forward maps (plain inner products).
//   divV(q)  = -grad_adjoint(q)            <grad u, q>        = -<u, divV q>
//   divT(p)  = -sym_grad_adjoint(W p)      <sym_grad w, p>_W  = -<w, divT p>
//   div2(p)  = divV(divT(p))               <second_order u, p>_W = <u, div2 p>
// where W doubles the off-diagonal tensor channel (Frobenius pairing).

namespace tgv {

StaggeredField grad(const Image& u);
Image grad_adjoint(const StaggeredField& q);

StaggeredField sym_grad(const StaggeredField& w);
StaggeredField sym_grad_adjoint(const StaggeredField& p);

StaggeredField second_order(const Image& u);
Image second_order_adjoint(const StaggeredField& p);

Image divV(const StaggeredField& q);
StaggeredField divT(const StaggeredField& p);
Image div2(const StaggeredField& p);

// Doubles the off-diagonal channel (the weight of the Frobenius pairing).
StaggeredField tensor_weight(const StaggeredField& p);

}  // namespace tgv
