#pragma once

#include <cstddef>
#include <string_view>

#include "bmcheck/transforms/transform.hpp"

namespace bmcheck::transforms {

/// Builds a catalog entry from its string identifier, for an input space of
/// dimension input_dim. Accepted forms:
///
///   identity
///   affine(P=[[2,0],[1,1]],q=[3,-1])     affine(P=[0.6,0.8],q=0)  (scalar)
///   radial_lift(identity)  radial_lift(angle_multiply(2))
///   radial_lift(rotation(theta=0.3))  radial_lift(rotation(R=[[..],[..]]))
///   harmonic(re_z^2)  harmonic(im_z^3)
///   square(i=0)  cubic(eps=0.001)  constant(c=1)  gaussian_bump
///   component(0,radial_lift(angle_multiply(2)))
///   compose(outer,inner)  restrict(f,lo=[..],hi=[..])
///
/// Every entry's name() parses back to an equivalent entry. Throws
/// InvalidArgument on malformed text and DimensionMismatch when the entry
/// cannot act on input_dim.
Transform parse_transform(std::string_view text, std::size_t input_dim);

}  // namespace bmcheck::transforms
