#pragma once

#include "conedesc/generator_set.hpp"

namespace conedesc {

/// Support value of x over the generator set: max_{c in C} <c,x>.
/// Equals the sup over the convex hull of C.
double gauge(const GeneratorSet& c, const Vec& x);

/// x in K, i.e. <c,x> >= -eps_membership for every generator.
bool cone_contains(const GeneratorSet& c, const Vec& x,
                   const OrderTolerance& tol = {});

/// x in int K: <c/|c|, x> >= eps_strict for every nonzero generator.
/// Throws if every generator is zero (the order is degenerate).
bool interior_contains(const GeneratorSet& c, const Vec& x,
                       const OrderTolerance& tol = {});

/// Partial order induced by K: x <= y iff y - x in K.
bool leq(const GeneratorSet& c, const Vec& x, const Vec& y,
         const OrderTolerance& tol = {});

/// Strict order: x < y iff y - x in int K.
bool lt(const GeneratorSet& c, const Vec& x, const Vec& y,
        const OrderTolerance& tol = {});

}  // namespace conedesc
