#pragma once

#include "smoothspec/types.hpp"

namespace smoothspec {

/// Normalised mutual information, I(P;T) / ((H(P) + H(T)) / 2).
/// Two single-cluster partitions score 1.
double nmi(const LabelVector& pred, const LabelVector& truth);

/// Fraction of objects that belong to the majority true class of their predicted cluster.
double purity(const LabelVector& pred, const LabelVector& truth);

/// Fraction of object pairs on which the two partitions agree.
double rand_index(const LabelVector& pred, const LabelVector& truth);

}  // namespace smoothspec
