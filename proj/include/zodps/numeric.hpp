#pragma once

#include <span>
#include <vector>

#include "zodps/rng.hpp"

namespace zodps {

/**
 * log(sum_i exp(v_i)) with the usual max shift; exact for a single element.
 * -inf entries contribute nothing.  Throws DegenerateWeightsError when the
 * input is empty or all entries are -inf.
 */
double logsumexp(std::span<const double> values);

/**
 * Normalized weights w_i = exp(v_i - max v) / sum_j exp(v_j - max v).
 * Same degenerate-input contract as logsumexp.  Working from the max keeps
 * the constant-shift case bit-exact: softmax(v + c) == softmax(v).
 */
void softmax_from_log(std::span<const double> log_values, std::span<double> out);

/**
 * Draw `count` indices from the categorical distribution with the given
 * (unnormalized) log weights.  -inf components have probability zero and are
 * never drawn.  Consumes exactly `count` uniforms from the stream.
 */
std::vector<int> categorical_sample(std::span<const double> log_weights, int count,
                                    RandomStream& rs);

} // namespace zodps
