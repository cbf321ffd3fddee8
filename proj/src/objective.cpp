/*
 * Copyright 2026 The NGR Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ngr/objective.hpp"

#include <cmath>
#include <vector>

namespace ngr {

namespace {

double scale(double raw, bool log_scaling) {
  return log_scaling ? std::log(kLogScalingEpsilon + raw) : raw;
}

// d g(raw) / d raw
double scale_derivative(double raw, bool log_scaling) {
  return log_scaling ? 1.0 / (kLogScalingEpsilon + raw) : 1.0;
}

void check_finite(double value, const char* term) {
  if (!std::isfinite(value)) throw NumericalDivergence(term);
}

Matrix sign_of(const Matrix& w) {
  return w.unaryExpr([](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); });
}

// Accumulates d total / d W_l for the path product over layers [first, last)
// given d total / d S in raw orientation (out x in).
void backprop_path(const MlpParams& mlp, std::size_t first, std::size_t last,
                   const Matrix& d_path_raw, ParamSet& grads) {
  const std::size_t n = last - first;
  std::vector<Matrix> abs_w(n);
  for (std::size_t k = 0; k < n; ++k) abs_w[k] = mlp.weights[first + k].cwiseAbs();

  // below[k] = |W_{k-1}| ... |W_0| (relative to first); identity for k = 0.
  std::vector<Matrix> below(n);
  below[0] = Matrix::Identity(abs_w[0].cols(), abs_w[0].cols());
  for (std::size_t k = 1; k < n; ++k) below[k] = abs_w[k - 1] * below[k - 1];

  // above = |W_{n-1}| ... |W_{k+1}|, built from the top down.
  Matrix above = Matrix::Identity(abs_w[n - 1].rows(), abs_w[n - 1].rows());
  for (std::size_t k = n; k-- > 0;) {
    Matrix d_abs = above.transpose() * d_path_raw * below[k].transpose();
    grads.weights[first + k].array() +=
        d_abs.array() * sign_of(mlp.weights[first + k]).array();
    if (k > 0) above = above * abs_w[k];
  }
}

struct PenaltyValues {
  Matrix core_view;
  Matrix enc_view;
  Matrix dec_view;
  double diag = 0.0;
  double sparsity = 0.0;
  double enc = 0.0;
  double dec = 0.0;
  double symmetry = 0.0;
};

PenaltyValues penalty_values(const MlpParams& mlp, const PenaltyMasks& masks) {
  PenaltyValues pv;
  pv.core_view = path_matrix(mlp, masks.core_begin(), masks.core_end(mlp)).view();
  const Matrix sym = symmetrize(pv.core_view);
  pv.diag = (sym.array() * masks.diagonal.matrix.array()).abs().sum();
  pv.sparsity = sym.cwiseAbs().sum();
  pv.symmetry = (pv.core_view - pv.core_view.transpose()).norm();
  if (masks.encoder) {
    pv.enc_view = path_matrix(mlp, 0, masks.encoder_layers).view();
    pv.enc = gcpn(pv.enc_view, *masks.encoder);
  }
  if (masks.decoder) {
    pv.dec_view = path_matrix(mlp, masks.core_end(mlp), mlp.num_layers()).view();
    pv.dec = gcpn(pv.dec_view, *masks.decoder);
  }
  return pv;
}

void fill_penalties(const PenaltyValues& pv, LossBreakdown& out) {
  out.diag_penalty = pv.diag;
  out.sparsity_penalty = pv.sparsity;
  out.enc_penalty = pv.enc;
  out.dec_penalty = pv.dec;
  out.symmetry_penalty = pv.symmetry;
  check_finite(out.diag_penalty, "diag_penalty");
  check_finite(out.sparsity_penalty, "sparsity_penalty");
  check_finite(out.enc_penalty, "enc_penalty");
  check_finite(out.dec_penalty, "dec_penalty");
  check_finite(out.symmetry_penalty, "symmetry_penalty");
}

void check_batch(const MlpParams& mlp, const Matrix& batch) {
  if (batch.rows() == 0) throw InvalidArgument("loss: empty batch");
  if (static_cast<std::size_t>(batch.cols()) != mlp.input_dim() ||
      mlp.input_dim() != mlp.output_dim()) {
    throw ShapeError("loss: batch width must equal network input and output widths");
  }
}

// Cached batched forward pass: pre[l] = A_l W_l^T + b_l, act[l] = input to layer l.
struct ForwardCache {
  std::vector<Matrix> act;
  std::vector<Matrix> pre;
};

ForwardCache forward_cached(const MlpParams& mlp, const Matrix& batch) {
  ForwardCache c;
  c.act.push_back(batch);
  for (std::size_t l = 0; l < mlp.num_layers(); ++l) {
    Matrix z = c.act.back() * mlp.weights[l].transpose();
    z.rowwise() += mlp.biases[l].transpose();
    c.pre.push_back(z);
    if (mlp.activations[l] == Activation::kRelu) z = z.cwiseMax(0.0);
    c.act.push_back(std::move(z));
  }
  return c;
}

}  // namespace

PenaltyMasks PenaltyMasks::unimodal(std::size_t num_features) {
  PenaltyMasks m;
  m.diagonal = diag_mask(num_features);
  return m;
}

void PenaltyMasks::validate(const MlpParams& mlp) const {
  mlp.validate();
  if (encoder_layers + decoder_layers >= mlp.num_layers()) {
    throw ShapeError("encoder and decoder segments leave no core layers");
  }
  if (encoder.has_value() != (encoder_layers > 0) || decoder.has_value() != (decoder_layers > 0)) {
    throw ShapeError("encoder/decoder masks and segment lengths disagree");
  }
  const std::size_t core_in = mlp.layer_dims[core_begin()];
  const std::size_t core_out = mlp.layer_dims[core_end(mlp)];
  if (diagonal.rows() != core_in || diagonal.cols() != core_out) {
    throw ShapeError("diagonal mask does not match core dimensions");
  }
  if (core_in != core_out) throw ShapeError("core must be square for symmetrization");
  if (encoder && (encoder->rows() != mlp.input_dim() || encoder->cols() != core_in)) {
    throw ShapeError("encoder mask does not match encoder dimensions");
  }
  if (decoder && (decoder->rows() != core_out || decoder->cols() != mlp.output_dim())) {
    throw ShapeError("decoder mask does not match decoder dimensions");
  }
}

double combine(const LossBreakdown& p, const PenaltyWeights& w) {
  const bool ls = w.log_scaling;
  double total = p.regression;
  total += w.lambda * scale(p.diag_penalty, ls);
  total += w.gamma * scale(p.sparsity_penalty, ls);
  if (w.eta != 0.0) total += w.eta * scale(p.enc_penalty, ls);
  if (w.beta != 0.0) total += w.beta * scale(p.dec_penalty, ls);
  if (w.symmetry != 0.0) total += w.symmetry * scale(p.symmetry_penalty, ls);
  return total;
}

double regression_loss(const MlpParams& mlp, const Matrix& batch) {
  check_batch(mlp, batch);
  const ForwardCache c = forward_cached(mlp, batch);
  return (c.act.back() - batch).squaredNorm() / static_cast<double>(batch.rows());
}

LossBreakdown loss(const MlpParams& mlp, const Matrix& batch, const PenaltyWeights& weights,
                   const PenaltyMasks& masks) {
  check_batch(mlp, batch);
  masks.validate(mlp);
  LossBreakdown out;
  out.regression = regression_loss(mlp, batch);
  check_finite(out.regression, "regression");
  fill_penalties(penalty_values(mlp, masks), out);
  out.total = combine(out, weights);
  check_finite(out.total, "total");
  return out;
}

LossAndGradient gradients(const MlpParams& mlp, const Matrix& batch,
                          const PenaltyWeights& weights, const PenaltyMasks& masks) {
  check_batch(mlp, batch);
  masks.validate(mlp);

  LossAndGradient result;
  result.gradient = ParamSet::zeros_like(mlp);
  ParamSet& g = result.gradient;
  LossBreakdown& out = result.loss;

  // Regression term and its backward pass.
  const ForwardCache c = forward_cached(mlp, batch);
  const double batch_size = static_cast<double>(batch.rows());
  const Matrix residual = c.act.back() - batch;
  out.regression = residual.squaredNorm() / batch_size;
  check_finite(out.regression, "regression");

  Matrix d_act = residual * (2.0 / batch_size);
  for (std::size_t l = mlp.num_layers(); l-- > 0;) {
    Matrix d_pre = d_act;
    if (mlp.activations[l] == Activation::kRelu) {
      d_pre.array() *= (c.pre[l].array() > 0.0).cast<double>();
    }
    g.weights[l] += d_pre.transpose() * c.act[l];
    g.biases[l] += d_pre.colwise().sum().transpose();
    if (l > 0) d_act = d_pre * mlp.weights[l];
  }

  // Structure penalties.
  const PenaltyValues pv = penalty_values(mlp, masks);
  fill_penalties(pv, out);
  out.total = combine(out, weights);
  check_finite(out.total, "total");

  const bool ls = weights.log_scaling;
  // d total / d P over the core path view.
  const Matrix diag_coeff = (masks.diagonal.matrix + masks.diagonal.matrix.transpose()) * 0.5;
  Matrix d_core = weights.lambda * scale_derivative(pv.diag, ls) * diag_coeff;
  d_core.array() += weights.gamma * scale_derivative(pv.sparsity, ls);
  if (weights.symmetry != 0.0 && pv.symmetry > 0.0) {
    const Matrix asym = pv.core_view - pv.core_view.transpose();
    d_core += weights.symmetry * scale_derivative(pv.symmetry, ls) * (2.0 / pv.symmetry) * asym;
  }
  backprop_path(mlp, masks.core_begin(), masks.core_end(mlp), d_core.transpose(), g);

  if (masks.encoder && weights.eta != 0.0) {
    const Matrix d_enc = weights.eta * scale_derivative(pv.enc, ls) *
                         (1.0 - masks.encoder->matrix.array()).matrix();
    backprop_path(mlp, 0, masks.encoder_layers, d_enc.transpose(), g);
  }
  if (masks.decoder && weights.beta != 0.0) {
    const Matrix d_dec = weights.beta * scale_derivative(pv.dec, ls) *
                         (1.0 - masks.decoder->matrix.array()).matrix();
    backprop_path(mlp, masks.core_end(mlp), mlp.num_layers(), d_dec.transpose(), g);
  }
  return result;
}

}  // namespace ngr
