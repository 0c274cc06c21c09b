"""Estimators that produce uncertainty as part of prediction."""

from uqkit.intrinsic import bnn, gp, ij, noise_net, quantile_boost  # noqa: F401  (registration)
from uqkit.intrinsic.bnn import gaussian_kl, negative_elbo_objective, posterior_params
from uqkit.intrinsic.gp import gp_fit_predict, log_marginal_likelihood, rbf_kernel
from uqkit.intrinsic.ij import bootstrap_weights, ij_fit_predict, linearized_replicates
from uqkit.intrinsic.nets import MlpLayout, inverse_softplus, sigmoid, softplus
from uqkit.intrinsic.noise_net import gaussian_nll_objective
from uqkit.intrinsic.quantile_boost import pinball_loss, pinball_objective, quantile_levels

__all__ = [
    "MlpLayout",
    "bootstrap_weights",
    "gaussian_kl",
    "gaussian_nll_objective",
    "gp_fit_predict",
    "ij_fit_predict",
    "inverse_softplus",
    "linearized_replicates",
    "log_marginal_likelihood",
    "negative_elbo_objective",
    "pinball_loss",
    "pinball_objective",
    "posterior_params",
    "quantile_levels",
    "rbf_kernel",
    "sigmoid",
    "softplus",
]
