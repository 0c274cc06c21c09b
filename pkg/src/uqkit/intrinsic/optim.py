"""Optimizer config schema shared by the network-based estimators."""

from __future__ import annotations

from uqkit.core.registry import Param
from uqkit.numerics.optimize import OptimizerConfig


def _pair_in_unit(v) -> bool:
    return (isinstance(v, (list, tuple)) and len(v) == 2
            and all(isinstance(b, (int, float)) and 0 < b < 1 for b in v))


OPTIMIZER_SCHEMA = {
    "learning_rate": Param(0.05, "positive number",
                           lambda v: isinstance(v, (int, float)) and v > 0),
    "max_iters": Param(500, "integer >= 1",
                       lambda v: isinstance(v, int) and v >= 1),
    "adaptive_moment_decays": Param([0.9, 0.999], "pair of numbers in (0, 1)",
                                    _pair_in_unit),
    "epsilon": Param(1e-8, "positive number",
                     lambda v: isinstance(v, (int, float)) and v > 0),
    "gradient_clip": Param(None, "positive number or null",
                           lambda v: v is None or (isinstance(v, (int, float)) and v > 0)),
    "batch_size": Param(None, "integer >= 1 or null",
                        lambda v: v is None or (isinstance(v, int) and v >= 1)),
}


def optimizer_from_config(params: dict) -> OptimizerConfig:
    return OptimizerConfig(
        learning_rate=params["learning_rate"],
        max_iters=params["max_iters"],
        adaptive_moment_decays=tuple(params["adaptive_moment_decays"]),
        epsilon=params["epsilon"],
        gradient_clip=params["gradient_clip"],
        batch_size=params["batch_size"],
    )
