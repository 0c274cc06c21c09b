"""Deterministic regression trees and gradient boosting.

Shared learner machinery for quantile regression and the black-box
meta-models. Splits are exact greedy under a squared-error criterion with
fixed tie-breaking (lowest feature index, then lowest threshold), so a
fit is a pure function of its inputs. Leaf values are pluggable: mean for
squared loss, a residual quantile for pinball loss, a Newton step for
binary log-loss.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from uqkit.numerics.quantiles import empirical_quantile

_LEAF = -1
_LOGIT_LEAF_CAP = 15.0
_LOSSES = ("squared", "pinball", "logloss")


def _best_split(x_cols: np.ndarray, z: np.ndarray, idx: np.ndarray, min_leaf: int):
    """Best (feature, threshold) for squared-error reduction, or None."""
    n = idx.size
    if n < 2 * min_leaf:
        return None
    zz = z[idx]
    total_sum = zz.sum()
    total_sq = (zz * zz).sum()
    parent_sse = total_sq - total_sum * total_sum / n

    best_gain = 0.0
    best = None
    for j in range(x_cols.shape[1]):
        x = x_cols[idx, j]
        order = np.argsort(x, kind="stable")
        xs = x[order]
        if xs[0] == xs[-1]:
            continue
        zs = zz[order]
        csum = np.cumsum(zs)[:-1]
        csq = np.cumsum(zs * zs)[:-1]
        left_n = np.arange(1, n)
        right_n = n - left_n
        valid = (xs[:-1] != xs[1:]) & (left_n >= min_leaf) & (right_n >= min_leaf)
        if not valid.any():
            continue
        left_sse = csq - csum * csum / left_n
        right_sum = total_sum - csum
        right_sse = (total_sq - csq) - right_sum * right_sum / right_n
        gain = np.where(valid, parent_sse - left_sse - right_sse, -np.inf)
        k = int(np.argmax(gain))  # first max → lowest threshold
        if gain[k] > best_gain:
            best_gain = float(gain[k])
            best = (j, 0.5 * (float(xs[k]) + float(xs[k + 1])))
    return best


def fit_tree(x_cols: np.ndarray, split_target: np.ndarray, leaf_value, *,
             max_depth: int, min_samples_leaf: int, min_samples_split: int) -> dict:
    """Grow one tree; ``leaf_value(member_indices)`` supplies leaf outputs."""
    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    value: list[float] = []

    def build(idx: np.ndarray, depth: int) -> int:
        node = len(feature)
        feature.append(_LEAF)
        threshold.append(0.0)
        left.append(_LEAF)
        right.append(_LEAF)
        value.append(0.0)

        split = None
        if depth < max_depth and idx.size >= min_samples_split:
            split = _best_split(x_cols, split_target, idx, min_samples_leaf)
        if split is None:
            value[node] = float(leaf_value(idx))
            return node
        j, thr = split
        feature[node] = j
        threshold[node] = thr
        mask = x_cols[idx, j] <= thr
        left[node] = build(idx[mask], depth + 1)
        right[node] = build(idx[~mask], depth + 1)
        return node

    build(np.arange(x_cols.shape[0]), 0)
    return {"feature": feature, "threshold": threshold,
            "left": left, "right": right, "value": value}


def tree_predict(tree: dict, x_cols: np.ndarray) -> np.ndarray:
    feature = tree["feature"]
    threshold = tree["threshold"]
    out = np.empty(x_cols.shape[0])
    stack = [(0, np.arange(x_cols.shape[0]))]
    while stack:
        node, idx = stack.pop()
        if idx.size == 0:
            continue
        j = feature[node]
        if j == _LEAF:
            out[idx] = tree["value"][node]
            continue
        mask = x_cols[idx, j] <= threshold[node]
        stack.append((tree["left"][node], idx[mask]))
        stack.append((tree["right"][node], idx[~mask]))
    return out


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


@dataclass
class BoostedTrees:
    """Boosted tree ensemble; loss is "squared", "pinball", or "logloss".

    For pinball loss ``tau`` selects the target quantile and leaves store
    the tau-quantile of their residuals; for log-loss the raw prediction
    lives in logit space and :meth:`predict` returns probabilities.
    """

    loss: str = "squared"
    n_estimators: int = 100
    learning_rate: float = 0.1
    max_depth: int = 3
    min_samples_leaf: int = 1
    min_samples_split: int = 2
    tau: float | None = None
    base_score: float = field(default=0.0, init=False)
    trees: list[dict] = field(default_factory=list, init=False)

    def __post_init__(self):
        if self.loss not in _LOSSES:
            raise ValueError(f"unknown loss {self.loss!r}; expected one of {_LOSSES}")
        if self.loss == "pinball" and not (self.tau and 0.0 < self.tau < 1.0):
            raise ValueError("pinball loss requires tau in (0, 1)")

    def fit(self, x_cols: np.ndarray, y: np.ndarray) -> "BoostedTrees":
        x_cols = np.asarray(x_cols, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        grow = dict(max_depth=self.max_depth, min_samples_leaf=self.min_samples_leaf,
                    min_samples_split=self.min_samples_split)
        self.trees = []

        if self.loss == "logloss":
            rate = float(np.clip(y.mean(), 1e-6, 1.0 - 1e-6))
            self.base_score = float(np.log(rate / (1.0 - rate)))
            raw = np.full(y.shape, self.base_score)
            for _ in range(self.n_estimators):
                p = _sigmoid(raw)
                resid = y - p

                def newton_leaf(idx, p=p, resid=resid):
                    num = resid[idx].sum()
                    den = max((p[idx] * (1.0 - p[idx])).sum(), 1e-12)
                    return float(np.clip(num / den, -_LOGIT_LEAF_CAP, _LOGIT_LEAF_CAP))

                tree = fit_tree(x_cols, resid, newton_leaf, **grow)
                self.trees.append(tree)
                raw = raw + self.learning_rate * tree_predict(tree, x_cols)
            return self

        if self.loss == "pinball":
            self.base_score = empirical_quantile(y, self.tau)
            leaf_stat = lambda r: empirical_quantile(r, self.tau)  # noqa: E731
        else:
            self.base_score = float(y.mean())
            leaf_stat = lambda r: float(r.mean())  # noqa: E731

        raw = np.full(y.shape, self.base_score)
        for _ in range(self.n_estimators):
            resid = y - raw
            tree = fit_tree(x_cols, resid, lambda idx: leaf_stat(resid[idx]), **grow)
            self.trees.append(tree)
            raw = raw + self.learning_rate * tree_predict(tree, x_cols)
        return self

    def predict_raw(self, x_cols: np.ndarray) -> np.ndarray:
        x_cols = np.asarray(x_cols, dtype=np.float64)
        raw = np.full(x_cols.shape[0], self.base_score)
        for tree in self.trees:
            raw = raw + self.learning_rate * tree_predict(tree, x_cols)
        return raw

    def predict(self, x_cols: np.ndarray) -> np.ndarray:
        raw = self.predict_raw(x_cols)
        return _sigmoid(raw) if self.loss == "logloss" else raw

    def to_state(self) -> dict:
        return {
            "loss": self.loss,
            "n_estimators": self.n_estimators,
            "learning_rate": self.learning_rate,
            "max_depth": self.max_depth,
            "min_samples_leaf": self.min_samples_leaf,
            "min_samples_split": self.min_samples_split,
            "tau": self.tau,
            "base_score": self.base_score,
            "trees": self.trees,
        }

    @classmethod
    def from_state(cls, state: dict) -> "BoostedTrees":
        model = cls(loss=state["loss"], n_estimators=state["n_estimators"],
                    learning_rate=state["learning_rate"], max_depth=state["max_depth"],
                    min_samples_leaf=state["min_samples_leaf"],
                    min_samples_split=state["min_samples_split"], tau=state["tau"])
        model.base_score = state["base_score"]
        model.trees = [dict(t) for t in state["trees"]]
        return model
