"""Lasso path by least angle regression, with AIC/BIC model selection.

The path is computed in covariance mode: after one pass to form the Gram
matrix Z'Z and Z'y of the standardized design, every step costs O(p^2)
independent of the row count, and sparse designs never densify.

A feature enters the active set when its absolute correlation with the
residual ties the active set's shared value; an active feature is dropped
the moment its coefficient crosses zero (the lasso modification). Each
breakpoint k is scored with

    IC_k = n * ln(RSS_k / n) + penalty * df_k

where df_k counts nonzero coefficients and penalty is 2 for AIC or ln(n)
for BIC. This IC form has variants in the literature; it is pinned here so
selection is reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linear import LinearModel, _gram_system, _model

_CORR_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class LarsStep:
    """One path breakpoint: the active set holds for the segment starting
    here; a feature that just entered still has coefficient exactly 0."""

    active: tuple[int, ...]
    coefficients: np.ndarray
    lam: float
    rss: float
    df: int


@dataclass(eq=False)
class LarsPath:
    steps: list
    aic: np.ndarray
    bic: np.ndarray
    aic_index: int
    bic_index: int
    n: int

    def index_for(self, criterion: str) -> int:
        if criterion == "aic":
            return self.aic_index
        if criterion == "bic":
            return self.bic_index
        raise ValueError(f"criterion must be 'aic' or 'bic', got {criterion!r}")


def _information_criteria(steps, n):
    rss = np.array([max(s.rss, 1e-300) for s in steps])  # guard exact interpolation
    df = np.array([s.df for s in steps])
    base = n * np.log(rss / n)
    return base + 2.0 * df, base + np.log(n) * df


def _path(G, zty, yty, n, max_steps):
    """Trace the lasso breakpoints off the Gram system."""
    p = G.shape[0]
    usable = G.diagonal() > 0  # constant columns can never activate
    beta = np.zeros(p)
    active: list[int] = []
    steps: list[LarsStep] = []

    def record():
        rss = float(yty - 2.0 * beta @ zty + beta @ (G @ beta))
        corr = zty - G @ beta
        lam = float(np.max(np.abs(corr[usable])) / n) if usable.any() else 0.0
        steps.append(
            LarsStep(
                active=tuple(active),
                coefficients=beta.copy(),
                lam=lam,
                rss=max(rss, 0.0),
                df=int(np.sum(beta != 0.0)),
            )
        )

    corr = zty.copy()
    if not usable.any() or float(np.max(np.abs(corr[usable]))) <= _CORR_EPS:
        record()
        return steps

    first = int(np.argmax(np.where(usable, np.abs(corr), -np.inf)))
    active.append(first)
    record()  # breakpoint 0: null coefficients, first feature poised to move

    limit = min(p, n - 1)
    for _ in range(max_steps):
        corr = zty - G @ beta
        big_c = float(np.mean(np.abs(corr[active])))  # shared active correlation
        if big_c <= _CORR_EPS:
            break
        signs = np.sign(corr[active])
        G_active = G[np.ix_(active, active)]
        try:
            direction = np.linalg.solve(G_active, signs)
        except np.linalg.LinAlgError:
            direction = np.linalg.lstsq(G_active, signs, rcond=None)[0]

        # Correlation decay per unit step: active features lose exactly 1.
        a = G[:, active] @ direction

        gamma = big_c  # full step drives active correlations (and lam) to zero
        event = ("finish", -1)

        if len(active) < limit:
            for j in range(p):
                if not usable[j] or j in active:
                    continue
                for num, den in ((big_c - corr[j], 1.0 - a[j]), (big_c + corr[j], 1.0 + a[j])):
                    if den <= _CORR_EPS:
                        continue
                    g = num / den
                    if _CORR_EPS < g < gamma:
                        gamma = g
                        event = ("enter", j)

        for pos, j in enumerate(active):
            if direction[pos] == 0.0:
                continue
            g = -beta[j] / direction[pos]
            if _CORR_EPS < g < gamma:
                gamma = g
                event = ("drop", j)

        for pos, j in enumerate(active):
            beta[j] += gamma * direction[pos]

        kind, j = event
        if kind == "drop":
            beta[j] = 0.0  # exact zero at the crossing
            active.remove(j)
            record()
        elif kind == "enter":
            active.append(j)
            record()
        else:
            record()
            break
    return steps


def fit_lars_ic(X, y, criterion: str = "aic", max_steps: int | None = None):
    """Lasso-LARS path plus the model minimizing the requested criterion.

    Returns (LarsPath, LinearModel). The path records every breakpoint with
    its active set, coefficients, penalty level, and RSS; both AIC and BIC
    choices are annotated regardless of ``criterion``.
    """
    if criterion not in ("aic", "bic"):
        raise ValueError(f"criterion must be 'aic' or 'bic', got {criterion!r}")
    G, zty, yty, mu, sigma, n, ybar = _gram_system(X, y)
    if not (G.diagonal() > 0).any():
        raise ValueError("design is entirely constant; nothing to fit")
    if max_steps is None:
        max_steps = 8 * G.shape[0] + 16
    steps = _path(G, zty, yty, n, max_steps)
    aic, bic = _information_criteria(steps, n)
    path = LarsPath(
        steps=steps,
        aic=aic,
        bic=bic,
        aic_index=int(np.argmin(aic)),
        bic_index=int(np.argmin(bic)),
        n=n,
    )
    chosen = steps[path.index_for(criterion)]
    model = _model("lars_ic", chosen.coefficients, mu, sigma, ybar, n, lam=chosen.lam)
    return path, model
