"""
Regularization paths: coordinate descent and least angle regression
====================================================================

Walks a lasso penalty grid with coordinate descent, then traces the same
problem with the LARS path algorithm and lets AIC and BIC each pick a
model. With a sparse true coefficient vector, both routes should activate
the real features first and shrink the rest to exactly zero.
"""
import numpy as np

from carecost import fit_coordinate_descent, fit_lars_ic, fit_ols, fit_ridge
from carecost.linear import lambda_grid

rng = np.random.default_rng(11)
n, p = 300, 10
X = rng.normal(size=(n, p))
true_beta = np.zeros(p)
true_beta[[0, 3, 7]] = [4.0, -2.5, 1.5]
y = X @ true_beta + rng.normal(size=n)

# OLS recovers everything plus noise on the dead coordinates.
ols = fit_ols(X, y)
print("OLS coefficients:  ", np.round(ols.coefficients, 3))

# Ridge shrinks but never zeroes.
ridge = fit_ridge(X, y, lam=200.0)
print("Ridge (lam=200):   ", np.round(ridge.coefficients, 3))

# Lasso over a descending penalty grid: features switch on one by one.
print("\nlasso path (coordinate descent):")
grid = lambda_grid(X, y, num=8)
for lam in grid:
    model = fit_coordinate_descent(X, y, lam=lam)
    active = [int(j) for j in np.flatnonzero(model.coefficients)]
    print(f"  lam={lam:9.4f}  active={active}")

# LARS computes every breakpoint of that path in one pass; an information
# criterion then picks the stopping step with no validation data at all.
path, chosen = fit_lars_ic(X, y, criterion="aic")
print("\nlars breakpoints (lam, active set, df):")
for step in path.steps:
    print(f"  lam={step.lam:9.4f}  active={sorted(step.active)}  df={step.df}")
print(f"\nAIC picks step {path.aic_index} "
      f"(df={path.steps[path.aic_index].df}), "
      f"BIC picks step {path.bic_index} "
      f"(df={path.steps[path.bic_index].df})")
print("selected coefficients:", np.round(chosen.coefficients, 3))
print("true coefficients:    ", true_beta)
