import numpy as np
import pytest

from carecost.lars import fit_lars_ic
from carecost.linear import fit_coordinate_descent, fit_ols, standardize_stats

from oracles import orthonormal_design, soft_threshold


def random_regression(rng, n=None, p=None, sparse_truth=True):
    n = n or int(rng.integers(20, 90))
    p = p or int(rng.integers(2, 8))
    X = rng.normal(size=(n, p))
    beta = rng.normal(size=p)
    if sparse_truth and p > 2:
        beta[rng.permutation(p)[: p // 2]] = 0.0
    y = X @ beta + 0.5 * rng.normal(size=n)
    return X, y


def active_correlations(X, y, step):
    mu, sigma = standardize_stats(X)
    Z = (X - mu) / sigma
    r = (y - y.mean()) - Z @ step.coefficients
    corr = Z.T @ r
    return np.abs(corr[list(step.active)])


def test_active_set_correlations_stay_tied():
    rng = np.random.default_rng(31)
    for _ in range(10):
        X, y = random_regression(rng)
        path, _ = fit_lars_ic(X, y)
        for step in path.steps[1:]:
            if not step.active:
                continue
            corr = active_correlations(X, y, step)
            assert np.ptp(corr) <= 1e-8 * max(1.0, corr.max())


def test_orthonormal_design_breakpoints_follow_soft_threshold():
    rng = np.random.default_rng(33)
    n, p = 81, 6
    X = orthonormal_design(n, p, rng)
    y = X @ np.array([4.0, -3.0, 2.0, -1.0, 0.5, 0.1]) + 0.01 * rng.normal(size=n)
    beta_ols = fit_ols(X, y).coefficients
    path, _ = fit_lars_ic(X, y)
    # entry order is by decreasing |beta_ols|, and every recorded step's
    # coefficients obey the orthonormal closed form soft(beta_ols, lam)
    expected_order = np.argsort(-np.abs(beta_ols))
    entered = []
    for step in path.steps:
        for j in step.active:
            if j not in entered:
                entered.append(j)
    assert entered == expected_order.tolist()
    for step in path.steps:
        assert np.allclose(
            step.coefficients, soft_threshold(beta_ols, step.lam), atol=1e-8
        )


def test_breakpoint_coefficients_match_coordinate_descent():
    rng = np.random.default_rng(35)
    X, y = random_regression(rng, n=70, p=6)
    path, _ = fit_lars_ic(X, y)
    mid = path.steps[len(path.steps) // 2]
    assert mid.lam > 0
    cd = fit_coordinate_descent(X, y, lam=mid.lam, l1_ratio=1.0, tol=1e-14)
    assert np.allclose(cd.coefficients, mid.coefficients, atol=1e-6)


def test_entering_feature_has_zero_coefficient_at_its_breakpoint():
    rng = np.random.default_rng(37)
    X, y = random_regression(rng, n=60, p=5)
    path, _ = fit_lars_ic(X, y)
    seen = set()
    for step in path.steps:
        fresh = [j for j in step.active if j not in seen]
        for j in fresh:
            assert step.coefficients[j] == 0.0
        seen.update(step.active)


def test_df_counts_nonzero_coefficients():
    rng = np.random.default_rng(39)
    X, y = random_regression(rng, n=50, p=6)
    path, _ = fit_lars_ic(X, y)
    for step in path.steps:
        assert step.df == int(np.count_nonzero(step.coefficients))


def test_bic_never_larger_model_than_aic():
    rng = np.random.default_rng(41)
    for _ in range(20):
        X, y = random_regression(rng)
        path, _ = fit_lars_ic(X, y)
        assert path.steps[path.bic_index].df <= path.steps[path.aic_index].df


def test_rss_is_monotone_nonincreasing_along_path():
    rng = np.random.default_rng(43)
    X, y = random_regression(rng, n=60, p=6)
    path, _ = fit_lars_ic(X, y)
    rss = [s.rss for s in path.steps]
    assert all(b <= a + 1e-9 for a, b in zip(rss, rss[1:]))


def test_lambda_is_strictly_decreasing_along_path():
    rng = np.random.default_rng(45)
    X, y = random_regression(rng, n=60, p=6)
    path, _ = fit_lars_ic(X, y)
    lams = [s.lam for s in path.steps[1:]]
    assert all(b < a for a, b in zip(lams, lams[1:]))


def test_criterion_choice_changes_selected_model():
    rng = np.random.default_rng(47)
    X, y = random_regression(rng, n=40, p=6)
    path_a, model_a = fit_lars_ic(X, y, criterion="aic")
    path_b, model_b = fit_lars_ic(X, y, criterion="bic")
    assert np.allclose(
        model_a.coefficients, path_a.steps[path_a.aic_index].coefficients
    )
    assert np.allclose(
        model_b.coefficients, path_b.steps[path_b.bic_index].coefficients
    )


def test_duplicate_columns_do_not_crash():
    rng = np.random.default_rng(49)
    base = rng.normal(size=60)
    X = np.column_stack([base, base, rng.normal(size=60)])
    y = 2.0 * base + 0.1 * rng.normal(size=60)
    path, model = fit_lars_ic(X, y)
    assert np.isfinite(model.coefficients).all()


def test_degenerate_inputs():
    with pytest.raises(ValueError):
        fit_lars_ic(np.ones((10, 2)), np.arange(10.0))
    with pytest.raises(ValueError):
        fit_lars_ic(np.random.default_rng(0).normal(size=(10, 2)), np.arange(10.0),
                    criterion="aicc")


def test_zero_noise_path_reaches_exact_fit():
    rng = np.random.default_rng(51)
    X = rng.normal(size=(40, 3))
    y = X @ np.array([1.0, -2.0, 3.0])
    path, _ = fit_lars_ic(X, y)
    tss = float(((y - y.mean()) ** 2).sum())
    assert path.steps[-1].rss <= 1e-10 * tss
