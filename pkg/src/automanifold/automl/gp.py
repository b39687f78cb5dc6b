"""Gaussian-process surrogate and expected improvement over encoded configs."""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.spatial.distance import pdist
from scipy.stats import norm

from ..errors import DomainError, NumericalError

NOISE = 1e-6
SIGNAL_VAR = 1.0


def _unit(value, domain):
    lo, hi = min(domain), max(domain)
    return 0.0 if hi == lo else (value - lo) / (hi - lo)


def encode_config(cfg, space):
    """Fixed-order feature vector of ``cfg``.

    Coordinates: method one-hot (in ``space.methods`` order), then ``k``,
    ``n_dim``, ``walk_length``, ``subgraph_walk`` and ``log(lr)`` scaled to
    ``[0, 1]`` over their domains, then the optimizer one-hot.
    """
    space.check(cfg)
    method = np.zeros(len(space.methods))
    method[space.methods.index(cfg.method)] = 1.0
    opt = np.zeros(len(space.optimizer))
    opt[space.optimizer.index(cfg.optimizer)] = 1.0
    scaled = [_unit(cfg.k, space.k), _unit(cfg.n_dim, space.n_dim),
              _unit(cfg.walk_length, space.walk_length),
              _unit(cfg.subgraph_walk, space.subgraph_walk),
              _unit(np.log(cfg.lr), np.log(space.lr))]
    return np.concatenate([method, scaled, opt])


def se_kernel(A, B, length, var=SIGNAL_VAR):
    d2 = ((A[:, None, :] - B[None, :, :]) ** 2).sum(axis=-1)
    return var * np.exp(-d2 / (2.0 * length ** 2))


@dataclass
class GpSurrogate:
    inputs: np.ndarray
    targets: np.ndarray
    y_mean: float
    y_std: float
    length: float
    noise: float
    chol: tuple
    alpha: np.ndarray

    def predict(self, X):
        """Posterior mean and variance, in objective units."""
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        Ks = se_kernel(X, self.inputs, self.length)
        mu = Ks @ self.alpha
        v = cho_solve(self.chol, Ks.T)
        var = np.maximum(SIGNAL_VAR - np.einsum("ij,ji->i", Ks, v), 0.0)
        return self.y_mean + self.y_std * mu, self.y_std ** 2 * var


def fit_gp(X, y, noise=NOISE):
    """GP on raw inputs ``X`` and targets ``y`` (standardized internally)."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.shape[0] < 2:
        raise DomainError("a GP fit needs at least two observations")
    mean = float(y.mean())
    std = float(y.std())
    if not std > 0:
        std = 1.0
    t = (y - mean) / std
    dists = pdist(X)
    length = float(np.median(dists)) if dists.size else 0.0
    if not length > 0:
        length = 1.0
    K = se_kernel(X, X, length)
    for lam in (noise, 10 * noise):
        try:
            chol = cho_factor(K + lam * np.eye(len(X)), lower=True)
            break
        except np.linalg.LinAlgError:
            continue
    else:
        raise NumericalError("GP kernel matrix is not positive definite")
    return GpSurrogate(X, t, mean, std, length, lam, chol, cho_solve(chol, t))


def gp_fit(trials, space):
    """Surrogate over distinct trial configs (duplicates collapse to one input)."""
    seen = {}
    for tr in trials:
        seen.setdefault(tr.config.key(), tr)
    uniq = list(seen.values())
    X = np.array([encode_config(tr.config, space) for tr in uniq])
    return fit_gp(X, [tr.objective for tr in uniq])


def ei_formula(mu, s, best):
    """Expected improvement for maximization; ``max(0, mu - best)`` when ``s < 1e-12``."""
    mu, s = np.broadcast_arrays(np.asarray(mu, dtype=np.float64),
                                np.asarray(s, dtype=np.float64))
    shape = mu.shape
    mu, s = mu.ravel(), s.ravel()
    gain = mu - best
    out = np.maximum(gain, 0.0)
    live = s >= 1e-12
    z = gain[live] / s[live]
    out[live] = gain[live] * norm.cdf(z) + s[live] * norm.pdf(z)
    return np.maximum(out, 0.0).reshape(shape)


def expected_improvement(g, candidate, best):
    mu, var = g.predict(candidate)
    ei = ei_formula(mu, np.sqrt(var), best)
    return float(ei[0]) if np.ndim(candidate) == 1 else ei
