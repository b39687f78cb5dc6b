"""DeepWalk: skip-gram with negative sampling over uniform random walks.

A corpus of ``walks_per_node`` walks per node is drawn once and reduced to
sparse window co-occurrence counts ``C[u, v]`` (both directions).  Each
epoch is one optimizer step on

    loss = (sum_uv C_uv softplus(-z_u . c_v)
            + negatives * sum_u r_u E_{n ~ P}[softplus(z_u . c_n)]) / norm

where ``r_u = sum_v C_uv``, ``P`` is the ``degree ** 0.75`` unigram
distribution and ``norm`` the mean number of positive pairs per node.  The
expectation is estimated afresh every epoch from ``2 * window * negatives``
noise nodes drawn per centre node.
"""

import numpy as np
import scipy.sparse as sp

from .._validation import check_positive_int
from ..errors import DomainError, TrainingError
from ..graph import ProximityGraph, random_walks
from ._types import Embedding

_ADAM_B1 = 0.9
_ADAM_B2 = 0.999
_ADAM_EPS = 1e-8
_LOSS_EVERY = 50


def _sigmoid(x):
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def _scores(Z, Ctx, u, v):
    n = Z.shape[0]
    if n <= 2048:
        return (Z @ Ctx.T).ravel()[u * n + v]
    return np.einsum("ij,ij->i", Z[u], Ctx[v])


def sgns_loss(Z, Ctx, pos, neg, norm=1.0, with_loss=True):
    """Negative-sampling loss and gradients ``(loss, dZ, dCtx)``.

    ``pos`` and ``neg`` are ``(centre, context, weight)`` triples of equal
    length arrays: positive counts and weighted noise samples respectively.
    ``loss`` is ``nan`` when ``with_loss`` is false.
    """
    n = Z.shape[0]
    pu, pv, pw = pos
    nu, nv, nw = neg
    s_pos = _scores(Z, Ctx, pu, pv)
    s_neg = _scores(Z, Ctx, nu, nv)
    loss = np.nan
    if with_loss:
        loss = float(pw @ np.logaddexp(0.0, -s_pos) + nw @ np.logaddexp(0.0, s_neg)) / norm
    coef = np.concatenate([-pw * _sigmoid(-s_pos), nw * _sigmoid(s_neg)]) / norm
    G = sp.csr_matrix((coef, (np.concatenate([pu, nu]), np.concatenate([pv, nv]))),
                      shape=(n, n))
    return loss, G @ Ctx, G.T @ Z


def cooccurrence(walks, n_nodes, window):
    """Sparse symmetric window co-occurrence ``(centre, context, count)``."""
    length = walks.shape[1]
    codes = []
    for off in range(1, min(window, length - 1) + 1):
        a = walks[:, :-off].ravel()
        b = walks[:, off:].ravel()
        codes.append(a * n_nodes + b)
        codes.append(b * n_nodes + a)
    if not codes:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty, np.empty(0)
    counts = np.bincount(np.concatenate(codes), minlength=n_nodes * n_nodes)
    nz = np.flatnonzero(counts)
    return nz // n_nodes, nz % n_nodes, counts[nz].astype(np.float64)


def deepwalk(g, n_dim=2, walk_length=50, walks_per_node=10, window=5, epochs=1000,
             lr=1e-2, optimizer="sgd", negatives=5, seed=0):
    """Train DeepWalk node vectors on ``g`` and return the centre vectors."""
    if not isinstance(g, ProximityGraph):
        raise DomainError("deepwalk needs a ProximityGraph")
    n_dim = check_positive_int(n_dim, "n_dim")
    walk_length = check_positive_int(walk_length, "walk_length")
    walks_per_node = check_positive_int(walks_per_node, "walks_per_node")
    window = check_positive_int(window, "window")
    epochs = check_positive_int(epochs, "epochs", minimum=0)
    negatives = check_positive_int(negatives, "negatives")
    if not lr > 0:
        raise DomainError("lr must be positive")
    if optimizer not in ("sgd", "adam"):
        raise DomainError(f"optimizer must be 'sgd' or 'adam', got {optimizer!r}")

    n = g.n_nodes
    rng = np.random.default_rng(seed)
    Z = (rng.random((n, n_dim)) - 0.5) / n_dim
    Ctx = np.zeros((n, n_dim))
    config = {"n_dim": n_dim, "walk_length": walk_length, "walks_per_node": walks_per_node,
              "window": window, "epochs": epochs, "lr": lr, "optimizer": optimizer,
              "negatives": negatives}
    if epochs == 0 or n < 2:
        return Embedding(Z, "deepwalk", config, seed=seed, info={"loss": np.array([])})

    walks = random_walks(g, np.repeat(np.arange(n), walks_per_node), walk_length, rng)
    pos = cooccurrence(walks, n, window)
    totals = np.bincount(pos[0], weights=pos[2], minlength=n)
    norm = max(totals.sum() / n, 1.0)
    noise = g.degrees.astype(np.float64) ** 0.75
    if noise.sum() == 0:
        noise = np.ones(n)
    noise /= noise.sum()
    per_node = 2 * window * negatives
    nu = np.repeat(np.arange(n), per_node)
    nw = np.repeat(totals * negatives / per_node, per_node)

    cdf = np.cumsum(noise)
    cdf[-1] = 1.0

    mZ, mC = np.zeros_like(Z), np.zeros_like(Ctx)
    vZ, vC = np.zeros_like(Z), np.zeros_like(Ctx)
    losses = np.empty(epochs)
    for epoch in range(1, epochs + 1):
        nv = np.searchsorted(cdf, rng.random(nu.size), side="right")
        track = epoch == epochs or epoch % _LOSS_EVERY == 0
        loss, dZ, dC = sgns_loss(Z, Ctx, pos, (nu, nv, nw), norm, with_loss=track)
        losses[epoch - 1] = loss
        # overflow is caught below and reported as a TrainingError
        with np.errstate(over="ignore", invalid="ignore"):
            if optimizer == "sgd":
                Z -= lr * dZ
                Ctx -= lr * dC
            else:
                for m, v, grad in ((mZ, vZ, dZ), (mC, vC, dC)):
                    m *= _ADAM_B1
                    m += (1 - _ADAM_B1) * grad
                    v *= _ADAM_B2
                    v += (1 - _ADAM_B2) * grad ** 2
                c1 = 1 - _ADAM_B1 ** epoch
                c2 = 1 - _ADAM_B2 ** epoch
                Z -= lr * (mZ / c1) / (np.sqrt(vZ / c2) + _ADAM_EPS)
                Ctx -= lr * (mC / c1) / (np.sqrt(vC / c2) + _ADAM_EPS)
        finite = np.isfinite(Z).all() and np.isfinite(Ctx).all()
        if not finite or (track and not np.isfinite(loss)):
            raise TrainingError("DeepWalk parameters diverged", epoch)
    # loss is recorded every _LOSS_EVERY epochs and at the last one; nan elsewhere
    return Embedding(Z, "deepwalk", config, seed=seed, info={"loss": losses})
