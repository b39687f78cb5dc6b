"""Finite hyperparameter search spaces."""

import itertools
from dataclasses import asdict, dataclass, replace

import numpy as np

from ..embed.dispatch import METHODS
from ..errors import DomainError

OPTIMIZERS = ("sgd", "adam")
DEEPWALK_ONLY = ("lr", "optimizer", "walk_length")


@dataclass(frozen=True)
class HyperparamConfig:
    """One point of the search space.

    ``k`` and ``subgraph_walk`` matter for every method because trials embed
    walk-sampled subgraphs of the k-NN graph.  ``lr``, ``optimizer`` and
    ``walk_length`` only matter for DeepWalk; other methods carry the
    space's canonical values there (see :meth:`SearchSpace.canonical`).
    """

    method: str
    k: int
    n_dim: int
    lr: float
    optimizer: str
    walk_length: int
    subgraph_walk: int
    seed: int = 0

    def to_dict(self):
        return asdict(self)

    def key(self):
        """Identity of the config within a space (the seed is not searched)."""
        return (self.method, self.k, self.n_dim, self.lr, self.optimizer,
                self.walk_length, self.subgraph_walk)


@dataclass(frozen=True)
class SearchSpace:
    kind: str
    methods: tuple
    k: tuple
    n_dim: tuple
    lr: tuple
    optimizer: tuple
    walk_length: tuple
    subgraph_walk: tuple

    def domain(self, name):
        return getattr(self, name)

    def canonical(self, cfg):
        """``cfg`` with DeepWalk-only fields reset for other methods."""
        if cfg.method == "deepwalk":
            return cfg
        return replace(cfg, lr=self.lr[0], optimizer=self.optimizer[0],
                       walk_length=self.walk_length[0])

    def check(self, cfg):
        for name in ("k", "n_dim", "lr", "optimizer", "walk_length", "subgraph_walk"):
            if getattr(cfg, name) not in self.domain(name):
                raise DomainError(f"{name}={getattr(cfg, name)!r} outside the search space")
        if cfg.method not in self.methods:
            raise DomainError(f"method {cfg.method!r} outside the search space")
        if self.canonical(cfg) != cfg:
            raise DomainError("non-DeepWalk config must carry canonical DeepWalk fields")
        return cfg

    def make(self, method, k, n_dim, subgraph_walk, lr=None, optimizer=None,
             walk_length=None, seed=0):
        cfg = HyperparamConfig(method, int(k), int(n_dim),
                               self.lr[0] if lr is None else float(lr),
                               self.optimizer[0] if optimizer is None else optimizer,
                               self.walk_length[0] if walk_length is None else int(walk_length),
                               int(subgraph_walk), int(seed))
        return self.check(self.canonical(cfg))

    def sample(self, rng, seed=0):
        """Uniform draw from the full domain product, then canonicalized.

        Every method owns the same number of product cells, so the method is
        uniform and its relevant fields are uniform given the method.
        """
        pick = [rng.integers(len(self.domain(n))) for n in
                ("methods", "k", "n_dim", "lr", "optimizer", "walk_length", "subgraph_walk")]
        cfg = HyperparamConfig(self.methods[pick[0]], self.k[pick[1]], self.n_dim[pick[2]],
                               self.lr[pick[3]], self.optimizer[pick[4]],
                               self.walk_length[pick[5]], self.subgraph_walk[pick[6]], seed)
        return self.canonical(cfg)

    def enumerate(self, seed=0):
        """All distinct canonical configs, in a fixed order."""
        out = []
        for m in self.methods:
            dw = m == "deepwalk"
            lrs = self.lr if dw else self.lr[:1]
            opts = self.optimizer if dw else self.optimizer[:1]
            ws = self.walk_length if dw else self.walk_length[:1]
            for k, d, lr, opt, w, ws_ in itertools.product(self.k, self.n_dim, lrs, opts, ws,
                                                           self.subgraph_walk):
                out.append(HyperparamConfig(m, k, d, lr, opt, w, ws_, seed))
        return out

    @property
    def size(self):
        return len(self.enumerate())

    def restrict(self, **domains):
        """Copy with some domains replaced (e.g. ``methods=("pca", "isomap")``)."""
        domains = {n: tuple(v) for n, v in domains.items()}
        return replace(self, **domains)

    def to_dict(self):
        return {n: list(self.domain(n)) for n in
                ("methods", "k", "n_dim", "lr", "optimizer", "walk_length", "subgraph_walk")} | {
            "kind": self.kind}


def build_search_space(kind="dynamic", methods=METHODS):
    """The dynamic (PDE) or static (point cloud) search space."""
    lr = tuple(float(v) for v in np.linspace(1e-4, 1e-2, 5))
    k = (40, 50, 60, 70)
    if kind == "dynamic":
        return SearchSpace("dynamic", tuple(methods), k, (3, 4, 5), lr, OPTIMIZERS,
                           (50, 60, 70), (80, 90, 100))
    if kind == "static":
        return SearchSpace("static", tuple(methods), k, (1, 2, 3), lr, OPTIMIZERS,
                           (20, 30, 40), (60, 70, 80))
    raise DomainError(f"kind must be 'dynamic' or 'static', got {kind!r}")
