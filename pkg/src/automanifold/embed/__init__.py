"""Embedding algorithms."""

from ._types import EigResult, Embedding
from .deepwalk import deepwalk, sgns_loss
from .dispatch import GRAPH_METHODS, METHODS, embed
from .eig import sym_eig
from .estimators import (PCA, ClassicalMDS, DeepWalk, Isomap, LocallyLinearEmbedding,
                         SmacofMDS, SpectralEmbedding)
from .io import config_hash, read_embedding_csv, write_embedding_csv
from .methods import (classical_mds, isomap, lle, lle_weights, pca, smacof_mds,
                      spectral_embedding)

__all__ = [
    "GRAPH_METHODS", "METHODS", "embed", "PCA", "ClassicalMDS", "DeepWalk", "Isomap",
    "LocallyLinearEmbedding", "SmacofMDS", "SpectralEmbedding", "config_hash",
    "read_embedding_csv", "write_embedding_csv",
    "EigResult", "Embedding", "deepwalk", "sgns_loss", "sym_eig", "classical_mds",
    "isomap", "lle", "lle_weights", "pca", "smacof_mds", "spectral_embedding",
]
