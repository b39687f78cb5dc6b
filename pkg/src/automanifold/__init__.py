"""Manifold learning on spatial-temporal proximity graphs with automated model selection."""

__version__ = "0.1.0"

from . import automl, datagen, embed, graph, qscore  # noqa: E402
from .automl.estimator import AutoManifold  # noqa: E402
from .errors import (AutomanifoldError, DivergenceError, DomainError,  # noqa: E402
                     IntegrationError, NumericalError, ParseError, TrainingError, WalkError)

__all__ = [
    "__version__", "automl", "datagen", "embed", "graph", "qscore", "AutoManifold",
    "AutomanifoldError", "DivergenceError", "DomainError", "IntegrationError",
    "NumericalError", "ParseError", "TrainingError", "WalkError",
]
