"""scikit-learn style wrappers around enumeration and the D² build.

``fit`` takes a triangulation (or its JSON text) and stores results in
trailing-underscore attributes; ``transform`` returns plain dictionaries.
There is no numeric input and no ``predict``.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from . import derived
from .surfaces import enumerate_surfaces
from .triangulation import Triangulation, parse_triangulation


def _as_triangulation(X) -> Triangulation:
    if isinstance(X, Triangulation):
        return X
    return parse_triangulation(X)


class NormalSurfaceEnumerator(BaseEstimator):
    """Enumerate connected normal surfaces of one index."""

    def __init__(self, index=0, genus_bound=1, weight_cap=3, budget=2_000_000):
        self.index = index
        self.genus_bound = genus_bound
        self.weight_cap = weight_cap
        self.budget = budget

    def fit(self, X, y=None):
        self.triangulation_ = _as_triangulation(X)
        self.surfaces_ = enumerate_surfaces(self.triangulation_, self.index, self.genus_bound,
                                            self.weight_cap, self.budget)
        self.n_surfaces_ = len(self.surfaces_)
        return self

    def transform(self, X=None):
        if not hasattr(self, "surfaces_"):
            raise NotFittedError("call fit first")
        return [s.to_dict() for s in self.surfaces_]

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()


class DerivedComplexBuilder(BaseEstimator):
    """Build the derived complex D² of a triangulation."""

    def __init__(self, genus_bound=1, weight_cap=3, budgets=None, allow_partial=False, threads=1):
        self.genus_bound = genus_bound
        self.weight_cap = weight_cap
        self.budgets = budgets
        self.allow_partial = allow_partial
        self.threads = threads

    def fit(self, X, y=None):
        tri = _as_triangulation(X)
        self.complex_ = derived.build_d2(tri, self.genus_bound, self.weight_cap, self.budgets,
                                         allow_partial=self.allow_partial, threads=self.threads)
        self.complete_ = self.complex_.complete
        return self

    def transform(self, X=None):
        if not hasattr(self, "complex_"):
            raise NotFittedError("call fit first")
        return self.complex_.to_dict()

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()
