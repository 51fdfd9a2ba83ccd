"""scikit-learn style wrappers.

``CVCSolver`` is an estimator whose ``fit`` solves one instance and whose
``predict`` maps a sequence of graphs to optimum sizes.  ``LossyKernel`` is a
transformer: ``transform`` kernelizes and ``inverse_transform`` lifts a
solution of the reduced instance back to the fitted one.
"""

from __future__ import annotations

from fractions import Fraction

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .graph import Graph, Instance
from .lossy import lift
from .modulators import find_clique_cover, find_modulator
from .solvers import PARAMS, kernelize, make_instance, solve


def _as_graph(x) -> Graph:
    if isinstance(x, Graph):
        return x
    if isinstance(x, Instance):
        return x.graph
    n, edges = x
    return Graph(n, edges)


def _instance(x, param: str, modulator, cover, kmax: int) -> Instance:
    if isinstance(x, Instance):
        return x
    g = _as_graph(x)
    if param == "cliquecover":
        s = frozenset()
    elif modulator is not None:
        s = frozenset(modulator)
    else:
        kind = "split" if param == "modcc" else PARAMS[param]
        s = find_modulator(g, kind, kmax)
        if s is None:
            raise ValueError(f"no {kind} modulator of size <= {kmax}")
    if PARAMS[param] == "cliquecover" and cover is None:
        h, old = g.induced([v for v in range(g.n) if v not in s])
        cover = [[old[v] for v in p] for p in find_clique_cover(h, max(h.n, 1)).parts]
    return make_instance(g, s, param, cover)


class CVCSolver(BaseEstimator):
    """Exact minimum connected vertex cover under a structural parameter.

    Parameters
    ----------
    param : str
        One of ``split``, ``clique``, ``cluster``, ``degree1``, ``degree2``,
        ``chordal``, ``cliquecover`` or ``modcc``.
    ell : int or None
        Size budget; ``None`` means unbounded.
    kmax : int
        Largest modulator searched for when none is supplied.
    """

    def __init__(self, param: str = "split", ell: int | None = None, kmax: int = 6):
        self.param = param
        self.ell = ell
        self.kmax = kmax

    def fit(self, X, y=None, modulator=None, cover=None):
        inst = _instance(X, self.param, modulator, cover, self.kmax)
        sol, stats = solve(inst, self.ell)
        self.instance_ = inst
        self.solution_ = sol
        self.size_ = None if sol is None else len(sol)
        self.stats_ = stats
        return self

    def predict(self, X):
        """Optimum size (``None`` when infeasible) for each graph in ``X``."""
        return [self.__class__(**self.get_params()).fit(x).size_ for x in X]


class LossyKernel(TransformerMixin, BaseEstimator, auto_wrap_output_keys=None):
    """Approximate kernel for one instance, with lifting as the inverse map."""

    def __init__(self, param: str = "split", alpha=2, kmax: int = 6):
        self.param = param
        self.alpha = alpha
        self.kmax = kmax

    def fit(self, X, y=None, modulator=None, cover=None):
        inst = _instance(X, self.param, modulator, cover, self.kmax)
        reduced, chain, cert = kernelize(inst, Fraction(str(self.alpha)), self.param)
        self.instance_ = inst
        self.reduced_ = reduced
        self.chain_ = chain
        self.certificate_ = cert
        return self

    def transform(self, X):
        """Reduced instance for ``X``; other inputs are kernelized without touching the fitted chain."""
        self._check()
        if X is self.instance_ or _as_graph(X) == self.instance_.graph:
            return self.reduced_
        inst = _instance(X, self.param, None, None, self.kmax)
        return kernelize(inst, Fraction(str(self.alpha)), self.param)[0]

    def fit_transform(self, X, y=None, modulator=None, cover=None):
        return self.fit(X, y, modulator=modulator, cover=cover).reduced_

    def inverse_transform(self, solution):
        self._check()
        return lift(self.chain_, solution)

    def _check(self):
        if not hasattr(self, "chain_"):
            raise NotFittedError("LossyKernel is not fitted yet")
