#!/usr/bin/env python3

## Exploration directions: uniform unit vectors, the null space of
## poorly performing gradients, and context-dependent preselection.

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import null_space as _scipy_null_space

from ._errors import FullRankExhausted

__all__ = ["NULL_SPACE_TOL", "SamplingMode", "SubspaceBasis", "sample_uniform_unit", "direction_matrix",
           "null_space", "sample_in_subspace", "select_mode", "preselect", "preselect_indices",
           "worst_gradients"]

NULL_SPACE_TOL = 1e-10


class SamplingMode(Enum):
    BASIS_SELECTION = 1
    INTERIOR_SAMPLING = 2


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of the null space of `source`.

    :param numpy.ndarray basis: r x d matrix whose rows are the basis.
    :param numpy.ndarray source: k x d matrix G the basis is orthogonal to.
    """
    basis: np.ndarray
    source: np.ndarray

    @property
    def rank(self):
        return self.basis.shape[0]

    @property
    def dim(self):
        return self.basis.shape[1]


def sample_uniform_unit(d, rng):
    """Samples a direction uniformly from the unit sphere in R^d by
    normalising a standard normal draw."""
    if d < 1:
        raise ValueError("dimension must be positive")
    while True:
        v = rng.standard_normal(d)
        norm = np.linalg.norm(v)
        if norm > 0:
            return v / norm


def direction_matrix(rows, dim):
    """Stacks direction vectors into a k x dim matrix G (k may be 0)."""
    if not len(rows):
        return np.zeros((0, dim))
    return np.vstack(rows).astype(float)


def null_space(G, tol=NULL_SPACE_TOL):
    """Computes an orthonormal basis of {v : Gv = 0} from the singular
    value decomposition of G.

    Singular values at most `tol` times the largest are treated as zero.
    An empty G gives the standard basis.

    :param numpy.ndarray G: k x d matrix of directions.
    :raises FullRankExhausted: If the rows of G span R^d.
    """
    G = np.atleast_2d(np.asarray(G, dtype=float))
    d = G.shape[1]
    if G.shape[0] == 0 or not np.any(G):
        basis = np.eye(d)
    else:
        basis = _scipy_null_space(G, rcond=tol).T
    if basis.shape[0] == 0:
        raise FullRankExhausted("{} gradients span all {} dimensions".format(G.shape[0], d))
    return SubspaceBasis(basis, G)


def sample_in_subspace(basis, mode, rng):
    """Samples a unit direction inside the span of `basis`.

    BASIS_SELECTION picks one basis vector uniformly with a random sign;
    INTERIOR_SAMPLING draws uniformly from the subspace's unit sphere.
    """
    if basis.rank == 0:
        raise ValueError("cannot sample from an empty basis")
    if mode is SamplingMode.BASIS_SELECTION:
        index = rng.integers(basis.rank)
        sign = 1.0 if rng.random() < 0.5 else -1.0
        return sign * basis.basis[index]
    coefficients = sample_uniform_unit(basis.rank, rng)
    v = coefficients @ basis.basis
    return v / np.linalg.norm(v)


def select_mode(current_w, lagged_w, epsilon):
    """Interior sampling once the ranker has settled, i.e. it moved less
    than 1 - epsilon over the lag window; basis selection otherwise or
    when no lagged ranker exists yet."""
    if lagged_w is None:
        return SamplingMode.BASIS_SELECTION
    distance = np.linalg.norm(np.asarray(current_w) - np.asarray(lagged_w))
    if distance < 1.0 - epsilon:
        return SamplingMode.INTERIOR_SAMPLING
    return SamplingMode.BASIS_SELECTION


def preselect_indices(candidates, xbar, m):
    candidates = np.atleast_2d(candidates)
    n = candidates.shape[0]
    if m < 1 or n < m:
        raise ValueError("cannot preselect {} of {} candidates".format(m, n))
    return np.argsort(-np.abs(candidates @ xbar), kind="stable")[:m]


def preselect(candidates, xbar, m):
    """Keeps the m candidates with the largest |xbar . g|, best first;
    ties go to the earlier candidate.

    A candidate with xbar . g = 0 cannot change the ranking of the
    current query, since every document score would shift by a value
    whose sum is zero.
    """
    return np.atleast_2d(candidates)[preselect_indices(candidates, xbar, m)]


def worst_gradients(queue, k_g, dim):
    """Builds G from the min(k_g, len(queue)) records with the most
    negative quality; equal qualities prefer the newer record.

    :param queue: GradientRecords, oldest first.
    """
    records = list(queue)
    order = sorted(range(len(records)), key=lambda i: (records[i].quality, -i))
    return direction_matrix([records[i].direction for i in order[:k_g]], dim)
