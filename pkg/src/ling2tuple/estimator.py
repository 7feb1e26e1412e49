"""scikit-learn compatible wrapper around an unbalanced partition."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .aggregate import lh_inverse
from .errors import InvalidArgument
from .partition import build_partition, resolve_stretch


class LinguisticFuzzifier(TransformerMixin, BaseEstimator):
    """Fuzzify a single numeric feature against an unbalanced term set.

    Parameters
    ----------
    pairs : list of (str, float), optional
        Ordered ``(term, position)`` pairs on the feature's own scale.
    stretch : list of (str, str), optional
        ``(term, stretch factor)`` entries used instead of ``pairs``; the
        term positions are then laid out on ``[0, 1]``.
    stretch_weights : dict, optional
        Override of the default stretch weight table.
    clip : bool, default=False
        Clip samples into the universe instead of raising.

    Attributes
    ----------
    partition_ : UnbalancedPartition
    terms_ : ndarray of str
    n_features_in_ : int
    """

    def __init__(self, pairs=None, stretch=None, stretch_weights=None, clip=False):
        self.pairs = pairs
        self.stretch = stretch
        self.stretch_weights = stretch_weights
        self.clip = clip

    def fit(self, X=None, y=None):
        if (self.pairs is None) == (self.stretch is None):
            raise InvalidArgument("give exactly one of 'pairs' or 'stretch'")
        if self.pairs is not None:
            pairs = self.pairs
        else:
            pairs = resolve_stretch(self.stretch, self.stretch_weights)
        self.partition_ = build_partition(pairs)
        self.terms_ = np.array(self.partition_.names, dtype=object)
        self.n_features_in_ = 1
        if X is not None:
            self._internal(X)
        return self

    def _internal(self, X):
        X = check_array(X, ensure_2d=False, dtype=float)
        if X.ndim == 2:
            if X.shape[1] != 1:
                raise ValueError(f"expected a single feature, got {X.shape[1]}")
            X = X[:, 0]
        u = X - self.partition_.universe.v_min
        if self.clip:
            u = np.clip(u, 0.0, self.partition_.span)
        return u

    def transform(self, X):
        """Membership degrees, one column per term."""
        check_is_fitted(self, "partition_")
        return self.partition_.membership_matrix(self._internal(X))

    def predict(self, X):
        """Name of the term whose kernel is closest to each sample."""
        check_is_fitted(self, "partition_")
        u = self._internal(X)
        return np.array([lh_inverse(self.partition_, float(p)).term for p in u], dtype=object)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "partition_")
        return np.array([f"mu_{name}" for name in self.terms_], dtype=object)
