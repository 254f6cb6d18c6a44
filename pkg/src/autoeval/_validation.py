"""Input checks shared by the estimator layer and the CLI."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_is_fitted

from .field import FieldContext, FieldElement, FieldError
from .poly import DensePoly

__all__ = ["check_is_fitted", "check_poly", "check_points", "check_words"]


def check_poly(P, ctx: FieldContext | None = None) -> DensePoly:
    if not isinstance(P, DensePoly):
        raise TypeError(f"expected a DensePoly, got {type(P).__name__}")
    if ctx is not None and P.ctx != ctx:
        raise FieldError("polynomial belongs to a different field")
    return P


def check_points(X, ctx: FieldContext) -> list[FieldElement]:
    """Accept FieldElements, packed ints or an integer array of packed values."""
    if isinstance(X, FieldElement):
        X = [X]
    out = []
    for x in np.ravel(np.asarray(X, dtype=object)):
        if isinstance(x, FieldElement):
            if x.ctx != ctx:
                raise FieldError("point belongs to a different field")
            out.append(x)
        else:
            v = int(x)
            if not 0 <= v < ctx.q:
                raise FieldError(f"{v} is not a packed element of a field of size {ctx.q}")
            out.append(FieldElement(ctx, v))
    return out


def check_words(X, length: int) -> np.ndarray:
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != length:
        raise ValueError(f"expected shape (K, {length}), got {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError("received words must be integer byte arrays")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("symbols must be bytes")
    return arr.astype(np.int64)
